"""L(1/2, chi) by two methods, and the family maximum against q."""
from smoothchar import characters as ch
from smoothchar import lfunc

chi = ch.DirichletCharacter.from_name("1001:7^1,11^3,13^5")
a = lfunc.l_half_hurwitz(chi)
b = lfunc.l_half_afe(chi)
print("Hurwitz:", a)
print("AFE:    ", b)
print("agreement:", abs(a - b) / abs(a))
print("root number modulus:", abs(lfunc.root_number(chi)))

rep = lfunc.scan_l_family(q_max=5000, count=8, char_cap=32, seed=2)
for q, v, name in rep.rows:
    print(f"  q={q:5d}  max |L| = {v:.3f}  {name}")
print("slope:", rep.slope, "exponent", lfunc.central_value_exponent())
