"""Characters on a squarefree modulus, CRT splitting and Gauss sums."""
import math

from smoothchar import characters as ch
from smoothchar.residue_core import factor_squarefree

q = 1155
mod = factor_squarefree(q)
print("q =", q, "primes", mod.primes)

chars = ch.enumerate_primitive(q)
print("primitive characters:", len(chars), "expected", ch.primitive_count(q))

chi = chars[17]
print("chi =", chi.name, "parity", chi.parity())

# chi is the product of its restrictions to 33 and 35
u, v = 33, 35
a, b = ch.crt_split_character(chi, u, v)
worst = max(abs(chi(n) - a(n) * b(n)) for n in range(q))
print("CRT split", a.name, "*", b.name, "max deviation", worst)

# |tau(chi)| = sqrt(q) for primitive chi
tau = ch.gauss_sum(chi)
print("|tau| / sqrt(q) =", abs(tau) / math.sqrt(q))
