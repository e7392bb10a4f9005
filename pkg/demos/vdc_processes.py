"""One A step and one B step on a character sum mod 15015."""
import numpy as np

from smoothchar import characters as ch
from smoothchar import vdc_processes as vp

rng = np.random.default_rng(0)
q0, q1 = 1001, 15
chi0 = ch.sample_primitive(q0, 1, rng)[0]
chi1 = ch.sample_primitive(q1, 1, rng)[0]
I = vp.Interval(37, 400)

rep = vp.a_process(chi0.table, chi1.table, I)
print(f"A: |S|^2 = {rep.lhs:.1f}, rhs = {rep.rhs:.1f}, H = {rep.H}, ratio {rep.ratio:.3f}")

b = vp.b_process(chi0.table, vp.Interval(0, 120))
print(f"B: |S| = {abs(b.direct_sum):.2f}, rhs = {b.rhs:.2f}, Plancherel residual {b.plancherel_residual:.1e}")

lhs, bound = vp.completion_check(chi0.table, vp.Interval(0, 120))
print(f"completion: {lhs:.2f} <= {bound:.2f}")

H = 300
print("gcd sum", vp.gcd_sum(H, q0), "brute", vp.gcd_sum_brute(H, q0))
