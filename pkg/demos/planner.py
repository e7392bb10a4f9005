"""Split a smooth modulus into factors near target sizes."""
from smoothchar import factor_planner as fp
from smoothchar.residue_core import factor_squarefree

q = 3 * 5 * 7 * 11 * 13 * 17 * 19 * 23
N = q ** 0.6
mod = factor_squarefree(q)
targets = fp.plan_targets_theorem1(q, N)
print("q =", q, "targets", [round(t, 1) for t in targets])

plan = fp.assemble_factorization(mod, targets)
for s in plan.slots:
    print(f"  target {s.target:10.1f}  window [{s.window[0]:.1f}, {s.window[1]:.1f}]  value {s.value}  {s.primes}")
print("feasible:", plan.feasible)
