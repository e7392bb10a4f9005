"""Complete sums W and K at a prime, against the square-root bounds."""
import math

import numpy as np

from smoothchar import characters as ch
from smoothchar import complete_sums as cs

p = 101
chi = ch.DirichletCharacter.from_name(f"{p}:{p}^7")
h = 5

table = cs.w_table(chi, h)
ratios = np.abs(table.values) / math.sqrt(p)
print(f"max |W(x)| / sqrt(p) over x: {ratios.max():.4f}")
print("twist identity residual a=3:", cs.twist_check(chi, h, 3))

# second moment: sum_x |W(x)|^2 = p sum_n |chi(n) conj chi(n+h)|^2
print("Parseval:", float(np.sum(np.abs(table.values) ** 2)), "vs", p * (p - 2))

# K with k = 1 and one shift, scaled by p^{3/2}
shifts = (2,)
K = cs.k_sum_all(chi, h, shifts, table)
print(f"max |K(y)| / p^1.5 over y: {np.abs(K).max() / p ** 1.5:.4f}")
