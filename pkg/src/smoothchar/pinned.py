"""Implied constants measured at desk scale and locked as regression bounds.

Each value sits above the largest ratio seen in the scan noted beside it.
A check that exceeds one of these is a regression, not noise.
"""

# |K| / p^{(2^k+1)/2}, nondegenerate branch, exhaustive over p <= 37.
# Measured maxima: k=1 2.614 (p=29), k=2 6.773 (p=31).
K_NONDEGENERATE = {1: 3.0, 2: 8.0}

# |K| / p^{(2^k+2)/2} on the degenerate branch.  k=1 is at most
# (p-1)/p by Parseval.  For k=2 the sum of |W|^4 is about 2 p^3, so the
# unit constant cannot hold; measured maximum 2.107 (p=31).
K_DEGENERATE_CLAIMED = 1.0
K_DEGENERATE = {1: 1.0, 2: 2.5}

# |W| <= W_CONSTANT sqrt(p) (h, x, p)^{1/2} for prime p, and with an extra
# q^{W_SLACK_EXPONENT} for composite q.  Primes: measured 1.997.
# Composite |W| factors over the primes of q, so the true constant grows
# like 2^omega(q); seeded draws reach 2.83 against this constant.
W_CONSTANT = 2.0
W_SLACK_EXPONENT = 0.05

# |S|^{2^k} <= C_k (rhs).  Constant tables are the extremal case:
# measured 1.0, 1.901, 4.405 for k = 1, 2, 3.
A_ITERATED = {1: 2.0, 2: 4.0, 3: 8.0}

# max |S| / (N^{23/41} q^{11/82}) over the default smooth family, N = ceil(sqrt q).
# Measured 1.024.
MAIN_FAMILY = 1.5
MAIN_SLOPE = 0.42

# |sum_{n<=x} chi(n)| / (x^{23/41} q^{11/82}); measured 0.738.
PARTIAL_SUM = 1.5

# |sum_I f| / BProcessReport.rhs over random f and I; measured 1.633 at
# q = 3, N = 1, where two singleton windows meet a log q of about 1.1
# (the ratio there is at most 2 / log 3 = 1.82).
B_PROCESS = 2.0

# |sum_I f| / completion_bound; provable with constant one.
COMPLETION = 1.0

# log max |L(1/2, chi)| against log q over the equal-draw family; measured 0.136.
L_FAMILY_SLOPE = 0.25

# relative tolerances
MULT_TOLERANCE = 1e-6
GAUSS_TOLERANCE = 1e-9
L_AGREEMENT = 1e-8
L_CONJUGATION = 1e-10
PLANCHEREL_PER_Q = 1e-9


def as_dict() -> dict:
    return {
        "k_nondegenerate": dict(K_NONDEGENERATE),
        "k_degenerate": dict(K_DEGENERATE),
        "w_constant": W_CONSTANT,
        "w_slack_exponent": W_SLACK_EXPONENT,
        "a_iterated": dict(A_ITERATED),
        "main_family": MAIN_FAMILY,
        "partial_sum": PARTIAL_SUM,
        "b_process": B_PROCESS,
        "completion": COMPLETION,
    }
