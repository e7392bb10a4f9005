"""Small-scale verification suite behind ``smoothchar verify``.

Each check returns a :class:`CheckResult`; ``passed`` is False whenever a
measured ratio exceeds its pinned constant.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import pinned
from .bounds_lab import FamilyConfig, eval_word, fit_exponent, scan_family, smooth_family
from .characters import crt_split_character, enumerate_primitive, gauss_sum, sample_primitive
from .complete_sums import check_k_bound, check_k_mult, check_w_bound, check_w_mult
from .errors import Infeasible
from .factor_planner import assemble_factorization, plan_targets_ba3b
from .lfunc import l_half_afe, l_half_hurwitz
from .residue_core import factor_squarefree, is_prime, is_squarefree
from .vdc_processes import (Interval, a_process, a_process_iterated, b_process, completion_check,
                            gcd_sum, gcd_sum_brute, gcd_sum_weighted, gcd_sum_weighted_brute)


@dataclass
class CheckResult:
    name: str
    passed: bool
    checked: int
    worst: float
    bound: float
    detail: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def _odd_squarefree(lo: int, hi: int, min_primes: int = 1) -> list[int]:
    return [q for q in range(max(lo, 3), hi + 1)
            if q % 2 and is_squarefree(q) and len(factor_squarefree(q).primes) >= min_primes]


def split_chain(chi, factors):
    """Components of chi on coprime factors q_0, ..., q_k (in that order)."""
    comps, rest = [], chi
    for qi in factors[:-1]:
        a, b = crt_split_character(rest, qi, rest.q // qi)
        comps.append(a)
        rest = b
    comps.append(rest)
    return comps


def check_pairs(**_) -> CheckResult:
    cases = {"AB": (Fraction(1, 6), Fraction(2, 3)), "BAAAB": (Fraction(11, 30), Fraction(8, 15)),
             "ABAAAB": (Fraction(11, 82), Fraction(57, 82))}
    bad = [w for w, kl in cases.items() if tuple(eval_word(w)) != kl]
    ok = (Fraction(11, 82) + (Fraction(23, 41) - Fraction(1, 2)) / 2 == Fraction(27, 164)
          and Fraction(57, 82) - Fraction(11, 82) == Fraction(23, 41))
    return CheckResult("pairs", not bad and ok, len(cases) + 2, float(len(bad)), 0.0,
                       f"mismatched words: {bad}" if bad else "")


def check_plancherel(q=None, trials=50, rng=None, small=True, **_) -> CheckResult:
    pool = [q] if q else _odd_squarefree(3, 2000 if small else 10**4)
    worst = 0.0
    for _ in range(trials):
        qq = int(pool[int(rng.integers(len(pool)))])
        f = rng.normal(size=qq) + 1j * rng.normal(size=qq)
        N = int(rng.integers(1, qq + 1))
        iv = Interval(int(rng.integers(-qq, qq)), int(rng.integers(0, N + 1)))
        worst = max(worst, b_process(f, iv, N).plancherel_residual / qq)
    return CheckResult("plancherel", worst <= pinned.PLANCHEREL_PER_Q, trials, worst,
                       pinned.PLANCHEREL_PER_Q, "residual / q")


def check_gauss(q=None, small=True, **_) -> CheckResult:
    qs = [q] if q else [v for v in range(3, (150 if small else 500) + 1) if is_squarefree(v)]
    worst, n = 0.0, 0
    for v in qs:
        for chi in enumerate_primitive(v):
            worst = max(worst, abs(abs(gauss_sum(chi)) - math.sqrt(v)))
            n += 1
    return CheckResult("gauss", worst <= pinned.GAUSS_TOLERANCE, n, worst, pinned.GAUSS_TOLERANCE,
                       "| |tau| - sqrt q |")


def check_weil(q=None, trials=100, rng=None, small=True, **_) -> CheckResult:
    primes = [q] if q and is_prime(q) else [p for p in range(3, (31 if small else 97) + 1) if is_prime(p)]
    rep = check_w_bound(primes)
    worst = rep.max_ratio()
    composites = _odd_squarefree(15, 3000, 2) if not q or is_prime(q) else [q]
    crep = check_w_bound(composites, instances=trials, rng=rng,
                         slack_exponent=pinned.W_SLACK_EXPONENT)
    cworst = crep.max_ratio()
    n = sum(rep.counts.values()) + sum(crep.counts.values())
    ok = worst <= pinned.W_CONSTANT and cworst <= pinned.W_CONSTANT
    return CheckResult("weil", ok, n, max(worst, cworst), pinned.W_CONSTANT,
                       f"prime max {worst:.4f}, composite max {cworst:.4f}")


def check_mult(trials=50, rng=None, small=True, **_) -> CheckResult:
    primes = [p for p in range(3, (13 if small else 31) + 1) if is_prime(p)]
    worst, n = 0.0, 0
    for i, p in enumerate(primes):
        for r in primes[i + 1:]:
            q = p * r
            chars = enumerate_primitive(q)
            for chi in (chars if not small else chars[:: max(1, len(chars) // 4)]):
                for h in range(0, q, max(1, q // 7)):
                    for x in range(0, q, max(1, q // 5)):
                        worst = max(worst, check_w_mult(chi, p, r, h, x))
                        n += 1
                y = int(rng.integers(q))
                worst = max(worst, check_k_mult(chi, p, r, 1 + int(rng.integers(q - 1)),
                                                (int(rng.integers(q)),), y))
                n += 1
    for _ in range(trials // 5 + 1):
        p, r = rng.choice(primes[:5], 2, replace=False)
        q = int(p * r)
        chi = sample_primitive(q, 1, rng)[0]
        shifts = tuple(int(v) for v in rng.integers(q, size=2))
        worst = max(worst, check_k_mult(chi, int(p), int(r), int(rng.integers(1, q)), shifts,
                                        int(rng.integers(q))))
        n += 1
    return CheckResult("mult", worst <= pinned.MULT_TOLERANCE, n, worst, pinned.MULT_TOLERANCE,
                       "relative deviation")


def check_kbound(q=None, small=True, **_) -> CheckResult:
    primes = [q] if q and is_prime(q) else [p for p in range(3, (13 if small else 37) + 1) if is_prime(p)]
    worst_nd, worst_dg, n, ok = 0.0, 0.0, 0, True
    for k in (1, 2):
        for p in primes:
            rep = check_k_bound(p, k)
            nd, dg = rep.max_ratio("nondegenerate"), rep.max_ratio("degenerate")
            ok &= nd <= pinned.K_NONDEGENERATE[k] and dg <= pinned.K_DEGENERATE[k]
            worst_nd = max(worst_nd, nd / pinned.K_NONDEGENERATE[k])
            worst_dg = max(worst_dg, dg / pinned.K_DEGENERATE[k])
            n += sum(rep.counts.values())
    return CheckResult("kbound", ok, n, max(worst_nd, worst_dg), 1.0,
                       f"ratio / pinned: nondegenerate {worst_nd:.3f}, degenerate {worst_dg:.3f}")


def check_aprocess(q=None, trials=100, rng=None, small=True, **_) -> CheckResult:
    pool = [q] if q else _odd_squarefree(15, 2000 if small else 10**4, 2)
    worst = 0.0
    for _ in range(trials):
        qq = int(pool[int(rng.integers(len(pool)))])
        ps = list(factor_squarefree(qq).primes)
        rng.shuffle(ps)
        q0 = math.prod(ps[: int(rng.integers(1, len(ps)))])
        chi = sample_primitive(qq, 1, rng)[0]
        c0, c1 = crt_split_character(chi, q0, qq // q0)
        iv = Interval(int(rng.integers(qq)), int(rng.integers(1, qq + 1)))
        worst = max(worst, a_process(c0.table, c1.table, iv).ratio)
    fixture = a_process(np.ones(3), np.ones(2), Interval(0, 6)).ratio
    worst = max(worst, fixture)
    ok = worst <= 4
    it_worst = {}
    for k, factors in ((1, (3, 5)), (2, (3, 5, 7)), (3, (2, 3, 5, 7))):
        N = min(math.prod(factors), 30)
        r = max(a_process_iterated(list(factors), [np.ones(f) for f in factors], Interval(0, n)).ratio
                for n in range(1, N + 1))
        it_worst[k] = r
        ok &= r <= pinned.A_ITERATED[k]
    return CheckResult("aprocess", ok, trials + 1, worst, 4.0,
                       "iterated " + ", ".join(f"k={k}: {v:.3f}" for k, v in it_worst.items()))


def check_gcd(small=True, **_) -> CheckResult:
    qmax, hmax = (60, 120) if small else (200, 500)
    bad, n = 0, 0
    for q in range(1, qmax + 1):
        for H in range(1, hmax + 1, 1 if small else 7):
            bad += gcd_sum(H, q) != gcd_sum_brute(H, q)
            n += 1
        for H in range(1, 40):
            bad += gcd_sum_weighted(H, q) != gcd_sum_weighted_brute(H, q)
            n += 1
    return CheckResult("gcd", bad == 0, n, float(bad), 0.0, "mismatches")


def check_factorizer(trials=50, small=True, **_) -> CheckResult:
    mod = factor_squarefree(15015)
    fixture = assemble_factorization(mod, [105, 143], windows=[(105, 105), (143, 143)])
    ok = sorted(fixture.result) == [105, 143]
    fails = 0
    qs = [m.q for m in smooth_family(10**3, 10**8, 0.2, 10 if small else trials)]
    for q in qs:
        m = factor_squarefree(q)
        N = math.isqrt(q - 1) + 1
        try:
            plan = assemble_factorization(m, plan_targets_ba3b(q, N), window_factor=q ** -0.2)
            fails += math.prod(plan.result) != q or not plan.feasible
        except Infeasible:
            fails += 1
    return CheckResult("factorizer", ok and fails == 0, len(qs) + 1, float(fails), 0.0,
                       "infeasible plans")


def check_completion(trials=100, rng=None, **_) -> CheckResult:
    pool = _odd_squarefree(3, 3000)
    worst_c, worst_b = 0.0, 0.0
    for _ in range(trials):
        q = int(pool[int(rng.integers(len(pool)))])
        f = sample_primitive(q, 1, rng)[0].table if rng.integers(2) else rng.normal(size=q) + 0j
        N = int(rng.integers(1, q + 1))
        iv = Interval(int(rng.integers(q)), int(rng.integers(1, N + 1)))
        lhs, bound = completion_check(f, iv)
        worst_c = max(worst_c, lhs / bound if bound else 0.0)
        rep = b_process(f, iv, N)
        worst_b = max(worst_b, abs(rep.direct_sum) / rep.rhs if rep.rhs else 0.0)
    ok = worst_c <= pinned.COMPLETION and worst_b <= pinned.B_PROCESS
    return CheckResult("completion", ok, trials, worst_c, pinned.COMPLETION,
                       f"b_process ratio {worst_b:.4f} (pinned {pinned.B_PROCESS})")


def check_family(seed=0, small=True, **_) -> CheckResult:
    cfg = FamilyConfig(q_max=10**5 if small else 10**6, count=10 if small else 24,
                       char_cap=256 if small else 4096, seed=seed)
    rows = scan_family(cfg)
    worst = max(r.ratio for r in rows)
    slope = fit_exponent(rows)
    ok = worst <= pinned.MAIN_FAMILY and slope <= pinned.MAIN_SLOPE
    return CheckResult("family", ok, len(rows), worst, pinned.MAIN_FAMILY, f"slope {slope:.4f}")


def check_lfunc(q=None, **_) -> CheckResult:
    qs = [q] if q else [3, 5, 7, 11, 13, 15, 35, 105]
    worst, conj, n = 0.0, 0.0, 0
    for v in qs:
        for chi in enumerate_primitive(v):
            a = l_half_afe(chi)
            worst = max(worst, abs(a - l_half_hurwitz(chi)))
            conj = max(conj, abs(l_half_afe(chi.conj()) - a.conjugate()))
            n += 1
    ok = worst <= pinned.L_AGREEMENT and conj <= pinned.L_CONJUGATION
    return CheckResult("lfunc", ok, n, worst, pinned.L_AGREEMENT, f"conjugation {conj:.2e}")


CHECKS: dict[str, Callable[..., CheckResult]] = {
    "pairs": check_pairs,
    "plancherel": check_plancherel,
    "gauss": check_gauss,
    "weil": check_weil,
    "mult": check_mult,
    "kbound": check_kbound,
    "aprocess": check_aprocess,
    "gcd": check_gcd,
    "factorizer": check_factorizer,
    "completion": check_completion,
    "family": check_family,
    "lfunc": check_lfunc,
}


def run_checks(names, q: int | None = None, trials: int | None = None, seed: int = 0,
               small: bool = True) -> list[CheckResult]:
    out = []
    for name in names:
        kwargs = {"q": q, "rng": np.random.default_rng([seed, len(out)]), "seed": seed, "small": small}
        if trials is not None:
            kwargs["trials"] = trials
        out.append(CHECKS[name](**kwargs))
    return out
