"""Exponent-pair calculus, bound evaluators and empirical family scans.

All evaluators drop the q^{O(delta) + eps} factors; delta is reported
alongside in scan rows instead.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .characters import primitive_count, sample_primitive
from .errors import BadWord, Degenerate
from .residue_core import SquarefreeModulus, factor_squarefree, is_squarefree, prime_context

THREADS_ENV = "SMOOTHCHAR_THREADS"

MAIN_N_EXP = Fraction(23, 41)
MAIN_Q_EXP = Fraction(11, 82)
BA3B_N_EXP = Fraction(1, 6)
BA3B_Q_EXP = Fraction(11, 30)


@dataclass(frozen=True)
class ExponentPair:
    k: Fraction
    l: Fraction

    def __iter__(self):
        return iter((self.k, self.l))

    def __str__(self):
        return f"{self.k} {self.l}"

    @property
    def is_valid(self) -> bool:
        return 0 <= self.k <= Fraction(1, 2) <= self.l <= 1


TRIVIAL_PAIR = ExponentPair(Fraction(0), Fraction(1))


def apply_A(pair: ExponentPair) -> ExponentPair:
    k, l = pair
    d = 2 * k + 2
    return ExponentPair(k / d, (k + l + 1) / d)


def apply_B(pair: ExponentPair) -> ExponentPair:
    k, l = pair
    return ExponentPair(l - Fraction(1, 2), k + Fraction(1, 2))


def eval_word(word: str, start: ExponentPair = TRIVIAL_PAIR) -> ExponentPair:
    """Apply a word in A and B to ``start``, rightmost letter first.

    >>> str(eval_word("AB"))
    '1/6 2/3'
    """
    word = word.strip().upper()
    if not word or set(word) - {"A", "B"}:
        raise BadWord(f"word must be a nonempty string over {{A, B}}, got {word!r}")
    pair = start
    for letter in reversed(word):
        pair = apply_A(pair) if letter == "A" else apply_B(pair)
    return pair


def main_exponent(log_N_over_log_q: Fraction) -> Fraction:
    """Exponent of q in N^{23/41} q^{11/82} at N = q^nu."""
    return MAIN_N_EXP * Fraction(log_N_over_log_q) + MAIN_Q_EXP


# ------------------------------------------------------------- evaluators

def bound_BAkB(N: float, factors) -> float:
    """sum_{j=1}^k N^{2^-j} q^{1/2-2^-j} q_{k-j+1}^{2^-j} + N^{2^-k} q^{1/2-2^-k} q_0^{2^-(k+1)}."""
    factors = [float(v) for v in factors]
    k = len(factors) - 1
    if k < 1:
        raise ValueError("need at least q_0 and q_1")
    q = math.prod(factors)
    if N > q * (1 + 1e-12):
        raise ValueError("N must not exceed q")
    total = 0.0
    for j in range(1, k + 1):
        e = 2.0 ** -j
        total += N ** e * q ** (0.5 - e) * factors[k - j + 1] ** e
    e = 2.0 ** -k
    total += N ** e * q ** (0.5 - e) * factors[0] ** (e / 2)
    return total


def bound_T_smooth(N: float, q: float) -> float:
    return N ** (1 / 6) * q ** (11 / 30)


def bound_T_gcd(N: float, q: int, h: int) -> float:
    return math.sqrt(math.gcd(int(h), int(q))) * bound_T_smooth(N, q)


def bound_T_weil(N: float, q: float) -> float:
    return (N / q + 1) * math.sqrt(q)


def bound_S_theorem1(N: float, q: float, check: bool = True) -> float:
    """N^{23/41} q^{11/82}, cross-checked against (q/N)^{11/82} N^{57/82}."""
    value = N ** (23 / 41) * q ** (11 / 82)
    if check:
        alt = (q / N) ** (11 / 82) * N ** (57 / 82)
        if abs(alt - value) > 1e-12 * value:
            raise ArithmeticError(f"bound forms disagree: {value} vs {alt}")
    return value


def bound_S_pair(N: float, q: float, pair: ExponentPair) -> float:
    """(q/N)^k N^l for an exponent pair."""
    return (q / N) ** float(pair.k) * N ** float(pair.l)


# ------------------------------------------------------------- family scans

@dataclass
class FamilyRow:
    q: int
    delta: float
    N: int
    max_abs_S: float
    bound_value: float
    ratio: float
    chars: int = 0
    worst_char: str = ""


ROW_FIELDS = ("q", "delta", "N", "max_abs_S", "bound", "ratio")


def n_rule(expr: str) -> Callable[[int], int]:
    """Parse an N-rule: ``sqrt``, ``q``, ``q^0.45`` or an integer literal."""
    expr = expr.strip().lower().replace("**", "^")
    if expr in ("sqrt", "q^0.5", "q^1/2"):
        return lambda q: math.isqrt(q - 1) + 1 if q > 1 else 1  # ceil(sqrt q)
    if expr == "q":
        return lambda q: q
    if expr.startswith("q^"):
        e = float(Fraction(expr[2:]))
        return lambda q: min(q, max(1, math.ceil(q ** e - 1e-9)))
    try:
        n = int(expr)
    except ValueError:
        raise ValueError(f"cannot parse N-rule {expr!r}") from None
    return lambda q: min(q, n)


@dataclass
class FamilyConfig:
    qs: list[int] | None = None
    q_min: int = 1000
    q_max: int = 10**6
    delta_max: float = 0.4
    count: int | None = 24
    n_rule: str = "sqrt"
    char_cap: int = 4096
    seed: int = 0
    extra: dict = field(default_factory=dict)


def smooth_family(q_min: int, q_max: int, delta_max: float, count: int | None = None,
                  min_primes: int = 2, min_chars: int = 1) -> list[SquarefreeModulus]:
    """Odd squarefree q in [q_min, q_max] with every prime <= q^delta_max and
    at least ``min_chars`` primitive characters.

    Moduli are built from products of primes <= q_max^delta_max; with
    ``count`` set, that many are picked evenly spaced in log q.
    """
    bound = int(q_max ** delta_max) + 1
    primes = [p for p in range(3, bound + 1) if all(p % d for d in range(2, math.isqrt(p) + 1))]
    found: list[int] = []

    def rec(i, prod, used):
        if prod > q_max:
            return
        if used >= min_primes and prod >= q_min:
            found.append(prod)
        for j in range(i, len(primes)):
            if prod * primes[j] > q_max:
                break
            rec(j + 1, prod * primes[j], used + 1)

    rec(0, 1, 0)
    mods = [m for m in (factor_squarefree(q) for q in sorted(set(found)))
            if m.is_smooth(delta_max) and primitive_count(m.q) >= min_chars]
    if count is None or len(mods) <= count:
        return mods
    logs = np.log([m.q for m in mods])
    picks = []
    for t in np.linspace(logs[0], logs[-1], count):
        i = int(np.argmin(np.abs(logs - t)))
        while i in picks and i + 1 < len(mods):
            i += 1
        if i not in picks:
            picks.append(i)
    return [mods[i] for i in sorted(picks)]


def max_initial_sum(q: int, N: int, chars) -> tuple[float, str]:
    """max over ``chars`` of |sum_{0 <= n < N} chi(n)|, vectorised over chi."""
    if not chars:
        return 0.0, ""
    n = np.arange(N, dtype=np.int64)
    mod = chars[0].modulus
    exps = np.array([c.exponents for c in chars], dtype=np.int64)
    frac = np.zeros((len(chars), N))
    unit = np.ones(N, dtype=bool)
    for col, p in enumerate(mod.primes):
        ind = prime_context(p).ind[n % p]
        unit &= ind >= 0
        frac += (np.outer(exps[:, col], np.where(ind >= 0, ind, 0)) % (p - 1)) / (p - 1)
    vals = np.exp(2j * np.pi * (frac % 1.0)) * unit
    sums = np.abs(vals.sum(axis=1))
    i = int(np.argmax(sums))
    return float(sums[i]), chars[i].name


def _workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _scan_one(mod: SquarefreeModulus, rule, cap: int, seed: int) -> FamilyRow | None:
    q = mod.q
    if primitive_count(q) == 0:
        return None
    N = rule(q)
    rng = np.random.default_rng([seed, q])
    chars = sample_primitive(q, cap, rng)
    best = 0.0
    worst = ""
    # chunk to bound memory at len(chunk) * N complex entries
    step = max(1, 4_000_000 // max(N, 1))
    for i in range(0, len(chars), step):
        v, name = max_initial_sum(q, N, chars[i:i + step])
        if v > best or not worst:
            best, worst = v, name
    bound = bound_S_theorem1(N, q)
    return FamilyRow(q, mod.delta, N, best, bound, best / bound, len(chars), worst)


def scan_family(config: FamilyConfig) -> list[FamilyRow]:
    """Max |S| over sampled primitive characters for each modulus in the family.

    Rows come back in increasing q whatever the thread count, and each q
    draws characters from its own generator seeded by (seed, q).
    """
    if config.qs is not None:
        mods = [factor_squarefree(q) for q in config.qs if q > 1 and is_squarefree(q)]
        mods = [m for m in mods if m.is_smooth(config.delta_max)]
    else:
        if config.q_min > config.q_max:
            return []
        mods = smooth_family(config.q_min, config.q_max, config.delta_max, config.count)
    rule = n_rule(config.n_rule)
    mods = sorted(mods, key=lambda m: m.q)
    work = lambda m: _scan_one(m, rule, config.char_cap, config.seed)  # noqa: E731
    if _workers() > 1:
        with ThreadPoolExecutor(_workers()) as ex:
            rows = list(ex.map(work, mods))
    else:
        rows = [work(m) for m in mods]
    return [r for r in rows if r is not None]


def rows_to_csv(rows: list[FamilyRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(ROW_FIELDS)
    for r in rows:
        w.writerow([r.q, f"{r.delta:.12g}", r.N, f"{r.max_abs_S:.12g}",
                    f"{r.bound_value:.12g}", f"{r.ratio:.12g}"])
    return buf.getvalue()


def rows_to_dicts(rows: list[FamilyRow]) -> list[dict]:
    return [asdict(r) for r in rows]


def fit_exponent(rows) -> float:
    """Least-squares slope of log(value) against log(q).

    ``rows`` holds FamilyRow objects or (q, value) pairs.
    """
    pts = [(r.q, r.max_abs_S) if isinstance(r, FamilyRow) else (r[0], r[1]) for r in rows]
    if len(pts) < 3:
        raise Degenerate("at least three rows are needed for a slope")
    x = np.log([float(q) for q, _ in pts])
    if np.ptp(x) == 0:
        raise Degenerate("all rows share the same q")
    y = np.log([float(v) for _, v in pts])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
