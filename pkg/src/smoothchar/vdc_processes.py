"""Executable A-process (differencing) and B-process (completion).

Each routine computes both sides of the corresponding inequality for a
concrete input so that the inequality can be checked numerically.  Intervals
are half-open: ``Interval(M, N)`` is {M, ..., M+N-1}.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

from .characters import DirichletCharacter
from .complete_sums import subset_shifts
from .errors import LengthExceedsModulus
from .residue_core import divisors, mobius

A_PROCESS_CONSTANT = 4


@dataclass(frozen=True)
class Interval:
    start: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("interval length must be non-negative")

    @property
    def stop(self) -> int:
        return self.start + self.length

    def points(self) -> np.ndarray:
        return np.arange(self.start, self.stop, dtype=np.int64)

    def contains(self, other: "Interval") -> bool:
        return other.length == 0 or (self.start <= other.start and other.stop <= self.stop)

    def __contains__(self, n: int) -> bool:
        return self.start <= n < self.stop


def char_sum(chi: DirichletCharacter, interval: Interval) -> complex:
    return complex(np.sum(chi.values(interval.points())))


def shifted_char_sum(chi: DirichletCharacter, h: int, interval: Interval) -> complex:
    """T = sum_{n in I} chi(n) conj chi(n + h)."""
    n = interval.points()
    return complex(np.sum(chi.values(n) * np.conj(chi.values(n + h))))


def _table_at(table: np.ndarray, n: np.ndarray) -> np.ndarray:
    return table[n % len(table)]


# ---------------------------------------------------------------- A-process

@dataclass
class AProcessReport:
    lhs: float
    rhs_main: float
    rhs_sum: float
    H: int
    per_h: list[tuple[int, tuple[int, int], complex]] = field(default_factory=list)
    constant: float = A_PROCESS_CONSTANT

    @property
    def rhs(self) -> float:
        return self.rhs_main + self.rhs_sum

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs > 0 else 0.0

    @property
    def holds(self) -> bool:
        return self.lhs <= self.constant * self.rhs * (1 + 1e-12)

    def to_json(self) -> str:
        d = asdict(self)
        d["per_h"] = [[h, list(iv), [v.real, v.imag]] for h, iv, v in self.per_h]
        return json.dumps(d, sort_keys=True)


def a_process(f0, f1, interval: Interval) -> AProcessReport:
    """One differencing step for f = f0 f1, with f_i periodic mod len(f_i).

    With q1 = len(f1) and H = floor(N / q1) the right side is
    q1 N + q1 sum_{0<|h|<=H} |sum_{n in I(h)} f0(n) conj f0(n + q1 h)|,
    where I(h) = {n in I : n + q1 h in I}.
    """
    f0 = np.asarray(f0, dtype=complex)
    f1 = np.asarray(f1, dtype=complex)
    q1 = len(f1)
    N = interval.length
    n = interval.points()
    total = np.sum(_table_at(f0, n) * _table_at(f1, n))
    lhs = float(abs(total) ** 2)
    H = N // q1
    per_h = []
    acc = 0.0
    for h in itertools.chain(range(-H, 0), range(1, H + 1)):
        shift = q1 * h
        lo = max(interval.start, interval.start - shift)
        hi = min(interval.stop, interval.stop - shift)
        m = np.arange(lo, max(lo, hi), dtype=np.int64)
        inner = complex(np.sum(_table_at(f0, m) * np.conj(_table_at(f0, m + shift))))
        per_h.append((h, (int(lo), int(max(lo, hi) - lo)), inner))
        acc += abs(inner)
    return AProcessReport(lhs=lhs, rhs_main=float(q1 * N), rhs_sum=float(q1 * acc), H=H, per_h=per_h)


@dataclass
class IteratedAReport:
    k: int
    lhs: float
    rhs_terms: list[float]
    rhs_diff: float
    tuples: int

    @property
    def rhs(self) -> float:
        return sum(self.rhs_terms) + self.rhs_diff

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs > 0 else 0.0


def differenced_sum(f0, interval: Interval, shifts) -> complex:
    """sum_{n in I(shifts)} f0(n; s_1, ..., s_k), where I(shifts) keeps the n
    for which every n + sum_{i in J} s_i lies in I."""
    f0 = np.asarray(f0, dtype=complex)
    subs = subset_shifts(tuple(shifts))
    lo = interval.start - min(s for s, _ in subs)
    hi = interval.stop - max(s for s, _ in subs)
    if hi <= lo:
        return 0j
    n = np.arange(lo, hi, dtype=np.int64)
    prod = np.ones(len(n), dtype=complex)
    for s, conj in subs:
        v = _table_at(f0, n + s)
        prod *= np.conj(v) if conj else v
    return complex(np.sum(prod))


def a_process_iterated(factors, tables, interval: Interval) -> IteratedAReport:
    """k-fold differencing for f = f_0 f_1 ... f_k, f_i periodic mod q_i.

    ``factors`` is (q_0, ..., q_k) and ``tables[i]`` holds f_i on Z/q_iZ.
    The right side is

        sum_{j=1}^k N^{2^k - 2^{k-j}} q_{k-j+1}^{2^{k-j}}
        + N^{2^k-k-1} (q/q_0) sum_{0<|h_i|<=N/q_i} |sum_n f_0(n; q_1 h_1, .., q_k h_k)|.
    """
    factors = [int(v) for v in factors]
    k = len(factors) - 1
    if not 1 <= k <= 3:
        raise ValueError("k must be between 1 and 3")
    if len(tables) != k + 1 or any(len(t) != qi for t, qi in zip(tables, factors)):
        raise ValueError("one table of length q_i per factor is required")
    N = interval.length
    q = math.prod(factors)
    n = interval.points()
    f = np.ones(len(n), dtype=complex)
    for t in tables:
        f *= _table_at(np.asarray(t, dtype=complex), n)
    lhs = float(abs(np.sum(f)) ** (2**k))
    terms = [float(N) ** (2**k - 2 ** (k - j)) * float(factors[k - j + 1]) ** (2 ** (k - j))
             for j in range(1, k + 1)]
    ranges = []
    for qi in factors[1:]:
        Hi = N // qi
        ranges.append([h for h in range(-Hi, Hi + 1) if h != 0])
    acc = 0.0
    count = 0
    for hs in itertools.product(*ranges):
        shifts = [qi * hi for qi, hi in zip(factors[1:], hs)]
        acc += abs(differenced_sum(tables[0], interval, shifts))
        count += 1
    diff = float(N) ** (2**k - k - 1) * (q / factors[0]) * acc
    return IteratedAReport(k=k, lhs=lhs, rhs_terms=terms, rhs_diff=diff, tuples=count)


# ---------------------------------------------------------------- B-process

def fourier(f) -> np.ndarray:
    """Unitary transform fhat(x) = q^{-1/2} sum_n f(n) e_q(n x)."""
    f = np.asarray(f, dtype=complex)
    q = len(f)
    return math.sqrt(q) * np.fft.ifft(f)


def interval_indicator(interval: Interval, q: int) -> np.ndarray:
    ind = np.zeros(q, dtype=float)
    np.add.at(ind, interval.points() % q, 1.0)
    return ind


@dataclass
class BProcessReport:
    plancherel_residual: float
    term_zero: float
    window_max: float
    window_length: int
    q: int = 1
    N: int = 0
    direct_sum: complex = 0j
    window_argmax: tuple[int, int] = (0, 0)
    windows_checked: int = 0

    @property
    def rhs(self) -> float:
        """N |fhat(0)|/sqrt(q) + (N log q / sqrt(q)) window_max."""
        return self.term_zero + self.N * math.log(self.q) / math.sqrt(self.q) * self.window_max

    def to_json(self) -> str:
        d = asdict(self)
        d["direct_sum"] = [self.direct_sum.real, self.direct_sum.imag]
        d["window_argmax"] = list(self.window_argmax)
        return json.dumps(d, sort_keys=True)


def b_process(f, interval: Interval, N: int | None = None) -> BProcessReport:
    """Completion of sum_{n in I} f(n) for I inside [M, M + N), N <= q.

    The Plancherel identity sum_I f = sum_x fhat(x) conj(Ihat(x)) is
    evaluated and its residual recorded.  The frequency range is identified
    with (-q/2, q/2] and cut into blocks of length ceil(q/N) running up from
    x = 1 and down from x = -1; within each block every prefix J is a window,
    and window_max = max_J |sum_{x in J} fhat(x) e_q(-M x)|.
    """
    f = np.asarray(f, dtype=complex)
    q = len(f)
    M = interval.start
    N = interval.length if N is None else int(N)
    if interval.length > N:
        raise ValueError("interval longer than the enclosing length N")
    if N > q:
        raise LengthExceedsModulus(f"N = {N} exceeds q = {q}")
    direct = complex(np.sum(_table_at(f, interval.points())))
    fh = fourier(f)
    ih = fourier(interval_indicator(interval, q))
    residual = abs(direct - complex(np.sum(fh * np.conj(ih))))
    term_zero = N * abs(fh[0]) / math.sqrt(q)

    L = math.ceil(q / N) if N > 0 else q
    x = np.arange(q)
    twisted = fh * np.exp(-2j * np.pi * ((M % q) * x % q) / q)
    best, arg, checked = 0.0, (0, 0), 0
    for sign in (1, -1):
        top = q // 2 if sign == 1 else (q - 1) // 2
        for start in range(1, top + 1, L):
            stop = min(start + L, top + 1)
            idx = (sign * np.arange(start, stop)) % q
            partial = np.abs(np.cumsum(twisted[idx]))
            checked += len(partial)
            j = int(np.argmax(partial))
            if partial[j] > best:
                best = float(partial[j])
                arg = (sign * start, sign * (start + j))
    return BProcessReport(plancherel_residual=float(residual), term_zero=float(term_zero),
                          window_max=best, window_length=L, q=q, N=N, direct_sum=direct,
                          window_argmax=arg, windows_checked=checked)


def nearest_int_distance(x: int, q: int) -> Fraction:
    """||x/q|| as an exact fraction in [0, 1/2]."""
    if q < 1:
        raise ValueError("q must be positive")
    r = x % q
    return Fraction(min(r, q - r), q)


def completion_bound(f, interval: Interval) -> float:
    """N |fhat(0)| / sqrt(q) + q^{-1/2} sum_{x != 0} |fhat(x)| / ||x/q||."""
    f = np.asarray(f, dtype=complex)
    q = len(f)
    fh = np.abs(fourier(f))
    x = np.arange(1, q)
    dist = np.minimum(x, q - x) / q
    return float(interval.length * fh[0] / math.sqrt(q) + np.sum(fh[1:] / dist) / math.sqrt(q))


def completion_check(f, interval: Interval) -> tuple[float, float]:
    """(|sum_{n in I} f(n)|, completion_bound) -- the sum may exceed one period."""
    f = np.asarray(f, dtype=complex)
    lhs = abs(complex(np.sum(_table_at(f, interval.points()))))
    return lhs, completion_bound(f, interval)


# ---------------------------------------------------------------- gcd sums

def gcd_sum_brute(H: int, q: int) -> int:
    return sum(math.gcd(h, q) for h in range(1, H + 1))


def _coprime_count(X: int, r: int) -> int:
    # #{1 <= m <= X : gcd(m, r) = 1}
    return sum(mobius(e) * (X // e) for e in divisors(r))


def gcd_sum(H: int, q: int) -> int:
    """sum_{0<h<=H} (h, q) via sum_{d|q} d * #{h <= H : (h, q) = d}."""
    if H < 1:
        raise ValueError("H must be at least 1")
    return sum(d * _coprime_count(H // d, q // d) for d in divisors(q))


# prefix tables: _LCM[n] = lcm(1..n), _HARM[n] = 1 + 1/2 + ... + 1/n
_LCM = [1, 1]
_HARM = [Fraction(0), Fraction(1)]


def _grow(n: int):
    for j in range(len(_LCM), n + 1):
        _LCM.append(_LCM[-1] * j // math.gcd(_LCM[-1], j))
        _HARM.append(_HARM[-1] + Fraction(1, j))


def _lcm_upto(n: int) -> int:
    _grow(n)
    return _LCM[n]


def gcd_sum_weighted_brute(H: int, q: int) -> Fraction:
    D = _lcm_upto(H)
    return Fraction(sum(math.gcd(h, q) * (D // h) for h in range(1, H + 1)), D)


def gcd_sum_weighted(H: int, q: int) -> Fraction:
    """sum_{0<h<=H} (h, q)/h, exactly.

    Writing h = d m with d = (h, q) gives
    sum_{d|q} sum_{e | q/d} mu(e)/e * H_{floor(H/(d e))}, H_n harmonic.
    """
    if H < 1:
        raise ValueError("H must be at least 1")
    D = _lcm_upto(H)
    num = 0
    for d in divisors(q):
        r = q // d
        for e in divisors(r):
            mu = mobius(e)
            if mu:
                # e j <= H for j <= n, so e j | D and e divides D H_n
                n = H // (d * e)
                if n:
                    h = _HARM[n]
                    num += mu * (D // h.denominator * h.numerator // e)
    return Fraction(num, D)
