"""Central values L(1/2, chi) by two independent routes.

* Hurwitz route: L(s, chi) = q^{-s} sum_{a mod q} chi(a) zeta(s, a/q), with
  zeta(1/2, .) from Euler-Maclaurin summation.
* Smoothed route (approximate functional equation): with kappa the parity
  of chi, a = (1/2 + kappa)/2 and V(y) = Gamma(a, pi y^2)/Gamma(a),

      L(1/2, chi) = sum_n chi(n) n^{-1/2} V(n/sqrt q)
                    + eps(chi) sum_n conj chi(n) n^{-1/2} V(n/sqrt q),

  where eps(chi) = tau(chi) / (i^kappa sqrt q).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import special

from .bounds_lab import MAIN_N_EXP, MAIN_Q_EXP, fit_exponent, smooth_family
from .characters import DirichletCharacter, gauss_sum, sample_primitive
from .errors import NotPrimitive
from .reports import BoundReport

EM_SHIFT = 20
EM_ORDER = 10
AFE_CUTOFF = 10.0

# B_2, B_4, ..., B_20
_BERNOULLI = [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30), Fraction(5, 66),
              Fraction(-691, 2730), Fraction(7, 6), Fraction(-3617, 510), Fraction(43867, 798),
              Fraction(-174611, 330)]


def hurwitz_zeta(s: float, a, shift: int = EM_SHIFT, order: int = EM_ORDER) -> np.ndarray:
    """zeta(s, a) for real s != 1 and an array of a > 0 by Euler-Maclaurin.

    Sums the first ``shift`` terms directly, then adds the integral tail,
    the half term and ``order`` Bernoulli corrections at a + shift.
    """
    a = np.asarray(a, dtype=float)
    n = np.arange(shift)
    head = np.sum((a[..., None] + n) ** (-s), axis=-1)
    x = a + shift
    tail = x ** (1 - s) / (s - 1) + 0.5 * x ** (-s)
    rising = s  # s (s+1) ... (s + 2j - 2)
    fact = 2.0  # (2j)!
    for j in range(1, order + 1):
        tail = tail + float(_BERNOULLI[j - 1]) / fact * rising * x ** (-s - 2 * j + 1)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
    return head + tail


def _require_primitive(chi: DirichletCharacter):
    if not chi.is_primitive:
        raise NotPrimitive(f"{chi.name} is not primitive")


def l_half_hurwitz(chi: DirichletCharacter) -> complex:
    _require_primitive(chi)
    q = chi.q
    a = np.arange(1, q)
    vals = chi.table[1:]
    mask = np.abs(vals) > 0.5
    z = hurwitz_zeta(0.5, a[mask] / q)
    return complex(np.sum(vals[mask] * z) / math.sqrt(q))


def root_number(chi: DirichletCharacter) -> complex:
    """eps(chi) = tau(chi) / (i^kappa sqrt q); has modulus one."""
    return gauss_sum(chi) / ((1j ** chi.parity()) * math.sqrt(chi.q))


@dataclass(frozen=True)
class SmoothingWeight:
    """V(y) = Gamma(a, pi y^2) / Gamma(a) with a = (1/2 + kappa)/2."""

    kappa: int

    @property
    def a(self) -> float:
        return (0.5 + self.kappa) / 2

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        return special.gammaincc(self.a, math.pi * y * y)

    def derivative(self, y):
        y = np.asarray(y, dtype=float)
        a = self.a
        return -2 * math.pi ** a * y ** (2 * a - 1) * np.exp(-math.pi * y * y) / special.gamma(a)

    def decay_constants(self, y) -> tuple[float, float]:
        """Smallest c with |V| <= c/(1+y) and |V'| <= c/(y(1+y)) on the sample."""
        y = np.asarray(y, dtype=float)
        c_v = float(np.max(np.abs(self(y)) * (1 + y)))
        c_d = float(np.max(np.abs(self.derivative(y)) * y * (1 + y)))
        return c_v, c_d


def l_half_afe(chi: DirichletCharacter, cutoff: float = AFE_CUTOFF) -> complex:
    """Smoothed two-sum evaluation, truncated at n <= cutoff * sqrt(q)."""
    _require_primitive(chi)
    q = chi.q
    n_max = int(math.ceil(cutoff * math.sqrt(q)))
    n = np.arange(1, n_max + 1)
    v = SmoothingWeight(chi.parity())(n / math.sqrt(q)) / np.sqrt(n)
    vals = chi.table[n % q]
    first = np.sum(vals * v)
    second = np.sum(np.conj(vals) * v)
    return complex(first + root_number(chi) * second)


def partial_sum_bound_check(chi: DirichletCharacter, grid) -> BoundReport:
    """max over x in ``grid`` of |sum_{n<=x} chi(n)| / (x^{23/41} q^{11/82})."""
    q = chi.q
    grid = sorted(int(x) for x in grid)
    report = BoundReport(f"partial_sums {chi.name}")
    if not grid:
        return report
    n = np.arange(1, grid[-1] + 1)
    cums = np.cumsum(chi.table[n % q])
    for x in grid:
        lhs = abs(cums[x - 1]) if x >= 1 else 0.0
        rhs = x ** float(MAIN_N_EXP) * q ** float(MAIN_Q_EXP)
        report.add(f"{chi.name} x={x}", lhs, rhs, "partial")
    return report


def central_value_exponent(n_exp: Fraction = MAIN_N_EXP,
                           q_exp: Fraction = MAIN_Q_EXP) -> Fraction:
    """q-exponent of L(1/2) obtained from |sum_{n<=x} chi| << x^{n_exp} q^{q_exp}.

    Partial summation against x^{-3/2} (1 + x/sqrt q)^{-1} splits at sqrt q;
    for 1/2 < n_exp < 3/2 both pieces are of size q^{(n_exp - 1/2)/2}.
    """
    n_exp, q_exp = Fraction(n_exp), Fraction(q_exp)
    if not Fraction(1, 2) < n_exp < Fraction(3, 2):
        raise ValueError("exponent must lie strictly between 1/2 and 3/2")
    return q_exp + (n_exp - Fraction(1, 2)) / 2


def split_integral(q: float, n_exp: Fraction = MAIN_N_EXP) -> tuple[float, float]:
    """Closed forms of int_1^{sqrt q} x^{e-3/2} dx and sqrt(q) int_{sqrt q}^inf x^{e-5/2} dx."""
    e = float(n_exp)
    r = math.sqrt(q)
    first = (r ** (e - 0.5) - 1) / (e - 0.5)
    second = r * r ** (e - 1.5) / (1.5 - e)
    return first, second


@dataclass
class LRow:
    q: int
    char_id: str
    value: complex
    method: str


L_FIELDS = ("q", "char_id", "re_L", "im_L", "abs_L", "method")


def l_rows_to_csv(rows: list[LRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(L_FIELDS)
    for r in rows:
        w.writerow([r.q, r.char_id, f"{r.value.real:.15g}", f"{r.value.imag:.15g}",
                    f"{abs(r.value):.15g}", r.method])
    return buf.getvalue()


@dataclass
class LFamilyReport:
    rows: list[tuple[int, float, str]]  # (q, max |L|, worst character)
    slope: float | None

    def to_dict(self) -> dict:
        return {"rows": [{"q": q, "max_abs_L": v, "char_id": c} for q, v, c in self.rows],
                "slope": self.slope, "central_exponent": str(central_value_exponent())}


def scan_l_family(qs=None, q_min: int = 100, q_max: int = 10**4, delta_max: float = 0.5,
                  count: int = 20, char_cap: int = 64, seed: int = 0) -> LFamilyReport:
    """max |L(1/2, chi)| over sampled primitive characters for each q, and the
    least-squares slope of log max |L| against log q (None below 3 rows).

    A generated family only admits q with at least ``char_cap`` primitive
    characters, so every row is a maximum over the same number of draws;
    otherwise the slope mostly measures how the character count grows.
    """
    if qs is None:
        if q_min > q_max:
            qs = []
        else:
            qs = [m.q for m in smooth_family(q_min, q_max, delta_max, count, min_chars=char_cap)]
    rows = []
    for q in sorted(qs):
        rng = np.random.default_rng([seed, q])
        chars = sample_primitive(q, char_cap, rng)
        if not chars:
            continue
        vals = [(abs(l_half_afe(c)), c.name) for c in chars]
        best = max(vals)
        rows.append((q, best[0], best[1]))
    slope = fit_exponent([(q, v) for q, v, _ in rows]) if len(rows) >= 3 else None
    return LFamilyReport(rows, slope)
