"""Complete sums built from a primitive character chi mod squarefree q.

    W_{chi,h}(x)          = sum_{n mod q} chi(n) conj(chi(n+h)) e_q(n x)
    W(x; h_1..h_k)        = prod_{I subset [k]} W(x + sum_I h_i)^{sigma(I)}
    K_{chi,h}(h_1..h_k,y) = sum_{x mod q} e_q(x y) W_{chi,h}(x; h_1..h_k)

sigma(I) means complex conjugation when |I| is odd; the empty subset is
part of the product.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .characters import DirichletCharacter, crt_split_character, enumerate_primitive, sample_primitive
from .errors import BadFactor, NotPrimitive
from .reports import BoundReport
from .residue_core import factor_squarefree, inverse_mod, is_prime, unit_phase

NAIVE_DFT_LIMIT = 512
MAX_K = 3


@dataclass(frozen=True)
class ShiftSpec:
    h: int
    diff_shifts: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.diff_shifts) > MAX_K:
            raise ValueError(f"at most {MAX_K} differencing shifts are supported")

    @property
    def k(self) -> int:
        return len(self.diff_shifts)

    def subsets(self) -> list[tuple[int, bool]]:
        return subset_shifts(self.diff_shifts)


def subset_shifts(diff_shifts) -> list[tuple[int, bool]]:
    """(sum_{i in I} h_i, conjugate?) for every subset I, empty set first."""
    out = []
    k = len(diff_shifts)
    for mask in range(1 << k):
        s = sum(diff_shifts[i] for i in range(k) if mask >> i & 1)
        out.append((s, bin(mask).count("1") % 2 == 1))
    return out


@dataclass(frozen=True, eq=False)
class WTable:
    chi: DirichletCharacter
    h: int
    values: np.ndarray

    @property
    def q(self) -> int:
        return self.chi.q

    def __getitem__(self, x):
        return self.values[np.asarray(x) % self.q]

    def parseval_expected(self) -> int:
        f = self.chi.table * np.conj(np.roll(self.chi.table, -(self.h % self.q)))
        return self.q * int(np.count_nonzero(np.abs(f) > 0.5))


def _require_primitive(chi: DirichletCharacter):
    if not chi.is_primitive:
        raise NotPrimitive(f"{chi.name} is not primitive")


def _shift_product_sequence(chi: DirichletCharacter, h: int) -> np.ndarray:
    # f(n) = chi(n) conj chi(n + h), n = 0..q-1
    t = chi.table
    return t * np.conj(np.roll(t, -(h % chi.q)))


def w_sum(chi: DirichletCharacter, h: int, x: int) -> complex:
    """Direct O(q) evaluation of W_{chi,h}(x)."""
    _require_primitive(chi)
    q = chi.q
    n = np.arange(q)
    f = _shift_product_sequence(chi, h)
    return complex(np.sum(f * np.exp(2j * np.pi * ((n * (x % q)) % q) / q)))


def dft_forward(f: np.ndarray) -> np.ndarray:
    """F(x) = sum_n f(n) e_q(n x) for all x mod q = len(f).

    Dense matrix product below NAIVE_DFT_LIMIT, FFT above.
    """
    q = len(f)
    if q < NAIVE_DFT_LIMIT:
        n = np.arange(q)
        phase = np.exp(2j * np.pi * (np.outer(n, n) % q) / q)
        return phase @ f
    return q * np.fft.ifft(f)


def w_table(chi: DirichletCharacter, h: int) -> WTable:
    _require_primitive(chi)
    vals = dft_forward(_shift_product_sequence(chi, h))
    vals.flags.writeable = False
    return WTable(chi, h, vals)


def twist_check(chi: DirichletCharacter, h: int, a: int) -> float:
    """max_x |W_{chi,h}(a x) - W_{chi,a h}(x)| for a unit a."""
    q = chi.q
    if math.gcd(a, q) != 1:
        raise ValueError(f"{a} is not a unit mod {q}")
    left = w_table(chi, h)
    right = w_table(chi, a * h)
    x = np.arange(q)
    return float(np.max(np.abs(left[a * x] - right[x])))


def shifted_product(table: WTable, x: int, diff_shifts) -> complex:
    out = 1 + 0j
    for s, conj in subset_shifts(tuple(diff_shifts)):
        v = complex(table[x + s])
        out *= v.conjugate() if conj else v
    return out


def shifted_product_all(table: WTable, diff_shifts) -> np.ndarray:
    """W(x; h_1..h_k) for every x mod q."""
    q = table.q
    x = np.arange(q)
    out = np.ones(q, dtype=complex)
    for s, conj in subset_shifts(tuple(diff_shifts)):
        v = table.values[(x + s) % q]
        out *= np.conj(v) if conj else v
    return out


def k_sum(chi: DirichletCharacter, h: int, diff_shifts, y: int, table: WTable | None = None) -> complex:
    if len(diff_shifts) > MAX_K:
        raise ValueError(f"k <= {MAX_K} required")
    if table is None:
        table = w_table(chi, h)
    q = chi.q
    x = np.arange(q)
    prod = shifted_product_all(table, diff_shifts)
    return complex(np.sum(prod * np.exp(2j * np.pi * ((x * (y % q)) % q) / q)))


def k_sum_all(chi: DirichletCharacter, h: int, diff_shifts, table: WTable | None = None) -> np.ndarray:
    """K_{chi,h}(h_1..h_k, y) for every y mod q."""
    if table is None:
        table = w_table(chi, h)
    return dft_forward(shifted_product_all(table, diff_shifts))


def _relative(lhs: complex, rhs: complex) -> float:
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0)


def _split_parts(chi: DirichletCharacter, u: int, v: int):
    if u < 1 or v < 1 or u * v != chi.q or math.gcd(u, v) != 1:
        raise BadFactor(f"{u} * {v} is not a coprime factorization of {chi.q}")
    chi_u, chi_v = crt_split_character(chi, u, v)
    u_bar = inverse_mod(u, v)
    v_bar = inverse_mod(v, u)
    return chi_u, chi_v, u_bar, v_bar


def _w_any(chi: DirichletCharacter, h: int, x: int) -> complex:
    # the modulus-1 factor of a trivial split contributes W = 1
    return 1.0 + 0j if chi.q == 1 else w_sum(chi, h, x)


def _k_any(chi: DirichletCharacter, h: int, diff_shifts, y: int) -> complex:
    return 1.0 + 0j if chi.q == 1 else k_sum(chi, h, diff_shifts, y)


def check_w_mult(chi: DirichletCharacter, u: int, v: int, h: int, x: int) -> float:
    """Relative gap in W_{chi,h}(x) = W_{chi_u, vbar h}(x) W_{chi_v, ubar h}(x)."""
    chi_u, chi_v, u_bar, v_bar = _split_parts(chi, u, v)
    lhs = w_sum(chi, h, x)
    rhs = _w_any(chi_u, v_bar * h, x) * _w_any(chi_v, u_bar * h, x)
    return _relative(lhs, rhs)


def check_k_mult(chi: DirichletCharacter, u: int, v: int, h: int, diff_shifts, y: int) -> float:
    """Relative gap in K_{chi,h}(.., y) = K_{chi_u,vbar h}(.., vbar y) K_{chi_v,ubar h}(.., ubar y)."""
    chi_u, chi_v, u_bar, v_bar = _split_parts(chi, u, v)
    lhs = k_sum(chi, h, diff_shifts, y)
    rhs = (_k_any(chi_u, v_bar * h, diff_shifts, v_bar * y)
           * _k_any(chi_v, u_bar * h, diff_shifts, u_bar * y))
    return _relative(lhs, rhs)


def check_w_bound(moduli, instances: int | None = None, rng: np.random.Generator | None = None,
                  slack_exponent: float = 0.0, char_cap: int | None = None) -> BoundReport:
    """Ratios |W_{chi,h}(x)| / (sqrt(q) (h,x,q)^{1/2} q^{slack_exponent}).

    With ``instances=None`` every primitive chi and every (h, x) mod q is
    scanned.  Otherwise ``instances`` random (q, chi, h, x) draws are made.
    Branch "zero" is h = x = 0 mod q, branch "other" is everything else.
    """
    report = BoundReport("w_bound")
    moduli = [int(q) for q in moduli]
    if instances is None:
        for q in moduli:
            if char_cap is None:
                chars = enumerate_primitive(q)
            else:
                chars = sample_primitive(q, char_cap, rng or np.random.default_rng(0))
            x = np.arange(q)
            scale = math.sqrt(q) * q ** slack_exponent
            for chi in chars:
                for h in range(q):
                    vals = np.abs(w_table(chi, h).values)
                    rhs = scale * np.sqrt(np.gcd(np.gcd(x, h), q))
                    if h == 0:
                        report.add(f"{chi.name} h=0 x=0", vals[0], rhs[0], "zero")
                        report.add_many(vals[1:], rhs[1:], "other",
                                        lambda i, c=chi: f"{c.name} h=0 x={i + 1}")
                    else:
                        report.add_many(vals, rhs, "other",
                                        lambda i, c=chi, hh=h: f"{c.name} h={hh} x={i}")
        return report
    if rng is None:
        rng = np.random.default_rng(0)
    usable = [q for q in moduli if q > 1 and q % 2 == 1 and factor_squarefree(q)]
    for _ in range(instances):
        q = usable[int(rng.integers(len(usable)))]
        chi = sample_primitive(q, 1, rng)[0]
        h = int(rng.integers(q))
        x = int(rng.integers(q))
        lhs = abs(w_sum(chi, h, x))
        rhs = math.sqrt(q) * math.sqrt(math.gcd(math.gcd(h, x), q)) * q ** slack_exponent
        branch = "zero" if h == 0 and x == 0 else "other"
        report.add(f"{chi.name} h={h} x={x}", lhs, rhs, branch)
    return report


def is_degenerate(p: int, diff_shifts, y: int) -> bool:
    """Degenerate K-sum branch for prime p: y = 0 and some h_i = 0 (mod p)."""
    return y % p == 0 and math.prod(diff_shifts) % p == 0


def has_odd_shift(diff_shifts, p: int) -> bool:
    """Whether some subset sum of the shifts occurs an odd number of times mod p."""
    counts: dict[int, int] = {}
    for s, _ in subset_shifts(tuple(diff_shifts)):
        counts[s % p] = counts.get(s % p, 0) + 1
    return any(c % 2 for c in counts.values())


def check_k_bound(p: int, k: int, samples: int | None = None,
                  rng: np.random.Generator | None = None) -> BoundReport:
    """|K| / p^{(2^k+1)/2} on the nondegenerate branch and |K| / p^{(2^k+2)/2}
    on the degenerate one, over h != 0 mod p, all shift tuples and all y.

    ``samples=None`` scans every (chi, h); otherwise that many random
    (chi, h) pairs are drawn.
    """
    if not is_prime(p) or p < 3:
        raise ValueError(f"{p} must be an odd prime")
    if not 1 <= k <= MAX_K:
        raise ValueError(f"k must be in 1..{MAX_K}")
    report = BoundReport(f"k_bound p={p} k={k}")
    chars = enumerate_primitive(p)
    pairs = [(chi, h) for chi in chars for h in range(1, p)]
    if samples is not None and samples < len(pairs):
        rng = rng or np.random.default_rng(0)
        idx = np.sort(rng.choice(len(pairs), size=samples, replace=False))
        pairs = [pairs[i] for i in idx]

    tuples = np.array(list(itertools.product(range(p), repeat=k)), dtype=np.int64)
    subsets = subset_shifts(tuple(range(k)))  # only the parity pattern is reused
    masks = [[i for i in range(k) if m >> i & 1] for m in range(1 << k)]
    x = np.arange(p)
    degen_tuple = np.prod(tuples, axis=1) % p == 0
    nondeg_rhs = p ** ((2**k + 1) / 2)
    deg_rhs = p ** ((2**k + 2) / 2)
    for chi, h in pairs:
        table = w_table(chi, h).values
        prod = np.ones((len(tuples), p), dtype=complex)
        for (_, conj), mask in zip(subsets, masks):
            s = tuples[:, mask].sum(axis=1) if mask else np.zeros(len(tuples), dtype=np.int64)
            v = table[(x[None, :] + s[:, None]) % p]
            prod *= np.conj(v) if conj else v
        K = np.abs(p * np.fft.ifft(prod, axis=1))  # K[t, y]
        degen = np.zeros_like(K, dtype=bool)
        degen[:, 0] = degen_tuple

        def label(i, chi=chi, h=h, sel=None):
            t, y = divmod(int(sel[i]), p)
            return f"{chi.name} h={h} shifts={tuple(int(v) for v in tuples[t])} y={y}"

        flat = K.ravel()
        nd = np.flatnonzero(~degen.ravel())
        dg = np.flatnonzero(degen.ravel())
        report.add_many(flat[nd], nondeg_rhs, "nondegenerate", lambda i, sel=nd: label(i, sel=sel))
        report.add_many(flat[dg], deg_rhs, "degenerate", lambda i, sel=dg: label(i, sel=sel))
    return report


def scaled_k_sum(chi: DirichletCharacter, h: int, diff_shifts, y: int) -> complex:
    """S(y) = sum_x e_p(x y) prod_i Wn(x + t_i) prod_j conj Wn(x + s_j),

    with Wn = W / sqrt(p) the unit-normalised sum, t_i the even-subset shifts
    and s_j the odd-subset shifts (2^{k-1} of each).  Satisfies
    K = p^{2^{k-1}} S(y).
    """
    p = chi.q
    t_shifts = [s for s, odd in subset_shifts(tuple(diff_shifts)) if not odd]
    s_shifts = [s for s, odd in subset_shifts(tuple(diff_shifts)) if odd]
    total = 0j
    for x in range(p):
        term = unit_phase(p, x * y)
        for t in t_shifts:
            term *= w_sum(chi, h, x + t) / math.sqrt(p)
        for s in s_shifts:
            term *= (w_sum(chi, h, x + s) / math.sqrt(p)).conjugate()
        total += term
    return total
