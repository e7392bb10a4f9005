"""Dirichlet characters to squarefree moduli.

A character mod q = p_1 ... p_r is stored as one exponent a_p per prime,
measured against the least primitive root g_p:

    chi_p(g_p^j) = exp(2 pi i a_p j / (p - 1)),   chi = prod_p chi_p.

Equality and hashing use (q, exponents), which is canonical because g_p is
fixed.  Names follow ``"q:p1^a1,p2^a2"``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import BadFactor, NotPrimitive
from .residue_core import SquarefreeModulus, factor_squarefree, prime_context


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: SquarefreeModulus
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != len(self.modulus.primes):
            raise ValueError("one exponent per prime is required")
        for p, a in zip(self.modulus.primes, self.exponents):
            if not 0 <= a <= max(p - 2, 0):
                raise ValueError(f"exponent {a} out of range for p={p}")

    @classmethod
    def from_components(cls, q: int, components: dict[int, int]) -> "DirichletCharacter":
        mod = factor_squarefree(q)
        if set(components) - set(mod.primes):
            raise ValueError(f"components {components} not all primes of {q}")
        return cls(mod, tuple(components.get(p, 0) for p in mod.primes))

    @classmethod
    def from_name(cls, name: str) -> "DirichletCharacter":
        """Parse ``"15:3^1,5^2"``; missing primes get exponent 0."""
        q_part, _, comps = name.strip().partition(":")
        components = {}
        for item in filter(None, (c.strip() for c in comps.split(","))):
            p, _, a = item.partition("^")
            components[int(p)] = int(a) if a else 1
        return cls.from_components(int(q_part), components)

    @property
    def q(self) -> int:
        return self.modulus.q

    @property
    def components(self) -> dict[int, int]:
        return dict(zip(self.modulus.primes, self.exponents))

    @property
    def name(self) -> str:
        comps = ",".join(f"{p}^{a}" for p, a in zip(self.modulus.primes, self.exponents))
        return f"{self.q}:{comps}"

    def __str__(self):
        return self.name

    @property
    def is_primitive(self) -> bool:
        # the character mod 1 is flagged non-primitive by convention
        return self.q > 1 and all(a != 0 for a in self.exponents)

    def conj(self) -> "DirichletCharacter":
        exps = tuple((-a) % (p - 1) if p > 2 else 0
                     for p, a in zip(self.modulus.primes, self.exponents))
        return DirichletCharacter(self.modulus, exps)

    @cached_property
    def _prime_phases(self) -> tuple[tuple[int, np.ndarray], ...]:
        # per prime: (p, table of a_p * ind_p(n) mod (p-1), -1 at n = 0)
        out = []
        for p, a in zip(self.modulus.primes, self.exponents):
            ind = prime_context(p).ind
            ph = np.where(ind >= 0, (a * ind) % max(p - 1, 1), -1)
            out.append((p, ph))
        return tuple(out)

    def phases(self, n) -> tuple[np.ndarray, np.ndarray]:
        """Fractional phase in [0, 1) and unit mask for integer array ``n``."""
        n = np.asarray(n, dtype=np.int64)
        frac = np.zeros(n.shape, dtype=float)
        unit = np.ones(n.shape, dtype=bool)
        for p, ph in self._prime_phases:
            e = ph[n % p]
            unit &= e >= 0
            frac += np.where(e >= 0, e, 0) / max(p - 1, 1)
        return frac % 1.0, unit

    def values(self, n) -> np.ndarray:
        """Evaluate at every entry of an integer array."""
        frac, unit = self.phases(n)
        return np.where(unit, np.exp(2j * np.pi * frac), 0.0)

    @cached_property
    def table(self) -> np.ndarray:
        """chi(0), ..., chi(q-1)."""
        t = self.values(np.arange(self.q))
        t.flags.writeable = False
        return t

    def __call__(self, n: int) -> complex:
        return complex(self.values(np.array([n]))[0])

    def parity(self) -> int:
        """0 if chi(-1) = 1, 1 if chi(-1) = -1."""
        kappa = 0
        for p, a in zip(self.modulus.primes, self.exponents):
            # ind_p(-1) = (p-1)/2 so chi_p(-1) = (-1)^a
            if p > 2:
                kappa ^= a & 1
        return kappa


def eval(chi: DirichletCharacter, n: int) -> complex:  # noqa: A001 - mirrors the math name
    return chi(n)


def trivial_character(q: int = 1) -> DirichletCharacter:
    mod = factor_squarefree(q)
    return DirichletCharacter(mod, (0,) * mod.omega)


def crt_split_character(chi: DirichletCharacter, u: int, v: int):
    """Split chi mod q = u v into (chi_u, chi_v) with chi = chi_u * chi_v."""
    if u < 1 or v < 1 or u * v != chi.q or math.gcd(u, v) != 1:
        raise BadFactor(f"{u} * {v} is not a coprime factorization of {chi.q}")
    comps = chi.components
    chi_u = DirichletCharacter.from_components(u, {p: a for p, a in comps.items() if u % p == 0})
    chi_v = DirichletCharacter.from_components(v, {p: a for p, a in comps.items() if v % p == 0})
    return chi_u, chi_v


def primitive_count(q: int) -> int:
    mod = factor_squarefree(q)
    if q == 1:
        return 0
    return math.prod(p - 2 for p in mod.primes)


def enumerate_primitive(q: int) -> list[DirichletCharacter]:
    """All primitive characters mod squarefree q, lexicographic in exponents."""
    mod = factor_squarefree(q)
    if q == 1:
        return []
    ranges = [range(1, p - 1) for p in mod.primes]
    return [DirichletCharacter(mod, exps) for exps in itertools.product(*ranges)]


def sample_primitive(q: int, cap: int, rng: np.random.Generator) -> list[DirichletCharacter]:
    """All primitive characters if there are at most ``cap``, else ``cap``
    distinct ones drawn uniformly."""
    mod = factor_squarefree(q)
    total = primitive_count(q)
    if total <= cap:
        return enumerate_primitive(q)
    picks = rng.choice(total, size=cap, replace=False)
    picks.sort()
    out = []
    for idx in picks:
        exps = []
        idx = int(idx)
        for p in reversed(mod.primes):
            idx, r = divmod(idx, p - 2)
            exps.append(r + 1)
        out.append(DirichletCharacter(mod, tuple(reversed(exps))))
    return out


def gauss_sum(chi: DirichletCharacter) -> complex:
    """tau(chi) = sum_n chi(n) e_q(n)."""
    if not chi.is_primitive:
        raise NotPrimitive(f"{chi.name} is not primitive")
    n = np.arange(chi.q)
    return complex(np.sum(chi.table * np.exp(2j * np.pi * n / chi.q)))
