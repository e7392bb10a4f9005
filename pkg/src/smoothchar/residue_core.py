"""Modular arithmetic primitives: squarefree factorization, primitive roots,
discrete-log tables, inverses and additive characters."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NotCoprime, NotSquarefree

MAX_MODULUS = 2**40


@dataclass(frozen=True)
class SquarefreeModulus:
    q: int
    primes: tuple[int, ...]
    delta: float

    def __post_init__(self):
        if math.prod(self.primes) != self.q:
            raise ValueError(f"primes {self.primes} do not multiply to {self.q}")

    @property
    def omega(self) -> int:
        return len(self.primes)

    def divisors(self) -> list[int]:
        """All divisors of q, in increasing order."""
        divs = [1]
        for p in self.primes:
            divs += [d * p for d in divs]
        return sorted(divs)

    def is_smooth(self, delta_max: float) -> bool:
        return self.delta <= delta_max + 1e-12


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factor_squarefree(q: int) -> SquarefreeModulus:
    """Factor ``q`` by trial division and check it is squarefree.

    >>> factor_squarefree(15015).primes
    (3, 5, 7, 11, 13)
    """
    q = int(q)
    if q < 1:
        raise ValueError(f"modulus must be positive, got {q}")
    if q > MAX_MODULUS:
        raise ValueError(f"modulus {q} exceeds the 2^40 cap")
    primes = []
    n = q
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                raise NotSquarefree(f"{p}^2 divides {q}")
            primes.append(p)
        p += 1 if p == 2 else 2
    if n > 1:
        primes.append(n)
    delta = math.log(primes[-1]) / math.log(q) if q > 1 else 0.0
    return SquarefreeModulus(q, tuple(primes), delta)


def is_squarefree(q: int) -> bool:
    try:
        factor_squarefree(q)
    except NotSquarefree:
        return False
    return True


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest generator of the unit group mod the prime ``p`` (1 for p = 2)."""
    if p == 2:
        return 1
    order = p - 1
    factors = [f for f in range(2, order + 1) if order % f == 0 and is_prime(f)]
    for g in range(2, p):
        if all(pow(g, order // f, p) != 1 for f in factors):
            return g
    raise ValueError(f"{p} is not prime")


@dataclass(frozen=True, eq=False)
class PrimeContext:
    """Primitive root and discrete-log table for one prime.

    ``ind[n]`` is the exponent j with g^j = n (mod p); ``ind[0]`` is -1.
    """

    p: int
    g: int
    ind: np.ndarray

    def dlog(self, n: int) -> int:
        return int(self.ind[n % self.p])


@lru_cache(maxsize=None)
def prime_context(p: int) -> PrimeContext:
    g = primitive_root(p)
    ind = np.full(p, -1, dtype=np.int64)
    x = 1
    for j in range(p - 1):
        ind[x] = j
        x = x * g % p
    ind.flags.writeable = False
    return PrimeContext(p, g, ind)


def inverse_mod(a: int, m: int) -> int:
    if m < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(a, m) != 1:
        raise NotCoprime(f"gcd({a}, {m}) = {math.gcd(a, m)}")
    if m == 1:
        return 0
    return pow(a, -1, m)


def unit_phase(q: int, t: int) -> complex:
    """e_q(t) = exp(2 pi i t / q), with t reduced mod q first."""
    return cmath.exp(2j * math.pi * ((t % q) / q))


def unit_phases(q: int, t) -> np.ndarray:
    """Vectorised ``unit_phase`` over an integer array."""
    t = np.asarray(t, dtype=np.int64) % q
    return np.exp(2j * np.pi * t / q)


def mobius(n: int) -> int:
    if n == 1:
        return 1
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]
