import cmath
import math

import pytest
from hypothesis import given, strategies as st

from smoothchar.errors import NotCoprime, NotSquarefree
from smoothchar.residue_core import (MAX_MODULUS, factor_squarefree, inverse_mod, is_prime,
                                     is_squarefree, mobius, prime_context, primitive_root,
                                     unit_phase)


def brute_prime(n):
    return n >= 2 and all(n % d for d in range(2, n))


def test_is_prime_matches_trial_division():
    assert [n for n in range(200) if is_prime(n)] == [n for n in range(200) if brute_prime(n)]


def test_factor_15015():
    m = factor_squarefree(15015)
    assert m.primes == (3, 5, 7, 11, 13)
    assert m.delta == pytest.approx(math.log(13) / math.log(15015))


def test_factor_rejects_square():
    with pytest.raises(NotSquarefree):
        factor_squarefree(12)


def test_factor_one():
    m = factor_squarefree(1)
    assert m.primes == () and m.delta == 0


def test_factor_cap():
    with pytest.raises(ValueError):
        factor_squarefree(MAX_MODULUS + 1)


@given(st.integers(2, 10**6))
def test_factor_invariants(q):
    if not is_squarefree(q):
        with pytest.raises(NotSquarefree):
            factor_squarefree(q)
        return
    m = factor_squarefree(q)
    assert math.prod(m.primes) == q
    assert list(m.primes) == sorted(set(m.primes))
    assert all(brute_prime(p) for p in m.primes)
    assert 0 < m.delta <= 1
    for d in m.divisors():
        assert math.gcd(d, q // d) == 1


@pytest.mark.parametrize("p,g", [(2, 1), (3, 2), (5, 2), (7, 3), (11, 2), (23, 5), (41, 6)])
def test_primitive_root_smallest(p, g):
    assert primitive_root(p) == g


@pytest.mark.parametrize("p", [3, 5, 7, 13, 31, 97, 101])
def test_dlog_bijection(p):
    ctx = prime_context(p)
    assert ctx.ind[0] == -1
    assert sorted(ctx.ind[1:]) == list(range(p - 1))
    for n in range(1, p):
        assert pow(ctx.g, int(ctx.ind[n]), p) == n


def test_inverse_examples():
    assert inverse_mod(3, 7) == 5
    assert inverse_mod(1, 11) == 1
    with pytest.raises(NotCoprime):
        inverse_mod(6, 9)


@given(st.integers(-10**6, 10**6), st.integers(2, 10**4))
def test_inverse_property(a, m):
    if math.gcd(a, m) != 1:
        with pytest.raises(NotCoprime):
            inverse_mod(a, m)
    else:
        b = inverse_mod(a, m)
        assert 0 <= b < m and (a * b) % m == 1


def test_unit_phase_examples():
    assert abs(unit_phase(4, 1) - 1j) < 1e-15
    assert unit_phase(9, 0) == 1
    assert abs(unit_phase(5, 7) - cmath.exp(4j * math.pi / 5)) < 1e-12


@given(st.integers(1, 10**5), st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))
def test_unit_phase_additive(q, s, t):
    assert abs(unit_phase(q, s) * unit_phase(q, t) - unit_phase(q, s + t)) < 1e-12
    assert abs(abs(unit_phase(q, s)) - 1) < 1e-12


def test_mobius_sums():
    for n in range(1, 200):
        d_sum = sum(mobius(d) for d in range(1, n + 1) if n % d == 0)
        assert d_sum == (1 if n == 1 else 0)
