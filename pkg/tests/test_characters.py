import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from smoothchar.characters import (DirichletCharacter, crt_split_character, enumerate_primitive,
                                   eval as chi_eval, gauss_sum, primitive_count, sample_primitive,
                                   trivial_character)
from smoothchar.errors import BadFactor, NotPrimitive
from smoothchar.residue_core import factor_squarefree, is_squarefree

SMALL_SQUAREFREE = [q for q in range(3, 400) if is_squarefree(q)]


def brute_value(q, comps, n):
    """Evaluate from scratch: brute primitive root and brute discrete log per prime."""
    value = 1 + 0j
    for p, a in comps.items():
        if n % p == 0:
            return 0j
        if p == 2:
            continue
        g = next(g for g in range(2, p) if len({pow(g, j, p) for j in range(p - 1)}) == p - 1)
        j = next(j for j in range(p - 1) if pow(g, j, p) == n % p)
        value *= cmath.exp(2j * math.pi * a * j / (p - 1))
    return value


def test_eval_example_mod5():
    chi = DirichletCharacter.from_components(5, {5: 1})
    assert abs(chi_eval(chi, 2) - 1j) < 1e-12
    assert chi(1) == 1
    assert chi(10) == 0


def test_name_roundtrip():
    chi = DirichletCharacter.from_name("15:3^1,5^2")
    assert chi.name == "15:3^1,5^2"
    assert DirichletCharacter.from_name(chi.name) == chi


@pytest.mark.parametrize("q", [5, 7, 15, 21, 105, 77])
def test_values_match_brute_force(q):
    for chi in enumerate_primitive(q)[:6]:
        for n in range(2 * q):
            assert abs(chi(n) - brute_value(q, chi.components, n)) < 1e-12


@given(st.sampled_from(SMALL_SQUAREFREE), st.data())
def test_multiplicative_and_periodic(q, data):
    chars = enumerate_primitive(q)
    if not chars:
        return
    chi = data.draw(st.sampled_from(chars))
    m = data.draw(st.integers(0, q - 1))
    n = data.draw(st.integers(0, q - 1))
    assert abs(chi(m * n) - chi(m) * chi(n)) < 1e-12
    assert abs(chi(n + q) - chi(n)) < 1e-12
    assert abs(chi.conj()(n) - chi(n).conjugate()) < 1e-12


@pytest.mark.parametrize("q", SMALL_SQUAREFREE[:60])
def test_orthogonality(q):
    for chi in enumerate_primitive(q)[:5]:
        assert abs(chi.table.sum()) < 1e-9


def test_enumerate_counts():
    assert len(enumerate_primitive(5)) == 3
    assert len(enumerate_primitive(15)) == 3
    assert enumerate_primitive(2) == []
    assert enumerate_primitive(1) == []
    for q in SMALL_SQUAREFREE[:80]:
        chars = enumerate_primitive(q)
        expected = math.prod(p - 2 for p in factor_squarefree(q).primes)
        assert len(chars) == expected == primitive_count(q)
        assert len({c.exponents for c in chars}) == len(chars)
        assert all(c.is_primitive for c in chars)


def test_crt_split_examples():
    chi = DirichletCharacter.from_name("15:3^1,5^2")
    c3, c5 = crt_split_character(chi, 3, 5)
    assert all(abs(chi(n) - c3(n) * c5(n)) < 1e-12 for n in range(1, 16))
    one, same = crt_split_character(chi, 1, 15)
    assert one.q == 1 and same == chi
    with pytest.raises(BadFactor):
        crt_split_character(chi, 6, 5)


@given(st.sampled_from([q for q in SMALL_SQUAREFREE if len(factor_squarefree(q).primes) >= 2]),
       st.data())
def test_crt_split_every_divisor(q, data):
    chars = enumerate_primitive(q)
    if not chars:
        return
    chi = data.draw(st.sampled_from(chars))
    for u in factor_squarefree(q).divisors():
        a, b = crt_split_character(chi, u, q // u)
        n = np.arange(q)
        assert np.max(np.abs(chi.values(n) - a.values(n) * b.values(n))) < 1e-12


def test_gauss_examples():
    for chi in enumerate_primitive(5):
        assert abs(abs(gauss_sum(chi)) - math.sqrt(5)) < 1e-9
    quad = enumerate_primitive(3)[0]
    assert abs(gauss_sum(quad) - 1j * math.sqrt(3)) < 1e-12
    with pytest.raises(NotPrimitive):
        gauss_sum(trivial_character(1))


def test_gauss_matches_direct_sum():
    chi = enumerate_primitive(35)[4]
    direct = sum(brute_value(35, chi.components, n) * cmath.exp(2j * math.pi * n / 35) for n in range(35))
    assert abs(gauss_sum(chi) - direct) < 1e-10


def test_sample_primitive_deterministic():
    a = sample_primitive(15015, 50, np.random.default_rng([1, 15015]))
    b = sample_primitive(15015, 50, np.random.default_rng([1, 15015]))
    assert a == b and len(set(c.exponents for c in a)) == 50
    assert all(c.is_primitive for c in a)
    assert len(sample_primitive(15, 50, np.random.default_rng(0))) == 3
