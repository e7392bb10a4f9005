import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from smoothchar import pinned
from smoothchar.characters import DirichletCharacter, crt_split_character, enumerate_primitive, sample_primitive
from smoothchar.complete_sums import w_sum
from smoothchar.errors import LengthExceedsModulus
from smoothchar.vdc_processes import (A_PROCESS_CONSTANT, Interval, a_process, a_process_iterated,
                                      b_process, char_sum, completion_bound, completion_check, fourier,
                                      gcd_sum, gcd_sum_brute, gcd_sum_weighted, gcd_sum_weighted_brute,
                                      nearest_int_distance, shifted_char_sum)
from smoothchar.verify import split_chain


def mod5():
    return DirichletCharacter.from_components(5, {5: 1})


def test_interval_basics():
    iv = Interval(3, 4)
    assert list(iv.points()) == [3, 4, 5, 6] and iv.stop == 7
    assert 6 in iv and 7 not in iv
    with pytest.raises(ValueError):
        Interval(0, -1)


def test_char_sum_examples():
    chi = mod5()
    assert abs(char_sum(chi, Interval(1, 3)) - 1) < 1e-12
    assert char_sum(chi, Interval(4, 0)) == 0
    for q in (7, 15, 105):
        for c in enumerate_primitive(q)[:3]:
            assert abs(char_sum(c, Interval(11, q))) < 1e-9


def test_shifted_char_sum_examples():
    chi = mod5()
    assert abs(shifted_char_sum(chi, 1, Interval(1, 3)) + 1) < 1e-12
    c = enumerate_primitive(15)[1]
    assert abs(shifted_char_sum(c, 0, Interval(0, 20)) - sum(math.gcd(n, 15) == 1 for n in range(20))) < 1e-12
    for h in (0, 1, 7):
        assert abs(shifted_char_sum(c, h, Interval(4, 15)) - w_sum(c, h, 0)) < 1e-9


def test_a_process_fixture():
    rep = a_process(np.ones(2), np.ones(3), Interval(1, 6))
    assert rep.lhs == pytest.approx(36)
    assert rep.rhs_main == pytest.approx(18)
    assert rep.rhs_sum == pytest.approx(18)
    assert rep.H == 2 and rep.holds
    assert len(rep.per_h) <= 2 * rep.H
    for h, (start, length), _ in rep.per_h:
        assert Interval(1, 6).contains(Interval(start, length)) or length == 0


def test_a_process_short_interval():
    rep = a_process(np.ones(5), np.ones(7), Interval(0, 6))
    assert rep.H == 0 and rep.lhs <= rep.rhs_main


@given(st.sampled_from([15, 21, 35, 105, 231, 1155]), st.data())
def test_a_process_characters(q, data):
    rng = np.random.default_rng(data.draw(st.integers(0, 10**6)))
    chi = sample_primitive(q, 1, rng)[0]
    ps = chi.modulus.primes
    q0 = math.prod(ps[: data.draw(st.integers(1, len(ps) - 1))])
    c0, c1 = crt_split_character(chi, q0, q // q0)
    iv = Interval(data.draw(st.integers(-q, q)), data.draw(st.integers(1, q)))
    rep = a_process(c0.table, c1.table, iv)
    assert rep.lhs <= A_PROCESS_CONSTANT * rep.rhs * (1 + 1e-12)


def test_a_process_inner_sums_brute():
    rng = np.random.default_rng(0)
    f0 = np.exp(2j * np.pi * rng.random(7))
    rep = a_process(f0, np.ones(3), Interval(2, 10))
    for h, _, value in rep.per_h:
        s = 3 * h
        brute = sum(f0[n % 7] * np.conj(f0[(n + s) % 7]) for n in range(2, 12) if 2 <= n + s < 12)
        assert abs(value - brute) < 1e-12


def test_iterated_k1_is_a_process():
    chi = enumerate_primitive(105)[7]
    c0, c1 = crt_split_character(chi, 15, 7)
    for iv in (Interval(0, 40), Interval(13, 105), Interval(-5, 9)):
        one = a_process(c0.table, c1.table, iv)
        it = a_process_iterated([15, 7], [c0.table, c1.table], iv)
        assert it.lhs == pytest.approx(one.lhs)
        assert it.rhs == pytest.approx(one.rhs)


def test_iterated_constant_fixture():
    factors = [2, 3, 5]
    best = max(a_process_iterated(factors, [np.ones(f) for f in factors], Interval(0, n)).ratio
               for n in range(1, 31))
    assert best <= pinned.A_ITERATED[2]


@pytest.mark.parametrize("factors,k", [([7, 3, 5], 2), ([3, 5, 7, 11], 3)])
def test_iterated_characters(factors, k):
    q = math.prod(factors)
    rng = np.random.default_rng(q)
    for chi in sample_primitive(q, 3, rng):
        comps = split_chain(chi, factors)
        for _ in range(3):
            iv = Interval(int(rng.integers(q)), int(rng.integers(1, 40)))
            rep = a_process_iterated(factors, [c.table for c in comps], iv)
            assert rep.lhs <= pinned.A_ITERATED[k] * rep.rhs


def test_iterated_rejects_bad_k():
    with pytest.raises(ValueError):
        a_process_iterated([3], [np.ones(3)], Interval(0, 3))


@given(st.integers(2, 400), st.data())
def test_plancherel_identity(q, data):
    seed = data.draw(st.integers(0, 2**32))
    rng = np.random.default_rng(seed)
    f = np.exp(2j * np.pi * rng.random(q)) * rng.random(q)
    N = data.draw(st.integers(1, q))
    iv = Interval(data.draw(st.integers(-q, q)), data.draw(st.integers(0, N)))
    rep = b_process(f, iv, N)
    assert rep.plancherel_residual <= 1e-9 * q
    assert rep.window_length == math.ceil(q / N)
    lo, hi = rep.window_argmax
    assert lo != 0 and hi != 0 and abs(hi - lo) + 1 <= rep.window_length
    assert (lo > 0) == (hi > 0)


def test_b_process_delta():
    for q, N in ((101, 10), (64, 8), (31, 31), (3, 1)):
        f = np.zeros(q)
        f[0] = 1
        rep = b_process(f, Interval(0, N))
        assert np.allclose(np.abs(fourier(f)), 1 / math.sqrt(q))
        assert rep.window_max == pytest.approx(min(math.ceil(q / N), q // 2) / math.sqrt(q))


def test_b_process_length_error():
    with pytest.raises(LengthExceedsModulus):
        b_process(np.ones(5), Interval(0, 3), N=6)


def test_nearest_int_distance():
    assert nearest_int_distance(0, 9) == 0
    assert nearest_int_distance(3, 5) == Fraction(2, 5)
    assert nearest_int_distance(5, 10) == Fraction(1, 2)
    assert nearest_int_distance(-3, 5) == Fraction(2, 5)


def test_completion_examples():
    assert completion_check(np.ones(7), Interval(0, 5)) == pytest.approx((5, 5))
    assert completion_check(np.ones(7), Interval(0, 14)) == pytest.approx((14, 14))
    chi = enumerate_primitive(101)[5]
    q = 101
    harmonic = sum(1 / min(x, q - x) for x in range(1, q))
    expected = 0 + q * harmonic / math.sqrt(q)
    assert completion_bound(chi.table, Interval(0, 30)) == pytest.approx(expected)


@given(st.integers(2, 300), st.data())
def test_completion_inequality(q, data):
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32)))
    f = np.exp(2j * np.pi * rng.random(q))
    iv = Interval(data.draw(st.integers(-q, q)), data.draw(st.integers(0, 3 * q)))
    lhs, rhs = completion_check(f, iv)
    assert lhs <= pinned.COMPLETION * rhs * (1 + 1e-9) + 1e-9


def test_gcd_examples():
    assert gcd_sum(10, 6) == 23
    assert gcd_sum(17, 1) == 17
    assert gcd_sum(1, 30) == 1
    with pytest.raises(ValueError):
        gcd_sum(0, 5)


@given(st.integers(1, 500), st.integers(1, 200))
def test_gcd_fast_path(H, q):
    assert gcd_sum(H, q) == gcd_sum_brute(H, q)


@given(st.integers(1, 120), st.integers(1, 200))
def test_gcd_weighted_fast_path(H, q):
    value = gcd_sum_weighted(H, q)
    assert isinstance(value, Fraction)
    assert value == gcd_sum_weighted_brute(H, q) == sum(Fraction(math.gcd(h, q), h) for h in range(1, H + 1))
