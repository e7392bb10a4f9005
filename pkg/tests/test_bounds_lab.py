import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from smoothchar import pinned
from smoothchar.bounds_lab import (TRIVIAL_PAIR, ExponentPair, FamilyConfig, FamilyRow, apply_A, apply_B,
                                   bound_BAkB, bound_S_pair, bound_S_theorem1, bound_T_gcd, bound_T_smooth,
                                   bound_T_weil, eval_word, fit_exponent, max_initial_sum, n_rule,
                                   rows_to_csv, scan_family, smooth_family, main_exponent)
from smoothchar.characters import enumerate_primitive
from smoothchar.errors import BadWord, Degenerate
from smoothchar.factor_planner import plan_targets_ba3b
from smoothchar.vdc_processes import Interval, char_sum

F = Fraction


def test_word_identities():
    assert tuple(eval_word("AB")) == (F(1, 6), F(2, 3))
    assert tuple(eval_word("BAAAB")) == (F(11, 30), F(8, 15))
    assert tuple(eval_word("ABAAAB")) == (F(11, 82), F(57, 82))


def test_word_order_is_rightmost_first():
    assert eval_word("AB") == apply_A(apply_B(TRIVIAL_PAIR))
    assert eval_word("AB") != apply_B(apply_A(TRIVIAL_PAIR))


@pytest.mark.parametrize("word", ["", "ABX", "C"])
def test_bad_words(word):
    with pytest.raises(BadWord):
        eval_word(word)


@given(st.text(alphabet="AB", min_size=1, max_size=20))
def test_words_stay_exact_and_valid(word):
    pair = eval_word(word)
    assert isinstance(pair.k, Fraction) and isinstance(pair.l, Fraction)
    assert pair.is_valid


def test_main_bound_consistency():
    k, l = eval_word("ABAAAB")
    assert l - k == F(23, 41) and k == F(11, 82)
    assert F(11, 82) + F(1, 2) * (F(23, 41) - F(1, 2)) == F(27, 164)
    # trivial-range endpoints: the bound equals N at q^{11/36} and sqrt q at q^{15/23}
    assert main_exponent(F(11, 36)) == F(11, 36)
    assert main_exponent(F(15, 23)) == F(1, 2)
    assert main_exponent(F(1, 2)) == F(17, 41)


def test_bound_BAkB_examples():
    assert bound_BAkB(100, [100, 100]) == pytest.approx(10 * 10 + 10 * 100 ** 0.25)
    assert bound_BAkB(100, [100, 100]) == pytest.approx(131.62, abs=0.01)
    q = 10**4
    assert bound_BAkB(q, [100, 100]) == pytest.approx(q ** 0.75 + q ** 0.625)
    with pytest.raises(ValueError):
        bound_BAkB(10**5, [100, 100])


def test_bound_BAkB_balanced_at_ba3b_targets():
    q = 1e12
    N = q ** 0.5
    Q = plan_targets_ba3b(q, N)
    total = bound_BAkB(N, Q)
    scale = N ** (1 / 6) * q ** (11 / 30)
    assert scale <= total <= 4 * scale * 1.000001


def test_T_bounds():
    assert bound_T_smooth(10**3, 10**6) == pytest.approx(10 ** 0.5 * 10 ** 2.2)
    assert bound_T_gcd(10**3, 10**6 + 1, 5) == pytest.approx(bound_T_smooth(10**3, 10**6 + 1))
    assert bound_T_gcd(10**3, 15015, 15) == pytest.approx(math.sqrt(15) * bound_T_smooth(10**3, 15015))
    assert bound_T_weil(10**4, 10**4) == pytest.approx(200)


def test_main_bound_bound():
    q = 10**6
    assert bound_S_theorem1(10**3, q) == pytest.approx(10 ** (3 * 23 / 41 + 6 * 11 / 82))
    assert bound_S_theorem1(math.sqrt(q), q) == pytest.approx(q ** (17 / 41))
    assert bound_S_pair(10**3, q, eval_word("ABAAAB")) == pytest.approx(bound_S_theorem1(10**3, q))


@given(st.floats(1, 1e9), st.floats(0.01, 1))
def test_main_bound_forms_agree(q, frac):
    bound_S_theorem1(max(1.0, q * frac), q)


def test_n_rule():
    assert n_rule("sqrt")(100) == 10 and n_rule("sqrt")(101) == 11
    assert n_rule("q")(77) == 77
    assert n_rule("q^0.5")(10**4) == 100
    assert n_rule("50")(30) == 30
    with pytest.raises(ValueError):
        n_rule("cube")


def test_max_initial_sum_matches_char_sum():
    chars = enumerate_primitive(105)
    best, name = max_initial_sum(105, 20, chars)
    direct = max(abs(char_sum(c, Interval(0, 20))) for c in chars)
    assert best == pytest.approx(direct)


def test_scan_15015_exhaustive():
    rows = scan_family(FamilyConfig(qs=[15015], char_cap=5000))
    assert len(rows) == 1
    assert rows[0].chars == 1485 and rows[0].N == 123
    assert rows[0].ratio <= pinned.MAIN_FAMILY


def test_scan_full_period_is_zero():
    rows = scan_family(FamilyConfig(qs=[105, 1155], n_rule="q", char_cap=64))
    assert all(r.max_abs_S < 1e-8 for r in rows)


def test_scan_empty_range():
    assert scan_family(FamilyConfig(q_min=10**6, q_max=10**3)) == []


def test_scan_deterministic_across_threads(monkeypatch):
    cfg = FamilyConfig(q_max=10**5, count=6, char_cap=64, seed=9)
    one = rows_to_csv(scan_family(cfg))
    monkeypatch.setenv("SMOOTHCHAR_THREADS", "4")
    assert rows_to_csv(scan_family(cfg)) == one
    assert one.splitlines()[0] == "q,delta,N,max_abs_S,bound,ratio"


def test_smooth_family_properties():
    fam = smooth_family(1000, 10**6, 0.4, 24)
    assert len(fam) == 24
    assert all(m.q % 2 and m.is_smooth(0.4) and 1000 <= m.q <= 10**6 for m in fam)


def test_fit_exponent():
    qs = [10**3, 10**4, 10**5, 10**6]
    assert fit_exponent([(q, q ** 0.25) for q in qs]) == pytest.approx(0.25, abs=1e-9)
    rng = np.random.default_rng(0)
    noisy = [(q, q ** 0.3 * math.exp(rng.normal(0, 0.05))) for q in np.geomspace(1e3, 1e7, 30)]
    assert fit_exponent(noisy) == pytest.approx(0.3, abs=0.02)
    with pytest.raises(Degenerate):
        fit_exponent([(10, 1), (100, 2)])
    with pytest.raises(Degenerate):
        fit_exponent([(10, 1), (10, 2), (10, 3)])
    rows = [FamilyRow(q, 0.3, 1, q ** 0.2, 1, 1) for q in qs]
    assert fit_exponent(rows) == pytest.approx(0.2)


def test_exponent_pair_validity_flag():
    assert ExponentPair(F(1, 6), F(2, 3)).is_valid
    assert not ExponentPair(F(2, 3), F(1, 6)).is_valid
