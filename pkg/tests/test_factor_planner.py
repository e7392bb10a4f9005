import itertools
import json
import math

import pytest
from hypothesis import given, strategies as st

from smoothchar.bounds_lab import smooth_family
from smoothchar.errors import Infeasible, OutOfRange
from smoothchar.factor_planner import (assemble_factorization, default_windows, greedy_pack,
                                       plan_from_values, plan_targets_ba3b, plan_targets_theorem1,
                                       regroup_for_small_q0)
from smoothchar.residue_core import factor_squarefree


def test_ba3b_targets():
    q = 10**6
    Q = plan_targets_ba3b(q, q)
    for got, e in zip(Q, (8 / 15, 4 / 15, 2 / 15, 1 / 15)):
        assert got == pytest.approx(q ** e, rel=1e-9)
    assert math.prod(plan_targets_ba3b(q, 10**3 * 1.0 * 10)) == pytest.approx(q, rel=1e-9)
    with pytest.raises(OutOfRange):
        plan_targets_ba3b(q, q ** 0.4)


def test_main_bound_targets():
    q, N = 10**6, 10**3
    Q0, Q1 = plan_targets_theorem1(q, N)
    assert Q0 == pytest.approx(10 ** ((180 - 15) / 41), rel=1e-9)
    assert Q1 == pytest.approx(10 ** ((66 + 15) / 41), rel=1e-9)
    assert Q0 * Q1 == pytest.approx(q, rel=1e-9)
    with pytest.raises(OutOfRange):
        plan_targets_theorem1(q, q ** 0.7)


@given(st.floats(0.44, 1.0))
def test_ba3b_product(e):
    q = 10**7
    assert math.prod(plan_targets_ba3b(q, q ** e)) == pytest.approx(q, rel=1e-9)


def test_fixture_15015():
    plan = assemble_factorization(factor_squarefree(15015), [105, 143], window_factor=1.0)
    assert plan.result == [105, 143]
    assert plan.slots[0].primes == (3, 5, 7) and plan.slots[1].primes == (11, 13)
    d = json.loads(plan.to_json())
    assert [s["value"] for s in d["slots"]] == [105, 143]
    assert set(d["slots"][0]) == {"target", "window", "value", "primes"}


def test_prime_modulus():
    assert assemble_factorization(factor_squarefree(101), [101, 1]).result == [101, 1]


def test_infeasible_reports_best():
    with pytest.raises(Infeasible) as exc:
        assemble_factorization(factor_squarefree(15015), [2, 7507.5], window_factor=0.9)
    assert math.prod(exc.value.best.result) == 15015


def test_brute_force_agrees_on_feasibility():
    # exhaustive over all 2-slot assignments for a small modulus
    m = factor_squarefree(3 * 5 * 7 * 11 * 13 * 17)
    for Q0 in (30, 100, 255, 600, 1500):
        targets = [Q0, m.q / Q0]
        windows = default_windows(targets, 0.6, "symmetric")
        exists = any(windows[0][0] <= math.prod(s) <= windows[0][1]
                     and windows[1][0] <= m.q // math.prod(s) <= windows[1][1]
                     for r in range(len(m.primes) + 1) for s in itertools.combinations(m.primes, r))
        try:
            plan = assemble_factorization(m, targets, windows=windows)
            assert exists and plan.feasible
        except Infeasible:
            assert not exists


def test_greedy_pack_never_overshoots():
    for m in smooth_family(10**4, 10**7, 0.3, 30):
        N = math.isqrt(m.q)
        targets = plan_targets_ba3b(m.q, N)
        slots = greedy_pack(m.primes, targets)
        assert sorted(p for s in slots for p in s) == list(m.primes)
        for j in range(1, len(targets)):
            assert math.prod(slots[j]) <= targets[j] * (1 + 1e-9)


def test_smooth_guarantee():
    # q^0.2-smooth q up to 1e8 with ba3b targets at N = ceil(sqrt q)
    for m in smooth_family(10**3, 10**8, 0.2, 20):
        N = math.isqrt(m.q - 1) + 1
        plan = assemble_factorization(m, plan_targets_ba3b(m.q, N), window_factor=m.q ** -0.2)
        assert math.prod(plan.result) == m.q and plan.feasible


def test_windows_styles():
    w = default_windows([100, 10, 5], 0.5, "leading")
    assert w == [(100, 400), (5, 10), (2.5, 5)]
    assert default_windows([100], 0.5, "symmetric") == [(50, 200)]
    with pytest.raises(ValueError):
        default_windows([1], 0.5, "other")


def test_regroup():
    m = factor_squarefree(210)
    plan = plan_from_values(m, [7, 5, 3, 2])
    assert regroup_for_small_q0(plan, 1).result == [210]
    assert regroup_for_small_q0(plan, 1).boundary
    merged = regroup_for_small_q0(plan, 3)
    assert merged.result == [105, 2] and merged.result[0] > 210 / 3 and not merged.boundary
    assert regroup_for_small_q0(plan, 100) is plan
    up = plan_from_values(m, [2, 3, 5, 7])
    assert regroup_for_small_q0(up, 3).result == [210]


def test_plan_from_values_checks_product():
    with pytest.raises(ValueError):
        plan_from_values(factor_squarefree(30), [2, 3])
