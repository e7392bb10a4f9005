"""Split a smooth squarefree modulus into factors of prescribed sizes.

Targets Q_0, ..., Q_k (with prod Q_j = q) come from the differencing
schemes; a plan assigns every prime of q to one slot so that each slot
product lands in its window.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

from .errors import Infeasible, OutOfRange
from .residue_core import SquarefreeModulus

EXHAUSTIVE_LIMIT = 16
_EPS = 1e-9


@dataclass(frozen=True)
class Slot:
    target: float
    window: tuple[float, float]
    primes: tuple[int, ...] = ()

    @property
    def value(self) -> int:
        return math.prod(self.primes)

    @property
    def in_window(self) -> bool:
        lo, hi = self.window
        return lo * (1 - _EPS) <= self.value <= hi * (1 + _EPS)


@dataclass(frozen=True)
class FactorizationPlan:
    q: int
    slots: tuple[Slot, ...]
    boundary: bool = False
    notes: tuple[str, ...] = field(default=())

    @property
    def targets(self) -> list[float]:
        return [s.target for s in self.slots]

    @property
    def windows(self) -> list[tuple[float, float]]:
        return [s.window for s in self.slots]

    @property
    def result(self) -> list[int]:
        return [s.value for s in self.slots]

    @property
    def feasible(self) -> bool:
        return all(s.in_window for s in self.slots)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "slots": [{"target": s.target, "window": list(s.window), "value": s.value,
                       "primes": list(s.primes)} for s in self.slots],
            **({"boundary": True} if self.boundary else {}),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _in_range(N: float, lo: float, hi: float) -> bool:
    return lo * (1 - _EPS) <= N <= hi * (1 + _EPS)


def plan_targets_ba3b(q: int, N: float) -> list[float]:
    """Sizes Q_0..Q_3 for three differencing steps between two completions.

    Q_0 = q^{-2/15} N^{2/3}, Q_1 = q^{-1/15} N^{1/3},
    Q_2 = q^{7/15} N^{-1/3}, Q_3 = q^{11/15} N^{-2/3}.
    Valid for q^{11/25} <= N <= q.
    """
    if not _in_range(N, q ** (11 / 25), q):
        raise OutOfRange(f"N = {N} outside [q^(11/25), q] for q = {q}")
    return [q ** (-2 / 15) * N ** (2 / 3), q ** (-1 / 15) * N ** (1 / 3),
            q ** (7 / 15) * N ** (-1 / 3), q ** (11 / 15) * N ** (-2 / 3)]


def plan_targets_theorem1(q: int, N: float) -> list[float]:
    """Q_0 = N^{-5/41} q^{30/41}, Q_1 = N^{5/41} q^{11/41}; needs q^{11/36} <= N <= q^{15/23}."""
    if not _in_range(N, q ** (11 / 36), q ** (15 / 23)):
        raise OutOfRange(f"N = {N} outside [q^(11/36), q^(15/23)] for q = {q}")
    return [N ** (-5 / 41) * q ** (30 / 41), N ** (5 / 41) * q ** (11 / 41)]


def default_windows(targets, factor: float, style: str = "leading") -> list[tuple[float, float]]:
    """Per-slot windows for a multiplicative tolerance ``factor`` in (0, 1].

    ``leading``: slots j >= 1 get [factor Q_j, Q_j] and slot 0 absorbs the
    slack, [Q_0, Q_0 factor^{-k}].  ``symmetric``: every slot gets
    [factor Q_j, Q_j / factor].
    """
    if not 0 < factor <= 1:
        raise ValueError("window factor must lie in (0, 1]")
    k = len(targets) - 1
    if style == "leading":
        return ([(targets[0], targets[0] * factor ** (-k))]
                + [(factor * t, t) for t in targets[1:]])
    if style == "symmetric":
        return [(factor * t, t / factor) for t in targets]
    raise ValueError(f"unknown window style {style!r}")


def _violation(values, windows) -> float:
    total = 0.0
    for v, (lo, hi) in zip(values, windows):
        if v < lo * (1 - _EPS):
            total += math.log(lo / v)
        elif v > hi * (1 + _EPS):
            total += math.log(v / hi)
    return total


def greedy_assign(primes, targets, windows) -> list[list[int]]:
    """Largest prime first into the fitting slot with the largest remaining
    headroom hi_j / value_j; overshoot into the roomiest slot if none fit.
    Ties go to the smallest slot index."""
    slots: list[list[int]] = [[] for _ in targets]
    values = [1] * len(targets)
    for p in sorted(primes, reverse=True):
        room = [hi / v for v, (_, hi) in zip(values, windows)]
        fitting = [j for j in range(len(slots)) if values[j] * p <= windows[j][1] * (1 + _EPS)]
        pool = fitting or list(range(len(slots)))
        j = max(pool, key=lambda i: (room[i], -i))
        slots[j].append(p)
        values[j] *= p
    return slots


def greedy_pack(primes, targets) -> list[list[int]]:
    """Fill slots 1..k in turn, each taking the largest unused primes that
    keep its product <= Q_j; slot 0 receives whatever is left.

    No slot j >= 1 ever exceeds Q_j.  If every prime is at most q^delta,
    each slot j >= 1 either reaches Q_j q^{-delta} or the primes run out.
    """
    remaining = sorted(primes, reverse=True)
    slots: list[list[int]] = [[] for _ in targets]
    for j in range(1, len(targets)):
        value = 1
        for p in list(remaining):
            if value * p <= targets[j] * (1 + _EPS):
                slots[j].append(p)
                value *= p
                remaining.remove(p)
    slots[0] = remaining
    return slots


def _repair(slots, windows) -> list[list[int]]:
    # single moves and pairwise swaps while the window violation drops
    slots = [list(s) for s in slots]
    values = [math.prod(s) for s in slots]
    best = _violation(values, windows)
    improved = True
    while improved and best > 0:
        improved = False
        for a in range(len(slots)):
            for p in sorted(slots[a]):
                for b in range(len(slots)):
                    if a == b:
                        continue
                    trial = values[:]
                    trial[a] //= p
                    trial[b] *= p
                    v = _violation(trial, windows)
                    if v < best - 1e-12:
                        slots[a].remove(p)
                        slots[b].append(p)
                        values, best, improved = trial, v, True
                        break
                    for r in sorted(slots[b]):
                        trial = values[:]
                        trial[a] = trial[a] // p * r
                        trial[b] = trial[b] // r * p
                        v = _violation(trial, windows)
                        if v < best - 1e-12:
                            slots[a].remove(p)
                            slots[b].remove(r)
                            slots[a].append(r)
                            slots[b].append(p)
                            values, best, improved = trial, v, True
                            break
                    if improved:
                        break
                if improved:
                    break
            if improved:
                break
    return slots


def _exhaustive(primes, windows) -> list[list[int]] | None:
    primes = sorted(primes, reverse=True)
    n = len(primes)
    suffix = [1] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] * primes[i]
    m = len(windows)
    values = [1] * m
    assign = [[] for _ in range(m)]

    def dfs(i):
        if i == n:
            return all(lo * (1 - _EPS) <= v for v, (lo, _) in zip(values, windows))
        rest = suffix[i]
        # every slot must still be able to reach its lower edge
        if any(v * rest < lo * (1 - _EPS) for v, (lo, _) in zip(values, windows)):
            return False
        p = primes[i]
        for j in range(m):
            if values[j] * p <= windows[j][1] * (1 + _EPS):
                values[j] *= p
                assign[j].append(p)
                if dfs(i + 1):
                    return True
                values[j] //= p
                assign[j].pop()
        return False

    return assign if dfs(0) else None


def assemble_factorization(modulus: SquarefreeModulus, targets, windows=None,
                           window_factor: float | None = None,
                           style: str = "leading") -> FactorizationPlan:
    """Assign every prime of ``modulus`` to a slot so each slot is in window.

    Windows are given explicitly, or built from ``window_factor`` with
    :func:`default_windows` (default factor q^{-delta}).  Strategy: greedy,
    then local move/swap repair, then exhaustive search when q has fewer
    than 16 primes.  Raises :class:`Infeasible` carrying the best attempt.
    """
    targets = [float(t) for t in targets]
    if windows is None:
        if window_factor is None:
            window_factor = modulus.q ** (-modulus.delta) if modulus.q > 1 else 1.0
        windows = default_windows(targets, window_factor, style)
    windows = [(float(lo), float(hi)) for lo, hi in windows]
    if len(windows) != len(targets):
        raise ValueError("one window per target is required")

    def build(assign, note):
        slots = tuple(Slot(t, w, tuple(sorted(a))) for t, w, a in zip(targets, windows, assign))
        return FactorizationPlan(modulus.q, slots, notes=(note,))

    attempt = greedy_assign(modulus.primes, targets, windows)
    plan = build(attempt, "greedy")
    if plan.feasible:
        return plan
    packed = greedy_pack(modulus.primes, targets)
    packed_plan = build(packed, "greedy-pack")
    if packed_plan.feasible:
        return packed_plan
    if _violation(packed_plan.result, windows) < _violation(plan.result, windows):
        attempt = packed
    attempt = _repair(attempt, windows)
    plan = build(attempt, "repair")
    if plan.feasible:
        return plan
    if len(modulus.primes) < EXHAUSTIVE_LIMIT:
        found = _exhaustive(modulus.primes, windows)
        if found is not None:
            return build(found, "exhaustive")
    raise Infeasible(f"no assignment of {modulus.primes} meets windows {windows}", best=plan)


def regroup_for_small_q0(plan: FactorizationPlan, N: float) -> FactorizationPlan:
    """Merge q_0..q_l, l minimal with q_0 ... q_l > q/N, into one leading slot.

    When q/N <= q_0 the plan is returned unchanged.  For N <= 1 no prefix
    exceeds q/N; everything is merged and the plan is flagged ``boundary``.
    """
    q = plan.q
    limit = q / N
    slots = list(plan.slots)
    if slots[0].value > limit:
        return plan
    prod = 1
    l = len(slots) - 1
    boundary = True
    for i, s in enumerate(slots):
        prod *= s.value
        if prod > limit:
            l, boundary = i, False
            break
    head = slots[: l + 1]
    merged = Slot(
        target=math.prod(s.target for s in head),
        window=(math.prod(s.window[0] for s in head), math.prod(s.window[1] for s in head)),
        primes=tuple(sorted(p for s in head for p in s.primes)),
    )
    note = f"regrouped l={l}" + (" (boundary: no prefix exceeds q/N)" if boundary else "")
    return replace(plan, slots=(merged, *slots[l + 1:]), boundary=boundary,
                   notes=plan.notes + (note,))


def plan_from_values(modulus: SquarefreeModulus, values) -> FactorizationPlan:
    """Wrap an explicit factorization (q_0, ..., q_k) as a plan."""
    values = [int(v) for v in values]
    if math.prod(values) != modulus.q:
        raise ValueError(f"{values} do not multiply to {modulus.q}")
    slots = tuple(Slot(float(v), (float(v), float(v)),
                       tuple(p for p in modulus.primes if v % p == 0)) for v in values)
    return FactorizationPlan(modulus.q, slots)
