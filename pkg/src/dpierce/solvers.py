"""Exact matching/covering solvers and the (p,q)-property decision procedure.

All solvers consume a `HypergraphInstance`.  Integral solvers are
branch-and-bound with deterministic tie-breaks (reproducible node counts);
the fractional solver is an exact rational LP whose primal and dual sides
certify each other.  `naive_oracle` is a deliberately unpruned enumeration
used by the test suite to certify the main solvers on small instances.

Multiplicity semantics: nu, tau and the (p,q) check operate on distinct
edges (copies of an edge are never disjoint and never enrich a p-subset);
max_depth counts copies.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .model import HypergraphInstance, PQParameters
from .simplex import solve_lp_max


class TooLarge(ValueError):
    """Instance exceeds the naive oracle's enumeration guard."""


@dataclass(frozen=True)
class SolveResult:
    optimum: int
    witness: frozenset[int]
    node_count: int


@dataclass(frozen=True)
class FractionalSolution:
    """Optimal LP value and weights for one side of the covering/matching LP."""

    value: Fraction
    weights: dict
    side: str  # 'cover' (weights on points) or 'matching' (weights on edge ids)


@dataclass(frozen=True)
class PQVerdict:
    holds: bool
    counterexample: frozenset[int] | None
    max_depth: int
    vacuous: bool = False


def distinct_edges(instance: HypergraphInstance) -> list[tuple[int, frozenset[int]]]:
    """(first-occurrence index, point set) for each distinct edge, in index order."""
    seen: set[frozenset[int]] = set()
    out = []
    for i, e in enumerate(instance.edges):
        if e not in seen:
            seen.add(e)
            out.append((i, e))
    return out


def verify_cover(instance: HypergraphInstance, points) -> bool:
    """Containment check, independent of any solver internals."""
    pts = set(points)
    return all(e & pts for e in instance.edges)


def verify_matching(instance: HypergraphInstance, edge_ids) -> bool:
    """Pairwise disjointness check, independent of any solver internals."""
    ids = sorted(set(edge_ids))
    if any(not (0 <= i < len(instance.edges)) for i in ids):
        return False
    if len({instance.edges[i] for i in ids}) != len(ids):
        return False  # two copies of one edge are never disjoint
    for a, b in itertools.combinations(ids, 2):
        if instance.edges[a] & instance.edges[b]:
            return False
    return True


def max_depth(instance: HypergraphInstance) -> tuple[int, int | None]:
    """(r, point) with r the largest multiplicity-weighted point degree."""
    load: dict[int, int] = {}
    for e, mult in zip(instance.edges, instance.multiplicity):
        for pt in e:
            load[pt] = load.get(pt, 0) + mult
    if not load:
        return 0, None
    best = max(load.values())
    point = min(pt for pt, v in load.items() if v == best)
    return best, point


# ---------------------------------------------------------------------------
# integral solvers
# ---------------------------------------------------------------------------

def covering_number(instance: HypergraphInstance) -> SolveResult:
    """Minimum point set meeting every edge, exactly.

    Branch and bound: greedy cover for the initial upper bound, a disjoint
    -edge packing and then the exact fractional optimum as lower bounds,
    branching on an uncovered edge with fewest points, all ties to lowest id.
    """
    reps = distinct_edges(instance)
    if not reps:
        return SolveResult(0, frozenset(), 0)
    n = len(reps)
    edge_sets = [e for _, e in reps]
    full = (1 << n) - 1
    points = sorted(set().union(*edge_sets))
    covers: dict[int, int] = {pt: 0 for pt in points}
    for j, e in enumerate(edge_sets):
        for pt in e:
            covers[pt] |= 1 << j

    # greedy upper bound
    best: list[int] = []
    uncovered = full
    while uncovered:
        pt = max(points, key=lambda p: ((covers[p] & uncovered).bit_count(), -p))
        best.append(pt)
        uncovered &= ~covers[pt]
    best_size = len(best)

    edge_points = [sorted(e) for e in edge_sets]
    node_count = 0

    def packing_bound(mask: int) -> int:
        taken: set[int] = set()
        count = 0
        for j in range(n):
            if mask >> j & 1 and not (edge_sets[j] & taken):
                taken |= edge_sets[j]
                count += 1
        return count

    def lp_bound(mask: int) -> int:
        live = [j for j in range(n) if mask >> j & 1]
        pts = sorted(set().union(*(edge_sets[j] for j in live)))
        rows = [[1 if pt in edge_sets[j] else 0 for j in live] for pt in pts]
        sol = solve_lp_max(rows, [1] * len(pts), [1] * len(live))
        return -((-sol.value.numerator) // sol.value.denominator)  # ceil

    def search(mask: int, chosen: list[int]) -> None:
        nonlocal best, best_size, node_count
        node_count += 1
        if not mask:
            if len(chosen) < best_size:
                best = list(chosen)
                best_size = len(chosen)
            return
        lower = packing_bound(mask)
        if len(chosen) + lower >= best_size:
            return
        if len(chosen) + lp_bound(mask) >= best_size:
            return
        branch = min(
            (j for j in range(n) if mask >> j & 1),
            key=lambda j: (len(edge_points[j]), j),
        )
        for pt in edge_points[branch]:
            chosen.append(pt)
            search(mask & ~covers[pt], chosen)
            chosen.pop()

    search(full, [])
    witness = frozenset(best)
    if len(witness) != best_size or not verify_cover(instance, witness):
        raise RuntimeError("covering_number produced an infeasible witness")
    return SolveResult(best_size, witness, node_count)


def matching_number(instance: HypergraphInstance) -> SolveResult:
    """Maximum set of pairwise disjoint distinct edges, exactly.

    Branch and bound over distinct edges, branching on a point of highest
    degree among the still-available edges (take one of its edges, or none).
    """
    reps = distinct_edges(instance)
    if not reps:
        return SolveResult(0, frozenset(), 0)
    n = len(reps)
    edge_sets = [e for _, e in reps]
    rep_index = [i for i, _ in reps]
    full = (1 << n) - 1
    conflict = []
    for j in range(n):
        mask = 0
        for k in range(n):
            if edge_sets[j] & edge_sets[k]:
                mask |= 1 << k
        conflict.append(mask)
    member: dict[int, int] = {}
    for j, e in enumerate(edge_sets):
        for pt in e:
            member[pt] = member.get(pt, 0) | 1 << j

    # greedy matching as the initial lower bound
    best: list[int] = []
    avail = full
    while avail:
        j = (avail & -avail).bit_length() - 1
        best.append(j)
        avail &= ~conflict[j]
    best_size = len(best)

    node_count = 0

    def lp_bound(mask: int) -> int:
        live = [j for j in range(n) if mask >> j & 1]
        pts = sorted(set().union(*(edge_sets[j] for j in live)))
        rows = [[1 if pt in edge_sets[j] else 0 for j in live] for pt in pts]
        sol = solve_lp_max(rows, [1] * len(pts), [1] * len(live))
        return sol.value.numerator // sol.value.denominator  # floor

    def search(mask: int, chosen: list[int]) -> None:
        nonlocal best, best_size, node_count
        node_count += 1
        if not mask:
            if len(chosen) > best_size:
                best = list(chosen)
                best_size = len(chosen)
            return
        if len(chosen) + mask.bit_count() <= best_size:
            return
        if len(chosen) + lp_bound(mask) <= best_size:
            return
        live_points: dict[int, int] = {}
        for j in range(n):
            if mask >> j & 1:
                for pt in edge_sets[j]:
                    live_points[pt] = live_points.get(pt, 0) + 1
        degree = max(live_points.values())
        pt = min(p for p, v in live_points.items() if v == degree)
        through = member[pt] & mask
        k = through
        while k:
            j = (k & -k).bit_length() - 1
            chosen.append(j)
            search(mask & ~conflict[j], chosen)
            chosen.pop()
            k &= k - 1
        search(mask & ~through, chosen)

    search(full, [])
    witness = frozenset(rep_index[j] for j in best)
    if len(witness) != best_size or not verify_matching(instance, witness):
        raise RuntimeError("matching_number produced an infeasible witness")
    return SolveResult(best_size, witness, node_count)


# ---------------------------------------------------------------------------
# fractional optimum (both LP sides, mutually certified)
# ---------------------------------------------------------------------------

def fractional_pair(instance: HypergraphInstance) -> tuple[FractionalSolution, FractionalSolution]:
    """Exact optimal fractional cover and fractional matching.

    One simplex run yields the matching side as the primal and the cover
    side as the dual; feasibility of both and equality of their values are
    re-verified (strong duality as an executable certificate).
    """
    reps = distinct_edges(instance)
    if not reps:
        zero = Fraction(0)
        return (
            FractionalSolution(zero, {}, "cover"),
            FractionalSolution(zero, {}, "matching"),
        )
    edge_sets = [e for _, e in reps]
    points = sorted(set().union(*edge_sets))
    rows = [[1 if pt in e else 0 for e in edge_sets] for pt in points]
    sol = solve_lp_max(rows, [1] * len(points), [1] * len(edge_sets))

    matching_weights = {
        reps[j][0]: w for j, w in enumerate(sol.primal) if w
    }
    cover_weights = {points[i]: w for i, w in enumerate(sol.dual) if w}

    for e in edge_sets:
        if sum(cover_weights.get(pt, Fraction(0)) for pt in e) < 1:
            raise RuntimeError("fractional cover misses an edge constraint")
    for pt in points:
        total = sum(
            w for i, w in matching_weights.items() if pt in instance.edges[i]
        )
        if total > 1:
            raise RuntimeError("fractional matching overloads a point")
    cover_value = sum(cover_weights.values(), Fraction(0))
    matching_value = sum(matching_weights.values(), Fraction(0))
    if not (cover_value == matching_value == sol.value):
        raise RuntimeError("LP duality certificate failed")

    return (
        FractionalSolution(sol.value, cover_weights, "cover"),
        FractionalSolution(sol.value, matching_weights, "matching"),
    )


def fractional_optimum(instance: HypergraphInstance, side: str) -> FractionalSolution:
    """Exact tau* (side='cover') or nu* (side='matching'); equal by duality."""
    if side not in ("cover", "matching"):
        raise ValueError(f"unknown side {side!r}")
    cover, matching = fractional_pair(instance)
    return cover if side == "cover" else matching


# ---------------------------------------------------------------------------
# (p,q) property
# ---------------------------------------------------------------------------

def pq_check(instance: HypergraphInstance, params: PQParameters) -> PQVerdict:
    """Decide whether among every p distinct edges some q share a point.

    Enumerates p-subsets of distinct edges in lexicographic order, skipping
    any subset containing an already-found q-wise intersecting core; the
    first failing subset is returned as the counterexample.  Fewer than p
    distinct edges satisfy the property vacuously.
    """
    r, _ = max_depth(instance)
    reps = distinct_edges(instance)
    if len(reps) < params.p:
        return PQVerdict(True, None, r, vacuous=True)
    rep_ids = [i for i, _ in reps]
    sets = {i: e for i, e in reps}
    cores: list[frozenset[int]] = []

    for combo in itertools.combinations(rep_ids, params.p):
        combo_set = frozenset(combo)
        if any(core <= combo_set for core in cores):
            continue
        counts: dict[int, int] = {}
        for i in combo:
            for pt in sets[i]:
                counts[pt] = counts.get(pt, 0) + 1
        deep = [pt for pt, v in counts.items() if v >= params.q]
        if not deep:
            return PQVerdict(False, combo_set, r)
        pt = min(deep)
        core = [i for i in combo if pt in sets[i]][: params.q]
        cores.append(frozenset(core))
    return PQVerdict(True, None, r)


# ---------------------------------------------------------------------------
# independent oracle
# ---------------------------------------------------------------------------

def naive_oracle(instance: HypergraphInstance, quantity: str) -> int:
    """Exhaustive, unpruned nu or tau for certifying the solvers in tests."""
    if len(instance.edges) > 14 or instance.ground_size > 20:
        raise TooLarge(
            f"guard exceeded: {len(instance.edges)} edges, ground {instance.ground_size}"
        )
    if quantity not in ("nu", "tau"):
        raise ValueError(f"unknown quantity {quantity!r}")
    edge_sets = [e for _, e in distinct_edges(instance)]
    if quantity == "tau":
        if not edge_sets:
            return 0
        points = sorted(set().union(*edge_sets))
        for k in range(len(points) + 1):
            for combo in itertools.combinations(points, k):
                pts = set(combo)
                if all(e & pts for e in edge_sets):
                    return k
        raise AssertionError("unreachable: the full point set is a cover")
    best = 0
    for size in range(len(edge_sets) + 1):
        for combo in itertools.combinations(range(len(edge_sets)), size):
            ok = True
            for a, b in itertools.combinations(combo, 2):
                if edge_sets[a] & edge_sets[b]:
                    ok = False
                    break
            if ok:
                best = max(best, size)
    return best
