"""Shared builders and independent brute-force oracles for the test suite.

The oracles here deliberately avoid the library's solver paths: continuous
quantities are computed straight from interval containment, discrete ones
by plain subset enumeration, so solver bugs cannot hide behind themselves.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from dpierce import (
    DInterval,
    DIntervalFamily,
    HypergraphInstance,
    Interval,
    candidate_points,
    make_family,
)


def iv(lo, hi) -> Interval:
    return Interval(Fraction(lo), Fraction(hi))


def fam(d: int, *edges, general_position: bool = False) -> DIntervalFamily:
    """fam(2, [(0,1)], [(2,3),(5,6)]) builds a d=2 family of two edges."""
    return make_family(d, edges, general_position=general_position)


def brute_tau_continuous(family: DIntervalFamily) -> int:
    """Minimum piercing set size, brute force over the endpoint candidates.

    Works directly on interval containment; optimal covers can always be
    slid onto endpoint values, so this search space is exact.
    """
    points = candidate_points(family, "all_endpoints")
    edges = family.edges
    if not edges:
        return 0
    for k in range(len(points) + 1):
        for combo in itertools.combinations(points, k):
            if all(any(e.contains(x) for x in combo) for e in edges):
                return k
    raise AssertionError("unreachable")


def brute_nu_continuous(family: DIntervalFamily) -> int:
    """Maximum number of pairwise disjoint edges, brute force.

    Continuous disjointness of two d-intervals is decided by part overlap.
    """

    def meets(e1: DInterval, e2: DInterval) -> bool:
        return any(
            p1.lo <= p2.hi and p2.lo <= p1.hi for p1 in e1.parts for p2 in e2.parts
        )

    n = len(family.edges)
    best = 0
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            if all(
                not meets(family.edges[a], family.edges[b])
                for a, b in itertools.combinations(combo, 2)
            ):
                best = max(best, size)
    return best


def random_abstract_instance(seed: int, max_points: int = 12, max_edges: int = 9) -> HypergraphInstance:
    """Small random hypergraph within the naive-oracle guard."""
    rng = random.Random(seed)
    ground = rng.randint(2, max_points)
    n_edges = rng.randint(1, max_edges)
    edges = []
    for _ in range(n_edges):
        size = rng.randint(1, max(1, ground // 2))
        edges.append(frozenset(rng.sample(range(ground), size)))
    mult = tuple(rng.randint(1, 3) for _ in range(n_edges))
    return HypergraphInstance(
        ground_size=ground, edges=tuple(edges), multiplicity=mult, provenance="abstract"
    )
