"""Seeded instance generators.

Everything here is a pure function of its configuration: the same seed
reproduces the same instance byte for byte.  Planted (p,q) families obtain
the property structurally (anchor points plus pigeonhole over anchor
assignment), never by rejection sampling, and re-verify it via `pq_check`
before returning.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .model import (
    DInterval,
    DIntervalFamily,
    HostTree,
    HypergraphInstance,
    Interval,
    PQParameters,
    Subforest,
    SubforestFamily,
    to_incidence,
)
from .solvers import pq_check
from .treewidth import Graph, TreeDecomposition, TwInstance, validate_decomposition


class NotPrime(ValueError):
    """Field order of a projective construction must be prime."""


class PlantFailed(RuntimeError):
    """A planted family failed its own (p,q) post-verification."""


@dataclass(frozen=True)
class GenConfig:
    """Knobs shared by the random generators; generation is pure in these."""

    seed: int
    n_edges: int = 8
    d: int = 2
    coord_denominator: int = 4
    host_size: int = 10

    def __post_init__(self):
        for name in ("n_edges", "d", "coord_denominator", "host_size"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.seed < 0:
            raise ValueError(f"seed must be nonnegative, got {self.seed}")


@dataclass(frozen=True)
class ProjectiveParams:
    dimension: int  # the construction's k
    field_order: int  # the construction's q, a prime

    def __post_init__(self):
        if self.dimension < 2:
            raise ValueError(f"dimension must be >= 2, got {self.dimension}")
        if not is_prime(self.field_order):
            raise NotPrime(f"field order {self.field_order} is not prime")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def anchor_count(params: PQParameters) -> int:
    """Largest anchor count for which the pigeonhole plant works.

    With every edge containing one of A anchors, any p edges force
    ceil(p/A) of them onto a common anchor; ceil(p/A) >= q holds exactly
    when A < p/(q-1).
    """
    a = (params.p + params.q - 2) // (params.q - 1) - 1  # ceil(p/(q-1)) - 1
    return max(1, a)


# ---------------------------------------------------------------------------
# interval families
# ---------------------------------------------------------------------------

def random_d_intervals(cfg: GenConfig) -> DIntervalFamily:
    """Random family in general position.

    Every endpoint is drawn without replacement from the grid
    {j / coord_denominator}, so no two parts share an endpoint value; each
    edge gets between 1 and d parts.
    """
    rng = random.Random(cfg.seed)
    pool = list(range(8 * cfg.d * cfg.n_edges + 8))
    edges = []
    for _ in range(cfg.n_edges):
        n_parts = rng.randint(1, cfg.d)
        units = sorted(_draw(rng, pool, 2 * n_parts))
        parts = tuple(
            Interval(
                Fraction(units[2 * i], cfg.coord_denominator),
                Fraction(units[2 * i + 1], cfg.coord_denominator),
            )
            for i in range(n_parts)
        )
        edges.append(DInterval(parts, cfg.d))
    return DIntervalFamily(d=cfg.d, edges=tuple(edges), general_position=True)


def _draw(rng: random.Random, pool: list[int], count: int) -> list[int]:
    """Remove and return `count` random elements of `pool`."""
    if count > len(pool):
        raise ValueError("value pool exhausted")
    out = []
    for _ in range(count):
        out.append(pool.pop(rng.randrange(len(pool))))
    return out


def planted_pq_family(cfg: GenConfig, params: PQParameters) -> DIntervalFamily:
    """Random family guaranteed to satisfy the (p,q) property.

    Anchors sit at well-separated coordinates; edge i receives one part
    straddling its round-robin anchor, so any p edges contain q sharing an
    anchor.  Remaining parts are random in a region right of all anchors.
    The property is re-verified; failure raises PlantFailed (a bug, not an
    input condition).
    """
    rng = random.Random(cfg.seed)
    n, d, cd = cfg.n_edges, cfg.d, cfg.coord_denominator
    anchors = anchor_count(params)
    span = 8 * n + 16  # grid units between anchor sites
    left_pools = [list(range(1, 2 * n + 5)) for _ in range(anchors)]
    right_pools = [list(range(1, 2 * n + 5)) for _ in range(anchors)]
    extra_base = (2 * anchors + 2) * span
    extra_pool = list(range(extra_base, extra_base + 8 * d * n + 8))

    edges = []
    for i in range(n):
        a = i % anchors
        site = (2 * a + 1) * span
        lo = site - _draw(rng, left_pools[a], 1)[0]
        hi = site + _draw(rng, right_pools[a], 1)[0]
        parts = [Interval(Fraction(lo, cd), Fraction(hi, cd))]
        n_extra = rng.randint(0, d - 1)
        if n_extra:
            units = sorted(_draw(rng, extra_pool, 2 * n_extra))
            parts.extend(
                Interval(Fraction(units[2 * j], cd), Fraction(units[2 * j + 1], cd))
                for j in range(n_extra)
            )
        parts.sort(key=lambda p: p.lo)
        edges.append(DInterval(tuple(parts), d))
    family = DIntervalFamily(d=d, edges=tuple(edges), general_position=True)

    verdict = pq_check(to_incidence(family), params)
    if not verdict.holds:
        raise PlantFailed(f"planted family fails ({params.p},{params.q}): {verdict.counterexample}")
    return family


# ---------------------------------------------------------------------------
# projective spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjectiveFamily:
    """Hyperplane incidence of P^k(F_q) plus its point-interval realization."""

    params: ProjectiveParams
    instance: HypergraphInstance
    realization: DIntervalFamily
    d: int  # uniform edge size (q^k - 1) / (q - 1)


def projective_points(dimension: int, q: int) -> list[tuple[int, ...]]:
    """Normalized homogeneous coordinates, first nonzero entry 1, lex order."""
    pts = []
    for vec in itertools.product(range(q), repeat=dimension + 1):
        nz = next((v for v in vec if v != 0), 0)
        if nz == 1:
            pts.append(vec)
    return pts


def projective_instance(params: ProjectiveParams) -> ProjectiveFamily:
    """Points vs hyperplanes of P^k(F_q) with its d-interval realization.

    Ground ids follow lex order of normalized coordinates; hyperplanes are
    normalized dual vectors, incidence being a zero dot product mod q.  The
    realization places ground point i at integer coordinate i and turns
    every edge into a union of point-intervals, one per incident point.
    """
    k, q = params.dimension, params.field_order
    pts = projective_points(k, q)
    index = {v: i for i, v in enumerate(pts)}
    edges = []
    for dual in pts:
        members = frozenset(
            index[p] for p in pts if sum(a * b for a, b in zip(p, dual)) % q == 0
        )
        edges.append(members)
    instance = HypergraphInstance(
        ground_size=len(pts),
        edges=tuple(edges),
        multiplicity=(1,) * len(edges),
        provenance="abstract",
    )
    d = (q**k - 1) // (q - 1)
    realization = DIntervalFamily(
        d=d,
        edges=tuple(
            DInterval(
                tuple(Interval(Fraction(i), Fraction(i)) for i in sorted(e)), d
            )
            for e in edges
        ),
        general_position=True,
    )
    return ProjectiveFamily(params=params, instance=instance, realization=realization, d=d)


# ---------------------------------------------------------------------------
# trees and subforests
# ---------------------------------------------------------------------------

def random_tree(cfg: GenConfig) -> HostTree:
    """Random attachment tree on host_size vertices."""
    rng = random.Random(cfg.seed)
    edges = tuple((rng.randrange(i), i) for i in range(1, cfg.host_size))
    return HostTree(n=cfg.host_size, edges=edges)


def _grow_patch(rng: random.Random, adj: list[list[int]], start: int, size: int) -> set[int]:
    """Random connected vertex set containing `start`."""
    patch = {start}
    while len(patch) < size:
        frontier = sorted(
            {w for v in patch for w in adj[v] if w not in patch}
        )
        if not frontier:
            break
        patch.add(rng.choice(frontier))
    return patch


def random_subforests(host: HostTree, cfg: GenConfig) -> SubforestFamily:
    """Each edge is a union of at most d random connected patches of the host."""
    rng = random.Random(cfg.seed)
    adj = host.adjacency()
    max_patch = max(1, host.n // 2)
    edges = []
    for _ in range(cfg.n_edges):
        vertices: set[int] = set()
        for _ in range(rng.randint(1, cfg.d)):
            start = rng.randrange(host.n)
            vertices |= _grow_patch(rng, adj, start, rng.randint(1, max_patch))
        edges.append(Subforest(frozenset(vertices)))
    return SubforestFamily(host=host, d=cfg.d, edges=tuple(edges))


def planted_pq_subforests(cfg: GenConfig, params: PQParameters) -> SubforestFamily:
    """Subforest family over a random host tree satisfying (p,q) by anchors.

    Same pigeonhole as `planted_pq_family`: edge i grows one patch from its
    round-robin anchor vertex, plus up to d-1 free patches.
    """
    rng = random.Random(cfg.seed)
    host = HostTree(
        n=cfg.host_size,
        edges=tuple((rng.randrange(i), i) for i in range(1, cfg.host_size)),
    )
    adj = host.adjacency()
    anchors = anchor_count(params)
    if anchors > host.n:
        raise ValueError(f"host too small for {anchors} anchors")
    anchor_vertices = sorted(rng.sample(range(host.n), anchors))
    max_patch = max(1, host.n // 3)
    edges = []
    for i in range(cfg.n_edges):
        a = anchor_vertices[i % anchors]
        vertices = _grow_patch(rng, adj, a, rng.randint(1, max_patch))
        for _ in range(rng.randint(0, cfg.d - 1)):
            start = rng.randrange(host.n)
            vertices |= _grow_patch(rng, adj, start, rng.randint(1, max_patch))
        edges.append(Subforest(frozenset(vertices)))
    family = SubforestFamily(host=host, d=cfg.d, edges=tuple(edges))
    verdict = pq_check(to_incidence(family), params)
    if not verdict.holds:
        raise PlantFailed(f"planted subforests fail ({params.p},{params.q}): {verdict.counterexample}")
    return family


# ---------------------------------------------------------------------------
# bounded tree-width instances
# ---------------------------------------------------------------------------

def random_tw_graph(cfg: GenConfig, width: int) -> TwInstance:
    """Random graph of tree-width <= width, built decomposition-first.

    Bags are grown along a random attachment tree, each child inheriting a
    nonempty subset of its parent (running intersection by construction);
    graph edges are random pairs inside bags.  The subgraph family samples
    at most d connected patches per edge.
    """
    if width < 0:
        raise ValueError(f"width must be >= 0, got {width}")
    rng = random.Random(cfg.seed)
    n_bags = cfg.host_size
    bags: list[set[int]] = []
    bag_edges = []
    next_vertex = 0
    for i in range(n_bags):
        if i == 0:
            fresh = rng.randint(1, width + 1)
            bag = set(range(next_vertex, next_vertex + fresh))
            next_vertex += fresh
        else:
            parent = rng.randrange(i)
            bag_edges.append((parent, i))
            inherit = rng.randint(1, len(bags[parent]))
            bag = set(rng.sample(sorted(bags[parent]), inherit))
            fresh = rng.randint(0, width + 1 - len(bag))
            bag |= set(range(next_vertex, next_vertex + fresh))
            next_vertex += fresh
        bags.append(bag)

    n_vertices = next_vertex
    graph_edges: set[tuple[int, int]] = set()
    for bag in bags:
        for u, v in itertools.combinations(sorted(bag), 2):
            if rng.random() < 0.6:
                graph_edges.add((u, v))
    graph = Graph(n=n_vertices, edges=tuple(sorted(graph_edges)))
    decomposition = TreeDecomposition(
        tree=HostTree(n=n_bags, edges=tuple(bag_edges)),
        bags=tuple(frozenset(b) for b in bags),
        width=max(len(b) for b in bags) - 1,
    )
    problems = validate_decomposition(graph, decomposition)
    if problems:
        raise RuntimeError(f"generator produced an invalid decomposition: {problems[0]}")

    adj = graph.adjacency()
    max_patch = max(1, n_vertices // 3)
    subgraphs = []
    for _ in range(cfg.n_edges):
        vertices: set[int] = set()
        for _ in range(rng.randint(1, cfg.d)):
            start = rng.randrange(n_vertices)
            vertices |= _grow_patch(rng, adj, start, rng.randint(1, max_patch))
        subgraphs.append(frozenset(vertices))
    return TwInstance(
        graph=graph,
        decomposition=decomposition,
        subgraphs=tuple(subgraphs),
        d=cfg.d,
    )
