"""Tree decompositions: validation and the lifting argument.

A subgraph family over a graph of tree-width k transports to a subforest
family over the decomposition tree (each edge becomes the set of bags it
meets), covers of the lifted family pull back to vertex covers of the
source by taking the union of the chosen bags, and the blow-up is at most
the bag size k+1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import HostTree, Subforest, SubforestFamily, connected_components


class InvalidDecomposition(ValueError):
    """Lifting was attempted over a decomposition that fails validation."""


class NotACover(ValueError):
    """The supplied bag set does not cover the lifted family."""


@dataclass(frozen=True)
class Graph:
    """Undirected graph on vertices 0..n-1 (not necessarily connected)."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "edges", tuple(sorted((min(u, v), max(u, v)) for u, v in self.edges))
        )
        if self.n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={self.n}")
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range 0..{self.n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree whose node i carries bag i, a vertex set of the host graph."""

    tree: HostTree
    bags: tuple[frozenset[int], ...]
    width: int

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))
        if len(self.bags) != self.tree.n:
            raise ValueError(
                f"{len(self.bags)} bags for a tree on {self.tree.n} nodes"
            )


@dataclass(frozen=True)
class LiftedFamily:
    """Subforest family over the decomposition tree plus its source mapping."""

    family: SubforestFamily
    origin: tuple[int, ...]  # origin[j] = index of the source subgraph of edge j


@dataclass(frozen=True)
class TwInstance:
    """A graph with a valid width-<=k decomposition and a subgraph family."""

    graph: Graph
    decomposition: TreeDecomposition
    subgraphs: tuple[frozenset[int], ...]
    d: int


def validate_decomposition(graph: Graph, dec: TreeDecomposition) -> list[str]:
    """All violations of the three decomposition properties plus the width.

    Returns human-readable messages naming the offending vertex, edge, or
    disconnected bag pair; an empty list means the decomposition is valid.
    """
    problems = []
    covered = set().union(*dec.bags) if dec.bags else set()
    for v in range(graph.n):
        if v not in covered:
            problems.append(f"vertex {v} appears in no bag")
    for v in covered:
        if not (0 <= v < graph.n):
            problems.append(f"bags mention unknown vertex {v}")

    adj = dec.tree.adjacency()
    for v in sorted(covered):
        holding = [i for i, bag in enumerate(dec.bags) if v in bag]
        comps = connected_components(adj, holding)
        if len(comps) > 1:
            a = min(comps[0])
            b = min(comps[1])
            problems.append(
                f"bags containing vertex {v} are disconnected: "
                f"no path of v-bags joins bag {a} and bag {b}"
            )

    for u, v in graph.edges:
        if not any(u in bag and v in bag for bag in dec.bags):
            problems.append(f"edge ({u},{v}) is inside no bag")

    true_width = max((len(b) for b in dec.bags), default=0) - 1
    if dec.width != true_width:
        problems.append(
            f"width field is {dec.width} but max bag size - 1 = {true_width}"
        )
    return problems


def lift_family(
    graph: Graph,
    dec: TreeDecomposition,
    subgraphs,
    d: int | None = None,
) -> LiftedFamily:
    """Transport subgraphs of the host graph to subforests of the bag tree.

    The lift of h is the set of bags meeting h.  Component counts never
    grow (each connected piece of h meets a connected set of bags), which
    is asserted per edge; intersections are preserved, since q subgraphs
    sharing a vertex v lift to subforests sharing every bag containing v.
    """
    problems = validate_decomposition(graph, dec)
    if problems:
        raise InvalidDecomposition(problems[0])
    subgraphs = [frozenset(h) for h in subgraphs]
    graph_adj = graph.adjacency()
    source_components = [len(connected_components(graph_adj, h)) for h in subgraphs]
    if d is None:
        d = max(source_components, default=1)

    tree_adj = dec.tree.adjacency()
    edges = []
    for idx, h in enumerate(subgraphs):
        lifted = frozenset(i for i, bag in enumerate(dec.bags) if bag & h)
        if not lifted:
            raise InvalidDecomposition(
                f"subgraph {idx} meets no bag (vertices outside the graph?)"
            )
        ncomp = len(connected_components(tree_adj, lifted))
        if ncomp > source_components[idx]:
            raise AssertionError(
                f"lift of subgraph {idx} has {ncomp} components, "
                f"source has {source_components[idx]}"
            )
        edges.append(Subforest(lifted))
    family = SubforestFamily(host=dec.tree, d=d, edges=tuple(edges))
    return LiftedFamily(family=family, origin=tuple(range(len(edges))))


def lift_cover(dec: TreeDecomposition, cover, subgraphs) -> frozenset[int]:
    """Pull a bag cover of the lifted family back to a vertex set.

    Re-checks the precondition (every subgraph meets some chosen bag) and
    independently re-verifies that the returned union meets every source
    subgraph; the size is at most (width+1) * |cover| by construction.
    """
    cover = sorted(set(cover))
    for i in cover:
        if not (0 <= i < len(dec.bags)):
            raise ValueError(f"bag id {i} out of range")
    union: set[int] = set()
    for i in cover:
        union |= dec.bags[i]
    for idx, h in enumerate(subgraphs):
        h = frozenset(h)
        if not any(dec.bags[i] & h for i in cover):
            raise NotACover(f"no chosen bag meets subgraph {idx}")
        if not (union & h):
            raise NotACover(f"bag union misses subgraph {idx}")
    return frozenset(union)
