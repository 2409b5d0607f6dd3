"""JSON instance files: the single on-disk format every module shares.

Three document types are accepted (discriminated by "type"):

* ``d_intervals``    {"type":"d_intervals","d":2,"edges":[[["0","3/2"],["2","4"]],...]}
* ``tree_subgraphs`` {"type":"tree_subgraphs","d":2,"tree":{"n":4,"edges":[[0,1],...]},"subgraphs":[[0,1],...]}
* ``tw_graph``       {"type":"tw_graph","k":2,"graph":{"n":5,"edges":[[0,1],...]},
                      "bags":[[0,1,2],...],"bag_tree":[[0,1],...],"subgraphs":[[1,3],...]}

Rationals travel as strings, "num/den" or a bare integer string.  Any
malformed field or violated model invariant is rejected with an
InstanceFormatError naming the exact JSON path.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .model import (
    DInterval,
    DIntervalFamily,
    HostTree,
    Interval,
    Subforest,
    SubforestFamily,
    connected_components,
    format_rational,
)
from .treewidth import Graph, TreeDecomposition, TwInstance, validate_decomposition


class InstanceFormatError(ValueError):
    """Malformed or invariant-violating instance document."""


def _want(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise InstanceFormatError(f"{path}: {message}")


def _int(value, path: str) -> int:
    _want(isinstance(value, int) and not isinstance(value, bool), path, "expected an integer")
    return value


def _list(value, path: str) -> list:
    _want(isinstance(value, list), path, "expected an array")
    return value


def _rational(value, path: str) -> Fraction:
    _want(isinstance(value, str), path, 'expected a rational string like "3/4" or "-2"')
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InstanceFormatError(f"{path}: not a rational: {exc}") from None


def _vertex_pairs(value, path: str) -> list[tuple[int, int]]:
    pairs = []
    for i, item in enumerate(_list(value, path)):
        pair = _list(item, f"{path}[{i}]")
        _want(len(pair) == 2, f"{path}[{i}]", "expected a pair [u, v]")
        pairs.append((_int(pair[0], f"{path}[{i}][0]"), _int(pair[1], f"{path}[{i}][1]")))
    return pairs


def _vertex_sets(value, path: str) -> list[list[int]]:
    out = []
    for i, item in enumerate(_list(value, path)):
        vs = _list(item, f"{path}[{i}]")
        out.append([_int(v, f"{path}[{i}][{j}]") for j, v in enumerate(vs)])
    return out


def loads_instance(text: str) -> DIntervalFamily | SubforestFamily | TwInstance:
    """Parse and fully validate one instance document from a JSON string."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_json_dict(doc)


def load_instance(path) -> DIntervalFamily | SubforestFamily | TwInstance:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_instance(fh.read())


def from_json_dict(doc) -> DIntervalFamily | SubforestFamily | TwInstance:
    _want(isinstance(doc, dict), "$", "expected a JSON object")
    kind = doc.get("type")
    if kind == "d_intervals":
        return _load_intervals(doc)
    if kind == "tree_subgraphs":
        return _load_subforests(doc)
    if kind == "tw_graph":
        return _load_tw(doc)
    raise InstanceFormatError(
        f'type: expected "d_intervals", "tree_subgraphs" or "tw_graph", got {kind!r}'
    )


def _load_intervals(doc) -> DIntervalFamily:
    d = _int(doc.get("d"), "d")
    _want(d >= 1, "d", f"must be positive, got {d}")
    edges = []
    for i, raw_edge in enumerate(_list(doc.get("edges"), "edges")):
        parts = []
        for j, raw_part in enumerate(_list(raw_edge, f"edges[{i}]")):
            pair = _list(raw_part, f"edges[{i}][{j}]")
            _want(len(pair) == 2, f"edges[{i}][{j}]", 'expected ["lo","hi"]')
            lo = _rational(pair[0], f"edges[{i}][{j}][0]")
            hi = _rational(pair[1], f"edges[{i}][{j}][1]")
            _want(lo <= hi, f"edges[{i}][{j}]", f"lo {lo} exceeds hi {hi}")
            parts.append(Interval(lo, hi))
        parts.sort(key=lambda p: (p.lo, p.hi))
        try:
            edges.append(DInterval(tuple(parts), d))
        except ValueError as exc:
            raise InstanceFormatError(f"edges[{i}]: {exc}") from None
    try:
        return DIntervalFamily(d=d, edges=tuple(edges))
    except ValueError as exc:
        raise InstanceFormatError(f"edges: {exc}") from None


def _load_subforests(doc) -> SubforestFamily:
    d = _int(doc.get("d"), "d")
    _want(d >= 1, "d", f"must be positive, got {d}")
    tree = doc.get("tree")
    _want(isinstance(tree, dict), "tree", "expected an object {n, edges}")
    n = _int(tree.get("n"), "tree.n")
    try:
        host = HostTree(n=n, edges=tuple(_vertex_pairs(tree.get("edges"), "tree.edges")))
    except ValueError as exc:
        raise InstanceFormatError(f"tree: {exc}") from None
    edges = []
    for i, vs in enumerate(_vertex_sets(doc.get("subgraphs"), "subgraphs")):
        _want(len(vs) > 0, f"subgraphs[{i}]", "subforest must be nonempty")
        edges.append(Subforest(frozenset(vs)))
    try:
        return SubforestFamily(host=host, d=d, edges=tuple(edges))
    except ValueError as exc:
        raise InstanceFormatError(f"subgraphs: {exc}") from None


def _load_tw(doc) -> TwInstance:
    k = _int(doc.get("k"), "k")
    _want(k >= 0, "k", f"must be nonnegative, got {k}")
    raw_graph = doc.get("graph")
    _want(isinstance(raw_graph, dict), "graph", "expected an object {n, edges}")
    n = _int(raw_graph.get("n"), "graph.n")
    try:
        graph = Graph(n=n, edges=tuple(_vertex_pairs(raw_graph.get("edges"), "graph.edges")))
    except ValueError as exc:
        raise InstanceFormatError(f"graph: {exc}") from None

    bags = [frozenset(b) for b in _vertex_sets(doc.get("bags"), "bags")]
    _want(all(bags), "bags", "bags must be nonempty")
    bag_tree_edges = _vertex_pairs(doc.get("bag_tree"), "bag_tree")
    try:
        tree = HostTree(n=len(bags), edges=tuple(bag_tree_edges))
    except ValueError as exc:
        raise InstanceFormatError(f"bag_tree: {exc}") from None
    width = max(len(b) for b in bags) - 1
    _want(width <= k, "bags", f"max bag size - 1 = {width} exceeds k = {k}")
    dec = TreeDecomposition(tree=tree, bags=tuple(bags), width=width)
    problems = validate_decomposition(graph, dec)
    if problems:
        raise InstanceFormatError(f"bags: {problems[0]}")

    adj = graph.adjacency()
    subgraphs = []
    d = 1
    for i, vs in enumerate(_vertex_sets(doc.get("subgraphs"), "subgraphs")):
        _want(len(vs) > 0, f"subgraphs[{i}]", "subgraph must be nonempty")
        for j, v in enumerate(vs):
            _want(0 <= v < graph.n, f"subgraphs[{i}][{j}]", f"vertex {v} outside graph 0..{graph.n - 1}")
        h = frozenset(vs)
        d = max(d, len(connected_components(adj, h)))
        subgraphs.append(h)
    return TwInstance(graph=graph, decomposition=dec, subgraphs=tuple(subgraphs), d=d)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def to_json_dict(obj) -> dict:
    if isinstance(obj, DIntervalFamily):
        return {
            "type": "d_intervals",
            "d": obj.d,
            "edges": [
                [[format_rational(p.lo), format_rational(p.hi)] for p in e.parts]
                for e in obj.edges
            ],
        }
    if isinstance(obj, SubforestFamily):
        return {
            "type": "tree_subgraphs",
            "d": obj.d,
            "tree": {"n": obj.host.n, "edges": [list(e) for e in obj.host.edges]},
            "subgraphs": [sorted(e.vertices) for e in obj.edges],
        }
    if isinstance(obj, TwInstance):
        return {
            "type": "tw_graph",
            "k": obj.decomposition.width,
            "graph": {"n": obj.graph.n, "edges": [list(e) for e in obj.graph.edges]},
            "bags": [sorted(b) for b in obj.decomposition.bags],
            "bag_tree": [list(e) for e in obj.decomposition.tree.edges],
            "subgraphs": [sorted(h) for h in obj.subgraphs],
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_instance(obj) -> str:
    return json.dumps(to_json_dict(obj), sort_keys=True, separators=(",", ":")) + "\n"


def dump_instance(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_instance(obj))
