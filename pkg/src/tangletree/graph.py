"""Finite simple undirected graphs and the search primitives built on them.

Vertices are opaque strings with the global lexicographic order; every
set-valued result is emitted in a canonical order (components sorted by their
minimal vertex, paths listed source-first) so repeated runs are reproducible
byte for byte.

Disjoint path computation uses unit-vertex-capacity max-flow on the
split-vertex digraph, so its cardinality equals the minimum vertex cut
between the two terminal sets (Menger duality); tests check this against
brute-force cut enumeration on small graphs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import (
    CrossingEdgeError,
    GraphFormatError,
    UnknownVertexError,
)

Vertex = str
Edge = tuple[str, str]


def _edge(u: str, v: str) -> Edge:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable simple undirected graph over string vertex identifiers.

    Construct through :meth:`from_data` (which normalizes edge tuples) or
    :meth:`loads`; the raw constructor expects pre-normalized frozensets.
    """

    vertices: frozenset[str]
    edges: frozenset[Edge]

    def __post_init__(self):
        for u, v in self.edges:
            if u == v:
                raise GraphFormatError(f"loop edge at {u!r}", context="edges")
            if u > v:
                raise GraphFormatError(
                    f"edge ({u!r}, {v!r}) not normalized", context="edges"
                )
            if u not in self.vertices or v not in self.vertices:
                raise GraphFormatError(
                    f"edge ({u!r}, {v!r}) has an undeclared endpoint",
                    context="edges",
                )
        object.__setattr__(self, "_hash", hash((self.vertices, self.edges)))

    @classmethod
    def from_data(cls, vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> "Graph":
        vs = frozenset(vertices)
        es = frozenset(_edge(u, v) for u, v in edges)
        return cls(vs, es)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph(|V|={len(self.vertices)}, |E|={len(self.edges)})"

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(ns) for v, ns in adj.items()}

    def neighbors(self, v: str) -> frozenset[str]:
        if v not in self.vertices:
            raise UnknownVertexError(v)
        return self.adjacency[v]

    def neighbourhood(self, vs: Iterable[str]) -> frozenset[str]:
        """N_G(vs): neighbors of the set, excluding the set itself."""
        vs = frozenset(vs)
        out: set[str] = set()
        for v in vs:
            if v not in self.vertices:
                raise UnknownVertexError(v)
            out |= self.adjacency[v]
        return frozenset(out - vs)

    def has_edge(self, u: str, v: str) -> bool:
        return _edge(u, v) in self.edges

    def induced(self, vs: Iterable[str]) -> "Graph":
        vs = frozenset(vs)
        unknown = vs - self.vertices
        if unknown:
            raise UnknownVertexError(min(unknown))
        es = frozenset(e for e in self.edges if e[0] in vs and e[1] in vs)
        return Graph(vs, es)

    def edges_within(self, vs: frozenset[str]) -> frozenset[Edge]:
        return frozenset(e for e in self.edges if e[0] in vs and e[1] in vs)

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        comps = components(self)
        return len(comps) == 1

    # -- document format: {"vertices": [...], "edges": [[a, b], ...]} --

    @classmethod
    def loads(cls, text: str) -> "Graph":
        return load_graph(text)

    def dumps(self) -> str:
        doc = {
            "edges": sorted([list(e) for e in self.edges]),
            "vertices": sorted(self.vertices),
        }
        return json.dumps(doc, sort_keys=True)


def load_graph(text: str) -> Graph:
    """Parse a graph document, reporting malformed input with context."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(
            f"invalid JSON: {exc.msg}", context=f"line {exc.lineno}, column {exc.colno}"
        ) from exc
    if not isinstance(doc, dict):
        raise GraphFormatError("document must be a JSON object", context="top level")
    for key in ("vertices", "edges"):
        if key not in doc:
            raise GraphFormatError(f"missing {key!r} field", context="top level")
        if not isinstance(doc[key], list):
            raise GraphFormatError(f"{key!r} must be a list", context=key)
    vertices: list[str] = []
    for i, v in enumerate(doc["vertices"]):
        if not isinstance(v, str) or not v:
            raise GraphFormatError(
                f"vertex must be a non-empty string, got {v!r}",
                context=f"vertices[{i}]",
            )
        vertices.append(v)
    vset = set(vertices)
    if len(vertices) != len(vset):
        dup = sorted(v for v in vset if vertices.count(v) > 1)[0]
        raise GraphFormatError(f"duplicate vertex {dup!r}", context="vertices")
    edges: set[Edge] = set()
    for i, e in enumerate(doc["edges"]):
        ctx = f"edges[{i}]"
        if not (isinstance(e, list) and len(e) == 2):
            raise GraphFormatError("edge must be a pair", context=ctx)
        u, v = e
        if not (isinstance(u, str) and isinstance(v, str)):
            raise GraphFormatError("edge endpoints must be strings", context=ctx)
        if u == v:
            raise GraphFormatError(f"loop edge at {u!r}", context=ctx)
        if u not in vset:
            raise GraphFormatError(f"unknown endpoint {u!r}", context=ctx)
        if v not in vset:
            raise GraphFormatError(f"unknown endpoint {v!r}", context=ctx)
        norm = _edge(u, v)
        if norm in edges:
            raise GraphFormatError(f"duplicate edge {u!r}-{v!r}", context=ctx)
        edges.add(norm)
    return Graph(frozenset(vset), frozenset(edges))


def components(g: Graph, removed: Iterable[str] = ()) -> list[frozenset[str]]:
    """Connected components of g - removed, sorted by minimal vertex."""
    removed = frozenset(removed)
    unknown = removed - g.vertices
    if unknown:
        raise UnknownVertexError(min(unknown))
    todo = set(g.vertices) - removed
    adj = g.adjacency
    comps: list[frozenset[str]] = []
    while todo:
        seed = min(todo)
        comp = {seed}
        frontier = {seed}
        while frontier:
            grown: set[str] = set()
            for v in frontier:
                grown |= adj[v]
            frontier = grown - comp - removed
            comp |= frontier
        comps.append(frozenset(comp))
        todo -= comp
    return comps


def tight_components(g: Graph, x: Iterable[str]) -> list[frozenset[str]]:
    """Components K of g - x with N_G(K) exactly equal to x."""
    x = frozenset(x)
    unknown = x - g.vertices
    if unknown:
        raise UnknownVertexError(min(unknown))
    return [k for k in components(g, x) if g.neighbourhood(k) == x]


class _FlowNetwork:
    """Split-vertex unit-capacity network for vertex-disjoint path search.

    Every graph vertex v becomes an arc v_in -> v_out of capacity one;
    adjacency contributes u_out -> v_in both ways. Sources attach at v_in,
    targets leave from v_out, so a source that is also a target yields the
    trivial one-vertex path.
    """

    SRC = ("src", "")
    SNK = ("snk", "")

    def __init__(self, g: Graph, sources: frozenset[str], targets: frozenset[str]):
        self.g = g
        self.sources = sources
        self.targets = targets
        cap: dict[tuple, dict[tuple, int]] = {}
        big = len(g.vertices) + 1  # only vertex arcs may be cut

        def arc(a, b, c):
            cap.setdefault(a, {})[b] = c
            cap.setdefault(b, {}).setdefault(a, 0)

        for v in sorted(g.vertices):
            arc(("in", v), ("out", v), 1)
        for u, v in sorted(g.edges):
            arc(("out", u), ("in", v), big)
            arc(("out", v), ("in", u), big)
        for v in sorted(sources):
            arc(self.SRC, ("in", v), big)
        for v in sorted(targets):
            arc(("out", v), self.SNK, big)
        cap.setdefault(self.SRC, {})
        cap.setdefault(self.SNK, {})
        self.cap = cap
        self.flow: dict[tuple, dict[tuple, int]] = {
            a: {b: 0 for b in nbrs} for a, nbrs in cap.items()
        }

    def _residual_neighbors(self, node):
        for b in sorted(self.cap[node]):
            if self.cap[node][b] - self.flow[node][b] > 0:
                yield b

    def _augment_once(self) -> bool:
        prev: dict[tuple, tuple] = {self.SRC: self.SRC}
        queue = [self.SRC]
        while queue:
            node = queue.pop(0)
            if node == self.SNK:
                break
            for b in self._residual_neighbors(node):
                if b not in prev:
                    prev[b] = node
                    queue.append(b)
        if self.SNK not in prev:
            return False
        node = self.SNK
        while node != self.SRC:
            p = prev[node]
            self.flow[p][node] += 1
            self.flow[node][p] -= 1
            node = p
        return True

    def max_flow(self) -> int:
        value = 0
        while self._augment_once():
            value += 1
        return value

    def paths(self) -> list[list[str]]:
        """Decompose the integral flow into vertex-disjoint paths."""
        out: list[list[str]] = []
        for start in sorted(self.sources):
            if self.flow[self.SRC].get(("in", start), 0) <= 0:
                continue
            path = [start]
            node = ("out", start)
            while self.flow[node].get(self.SNK, 0) <= 0:
                nxt = None
                for b in sorted(self.flow[node]):
                    if self.flow[node][b] > 0:
                        nxt = b
                        break
                assert nxt is not None, "flow decomposition lost its way"
                path.append(nxt[1])
                node = ("out", nxt[1])
            out.append(path)
        return out

    def min_cut_vertices(self) -> frozenset[str]:
        """Leftmost minimum vertex cut via residual reachability."""
        reach = {self.SRC}
        queue = [self.SRC]
        while queue:
            node = queue.pop(0)
            for b in self._residual_neighbors(node):
                if b not in reach:
                    reach.add(b)
                    queue.append(b)
        cut = set()
        for v in self.g.vertices:
            if ("in", v) in reach and ("out", v) not in reach:
                cut.add(v)
        return frozenset(cut)


def disjoint_paths(g: Graph, s: Iterable[str], t: Iterable[str]) -> list[list[str]]:
    """Maximum family of pairwise vertex-disjoint s-t paths.

    Paths are fully vertex-disjoint, including their endpoints; a vertex in
    both s and t contributes a one-vertex path. Output is deterministic for
    a fixed input: paths are sorted by their first vertex.
    """
    s = frozenset(s)
    t = frozenset(t)
    for side in (s, t):
        unknown = side - g.vertices
        if unknown:
            raise UnknownVertexError(min(unknown))
    if not s or not t:
        return []
    net = _FlowNetwork(g, s, t)
    net.max_flow()
    return net.paths()


def minimum_separator(g: Graph, s: Iterable[str], t: Iterable[str]) -> frozenset[str]:
    """A minimum s-t vertex cut (the leftmost one, hence deterministic).

    The cut may intersect s and t; its size equals len(disjoint_paths(g,s,t)).
    """
    s = frozenset(s)
    t = frozenset(t)
    for side in (s, t):
        unknown = side - g.vertices
        if unknown:
            raise UnknownVertexError(min(unknown))
    if not s or not t:
        return frozenset()
    net = _FlowNetwork(g, s, t)
    net.max_flow()
    return net.min_cut_vertices()


def crossing_edge(g: Graph, side_a: frozenset[str], side_b: frozenset[str]) -> Edge | None:
    """First edge joining side_a - side_b to side_b - side_a, if any."""
    strict_a = side_a - side_b
    strict_b = side_b - side_a
    if not strict_a or not strict_b:
        return None
    small, other = (strict_a, strict_b) if len(strict_a) <= len(strict_b) else (strict_b, strict_a)
    for v in sorted(small):
        hit = g.adjacency[v] & other
        if hit:
            return _edge(v, min(hit))
    return None


def check_no_crossing(g: Graph, side_a: frozenset[str], side_b: frozenset[str]) -> None:
    e = crossing_edge(g, side_a, side_b)
    if e is not None:
        raise CrossingEdgeError(e)
