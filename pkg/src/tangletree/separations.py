"""Separations of a graph: orientations, order, nestedness, sequences, limits.

An oriented separation (A, B) is a pair of vertex sets covering V(G) with no
edge between A - B and B - A; its separator is A & B and its order is
|A & B|. The partial order is (A, B) <= (C, D) iff A <= C and B >= D. Two
separations are nested when some orientations are comparable; `relation`
decides this twice, via the definition and via the corner test on
(A & D) - S with S = (A & B) & (C & D), and insists the two agree.

Sequences ordered by <= have a supremum (union of the left sides,
intersection of the right sides), which is again a separation; domination
and interlacing compare sequences through that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    AmbientMismatchError,
    BudgetExceededError,
    CoverError,
    DisconnectedGraphError,
    EmptyGraphError,
    InternalCheckError,
    SequenceOrderError,
    UnknownVertexError,
)
from .graph import Graph, check_no_crossing, components, tight_components

DEFAULT_ENUMERATION_BUDGET = 2_000_000


def _sort_key(vs: frozenset[str]) -> tuple[str, ...]:
    return tuple(sorted(vs))


@dataclass(frozen=True, eq=False)
class OrientedSeparation:
    """One orientation (A, B) of a separation of `graph`."""

    graph: Graph
    side_a: frozenset[str]
    side_b: frozenset[str]

    def __post_init__(self):
        g = self.graph
        if self.side_a | self.side_b != g.vertices:
            missing = g.vertices - (self.side_a | self.side_b)
            extra = (self.side_a | self.side_b) - g.vertices
            if extra:
                raise UnknownVertexError(min(extra))
            raise CoverError(f"sides do not cover V(G); missing {sorted(missing)[:5]}")
        check_no_crossing(g, self.side_a, self.side_b)
        object.__setattr__(self, "_hash", hash((self.side_a, self.side_b)))

    def __eq__(self, other):
        if not isinstance(other, OrientedSeparation):
            return NotImplemented
        return (
            self.side_a == other.side_a
            and self.side_b == other.side_b
            and (self.graph is other.graph or self.graph == other.graph)
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"({sorted(self.side_a)} | {sorted(self.side_b)})"

    @cached_property
    def separator(self) -> frozenset[str]:
        return self.side_a & self.side_b

    @property
    def order(self) -> int:
        return len(self.separator)

    @cached_property
    def side_a_edges(self) -> frozenset:
        return self.graph.edges_within(self.side_a)

    def reverse(self) -> "OrientedSeparation":
        return OrientedSeparation(self.graph, self.side_b, self.side_a)

    def canonical(self) -> "Separation":
        if _sort_key(self.side_a) <= _sort_key(self.side_b):
            return Separation(self.graph, self.side_a, self.side_b)
        return Separation(self.graph, self.side_b, self.side_a)

    def to_json(self) -> dict:
        return {"a": sorted(self.side_a), "b": sorted(self.side_b)}

    @classmethod
    def from_json(cls, g: Graph, doc: dict) -> "OrientedSeparation":
        return make_separation(g, doc["a"], doc["b"])


@dataclass(frozen=True, eq=False)
class Separation:
    """Canonical unordered form: the lexicographically smaller side first."""

    graph: Graph
    side_a: frozenset[str]
    side_b: frozenset[str]

    def __post_init__(self):
        if _sort_key(self.side_a) > _sort_key(self.side_b):
            raise InternalCheckError("Separation sides not in canonical order")
        object.__setattr__(self, "_hash", hash((self.side_a, self.side_b)))

    def __eq__(self, other):
        if not isinstance(other, Separation):
            return NotImplemented
        return (
            self.side_a == other.side_a
            and self.side_b == other.side_b
            and (self.graph is other.graph or self.graph == other.graph)
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"{{{sorted(self.side_a)} , {sorted(self.side_b)}}}"

    @cached_property
    def separator(self) -> frozenset[str]:
        return self.side_a & self.side_b

    @property
    def order(self) -> int:
        return len(self.separator)

    @property
    def sort_key(self) -> tuple:
        return (_sort_key(self.side_a), _sort_key(self.side_b))

    def orient(self, toward: str) -> OrientedSeparation:
        """Orientation with the named stored side ('a' or 'b') as B."""
        if toward == "b":
            return OrientedSeparation(self.graph, self.side_a, self.side_b)
        if toward == "a":
            return OrientedSeparation(self.graph, self.side_b, self.side_a)
        raise ValueError(f"toward must be 'a' or 'b', got {toward!r}")

    def orientations(self) -> tuple[OrientedSeparation, OrientedSeparation]:
        return (self.orient("b"), self.orient("a"))

    def is_proper(self) -> bool:
        v = self.graph.vertices
        return self.side_a != v and self.side_b != v

    def to_json(self) -> dict:
        return {"a": sorted(self.side_a), "b": sorted(self.side_b)}

    @classmethod
    def from_json(cls, g: Graph, doc: dict) -> "Separation":
        return make_separation(g, doc["a"], doc["b"]).canonical()


def make_separation(g: Graph, a: Iterable[str], b: Iterable[str]) -> OrientedSeparation:
    """Validated construction of the oriented separation (a, b) of g."""
    return OrientedSeparation(g, frozenset(a), frozenset(b))


def order(s: OrientedSeparation | Separation) -> int:
    return s.order


def _same_graph(s, t) -> None:
    if not (s.graph is t.graph or s.graph == t.graph):
        raise AmbientMismatchError("separations live over different graphs")


def leq(s: OrientedSeparation, t: OrientedSeparation) -> bool:
    """(A, B) <= (C, D) iff A <= C and B >= D."""
    _same_graph(s, t)
    return s.side_a <= t.side_a and s.side_b >= t.side_b


def lt(s: OrientedSeparation, t: OrientedSeparation) -> bool:
    return leq(s, t) and not (s.side_a == t.side_a and s.side_b == t.side_b)


def _leq_corner(s: OrientedSeparation, t: OrientedSeparation) -> bool:
    """Corner form of <= : (A & D) - S empty, S = (A & B) & (C & D)."""
    shared = s.separator & t.separator
    return not ((s.side_a & t.side_b) - shared)


@dataclass(frozen=True)
class Relation:
    """Outcome of the nested/cross decision for two separations."""

    nested: bool
    witness: tuple[OrientedSeparation, OrientedSeparation] | None = None

    @property
    def cross(self) -> bool:
        return not self.nested


def relation(s: Separation | OrientedSeparation, t: Separation | OrientedSeparation) -> Relation:
    """Decide nested-with-witness vs cross, by definition and corner test.

    The two tests must agree on every orientation pair; disagreement raises
    InternalCheckError since it can only come from an implementation bug.
    """
    _same_graph(s, t)
    s_or = s.orientations() if isinstance(s, Separation) else (s, s.reverse())
    t_or = t.orientations() if isinstance(t, Separation) else (t, t.reverse())
    witness = None
    any_comparable = False
    for so in s_or:
        for to in t_or:
            by_def = leq(so, to)
            by_corner = _leq_corner(so, to)
            if by_def != by_corner:
                raise InternalCheckError(
                    f"corner test disagrees with definition on {so!r} vs {to!r}"
                )
            if by_def:
                any_comparable = True
                if witness is None:
                    witness = (so, to)
            if leq(to, so) != _leq_corner(to, so):
                raise InternalCheckError(
                    f"corner test disagrees with definition on {to!r} vs {so!r}"
                )
            if witness is None and leq(to, so):
                any_comparable = True
                witness = (to, so)
    return Relation(any_comparable, witness)


def is_proper(g: Graph, s: Separation | OrientedSeparation) -> bool:
    _ambient(g, s)
    return s.side_a != g.vertices and s.side_b != g.vertices


def is_tight(g: Graph, s: Separation | OrientedSeparation) -> bool:
    """Both strict sides contain a tight component of g - (A & B)."""
    _ambient(g, s)
    strict_a = s.side_a - s.side_b
    strict_b = s.side_b - s.side_a
    if not strict_a or not strict_b:
        return False
    tight = tight_components(g, s.separator)
    return any(k <= strict_a for k in tight) and any(k <= strict_b for k in tight)


def _ambient(g: Graph, s) -> None:
    if not (s.graph is g or s.graph == g):
        raise AmbientMismatchError("separation does not live over this graph")


def enumerate_separations(
    g: Graph,
    max_order: int,
    *,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> list[Separation]:
    """All separations of g with order <= max_order, canonical, each once.

    For every candidate separator S with |S| <= max_order, every bipartition
    of the components of g - S into two sides yields the separation
    (S | left, S | right); the separator of the result is exactly S, so no
    deduplication across candidates is needed. Improper separations are
    included (query `Separation.is_proper`). The budget bounds the number of
    separator candidates examined.
    """
    if not g.vertices:
        raise EmptyGraphError("enumerate_separations requires a non-empty graph")
    if not g.is_connected():
        raise DisconnectedGraphError("enumerate_separations requires a connected graph")
    if max_order > len(g.vertices):
        raise ValueError("max_order exceeds |V(g)|")
    verts = sorted(g.vertices)
    out: list[Separation] = []
    examined = 0
    for size in range(max_order + 1):
        for sep_tuple in combinations(verts, size):
            examined += 1
            if examined > budget:
                raise BudgetExceededError("separator candidates", budget)
            separator = frozenset(sep_tuple)
            comps = components(g, separator)
            if not comps:
                out.append(
                    OrientedSeparation(g, separator, separator).canonical()
                )
                continue
            rest = comps[1:]
            # first component pinned to the left side; this halves the
            # bipartitions and enumerates each unordered pair exactly once
            for mask in range(1 << len(rest)):
                left = set(comps[0])
                right: set[str] = set()
                for i, comp in enumerate(rest):
                    (left if mask >> i & 1 else right).update(comp)
                sep = OrientedSeparation(
                    g, frozenset(left) | separator, frozenset(right) | separator
                )
                out.append(sep.canonical())
    out.sort(key=lambda s: (s.order, s.sort_key))
    return out


@dataclass(frozen=True, eq=False)
class SeparationSequence:
    """Finite ordered run of oriented separations over one graph.

    Strictly increasing by default; build with `weakly_increasing` for
    callers that only need the non-strict regime.
    """

    items: tuple[OrientedSeparation, ...]
    strict: bool = True

    def __post_init__(self):
        if self.items:
            g = self.items[0].graph
            for it in self.items[1:]:
                if not (it.graph is g or it.graph == g):
                    raise AmbientMismatchError("sequence items over different graphs")
        for prev, cur in zip(self.items, self.items[1:]):
            if not leq(prev, cur):
                raise SequenceOrderError(f"items not increasing: {prev!r} !<= {cur!r}")
            if self.strict and prev == cur:
                raise SequenceOrderError(f"items not strictly increasing at {cur!r}")

    @classmethod
    def strictly_increasing(cls, items: Sequence[OrientedSeparation]) -> "SeparationSequence":
        return cls(tuple(items), strict=True)

    @classmethod
    def weakly_increasing(cls, items: Sequence[OrientedSeparation]) -> "SeparationSequence":
        return cls(tuple(items), strict=False)

    @property
    def graph(self) -> Graph:
        if not self.items:
            raise SequenceOrderError("empty sequence has no ambient graph")
        return self.items[0].graph

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def to_json(self) -> dict:
        return {"items": [it.to_json() for it in self.items]}

    @classmethod
    def from_json(cls, g: Graph, doc: dict, *, strict: bool = True) -> "SeparationSequence":
        items = tuple(OrientedSeparation.from_json(g, d) for d in doc["items"])
        return cls(items, strict=strict)


def supremum(seq: SeparationSequence | Sequence[OrientedSeparation]) -> OrientedSeparation:
    """(union of A_i, intersection of B_i); valid for any non-empty run."""
    items = list(seq)
    if not items:
        raise SequenceOrderError("supremum of an empty sequence")
    g = items[0].graph
    a: set[str] = set()
    b = set(items[0].side_b)
    for it in items:
        if not (it.graph is g or it.graph == g):
            raise AmbientMismatchError("items over different graphs")
        a |= it.side_a
        b &= it.side_b
    return OrientedSeparation(g, frozenset(a), frozenset(b))


def dominates(
    seq1: SeparationSequence | Sequence[OrientedSeparation],
    seq2: SeparationSequence | Sequence[OrientedSeparation],
) -> bool:
    """Each item of seq2 lies below some item of seq1."""
    items1 = list(seq1)
    items2 = list(seq2)
    if items1 and items2:
        _same_graph(items1[0], items2[0])
    return all(any(leq(c, a) for a in items1) for c in items2)


def interlaced(seq1, seq2) -> bool:
    return dominates(seq1, seq2) and dominates(seq2, seq1)


@dataclass(frozen=True)
class PushingReport:
    """Least stable index for a finite set against an increasing sequence."""

    index: int
    in_separator: frozenset[str]
    in_strict_side: frozenset[str]


def pushing_index(seq: SeparationSequence, x: Iterable[str]) -> PushingReport:
    """Least I with x & (A & B) and x & (A - B) stable from I on.

    Stability is against the window supremum; elements of x outside the
    supremum's A side are rejected.
    """
    x = frozenset(x)
    sup = supremum(seq)
    outside = x - sup.side_a
    if outside:
        raise UnknownVertexError(
            f"pushing set leaves the supremum's A side: {sorted(outside)[:5]}"
        )
    want_sep = x & sup.separator
    want_strict = x & (sup.side_a - sup.side_b)
    index = None
    for i in range(len(seq) - 1, -1, -1):
        it = seq[i]
        if x & it.separator == want_sep and x & (it.side_a - it.side_b) == want_strict:
            index = i
        else:
            break
    if index is None:
        raise SequenceOrderError("window exhausted: no stable index in this window")
    return PushingReport(index, want_sep, want_strict)


@dataclass(frozen=True, eq=False)
class NestedSet:
    """Finite set of pairwise nested separations of one graph."""

    graph: Graph
    members: frozenset[Separation]

    def __post_init__(self):
        ms = sorted(self.members, key=lambda s: s.sort_key)
        for s in ms:
            _ambient(self.graph, s)
        for s, t in combinations(ms, 2):
            if relation(s, t).cross:
                raise SequenceOrderError(f"members cross: {s!r} vs {t!r}")

    @classmethod
    def of(cls, g: Graph, members: Iterable[Separation]) -> "NestedSet":
        return cls(g, frozenset(members))

    def __iter__(self):
        return iter(sorted(self.members, key=lambda s: s.sort_key))

    def __len__(self):
        return len(self.members)

    def __contains__(self, sep: Separation) -> bool:
        return sep in self.members

    def orientations(self) -> list[OrientedSeparation]:
        out = []
        for s in self:
            out.extend(s.orientations())
        return out

    def to_json(self) -> dict:
        return {"members": [s.to_json() for s in self]}

    @classmethod
    def from_json(cls, g: Graph, doc: dict) -> "NestedSet":
        return cls.of(g, (Separation.from_json(g, d) for d in doc["members"]))
