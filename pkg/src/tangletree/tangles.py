"""Pre-tangles, tangles, their enumeration, and tangle distinguishers.

A pre-tangle of order k is a consistent orientation of every separation of
order < k: no two chosen orientations (A, B), (C, D) of distinct separations
satisfy (B, A) <= (C, D). A tangle additionally forbids any three chosen
orientations (repetition allowed) from covering the graph as subgraphs:
G[A1] | G[A2] | G[A3] = G, on vertices and edges.

Two representations share one orientation-query contract (`order_bound`,
`orient`, `graph`): the materialized PreTangle mapping, and the lazy
TangleWitness whose orientation is computed per query. Witnesses keep the
large generated graphs workable, where materializing every low-order
separation is out of reach.

Efficient distinguishers between two clique witnesses reduce to a minimum
vertex cut between the cliques (any separation splitting the cliques must
contain their shared vertices and block every connecting path, and
conversely every cut yields such a separation), so the search runs as
unit-capacity max-flow. Materialized pre-tangles are compared by direct
enumeration with an explicit budget instead.
"""

from __future__ import annotations

from bisect import insort
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

from .errors import (
    BudgetExceededError,
    DisconnectedGraphError,
    EmptyGraphError,
    FamilyParameterError,
    OrientationUndecidableError,
)
from .graph import Graph, components, disjoint_paths, minimum_separator
from .separations import (
    DEFAULT_ENUMERATION_BUDGET,
    OrientedSeparation,
    Separation,
    enumerate_separations,
    leq,
)

DEFAULT_TANGLE_BUDGET = 500_000


@dataclass(frozen=True, eq=False)
class PreTangle:
    """Materialized consistent orientation of all separations of order < k."""

    graph: Graph
    order_bound: int
    choices: dict

    def __post_init__(self):
        key = tuple(sorted((s.sort_key, t) for s, t in self.choices.items()))
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash((self.order_bound, key)))

    def __eq__(self, other):
        if not isinstance(other, PreTangle):
            return NotImplemented
        return self.order_bound == other.order_bound and self._key == other._key

    def __hash__(self):
        return self._hash

    @property
    def sort_key(self) -> tuple:
        return (self.order_bound, self._key)

    def orients(self, sep: Separation) -> bool:
        return sep in self.choices

    def orient(self, sep: Separation) -> OrientedSeparation:
        toward = self.choices.get(sep)
        if toward is None:
            raise OrientationUndecidableError(
                f"separation of order {sep.order} outside this order-{self.order_bound} domain"
            )
        return sep.orient(toward)

    def oriented_members(self) -> list[OrientedSeparation]:
        return [s.orient(t) for s, t in sorted(self.choices.items(), key=lambda kv: kv[0].sort_key)]

    def to_json(self) -> dict:
        return {
            "order_bound": self.order_bound,
            "orientation": [
                {"sep": s.to_json(), "toward": t}
                for s, t in sorted(self.choices.items(), key=lambda kv: kv[0].sort_key)
            ],
        }

    @classmethod
    def from_json(cls, g: Graph, doc: dict) -> "PreTangle":
        choices = {
            Separation.from_json(g, entry["sep"]): entry["toward"]
            for entry in doc["orientation"]
        }
        return cls(g, doc["order_bound"], choices)


class Tangle(PreTangle):
    """A pre-tangle that passed the covering-triple axiom."""


@dataclass(frozen=True, eq=False)
class TangleWitness:
    """Lazy orientation anchored to a cohesive substructure.

    kind == "clique": orients every separation of order < order_bound toward
    the side containing the clique; a clique is never split strictly, so for
    order < |clique| that side exists and is unique. The orientation is a
    genuine tangle when |clique| >= 3 * order_bound - 2 (see
    `tangle_guaranteed`); for larger bounds up to |clique| it is still a
    consistent pre-tangle, which is what the sequence machinery needs.

    kind == "end_region": orients toward the component holding the last
    window vertex of the declared spine ray; undecidable when the spine tail
    meets the separator.
    """

    kind: str
    graph: Graph
    order_bound: int
    clique: frozenset[str] = frozenset()
    presentation: object = None
    spine: str = ""
    window: int = -1

    def __post_init__(self):
        if self.kind not in ("clique", "end_region"):
            raise FamilyParameterError(f"unknown witness kind {self.kind!r}")
        if self.kind == "clique":
            if not self.clique:
                raise FamilyParameterError("clique witness needs a non-empty clique")
            if self.order_bound > len(self.clique):
                raise FamilyParameterError(
                    "clique witness bound may not exceed the clique size"
                )
        else:
            if self.presentation is None or not self.spine:
                raise FamilyParameterError(
                    "end_region witness needs a presentation and spine label"
                )
        object.__setattr__(self, "_hash", hash((self.kind, self.order_bound, self.clique, self.spine, self.window)))

    def __eq__(self, other):
        if not isinstance(other, TangleWitness):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.order_bound == other.order_bound
            and self.clique == other.clique
            and self.spine == other.spine
            and self.window == other.window
            and self.graph == other.graph
        )

    def __hash__(self):
        return self._hash

    @property
    def sort_key(self) -> tuple:
        return (self.order_bound, self.kind, tuple(sorted(self.clique)), self.spine, self.window)

    @property
    def tangle_guaranteed(self) -> bool:
        return self.kind == "clique" and len(self.clique) >= 3 * self.order_bound - 2

    @cached_property
    def _tail_vertex(self) -> str:
        return self.presentation.ray_tail_vertex(self.spine, self.window)

    def orients(self, sep: Separation) -> bool:
        if sep.order >= self.order_bound:
            return False
        if self.kind == "end_region" and self._tail_vertex in sep.separator:
            return False
        return True

    def orient(self, sep: Separation) -> OrientedSeparation:
        if sep.order >= self.order_bound:
            raise OrientationUndecidableError(
                f"separation of order {sep.order} outside this order-{self.order_bound} domain"
            )
        if self.kind == "clique":
            rest = self.clique - sep.separator
            anchor = min(rest)
        else:
            anchor = self._tail_vertex
            if anchor in sep.separator:
                raise OrientationUndecidableError(
                    "spine tail meets the separator; end_region undecidable in this window"
                )
        if anchor in sep.side_a:
            oriented = sep.orient("a")
        else:
            oriented = sep.orient("b")
        if self.kind == "clique" and not self.clique <= oriented.side_b:
            raise OrientationUndecidableError(
                "separation splits the witness clique strictly"
            )
        return oriented

    def to_json(self) -> dict:
        doc = {"kind": self.kind, "order_bound": self.order_bound}
        if self.kind == "clique":
            doc["clique"] = sorted(self.clique)
        else:
            doc["spine"] = self.spine
            doc["window"] = self.window
        return doc


Orienter = Union[PreTangle, TangleWitness]


def orient_by_witness(w: TangleWitness, s: Separation) -> OrientedSeparation:
    return w.orient(s)


def clique_witness(g: Graph, clique: Iterable[str], order_bound: int) -> TangleWitness:
    return TangleWitness("clique", g, order_bound, clique=frozenset(clique))


def end_region_witness(presentation, spine: str, window: int, order_bound: int) -> TangleWitness:
    g = presentation.graph_at(window)
    return TangleWitness(
        "end_region",
        g,
        order_bound,
        presentation=presentation,
        spine=spine,
        window=window,
    )


def materialize(w: TangleWitness, *, budget: int = DEFAULT_ENUMERATION_BUDGET) -> PreTangle:
    """Expand a witness into the explicit orientation mapping (small graphs)."""
    seps = enumerate_separations(w.graph, w.order_bound - 1, budget=budget)
    choices = {}
    for sep in seps:
        oriented = w.orient(sep)
        choices[sep] = "b" if oriented.side_b == sep.side_b else "a"
    return PreTangle(w.graph, w.order_bound, choices)


@dataclass(frozen=True)
class PreTangleReport:
    complete: bool
    consistent: bool
    missing: tuple[Separation, ...]
    extra: tuple[Separation, ...]
    witness_pair: tuple[OrientedSeparation, OrientedSeparation] | None

    @property
    def ok(self) -> bool:
        return self.complete and self.consistent


def _consistency_witness(members: list[OrientedSeparation]):
    for i, x in enumerate(members):
        xr = x.reverse()
        for y in members[i + 1 :]:
            if x.canonical() == y.canonical():
                continue
            if leq(xr, y):
                return (x, y)
            if leq(y.reverse(), x):
                return (y, x)
    return None


def check_pretangle(g: Graph, p: PreTangle, *, budget: int = DEFAULT_ENUMERATION_BUDGET) -> PreTangleReport:
    """Completeness and consistency report with witnesses on failure."""
    domain = set(enumerate_separations(g, p.order_bound - 1, budget=budget))
    have = set(p.choices)
    missing = tuple(sorted(domain - have, key=lambda s: s.sort_key))
    extra = tuple(sorted(have - domain, key=lambda s: s.sort_key))
    witness = _consistency_witness(p.oriented_members())
    return PreTangleReport(
        complete=not missing and not extra,
        consistent=witness is None,
        missing=missing,
        extra=extra,
        witness_pair=witness,
    )


def _covering_third(
    g: Graph,
    pool: list[OrientedSeparation],
    x: OrientedSeparation,
    y: OrientedSeparation,
):
    """Some z in pool with G[x.A] | G[y.A] | G[z.A] = G, else None.

    pool must be sorted by decreasing |side_a| so the size cutoff can stop
    the scan early.
    """
    vmiss = g.vertices - x.side_a - y.side_a
    emiss = None
    for z in pool:
        if len(z.side_a) < len(vmiss):
            return None
        if not vmiss <= z.side_a:
            continue
        if emiss is None:
            emiss = g.edges - x.side_a_edges - y.side_a_edges
        if emiss <= z.side_a_edges:
            return z
    return None


@dataclass(frozen=True)
class TangleReport:
    pretangle: PreTangleReport
    axiom_ok: bool
    witness_triple: tuple | None

    @property
    def ok(self) -> bool:
        return self.pretangle.ok and self.axiom_ok


def check_tangle(g: Graph, p: PreTangle, *, budget: int = DEFAULT_ENUMERATION_BUDGET) -> TangleReport:
    """Pre-tangle checks plus the covering-triple axiom over all triples."""
    pre = check_pretangle(g, p, budget=budget)
    members = p.oriented_members()
    by_size = sorted(members, key=lambda o: (-len(o.side_a), o.canonical().sort_key))
    witness = None
    for i, x in enumerate(by_size):
        for y in by_size[i:]:
            if len(x.side_a) + len(y.side_a) + len(by_size[0].side_a) < len(g.vertices):
                break
            z = _covering_third(g, by_size, x, y)
            if z is not None:
                witness = (x, y, z)
                break
        if witness:
            break
    return TangleReport(pretangle=pre, axiom_ok=witness is None, witness_triple=witness)


def find_vertex_covering_triple(g: Graph, p: PreTangle):
    """Diagnostic-only weaker predicate: triple covering the vertices alone."""
    members = sorted(
        p.oriented_members(), key=lambda o: (-len(o.side_a), o.canonical().sort_key)
    )
    for i, x in enumerate(members):
        for y in members[i:]:
            vmiss = g.vertices - x.side_a - y.side_a
            for z in members:
                if len(z.side_a) < len(vmiss):
                    break
                if vmiss <= z.side_a:
                    return (x, y, z)
    return None


def enumerate_tangles(
    g: Graph,
    k: int,
    *,
    budget: int = DEFAULT_TANGLE_BUDGET,
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> list[Tangle]:
    """Exactly all tangles of order k, by depth-first orientation search.

    Separations are fixed in (order, canonical) order; each partial
    orientation is pruned on the first consistency violation or covering
    triple among the chosen orientations, which leaves precisely the tangles
    as completed branches.
    """
    if not g.vertices:
        raise EmptyGraphError("enumerate_tangles requires a non-empty graph")
    if not g.is_connected():
        raise DisconnectedGraphError("enumerate_tangles requires a connected graph")
    if k < 1:
        raise ValueError("tangle order must be at least 1")
    seps = enumerate_separations(g, k - 1, budget=enumeration_budget)
    results: list[Tangle] = []
    chosen: list[OrientedSeparation] = []
    by_size: list[tuple[int, OrientedSeparation]] = []  # (-|side_a|, oriented)
    nodes = 0

    def compatible(new: OrientedSeparation) -> bool:
        new_rev = new.reverse()
        for old in chosen:
            if leq(new_rev, old) or leq(old.reverse(), new):
                return False
        pool = [o for _, o in by_size]
        pos = 0
        while pos < len(pool) and len(pool[pos].side_a) >= len(new.side_a):
            pos += 1
        pool.insert(pos, new)
        if _covering_third(g, pool, new, new) is not None:
            return False
        for old in chosen:
            if _covering_third(g, pool, new, old) is not None:
                return False
        return True

    def dfs(i: int):
        nonlocal nodes
        if i == len(seps):
            choices = {
                sep: ("b" if oriented.side_b == sep.side_b else "a")
                for sep, oriented in zip(seps, chosen)
            }
            results.append(Tangle(g, k, choices))
            return
        sep = seps[i]
        for toward in ("b", "a"):
            nodes += 1
            if nodes > budget:
                raise BudgetExceededError("tangle search nodes", budget)
            oriented = sep.orient(toward)
            if compatible(oriented):
                chosen.append(oriented)
                entry = (-len(oriented.side_a), oriented)
                insort(by_size, entry, key=lambda e: e[0])
                dfs(i + 1)
                by_size.remove(entry)
                chosen.pop()

    dfs(0)
    return results


def distinguishes(s: Separation, p: Orienter, q: Orienter) -> bool:
    """True iff p and q contain opposite orientations of s."""
    if s.order >= min(p.order_bound, q.order_bound):
        raise OrientationUndecidableError(
            f"order {s.order} outside the common domain"
        )
    return p.orient(s) != q.orient(s)


def _clique_cores(p: Orienter, q: Orienter):
    if (
        isinstance(p, TangleWitness)
        and isinstance(q, TangleWitness)
        and p.kind == "clique"
        and q.kind == "clique"
    ):
        return p.clique, q.clique
    return None


def _separation_from_cut(g: Graph, cut: frozenset[str], core: frozenset[str]) -> Separation:
    """Separation with separator `cut`, core-side components on side b."""
    comps = components(g, cut)
    b_side = set(cut)
    a_side = set(cut)
    for comp in comps:
        if comp & core:
            b_side |= comp
        else:
            a_side |= comp
    return OrientedSeparation(g, frozenset(a_side), frozenset(b_side)).canonical()


def efficient_distinguisher(
    g: Graph,
    p: Orienter,
    q: Orienter,
    *,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    candidates: list[Separation] | None = None,
) -> Separation | None:
    """A minimum-order separation distinguishing p and q, or None.

    For two clique witnesses the minimum order equals the minimum vertex cut
    between the cliques, and the leftmost minimum cut gives a deterministic
    representative. Otherwise candidates are scanned in (order, canonical)
    order, so the returned separation is the lexicographically least one of
    minimum order.
    """
    bound = min(p.order_bound, q.order_bound)
    cores = _clique_cores(p, q)
    if cores is not None:
        k_core, l_core = cores
        value = len(disjoint_paths(g, k_core, l_core))
        if value >= bound:
            return None
        cut = minimum_separator(g, k_core, l_core)
        sep = _separation_from_cut(g, cut, l_core)
        if not distinguishes(sep, p, q):
            raise OrientationUndecidableError(
                "minimum cut failed to distinguish the clique witnesses"
            )
        return sep
    if candidates is None:
        candidates = enumerate_separations(g, bound - 1, budget=budget)
    for sep in candidates:
        if sep.order >= bound:
            continue
        if not (p.orients(sep) and q.orients(sep)):
            continue
        if p.orient(sep) != q.orient(sep):
            return sep
    return None


def min_distinguishing_order(
    g: Graph,
    p: Orienter,
    q: Orienter,
    *,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
    candidates: list[Separation] | None = None,
) -> int | None:
    cores = _clique_cores(p, q)
    if cores is not None:
        bound = min(p.order_bound, q.order_bound)
        value = len(disjoint_paths(g, cores[0], cores[1]))
        return value if value < bound else None
    sep = efficient_distinguisher(g, p, q, budget=budget, candidates=candidates)
    return None if sep is None else sep.order


def distinguishable_pairs(
    g: Graph,
    tangles: list[Orienter],
    *,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> list[tuple[tuple[int, int], int]]:
    """All unordered distinguishable pairs (as index pairs) with their
    efficient order, sorted ascending by (order, i, j)."""
    candidates: list[Separation] | None = None
    need_enum = any(_clique_cores(p, q) is None for i, p in enumerate(tangles) for q in tangles[i + 1 :])
    if need_enum and tangles:
        max_bound = max(min(p.order_bound, q.order_bound) for i, p in enumerate(tangles) for q in tangles[i + 1 :])
        candidates = enumerate_separations(g, max_bound - 1, budget=budget)
    out = []
    for i in range(len(tangles)):
        for j in range(i + 1, len(tangles)):
            o = min_distinguishing_order(
                g, tangles[i], tangles[j], budget=budget, candidates=candidates
            )
            if o is not None:
                out.append(((i, j), o))
    out.sort(key=lambda e: (e[1], e[0]))
    return out
