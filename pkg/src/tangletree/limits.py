"""Relating fixed separations to window limits, plus interlacing machinery.

Window suprema stand in for the limits of strictly increasing sequences.
Every verdict produced here is finite-horizon evidence about an
infinite-object statement, and the reports say so via `evidence_only`.

An interlaced pair couples a strictly increasing sequence (s_i) with
pre-tangles (P_i), one more than there are separations, such that

    IM1: reverse(s_i) lies in P_i and s_i lies in P_{i+1}, and
    IM2: for i < j, every minimal-order separation among s_i .. s_{j-1}
         efficiently distinguishes P_i and P_j.

`construct_interlaced` runs the insertion recursion: whenever a consecutive
pair of chain members fails to distinguish its induced tangles efficiently,
the efficient distinguisher from the nested set is inserted strictly between
them. `thin_out` selects the last index attaining each successive minimal
order, yielding strictly increasing orders while preserving IM1 and IM2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    InternalCheckError,
    PreconditionError,
)
from .graph import Graph, tight_components
from .separations import (
    DEFAULT_ENUMERATION_BUDGET,
    NestedSet,
    OrientedSeparation,
    SeparationSequence,
    is_tight,
    leq,
    lt,
    relation,
    supremum,
)
from .tangles import Orienter, distinguishes, min_distinguishing_order
from .tree_of_tangles import exhaustiveness_evidence


@dataclass(frozen=True)
class LimitRelationReport:
    """Which relations a fixed separation bears to the window supremum, and
    from which window index the per-item counterpart holds onward."""

    supremum: OrientedSeparation
    below: int | None
    reverse_below: int | None
    above: int | None
    cross: int | None
    holds: dict

    def stable_index(self, kind: str) -> int | None:
        return getattr(self, kind)


def _stable_from(items, predicate) -> int | None:
    """Least I such that predicate holds for every index >= I, or None."""
    idx = None
    for i in range(len(items) - 1, -1, -1):
        if predicate(items[i]):
            idx = i
        else:
            break
    return idx


def classify_vs_limit(seq: SeparationSequence, cd: OrientedSeparation) -> LimitRelationReport:
    """Relation report of the finite-order separation cd against the window
    supremum of a strictly increasing sequence."""
    sup = supremum(seq)
    holds = {
        "below": leq(cd, sup),
        "reverse_below": leq(cd.reverse(), sup),
        "above": leq(sup, cd),
        "cross": relation(cd.canonical(), sup.canonical()).cross,
    }
    rev = cd.reverse()
    below = _stable_from(seq.items, lambda it: leq(cd, it)) if holds["below"] else None
    reverse_below = (
        _stable_from(seq.items, lambda it: leq(rev, it)) if holds["reverse_below"] else None
    )
    above = _stable_from(seq.items, lambda it: leq(it, cd)) if holds["above"] else None
    cross = (
        _stable_from(seq.items, lambda it: relation(cd.canonical(), it.canonical()).cross)
        if holds["cross"]
        else None
    )
    return LimitRelationReport(
        supremum=sup,
        below=below,
        reverse_below=reverse_below,
        above=above,
        cross=cross,
        holds=holds,
    )


@dataclass(frozen=True, eq=False)
class InterlacedPair:
    """A window sequence with its accompanying pre-tangles (one extra)."""

    sequence: SeparationSequence
    tangles: tuple

    def __post_init__(self):
        if len(self.tangles) != len(self.sequence) + 1:
            raise PreconditionError(
                "tangle list must be one longer than the sequence"
            )

    @property
    def graph(self) -> Graph:
        return self.sequence.graph

    def to_json(self) -> dict:
        return {
            "kind": "interlaced_pair",
            "sequence": self.sequence.to_json(),
            "tangles": [t.to_json() for t in self.tangles],
        }


@dataclass(frozen=True)
class InterlacingReport:
    im1_ok: bool
    im2_ok: bool
    im1_witness: tuple | None
    im2_witness: tuple | None

    @property
    def ok(self) -> bool:
        return self.im1_ok and self.im2_ok


def check_interlaced_pair(
    g: Graph,
    ip: InterlacedPair,
    *,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> InterlacingReport:
    """Verify IM1 pointwise and IM2 for every index pair i < j."""
    from .errors import OrientationUndecidableError

    seq = ip.sequence
    tangles = ip.tangles
    im1_witness = None
    for i, item in enumerate(seq):
        sep = item.canonical()
        try:
            if tangles[i].orient(sep) != item.reverse():
                im1_witness = (i, "reverse not in P_i")
                break
            if tangles[i + 1].orient(sep) != item:
                im1_witness = (i, "forward not in P_{i+1}")
                break
        except OrientationUndecidableError as exc:
            im1_witness = (i, str(exc))
            break
    im2_witness = None
    if im1_witness is None:
        for i in range(len(tangles)):
            for j in range(i + 1, len(tangles)):
                window = seq.items[i:j]
                if not window:
                    continue
                minimal = min(it.order for it in window)
                t_star = min_distinguishing_order(
                    g, tangles[i], tangles[j], budget=budget
                )
                for item in window:
                    if item.order != minimal:
                        continue
                    sep = item.canonical()
                    try:
                        if not distinguishes(sep, tangles[i], tangles[j]):
                            im2_witness = (i, j, sep, "does not distinguish")
                            break
                    except OrientationUndecidableError as exc:
                        im2_witness = (i, j, sep, str(exc))
                        break
                    if t_star != minimal:
                        im2_witness = (i, j, sep, f"minimum order is {t_star}")
                        break
                if im2_witness:
                    break
            if im2_witness:
                break
    return InterlacingReport(
        im1_ok=im1_witness is None,
        im2_ok=im1_witness is None and im2_witness is None,
        im1_witness=im1_witness,
        im2_witness=im2_witness,
    )


@dataclass(frozen=True)
class StrongRelevanceReport:
    witnessed: bool
    witness: tuple | None  # (O, P, Q)


def _efficiently_distinguishes(g, sep, p, q, *, budget) -> bool:
    if sep.order >= min(p.order_bound, q.order_bound):
        return False
    if not (p.orients(sep) and q.orients(sep)):
        return False
    if p.orient(sep) == q.orient(sep):
        return False
    return min_distinguishing_order(g, p, q, budget=budget) == sep.order


def check_strongly_relevant(
    g: Graph,
    s: OrientedSeparation,
    t: OrientedSeparation,
    pool: list[Orienter],
    *,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> StrongRelevanceReport:
    """Witness (O, P, Q) from the pool: s efficiently distinguishes O and P
    with s in P, and t efficiently distinguishes P and Q with reverse(t)
    in P."""
    if not lt(s, t):
        raise PreconditionError("strong relevance needs s strictly below t")
    s_sep, t_sep = s.canonical(), t.canonical()
    ordered = sorted(pool, key=lambda x: x.sort_key)
    for p in ordered:
        if p.order_bound <= max(s.order, t.order):
            continue
        if p.orient(s_sep) != s or p.orient(t_sep) != t.reverse():
            continue
        for o in ordered:
            if o is p or not _efficiently_distinguishes(g, s_sep, o, p, budget=budget):
                continue
            for q in ordered:
                if q is p or not _efficiently_distinguishes(g, t_sep, p, q, budget=budget):
                    continue
                if q.orient(t_sep) != t:
                    continue
                return StrongRelevanceReport(True, (o, p, q))
    return StrongRelevanceReport(False, None)


def _relevance_partner(g, sep, oriented, pool, *, budget):
    """Lexicographically least (P, Q) with sep efficiently distinguishing
    them and `oriented` in Q; None when sep is not pool-relevant."""
    ordered = sorted(pool, key=lambda x: x.sort_key)
    for p in ordered:
        if p.order_bound <= sep.order or p.orient(sep) != oriented.reverse():
            continue
        for q in ordered:
            if q.order_bound <= sep.order or q.orient(sep) != oriented:
                continue
            if _efficiently_distinguishes(g, sep, p, q, budget=budget):
                return (p, q)
    return None


def construct_interlaced(
    g: Graph,
    n: NestedSet,
    seq: SeparationSequence,
    pool: list[Orienter],
    *,
    budget: int = DEFAULT_ENUMERATION_BUDGET,
) -> InterlacedPair:
    """Insertion recursion producing an interlaced pair over the nested set.

    Requires strictly increasing orders and pool-relevant items. Between
    consecutive items whose induced tangles are not efficiently distinguished
    by the earlier item, the efficient distinguisher from n (oriented into
    the later induced tangle) is inserted; it lands strictly between the two
    by nestedness and consistency, and a failure to do so aborts loudly.
    """
    members = set(n.members)
    for item in seq:
        if item.canonical() not in members:
            raise PreconditionError(f"sequence item {item!r} is not in the nested set")
    orders = [item.order for item in seq]
    if any(a >= b for a, b in zip(orders, orders[1:])):
        raise PreconditionError("item orders must be strictly increasing")
    partners = []
    for item in seq:
        pq = _relevance_partner(g, item.canonical(), item, pool, budget=budget)
        if pq is None:
            raise PreconditionError(f"item {item!r} is not pool-relevant")
        partners.append(pq)
    out: list[OrientedSeparation] = [seq[0]]
    for idx in range(len(seq) - 1):
        cur, nxt = seq[idx], seq[idx + 1]
        p_cur, _ = partners[idx]
        p_nxt, _ = partners[idx + 1]
        if _efficiently_distinguishes(g, cur.canonical(), p_cur, p_nxt, budget=budget):
            out.append(nxt)
            continue
        inserted = None
        t_star = min_distinguishing_order(g, p_cur, p_nxt, budget=budget)
        for member in n:
            if member.order != t_star:
                continue
            if member.order >= min(p_cur.order_bound, p_nxt.order_bound):
                continue
            if not distinguishes(member, p_cur, p_nxt):
                continue
            oriented = p_nxt.orient(member)
            if lt(cur, oriented) and lt(oriented, nxt):
                inserted = oriented
                break
            raise InternalCheckError(
                "efficient distinguisher does not sit between consecutive items; "
                "preconditions on the nested set are violated"
            )
        if inserted is None:
            raise InternalCheckError(
                "nested set carries no efficient distinguisher for the induced "
                "tangle pair; it cannot efficiently distinguish the pool"
            )
        out.append(inserted)
        out.append(nxt)
    new_seq = SeparationSequence.strictly_increasing(out)
    tangles = _assign_tangles(g, new_seq, pool, budget=budget)
    return InterlacedPair(new_seq, tuple(tangles))


def _assign_tangles(g, seq, pool, *, budget):
    """Middle tangles come from the strong-relevance witnesses of consecutive
    pairs: slot i+1 holds the items' orientations (s_i forward, s_{i+1}
    reverse) and admits efficient partners across both; the end slots pair
    off against their chosen neighbours."""
    ordered = sorted(pool, key=lambda x: x.sort_key)

    def holds(t, item, forward: bool) -> bool:
        sep = item.canonical()
        if t.order_bound <= item.order or not t.orients(sep):
            return False
        return t.orient(sep) == (item if forward else item.reverse())

    def partner_exists(t, item, left: bool) -> bool:
        return any(
            x is not t
            and _efficiently_distinguishes(
                g, item.canonical(), (x if left else t), (t if left else x), budget=budget
            )
            for x in ordered
        )

    slots: list = [None] * (len(seq) + 1)
    for i in range(len(seq) - 1):
        cur, nxt = seq[i], seq[i + 1]
        for cand in ordered:
            if not (holds(cand, cur, True) and holds(cand, nxt, False)):
                continue
            if not partner_exists(cand, cur, left=True):
                continue
            if not partner_exists(cand, nxt, left=False):
                continue
            slots[i + 1] = cand
            break
        if slots[i + 1] is None:
            raise InternalCheckError(f"no tangle assignment for slot {i + 1}")
    first = seq[0]
    last = seq[len(seq) - 1]
    if len(seq) == 1:
        for o in ordered:
            if not holds(o, first, False):
                continue
            for q in ordered:
                if q is not o and holds(q, first, True) and _efficiently_distinguishes(
                    g, first.canonical(), o, q, budget=budget
                ):
                    slots[0], slots[1] = o, q
                    break
            if slots[0] is not None:
                break
    else:
        for o in ordered:
            if holds(o, first, False) and _efficiently_distinguishes(
                g, first.canonical(), o, slots[1], budget=budget
            ):
                slots[0] = o
                break
        for q in ordered:
            if holds(q, last, True) and _efficiently_distinguishes(
                g, last.canonical(), slots[len(seq) - 1], q, budget=budget
            ):
                slots[len(seq)] = q
                break
    if any(s is None for s in slots):
        raise InternalCheckError("tangle assignment incomplete")
    return slots


@dataclass(frozen=True)
class ThinOutReport:
    selected: tuple[int, ...]
    pair: InterlacedPair


def thin_out(ip: InterlacedPair) -> ThinOutReport:
    """Subsequence selection: j(0) is the last index attaining the minimal
    order; j(i) the last index after j(i-1) attaining the minimal remaining
    order. Orders become strictly increasing; the co-selected tangles keep
    IM1 and IM2."""
    seq = ip.sequence
    if not seq.items:
        return ThinOutReport((), ip)
    orders = [item.order for item in seq]
    selected: list[int] = []
    pos = -1
    while True:
        remaining = [i for i in range(len(orders)) if i > pos]
        if not remaining:
            break
        k = min(orders[i] for i in remaining)
        j = max(i for i in range(len(orders)) if orders[i] == k)
        if j <= pos:
            raise InternalCheckError("thin-out selection moved backwards")
        selected.append(j)
        pos = j
    items = tuple(seq[i] for i in selected)
    tangles = tuple(ip.tangles[i] for i in selected) + (ip.tangles[selected[-1] + 1],)
    new_pair = InterlacedPair(SeparationSequence.strictly_increasing(items), tangles)
    return ThinOutReport(tuple(selected), new_pair)


@dataclass(frozen=True)
class PseudoTightReport:
    ok: bool
    threshold: int
    witnesses: dict
    boundary_interference: tuple[str, ...]
    failures: tuple[str, ...]

    @property
    def evidence_only(self) -> bool:
        return True


def pseudo_tight_check(
    g_window: Graph,
    seq: SeparationSequence,
    *,
    boundary: frozenset[str] = frozenset(),
    threshold: int | None = None,
) -> PseudoTightReport:
    """Window rendering of the pseudo-tight limit property.

    Every interior vertex of the supremum's separator must have a neighbour
    in B - A that lies, for at least `threshold` window indices, in a tight
    component on the B side. Vertices too close to the window boundary are
    reported as interference, not failures.
    """
    g = g_window
    for item in seq:
        if not is_tight(g, item):
            raise PreconditionError(f"sequence item {item!r} is not tight")
    sup = supremum(seq)
    strict_b = sup.side_b - sup.side_a
    if not strict_b:
        raise PreconditionError("supremum has empty strict B side in this window")
    if threshold is None:
        threshold = math.ceil(len(seq) / 2)
    tight_b_side: list[list[frozenset[str]]] = []
    for item in seq:
        strict = item.side_b - item.side_a
        tight_b_side.append(
            [k for k in tight_components(g, item.separator) if k <= strict]
        )
    fringe = boundary | (g.neighbourhood(boundary) if boundary else frozenset())
    witnesses: dict = {}
    interference: list[str] = []
    failures: list[str] = []
    for v in sorted(sup.separator):
        best = None
        for w in sorted(g.adjacency[v] & strict_b):
            count = sum(1 for comps in tight_b_side if any(w in k for k in comps))
            if best is None or count > best[1]:
                best = (w, count)
        if best is not None and best[1] >= threshold:
            witnesses[v] = best
        elif v in fringe:
            interference.append(v)
        else:
            failures.append(v)
    return PseudoTightReport(
        ok=not failures,
        threshold=threshold,
        witnesses=witnesses,
        boundary_interference=tuple(interference),
        failures=tuple(failures),
    )


def limit_separator_prefix(seq: SeparationSequence, *, lookback: int = 2) -> frozenset[str]:
    """Window rendering of the limit separator: vertices staying in the
    separator through the last `lookback` items (membership in A and B is
    monotone along the sequence, so the limit separator is exactly the set
    of vertices eventually always in the separators)."""
    items = seq.items[-lookback:]
    prefix = items[0].separator
    for item in items[1:]:
        prefix = prefix & item.separator
    return prefix


@dataclass(frozen=True)
class GrowthTable:
    rows: tuple[tuple[int, int], ...]  # (horizon, separator-prefix size)
    prefixes: dict
    monotone: bool
    unbounded_evidence: bool

    @property
    def evidence_only(self) -> bool:
        return True

    def to_csv(self) -> str:
        lines = ["horizon,separator_size"]
        lines += [f"{m},{size}" for m, size in self.rows]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "kind": "growth_table",
            "evidence_only": True,
            "monotone": self.monotone,
            "rows": [list(r) for r in self.rows],
            "unbounded_evidence": self.unbounded_evidence,
        }


def limit_separator_growth(
    p,
    chains: dict,
    *,
    lookback: int = 2,
) -> GrowthTable:
    """Per-horizon size of the window limit separator for a non-exhaustive
    chain; flags unbounded-evidence when strictly increasing across the last
    three horizons."""
    verdict = exhaustiveness_evidence(p, chains)
    if verdict.verdict != "non-exhaustive-witness":
        raise PreconditionError(
            f"growth table needs a non-exhaustive-witness chain, got {verdict.verdict}"
        )
    rows = []
    prefixes = {}
    for m in sorted(chains):
        if len(chains[m]) < lookback:
            continue  # window too short for the liminf proxy
        prefix = limit_separator_prefix(chains[m], lookback=lookback)
        prefixes[m] = prefix
        rows.append((m, len(prefix)))
    sizes = [s for _, s in rows]
    monotone = all(a <= b for a, b in zip(sizes, sizes[1:]))
    unbounded = len(sizes) >= 3 and sizes[-3] < sizes[-2] < sizes[-1]
    return GrowthTable(
        rows=tuple(rows),
        prefixes=prefixes,
        monotone=monotone,
        unbounded_evidence=unbounded,
    )
