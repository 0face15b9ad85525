"""The interlacing construction on a chain of tangle-distinguishing cuts.

Given a strictly increasing sequence inside a nested set that efficiently
distinguishes a pool of pre-tangles, the construction produces an interlaced
sequence together with accompanying pre-tangles so that each separation is
oriented backward by its own tangle and forward by the next (IM1), and every
minimal-order separation of a window efficiently distinguishes the window's
end tangles (IM2). Thinning out then makes the orders strictly increasing
while both properties survive.

The second half forces the insertion branch: a clique path whose middle link
is cheaper than its neighbours, so consecutive induced tangles are not
efficiently distinguished until the middle separation is inserted.

Run:  python demos/04_interlacing.py
"""

from itertools import combinations

from tangletree import (
    Graph,
    NestedSet,
    SeparationSequence,
    check_interlaced_pair,
    clique_witness,
    construct_interlaced,
    generate_family,
    make_separation,
    thin_out,
)

p = generate_family("clique_chain", {"horizon": 5, "sizes": [8, 12, 20, 36]})
g = p.graph_at(4)
chain = p.canonical_chain(4)
nested = NestedSet.of(g, [item.canonical() for item in chain])
pool = [clique_witness(g, p.clique(i), len(p.clique(i))) for i in range(5)]

seq = SeparationSequence.strictly_increasing(chain.items[:3])
pair = construct_interlaced(g, nested, seq, pool)
print("clique chain, prefix (s_0, s_1, s_2):")
print("  orders:", [item.order for item in pair.sequence])
print("  tangles:", [sorted(t.clique)[0] for t in pair.tangles])
report = check_interlaced_pair(g, pair)
print("  IM1:", report.im1_ok, " IM2:", report.im2_ok)

thinned = thin_out(pair)
print("  thinned selection:", thinned.selected,
      "orders:", [item.order for item in thinned.pair.sequence],
      "still passes:", check_interlaced_pair(g, thinned.pair).ok)

print("\nforcing an insertion:")


def clique(prefix, n):
    return [f"{prefix}{i}" for i in range(1, n + 1)]


groups = {x: clique(x, n) for x, n in (("a", 5), ("m", 4), ("b", 6), ("c", 7))}
vs = sorted(v for grp in groups.values() for v in grp)
es = []
for grp in groups.values():
    es += list(combinations(grp, 2))
es += [("a1", "m1"), ("a2", "m2"), ("m3", "b1"), ("b2", "c1"), ("b3", "c2"), ("b4", "c3")]
h = Graph.from_data(vs, es)
all_v = set(vs)
s0 = make_separation(h, set(groups["a"]), all_v - set(groups["a"]) | {"a1", "a2"})
q = make_separation(
    h, set(groups["a"]) | set(groups["m"]),
    all_v - set(groups["a"]) - set(groups["m"]) | {"m3"},
)
s1 = make_separation(h, all_v - set(groups["c"]), set(groups["c"]) | {"b2", "b3", "b4"})
nested2 = NestedSet.of(h, [s0.canonical(), q.canonical(), s1.canonical()])
pool2 = [clique_witness(h, set(groups[x]), 4) for x in ("a", "m", "b", "c")]

print("  chain orders before:", [s0.order, s1.order], "(the order-1 link q is skipped)")
pair2 = construct_interlaced(h, nested2, SeparationSequence.strictly_increasing([s0, s1]), pool2)
print("  constructed orders: ", [item.order for item in pair2.sequence],
      "<- q inserted between")
print("  IM1/IM2:", check_interlaced_pair(h, pair2).ok)
thin2 = thin_out(pair2)
print("  thin-out keeps", thin2.selected, "->",
      [item.order for item in thin2.pair.sequence],
      "passing:", check_interlaced_pair(h, thin2.pair).ok)
