"""The clique-chain family and the limit behaviour of its canonical chain.

The generator realizes a tower of growing cliques, each passing designated
vertices to the next, with one ray per level hooked onto the attachment
vertices w^m. The canonical chain of separations s_n has order n + 2^(n+1),
is tight and nested, and is *not* exhausting: the rays persist on the far
side of every window supremum, and the window limit separator (the
attachment vertices) grows by one per horizon.

Run:  python demos/03_clique_chain_limits.py
"""

from tangletree import generate_family, exhaustiveness_evidence, limit_separator_growth
from tangletree.limits import limit_separator_prefix, pseudo_tight_check
from tangletree.separations import is_tight, supremum

p = generate_family("clique_chain", {"horizon": 5, "sizes": [8, 12, 20, 36]})
print("scaled clique chain, horizon 5, clique sizes", [len(c) for c in p.cliques])

for m in range(6):
    g = p.graph_at(m)
    print(f"  G_{m}: {len(g.vertices):4d} vertices, {len(g.edges):5d} edges")

chain = p.canonical_chain(5)
g5 = p.graph_at(5)
print("\ncanonical chain orders:", [item.order for item in chain])
print("tight in the window:   ", [is_tight(g5, item) for item in chain])

sup = supremum(chain)
strict = sup.side_b - sup.side_a
print(f"\nwindow supremum separator size: {sup.order}")
print(f"beyond the supremum: {len(strict)} vertices,",
      f"{sum(v.startswith('r:') for v in strict)} of them on rays")

chains = p.canonical_layer_chains()
verdict = exhaustiveness_evidence(p, chains)
print("\nexhaustiveness verdict:", verdict.verdict)
print("stable ray trace in the reference window:", list(verdict.stable_b_prefix)[:4], "...")

table = limit_separator_growth(p, chains)
print("\nlimit separator growth (horizon, size):", list(table.rows))
print("prefix at the top horizon:", sorted(limit_separator_prefix(chains[5])))
print("unbounded evidence:", table.unbounded_evidence)

report = pseudo_tight_check(g5, chains[5], boundary=p.boundary(5))
print("\npseudo-tight check of the window limit:", "ok" if report.ok else report.failures)
w0_neighbour, count = report.witnesses["v:0:1"]
print(f"  w^0 keeps its ray neighbour {w0_neighbour} in a tight far component",
      f"for {count} of {len(chains[5])} chain indices")

print("\nfor contrast, the ray family exhausts its windows:")
ray = generate_family("ray", {"horizon": 5})
print("  verdict:", exhaustiveness_evidence(ray, ray.canonical_layer_chains()).verdict)
