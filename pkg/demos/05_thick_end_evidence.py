"""Thick-end evidence beyond a non-exhausting window limit.

On the clique chain the canonical chain refuses to exhaust its windows, and
the pipeline gathers the four finite shadows of what that forces: the window
limit separator grows without bound, exactly one direction of declared rays
lies in its closure, ray packings within that direction grow with the
horizon, and a full packing is realized strictly beyond the window supremum,
starting inside its separator. Thin families are told apart honestly: the
single ray packs one ray forever and admits an order-1 exhausting chain, and
the grid strip is rejected before any end analysis because its column cuts
are bounded-order evidence of exhaustion.

Run:  python demos/05_thick_end_evidence.py
"""

from tangletree import (
    Direction,
    NestedSet,
    clique_witness,
    generate_family,
    ray_packing,
    thick_end_pipeline,
    thin_end_bound,
)


def family_bundle(p):
    chains = p.canonical_layer_chains()
    top = max(chains)
    g = p.graph_at(top)
    nested = NestedSet.of(g, [item.canonical() for item in chains[top]])
    pool = []
    if p.family == "clique_chain":
        pool = [clique_witness(g, p.clique(i), len(p.clique(i))) for i in range(len(p.cliques))]
    return g, nested, chains, pool


print("== scaled clique chain, horizon 5 ==")
p = generate_family("clique_chain", {"horizon": 5, "sizes": [8, 12, 20, 36]})
g, nested, chains, pool = family_bundle(p)
report = thick_end_pipeline(p, nested, chains, pool)
for stage in report.stages:
    print(f"  {stage.name:15s} {stage.status}")
pre = report.stage("preconditions").details
print("  window-limited pool pairs (boundary artifacts):",
      [(i, j) for i, j, *_ in pre["window_limited"]])
print("  direction:", report.stage("direction").details["classes"])
print("  packings:", report.stage("packing_growth").details["packings"],
      "thick evidence:", report.stage("packing_growth").details["thick_evidence"])
beyond = report.stage("beyond_limit").details
print(f"  beyond the supremum: {beyond['achieved']}/{beyond['target_size']} disjoint rays,")
for path in beyond["paths"]:
    print(f"    {path[0]} -> {' '.join(path[1:4])} ... {path[-1]}")

print("\n== ray family: a thin end ==")
ray = generate_family("ray", {"horizon": 6})
direction = Direction(("R0",))
print("  packing per horizon:",
      [ray_packing(ray, m, direction, {"r:0:0"}).size for m in range(2, 7)])
bound, chain = thin_end_bound(ray, direction, 6)
print(f"  exhausting tight chain of order <= {bound}, length {len(chain)}")

print("\n== grid strip: rejected before end analysis ==")
grid = generate_family("grid", {"horizon": 5})
gg, gn, gc, _ = family_bundle(grid)
grid_report = thick_end_pipeline(grid, gn, gc, [])
print("  verdict:", grid_report.stages[0].details["reason"])
