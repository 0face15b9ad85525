"""Separations of a small graph: orientations, order, nestedness.

Walks through the separation algebra on a path and a 4-cycle: which vertex
set pairs are separations at all, how the partial order on orientations
works, and how the corner test decides nested versus crossing without
scanning orientations.

Run:  python demos/01_separations_basics.py
"""

from tangletree import (
    enumerate_separations,
    leq,
    load_graph,
    make_separation,
    relation,
)

path = load_graph('{"vertices":["a","b","c","d"],"edges":[["a","b"],["b","c"],["c","d"]]}')

print("== the path a-b-c-d ==")
s = make_separation(path, {"a", "b"}, {"b", "c", "d"})
t = make_separation(path, {"a", "b", "c"}, {"c", "d"})
print(f"s = {s}   separator {sorted(s.separator)}  order {s.order}")
print(f"t = {t}   separator {sorted(t.separator)}  order {t.order}")
print(f"s <= t:  {leq(s, t)}   (A grows, B shrinks)")
print(f"t <= s:  {leq(t, s)}")

print("\nEverything of order <= 1, canonical form, improper ones included:")
for sep in enumerate_separations(path, 1):
    flag = "proper" if sep.is_proper() else "improper"
    print(f"  {sep}  [{flag}]")

print("\n== a 4-cycle: two diagonal separations cross ==")
cycle = load_graph(
    '{"vertices":["v1","v2","v3","v4"],'
    '"edges":[["v1","v2"],["v2","v3"],["v3","v4"],["v1","v4"]]}'
)
d1 = make_separation(cycle, {"v1", "v2", "v3"}, {"v3", "v4", "v1"}).canonical()
d2 = make_separation(cycle, {"v2", "v3", "v4"}, {"v4", "v1", "v2"}).canonical()
rel = relation(d1, d2)
print(f"d1 = {d1}")
print(f"d2 = {d2}")
print(f"relation: {'cross' if rel.cross else 'nested'}")
print("(the corner test and the definitional test are both evaluated and")
print(" must agree; a mismatch would abort as an internal error)")
