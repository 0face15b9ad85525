"""Finitely-presented locally finite graphs as monotone towers of truncations.

A LayeredPresentation is a chain G_0 <= G_1 <= ... <= G_h of induced
subgraphs together with, per layer, the boundary: the vertices that gain a
neighbour in the next layer. Generators also declare the family's rays (as
vertex paths) and, for the clique chain, the cliques themselves, so that
tests and pipelines can reference designated vertices by name.

Vertex identifier conventions:
    clique_chain   u:0:1 (the single level-0 entry vertex),
                   v:n:i (designated vertex i of level n; equals the i-th
                   entry vertex of level n+1), p:n:j (private to level n),
                   r:n:m (vertex m of ray n). The attachment vertex w^m is
                   v:m:1.
    ray            r:0:m
    double_ray     l:0:m and r:0:m, joined at l:0:0 - r:0:0
    grid           g:x:y, a strip of fixed width (columns grow with layers)
    binary_tree    b:r plus a 0/1 path string per node

The clique chain realizes a level-n clique of size c_n with 2^n entry and
2^(n+1) exit vertices, exit i of level n identified with entry i of level
n+1, plus one ray per level, ray n touching w^m for every m >= n. Default
sizes are c_n = 2^(n+4); an explicit `sizes` override supports desk scale,
and levels beyond the override fall back to the minimum admissible size
3 * 2^n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .errors import FamilyParameterError, GraphFormatError
from .graph import Graph, _edge
from .separations import OrientedSeparation, SeparationSequence

FAMILIES = ("clique_chain", "ray", "double_ray", "grid", "binary_tree")


@dataclass(frozen=True, eq=False)
class LayeredPresentation:
    family: str
    params: dict
    horizon: int
    layers: tuple[Graph, ...]
    boundaries: tuple[frozenset[str], ...]
    rays: tuple[tuple[str, tuple[str, ...]], ...]
    cliques: tuple[frozenset[str], ...] = ()

    def graph_at(self, m: int) -> Graph:
        if m > self.horizon or m < 0:
            raise FamilyParameterError(f"layer {m} outside horizon {self.horizon}")
        return self.layers[m]

    def boundary(self, m: int) -> frozenset[str]:
        if m > self.horizon or m < 0:
            raise FamilyParameterError(f"layer {m} outside horizon {self.horizon}")
        return self.boundaries[m]

    @property
    def ray_labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.rays)

    def ray_path(self, label: str) -> tuple[str, ...]:
        for lab, path in self.rays:
            if lab == label:
                return path
        raise FamilyParameterError(f"unknown ray {label!r}")

    def ray_prefix(self, label: str, m: int) -> tuple[str, ...]:
        vs = self.graph_at(m).vertices
        return tuple(v for v in self.ray_path(label) if v in vs)

    def ray_tail_vertex(self, label: str, m: int) -> str:
        prefix = self.ray_prefix(label, m)
        if not prefix:
            raise FamilyParameterError(f"ray {label!r} not present in layer {m}")
        return prefix[-1]

    def rays_in_layer(self, m: int) -> tuple[str, ...]:
        vs = self.graph_at(m).vertices
        return tuple(lab for lab, path in self.rays if path and path[0] in vs)

    # -- clique-chain designated structure --

    def clique(self, n: int) -> frozenset[str]:
        if self.family != "clique_chain":
            raise FamilyParameterError("cliques are only defined for clique_chain")
        if n >= len(self.cliques):
            raise FamilyParameterError(f"no clique at level {n}")
        return self.cliques[n]

    def attachment_vertex(self, m: int) -> str:
        """w^m, the first designated exit vertex of level m."""
        return f"v:{m}:1"

    def chain_separator(self, n: int) -> frozenset[str]:
        """Separator of the canonical chain item at level n."""
        if self.family != "clique_chain":
            raise FamilyParameterError("chain separators are clique_chain specific")
        sep = {f"v:{i}:1" for i in range(n)}
        sep |= {f"v:{n}:{j}" for j in range(1, 2 ** (n + 1) + 1)}
        return frozenset(sep)

    def chain_item(self, n: int, m: int) -> OrientedSeparation:
        """Canonical chain separation at level n, materialized in layer m."""
        g = self.graph_at(m)
        if self.family == "clique_chain":
            if n >= m:
                raise FamilyParameterError(
                    f"chain item {n} needs layer at least {n + 1}, got {m}"
                )
            a = frozenset().union(*self.cliques[: n + 1])
            s = self.chain_separator(n)
        elif self.family == "ray":
            a = frozenset(f"r:0:{j}" for j in range(n + 1))
            s = frozenset({f"r:0:{n}"})
        elif self.family == "double_ray":
            left = frozenset(v for v in g.vertices if v.startswith("l:"))
            a = left | frozenset(f"r:0:{j}" for j in range(n + 1))
            s = frozenset({f"r:0:{n}"})
        elif self.family == "grid":
            a = frozenset(v for v in g.vertices if int(v.split(":")[1]) <= n)
            s = frozenset(v for v in g.vertices if int(v.split(":")[1]) == n)
        elif self.family == "binary_tree":
            spine = "b:r" + "0" * n
            below = frozenset(
                v for v in g.vertices if v.startswith(spine) and v != spine
            )
            a = g.vertices - below
            s = frozenset({spine})
        else:
            raise FamilyParameterError(f"no canonical chain for {self.family!r}")
        b = (g.vertices - a) | s
        return OrientedSeparation(g, a, b)

    def _chain_levels(self, m: int) -> range:
        if self.family == "clique_chain":
            return range(0, m)
        # tail cuts need a non-trivial left side to stay tight
        return range(1, m)

    def canonical_chain(self, m: int) -> SeparationSequence:
        """The family's canonical strictly increasing tight chain in layer m."""
        levels = self._chain_levels(m)
        items = [self.chain_item(n, m) for n in levels]
        if not items:
            raise FamilyParameterError(f"layer {m} too small for a canonical chain")
        return SeparationSequence.strictly_increasing(items)

    def canonical_layer_chains(self, up_to: int | None = None) -> dict[int, SeparationSequence]:
        top = self.horizon if up_to is None else up_to
        chains: dict[int, SeparationSequence] = {}
        for m in range(top + 1):
            if len(self._chain_levels(m)) > 0:
                chains[m] = self.canonical_chain(m)
        return chains

    # -- serialization --

    def to_json(self) -> dict:
        return {
            "kind": "presentation",
            "family": self.family,
            "params": self.params,
            "horizon": self.horizon,
            "layers": [
                {
                    "boundary": sorted(self.boundaries[m]),
                    "edges": sorted([list(e) for e in self.layers[m].edges]),
                    "vertices": sorted(self.layers[m].vertices),
                }
                for m in range(self.horizon + 1)
            ],
            "rays": {label: list(path) for label, path in self.rays},
            "cliques": [sorted(c) for c in self.cliques],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "LayeredPresentation":
        layers = tuple(
            Graph.from_data(layer["vertices"], [tuple(e) for e in layer["edges"]])
            for layer in doc["layers"]
        )
        boundaries = tuple(frozenset(layer["boundary"]) for layer in doc["layers"])
        rays = tuple(sorted((lab, tuple(p)) for lab, p in doc["rays"].items()))
        return cls(
            family=doc["family"],
            params=doc["params"],
            horizon=doc["horizon"],
            layers=layers,
            boundaries=boundaries,
            rays=rays,
            cliques=tuple(frozenset(c) for c in doc.get("cliques", [])),
        )


def truncate(p: LayeredPresentation, m: int) -> tuple[Graph, frozenset[str]]:
    """The finite window G_m with its boundary toward the next layer."""
    return p.graph_at(m), p.boundary(m)


def _require_horizon(params: dict) -> int:
    h = params.get("horizon")
    if not isinstance(h, int) or h < 0:
        raise FamilyParameterError("params must carry a non-negative integer 'horizon'")
    return h


def _finish(family, params, raw_layers, rays, cliques=()) -> LayeredPresentation:
    """Drop the shadow layer, computing each boundary from its successor."""
    layers = raw_layers[:-1]
    boundaries = []
    for m, g in enumerate(layers):
        nxt = raw_layers[m + 1]
        new_vertices = nxt.vertices - g.vertices
        bd = {
            u
            for u in g.vertices
            if nxt.adjacency[u] & new_vertices
        }
        boundaries.append(frozenset(bd))
    return LayeredPresentation(
        family=family,
        params=params,
        horizon=len(layers) - 1,
        layers=tuple(layers),
        boundaries=tuple(boundaries),
        rays=rays,
        cliques=cliques,
    )


def _clique_chain_size(n: int, sizes: list[int] | None) -> int:
    minimum = 3 * 2**n
    if sizes is None:
        return 2 ** (n + 4)
    if n < len(sizes):
        c = sizes[n]
        if c < minimum:
            raise FamilyParameterError(
                f"sizes[{n}]={c} too small to host the {2**n} + {2**(n+1)} "
                f"designated vertices"
            )
        return c
    return minimum


def _generate_clique_chain(params: dict) -> LayeredPresentation:
    h = _require_horizon(params)
    sizes = params.get("sizes")
    if sizes is not None and (
        not isinstance(sizes, list) or not all(isinstance(c, int) for c in sizes)
    ):
        raise FamilyParameterError("'sizes' must be a list of integers")
    top = h + 1  # shadow level used to compute boundary(h)

    def clique_members(n: int) -> list[str]:
        c_n = _clique_chain_size(n, sizes)
        entries = ["u:0:1"] if n == 0 else [f"v:{n-1}:{i}" for i in range(1, 2**n + 1)]
        exits = [f"v:{n}:{i}" for i in range(1, 2 ** (n + 1) + 1)]
        privates = [f"p:{n}:{j}" for j in range(1, c_n - len(entries) - len(exits) + 1)]
        return entries + exits + privates

    cliques = [frozenset(clique_members(n)) for n in range(top + 1)]
    raw_layers = []
    for m in range(top + 1):
        vertices: set[str] = set()
        edges: set[tuple[str, str]] = set()
        for n in range(m + 1):
            members = sorted(cliques[n])
            vertices.update(members)
            for u, v in combinations(members, 2):
                edges.add(_edge(u, v))
        for n in range(m + 1):
            for j in range(m + 1):
                vertices.add(f"r:{n}:{j}")
                if j > 0:
                    edges.add(_edge(f"r:{n}:{j-1}", f"r:{n}:{j}"))
                if j >= n:
                    edges.add(_edge(f"r:{n}:{j}", f"v:{j}:1"))
        raw_layers.append(Graph.from_data(vertices, edges))
    rays = tuple(
        (f"R{n}", tuple(f"r:{n}:{j}" for j in range(h + 1))) for n in range(h + 1)
    )
    return _finish("clique_chain", params, raw_layers, rays, tuple(cliques[: h + 1]))


def _generate_ray(params: dict) -> LayeredPresentation:
    h = _require_horizon(params)
    raw_layers = []
    for m in range(h + 2):
        vs = [f"r:0:{j}" for j in range(m + 1)]
        es = [(f"r:0:{j}", f"r:0:{j+1}") for j in range(m)]
        raw_layers.append(Graph.from_data(vs, es))
    rays = (("R0", tuple(f"r:0:{j}" for j in range(h + 1))),)
    return _finish("ray", params, raw_layers, rays)


def _generate_double_ray(params: dict) -> LayeredPresentation:
    h = _require_horizon(params)
    raw_layers = []
    for m in range(h + 2):
        vs = [f"r:0:{j}" for j in range(m + 1)] + [f"l:0:{j}" for j in range(m + 1)]
        es = [(f"r:0:{j}", f"r:0:{j+1}") for j in range(m)]
        es += [(f"l:0:{j}", f"l:0:{j+1}") for j in range(m)]
        es.append(("l:0:0", "r:0:0"))
        raw_layers.append(Graph.from_data(vs, es))
    rays = (
        ("L0", tuple(f"l:0:{j}" for j in range(h + 1))),
        ("R0", tuple(f"r:0:{j}" for j in range(h + 1))),
    )
    return _finish("double_ray", params, raw_layers, rays)


def _generate_grid(params: dict) -> LayeredPresentation:
    h = _require_horizon(params)
    width = params.get("width", 3)
    if not isinstance(width, int) or width < 1:
        raise FamilyParameterError("'width' must be a positive integer")
    raw_layers = []
    for m in range(h + 2):
        vs = [f"g:{x}:{y}" for x in range(m + 1) for y in range(width)]
        es = []
        for x in range(m + 1):
            for y in range(width):
                if x < m:
                    es.append((f"g:{x}:{y}", f"g:{x+1}:{y}"))
                if y < width - 1:
                    es.append((f"g:{x}:{y}", f"g:{x}:{y+1}"))
        raw_layers.append(Graph.from_data(vs, es))
    rays = tuple(
        (f"row{y}", tuple(f"g:{x}:{y}" for x in range(h + 1))) for y in range(width)
    )
    return _finish("grid", params, raw_layers, rays)


def _generate_binary_tree(params: dict) -> LayeredPresentation:
    h = _require_horizon(params)
    raw_layers = []
    for m in range(h + 2):
        vs = ["b:r" + "".join(bits) for d in range(m + 1) for bits in _bit_strings(d)]
        es = []
        for v in vs:
            if len(v) > 3:  # not the root "b:r"
                es.append((v[:-1], v))
        raw_layers.append(Graph.from_data(vs, es))
    rays = (
        ("L", tuple("b:r" + "0" * d for d in range(h + 1))),
        ("R", tuple("b:r" + "1" * d for d in range(h + 1))),
    )
    return _finish("binary_tree", params, raw_layers, rays)


def _bit_strings(d: int) -> list[list[str]]:
    if d == 0:
        return [[]]
    return [bits + [b] for bits in _bit_strings(d - 1) for b in ("0", "1")]


_GENERATORS = {
    "clique_chain": _generate_clique_chain,
    "ray": _generate_ray,
    "double_ray": _generate_double_ray,
    "grid": _generate_grid,
    "binary_tree": _generate_binary_tree,
}


def generate_family(name: str, params: dict) -> LayeredPresentation:
    """Build the named family at the requested horizon."""
    if name not in _GENERATORS:
        raise FamilyParameterError(
            f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}"
        )
    return _GENERATORS[name](dict(params))


def load_presentation_spec(text: str) -> LayeredPresentation:
    """Parse `{"family": ..., "params": {...}}` and generate the family."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(
            f"invalid JSON: {exc.msg}", context=f"line {exc.lineno}, column {exc.colno}"
        ) from exc
    if not isinstance(doc, dict) or "family" not in doc:
        raise GraphFormatError("presentation spec needs a 'family' field")
    return generate_family(doc["family"], doc.get("params", {}))
