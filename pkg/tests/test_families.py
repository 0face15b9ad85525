"""Generator families: structure, monotone towers, boundaries, round trips."""

import json

import pytest

from tangletree.errors import FamilyParameterError
from tangletree.families import (
    LayeredPresentation,
    generate_family,
    load_presentation_spec,
    truncate,
)
from tangletree.graph import load_graph
from tangletree.separations import is_tight


def test_unknown_family_rejected():
    with pytest.raises(FamilyParameterError):
        generate_family("moebius", {"horizon": 2})


def test_clique_chain_default_level_zero_size_is_sixteen():
    p = generate_family("clique_chain", {"horizon": 1})
    assert len(p.clique(0)) == 16
    assert len(p.clique(1)) == 32


def test_clique_chain_default_truncation_one_vertex_count():
    # levels 16 and 32 share two identified vertices; two rays contribute
    # two vertices each
    p = generate_family("clique_chain", {"horizon": 1})
    g, _ = truncate(p, 1)
    assert len(g.vertices) == 16 + 32 - 2 + 4


def test_clique_chain_scaled_sizes_accepted():
    p = generate_family("clique_chain", {"horizon": 3, "sizes": [8, 12, 20, 36]})
    assert [len(p.clique(n)) for n in range(4)] == [8, 12, 20, 36]


def test_clique_chain_sizes_too_small_rejected():
    with pytest.raises(FamilyParameterError) as err:
        generate_family("clique_chain", {"horizon": 2, "sizes": [8, 5, 20]})
    assert "designated" in str(err.value)


def test_clique_chain_short_sizes_extend_at_minimum_scale():
    p = generate_family("clique_chain", {"horizon": 5, "sizes": [8, 12, 20, 36]})
    assert len(p.clique(4)) == 3 * 2**4
    assert len(p.clique(5)) == 3 * 2**5


def test_clique_chain_designated_vertices_exist(scaled_chain):
    g = scaled_chain.graph_at(3)
    assert "u:0:1" in g.vertices
    assert {"v:0:1", "v:0:2"} <= g.vertices
    assert {f"v:3:{i}" for i in range(1, 17)} <= g.vertices
    assert "r:3:0" in g.vertices


def test_clique_chain_attachment_edges(scaled_chain):
    g = scaled_chain.graph_at(3)
    # ray n touches w^m exactly for n <= m
    assert g.has_edge("r:0:0", "v:0:1")
    assert g.has_edge("r:0:2", "v:2:1")
    assert g.has_edge("r:2:2", "v:2:1")
    assert not g.has_edge("r:2:0", "v:0:1")
    assert not g.has_edge("r:2:1", "v:1:1")


def test_ray_truncations():
    p = generate_family("ray", {"horizon": 3})
    g0, b0 = truncate(p, 0)
    assert len(g0.vertices) == 1 and b0 == g0.vertices
    g3, b3 = truncate(p, 3)
    assert len(g3.vertices) == 4 and len(g3.edges) == 3
    assert b3 == {"r:0:3"}


def test_truncate_beyond_horizon_rejected():
    p = generate_family("ray", {"horizon": 2})
    with pytest.raises(FamilyParameterError):
        truncate(p, 3)


def test_grid_strip_shape():
    p = generate_family("grid", {"horizon": 4})
    g2, b2 = truncate(p, 2)
    assert len(g2.vertices) == 9  # 3 columns x default width 3
    assert b2 == {"g:2:0", "g:2:1", "g:2:2"}


def test_double_ray_boundary():
    p = generate_family("double_ray", {"horizon": 3})
    _, b = truncate(p, 2)
    assert b == {"l:0:2", "r:0:2"}


def test_binary_tree_boundary_is_deepest_level():
    p = generate_family("binary_tree", {"horizon": 3})
    g, b = truncate(p, 2)
    assert b == {v for v in g.vertices if len(v) == 5}  # "b:r" plus two bits


def test_towers_are_monotone_induced_subgraphs():
    for name, params in (
        ("clique_chain", {"horizon": 3, "sizes": [8, 12, 20, 36]}),
        ("ray", {"horizon": 4}),
        ("double_ray", {"horizon": 3}),
        ("grid", {"horizon": 3}),
        ("binary_tree", {"horizon": 3}),
    ):
        p = generate_family(name, params)
        for m in range(p.horizon):
            small, big = p.graph_at(m), p.graph_at(m + 1)
            assert small.vertices <= big.vertices
            assert big.induced(small.vertices) == small


def test_boundary_is_exactly_vertices_gaining_neighbours(scaled_chain):
    for m in range(scaled_chain.horizon):
        g, nxt = scaled_chain.graph_at(m), scaled_chain.graph_at(m + 1)
        new = nxt.vertices - g.vertices
        expected = {v for v in g.vertices if nxt.adjacency[v] & new}
        assert scaled_chain.boundary(m) == expected


def test_degrees_stabilize_one_layer_after_entry():
    for name, params in (
        ("clique_chain", {"horizon": 4, "sizes": [8, 12, 20, 36]}),
        ("grid", {"horizon": 4}),
        ("binary_tree", {"horizon": 4}),
    ):
        p = generate_family(name, params)
        entry = {}
        for m in range(p.horizon + 1):
            for v in p.graph_at(m).vertices:
                entry.setdefault(v, m)
        for v, first in entry.items():
            degrees = {
                len(p.graph_at(m).adjacency[v])
                for m in range(min(first + 1, p.horizon), p.horizon + 1)
            }
            assert len(degrees) == 1, (v, degrees)


def test_presentation_round_trip(scaled_chain):
    doc = scaled_chain.to_json()
    back = LayeredPresentation.from_json(json.loads(json.dumps(doc)))
    assert back.horizon == scaled_chain.horizon
    for m in range(back.horizon + 1):
        assert back.graph_at(m) == scaled_chain.graph_at(m)
        assert back.boundary(m) == scaled_chain.boundary(m)
    assert back.rays == scaled_chain.rays
    assert back.cliques == scaled_chain.cliques


def test_generator_graph_document_round_trip(scaled_chain):
    g = scaled_chain.graph_at(2)
    assert load_graph(g.dumps()) == g


def test_presentation_spec_loader():
    p = load_presentation_spec(
        '{"family":"clique_chain","params":{"horizon":3,"sizes":[8,12,20,36]}}'
    )
    assert p.horizon == 3
    assert len(p.clique(0)) == 8
    defaults = load_presentation_spec('{"family":"ray","params":{"horizon":2}}')
    assert defaults.family == "ray"


def test_clique_never_split_strictly_by_enumerated_separations(scaled_chain):
    from tangletree.separations import enumerate_separations

    g = scaled_chain.graph_at(1)
    for sep in enumerate_separations(g, 2):
        for n in range(2):
            clique = scaled_chain.clique(n)
            strict_a = clique & (sep.side_a - sep.side_b)
            strict_b = clique & (sep.side_b - sep.side_a)
            assert not (strict_a and strict_b)


def test_canonical_chains_are_tight_and_coherent(scaled_chain, ray_presentation, grid_presentation):
    from tangletree.tree_of_tangles import check_chain_coherence

    for p in (scaled_chain, ray_presentation, grid_presentation):
        chains = p.canonical_layer_chains()
        check_chain_coherence(p, chains)
        for m, seq in chains.items():
            g = p.graph_at(m)
            for item in seq:
                assert is_tight(g, item)


def test_ray_prefixes(scaled_chain):
    assert scaled_chain.ray_prefix("R2", 1) == ()
    assert scaled_chain.ray_prefix("R2", 3) == ("r:2:0", "r:2:1", "r:2:2", "r:2:3")
    assert scaled_chain.ray_tail_vertex("R0", 2) == "r:0:2"
