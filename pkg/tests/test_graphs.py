import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from artifact.graphs import (
    EdgePermutation, EdgeReversal, GraphError, KitaevGraph, Move, Perm, Slide, apply_move,
    apply_word, canonical_relabel, cilium_map, connected_sum, edge_of, inverse_word, invariants,
    is_source, kappa, parse_graph_spec, reduce_to_standard, scramble, slide_condition,
    standard_graph, valid_slides, validate,
)

SHAPES = [(0, 1), (0, 2), (1, 0), (1, 1), (2, 0), (0, 3)]


def test_half_edge_conventions():
    # half-edges 2e-1 and 2e form edge e; the odd one is the source
    assert kappa(1) == 2 and kappa(2) == 1
    assert edge_of(5) == edge_of(6) == 3
    assert is_source(5) and not is_source(6)


def test_perm_cycles_and_inverse():
    p = Perm.from_cycles([[1, 3, 2, 4]])
    assert p(1) == 3 and p(4) == 1
    q = p.inverse()
    assert all(q(p(h)) == h for h in (1, 2, 3, 4))


@pytest.mark.parametrize("g,a", SHAPES)
def test_standard_graph_invariants(g, a):
    G = standard_graph(g, a)
    assert validate(G) == []
    genus, boundary, euler = invariants(G)
    assert genus == g
    assert boundary == a + 1
    assert euler == 2 - 2 * g
    verts, edges, faces = G.derive()
    assert len(verts) - len(edges) + len(faces) == euler
    assert len(edges) == 2 * g + 2 * a


def test_standard_graph_rejects_empty():
    with pytest.raises(GraphError):
        standard_graph(0, 0)


@pytest.mark.parametrize("text", ["std:9", "std:a,b", "std:1,2,3"])
def test_parse_graph_spec_errors(text):
    with pytest.raises(GraphError):
        parse_graph_spec(text)


def test_json_round_trip(tmp_path):
    G = standard_graph(1, 1)
    path = tmp_path / "g.json"
    path.write_text(json.dumps(G.to_json()))
    assert parse_graph_spec(str(path)) == G
    assert KitaevGraph.from_json(G.to_json()) == G


def test_move_json():
    mv = Move.from_json(["slide", 1, 3])
    assert mv == Slide(1, 3)
    assert Move.from_json(mv.to_json()) == mv


def test_validate_catches_missing_cilium():
    data = standard_graph(1, 0).to_json()
    data["pt"] = 99
    assert validate(KitaevGraph.from_json(data))


def test_invalid_slide_is_identity():
    G = standard_graph(1, 0)
    assert slide_condition(G, 1, 3) == 0
    assert apply_move(G, Slide(1, 3)) == G
    assert cilium_map(G, Slide(1, 3)) == {1: 1}


@pytest.mark.parametrize("g,a", SHAPES)
def test_generators_are_involutions(g, a):
    G = standard_graph(g, a)
    moves = [EdgeReversal(e) for e in G.edges]
    moves += [EdgePermutation(i) for i in range(1, len(G.edges))]
    moves += [Slide(x, y) for x, y in valid_slides(G)]
    for mv in moves:
        assert apply_move(apply_move(G, mv), mv) == G, mv


def test_connected_sum_adds_genus_and_boundary():
    G, D = standard_graph(1, 0), standard_graph(1, 1)
    S, relabel = connected_sum(G, D)
    assert validate(S) == []
    assert invariants(S)[:2] == (2, 2)
    assert set(relabel) == set(D.half_edges)
    assert min(relabel.values()) > max(G.half_edges)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SHAPES), st.integers(0, 10_000), st.integers(1, 12))
def test_scramble_preserves_invariants(shape, seed, n):
    std = standard_graph(*shape)
    G, word = scramble(std, n, random.Random(seed))
    assert validate(G) == []
    assert invariants(G) == invariants(std)
    assert apply_word(G, inverse_word(word)) == std


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SHAPES), st.integers(0, 10_000))
def test_reduce_round_trip(shape, seed):
    std = standard_graph(*shape)
    G, w1 = scramble(std, 8, random.Random(seed))
    back, w2 = reduce_to_standard(G)
    assert back == std
    assert apply_word(G, w2) == std
    trace = []
    apply_word(std, w1 + w2, trace)
    assert all(invariants(x) == invariants(std) for x in trace)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SHAPES), st.integers(0, 10_000))
def test_canonical_relabel_is_stable(shape, seed):
    G, _ = scramble(standard_graph(*shape), 6, random.Random(seed))
    assert canonical_relabel(G) == canonical_relabel(G)
