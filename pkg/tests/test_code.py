import json
from itertools import combinations

import pytest

from pentaloss.code import (
    BASES,
    GraphSpec,
    layout,
    graph_stabilizers,
    minimal_representatives,
    recoverable,
    ring_graph,
    rotate,
    verify_encoding_identities,
)
from pentaloss.pauli import PauliOperator, commutes

P = PauliOperator.from_string


def test_ring_graph_stabilizers(code):
    got = [str(s) for s in graph_stabilizers(code.ring)]
    assert got == ["+XZIIZ", "+ZXZII", "+IZXZI", "+IIZXZ", "+ZIIZX"]


def test_ring_graph_needs_three_vertices():
    with pytest.raises(ValueError):
        ring_graph(2)


@pytest.mark.parametrize("n", [3, 4, 6, 9])
def test_graph_stabilizers_commute(n):
    stabs = graph_stabilizers(ring_graph(n))
    assert all(commutes(a, b) for a, b in combinations(stabs, 2))


def test_code_stabilizers(code):
    assert [str(g) for g in code.code_stabilizers.generators] == ["+YYZIZ", "+ZYYZI", "+IZYYZ", "+ZIZYY"]
    assert P("ZYYZI") in code.code_stabilizers


def test_logicals(code):
    assert code.logical("X") == P("-XXXXX")
    assert code.logical("Z") == P("ZZZZZ")
    assert code.logical("Y") == P("-YYYYY")
    assert code.distance() == 3


def test_graph_stabilizers_are_logical_x(code):
    for k in graph_stabilizers(code.ring):
        assert code.logical_class(k) == "X"


@pytest.mark.parametrize("basis", BASES)
def test_ten_weight_three_representatives(code, basis):
    reps = minimal_representatives(code, basis)
    assert len(reps) == 10
    assert all(r.weight == 3 for r in reps)
    assert all(code.logical_class(r) == basis for r in reps)


def test_z_families_contain_the_named_operators(code):
    reps = {r.unsigned() for r in minimal_representatives(code, "Z")}
    assert P("IXXIZ") in reps
    assert P("YIIYZ") in reps


def test_x_family_contains_x5_y2_y3(code):
    reps = {r.unsigned() for r in minimal_representatives(code, "X")}
    assert P("IYYIX") in reps


@pytest.mark.parametrize("basis", BASES)
def test_minimal_representatives_rotation_invariant(code, basis):
    reps = {str(r) for r in minimal_representatives(code, basis)}
    assert {str(rotate(P(s), 1)) for s in reps} == reps


@pytest.mark.parametrize("basis", BASES)
def test_cosets_have_sixteen_elements(code, basis):
    coset = code.coset(basis)
    assert len(coset) == 16
    assert len({str(c) for c in coset}) == 16


def _support(op):
    return set(op.support)


@pytest.mark.parametrize("basis", BASES)
def test_any_two_losses_correctable(code, basis):
    reps = minimal_representatives(code, basis)
    for pair in combinations(range(1, 6), 2):
        assert any(not (_support(r) & set(pair)) for r in reps), pair
        assert recoverable(code, basis, pair)


@pytest.mark.parametrize("basis", BASES)
def test_any_three_losses_fatal(code, basis):
    coset = code.coset(basis)
    for triple in combinations(range(1, 6), 3):
        assert all(_support(c) & set(triple) for c in coset), triple
        assert not recoverable(code, basis, triple)


def test_encoding_identities(code):
    report = verify_encoding_identities(code)
    assert report.passed, report.failures


def test_code_json(code):
    data = json.loads(code.to_json())
    assert "+ZYYZI" in data["stabilizers"]
    assert data["logical"]["X"] == "-XXXXX"


def test_layout_round_trip():
    lay = layout(3)
    assert lay.physical_count == 125
    assert lay.path(0) == (1, 1, 1)
    assert lay.path(124) == (5, 5, 5)
    for leaf in (0, 7, 63, 124):
        assert lay.index(lay.path(leaf)) == leaf
    assert len(list(lay.paths())) == 125


def test_layout_bounds():
    with pytest.raises(ValueError):
        layout(0)
    with pytest.raises(IndexError):
        layout(1).path(5)


def test_edge_list_round_trip():
    g = GraphSpec.from_edges(6, [(2, 1), (3, 4), (6, 5)])
    assert g.sorted_edges() == [(1, 2), (3, 4), (5, 6)]
    assert GraphSpec.from_edge_list(g.to_edge_list()) == g


def test_edge_list_rejects_bad_input():
    with pytest.raises(ValueError):
        GraphSpec.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        GraphSpec.from_edges(3, [(1, 2), (2, 1)])
