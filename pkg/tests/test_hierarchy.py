"""The hierarchy diagrams are well-formed and render deterministically."""

import json

import pytest

from celab.hierarchy import BY_NUMBER, DIAGRAMS, diagram_json, render

KNOWN_EDGES = {
    2: ("u_ce", "eq_ce"),
    3: ("e0", "e3"),
    4: ("e_max", "e_med"),
    5: ("e_omega", "h_omega"),
    6: ("e_gamma", "u_fomega"),
    7: ("compiso_bin", "eset_ce"),
}


def test_there_are_seven_diagrams():
    assert sorted(BY_NUMBER) == [1, 2, 3, 4, 5, 6, 7]


def test_edges_reference_declared_nodes():
    for d in DIAGRAMS:
        ids = {n for n, _ in d.nodes}
        for lo, hi in d.edges:
            assert lo in ids and hi in ids


@pytest.mark.parametrize("number,edge", sorted(KNOWN_EDGES.items()))
def test_signature_edges_present(number, edge):
    assert edge in BY_NUMBER[number].edges


def test_rendering_is_deterministic():
    for d in DIAGRAMS:
        assert render(d.number, "dot") == render(d.number, "dot")
        payload = json.loads(diagram_json(d))
        assert payload["figure"] == d.number
        assert len(payload["nodes"]) == len(d.nodes)


def test_first_diagram_has_no_reduction_edges():
    assert BY_NUMBER[1].edges == ()


def test_unknown_figure_is_rejected():
    with pytest.raises(KeyError):
        render(12, "dot")
