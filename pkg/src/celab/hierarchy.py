"""The reducibility hierarchy diagrams, as checked-in edge sets.

Seven diagrams, serialized deterministically as DOT or JSON.  An edge
a -> b means a computably reduces to b.  Diagram 1 is the pair of
partition relations that opens the combinatorial story; it has no
reduction edges, only the two nodes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass(frozen=True)
class Diagram:
    number: int
    name: str
    nodes: tuple          # (node id, label) pairs
    edges: tuple          # (lower id, upper id) pairs


def _d(number, name, nodes, edges):
    return Diagram(number, name,
                   tuple(sorted(nodes)), tuple(sorted(edges)))


DIAGRAMS = (
    _d(1, "partitions",
       [("e_A_Ac", "E_{A,A^c}"), ("e_A", "E_A")],
       []),
    _d(2, "classification-strength",
       [("eq_1", "=_1"), ("eq_2", "=_2"), ("eq_N", "=_N"),
        ("u_ce", "U_ce"), ("eq_ce", "=^ce"), ("e_A", "E_A"),
        ("e_A_Ac", "E_{A,A^c}")],
       [("eq_1", "eq_2"), ("eq_2", "eq_N"), ("eq_N", "u_ce"),
        ("u_ce", "eq_ce"), ("eq_1", "e_A"), ("eq_2", "e_A"),
        ("eq_N", "e_A"), ("e_A", "u_ce"), ("eq_2", "e_A_Ac"),
        ("e_A_Ac", "eq_ce")]),
    _d(3, "combinatorial-benchmarks",
       [("eq", "="), ("e0", "E_0"), ("e1", "E_1"), ("e2", "E_2"),
        ("e3", "E_3"), ("eset", "E_set"), ("z0", "Z_0"),
        ("eq_ce", "=^ce"), ("e01_ce", "E_1^ce ~ E_0^ce"),
        ("e2_ce", "E_2^ce"), ("e3_ce", "E_3^ce"),
        ("eset_ce", "E_set^ce"), ("z0_ce", "Z_0^ce")],
       [("eq", "e0"), ("e0", "e1"), ("e0", "e2"), ("e0", "e3"),
        ("e3", "eset"), ("e3", "z0"),
        ("eq_ce", "e01_ce"), ("e01_ce", "e2_ce"), ("e01_ce", "e3_ce"),
        ("e3_ce", "eset_ce"), ("e3_ce", "z0_ce")]),
    _d(4, "order-statistics",
       [("eq_ce", "=^ce"), ("e_min", "E_min^ce"), ("e_max", "E_max^ce"),
        ("e_med", "E_med^ce"), ("e0_ce", "E_0^ce")],
       [("e_min", "eq_ce"), ("e_max", "eq_ce"), ("e_max", "e_med"),
        ("eq_ce", "e0_ce"), ("e_med", "e0_ce")]),
    _d(5, "cuts-and-hulls",
       [("h_omega", "H_omega"), ("e_omega", "E_omega ~ E_max"),
        ("e_omega_star", "E_omega* ~ E_min"),
        ("e_alpha", "E_alpha"), ("e_alpha_star", "E_alpha*"),
        ("h_alpha", "H_alpha"), ("e_Q", "E_Q ~ =^ce")],
       [("e_omega", "h_omega"), ("e_omega_star", "h_omega"),
        ("e_omega", "e_alpha"), ("e_alpha", "e_Q"),
        ("e_omega_star", "e_alpha_star"), ("e_alpha_star", "e_Q"),
        ("h_omega", "h_alpha"), ("h_alpha", "e_Q"),
        ("e_alpha", "h_alpha"), ("e_alpha_star", "h_alpha")]),
    _d(6, "enumerable-and-orbit",
       [("eq_ce", "=^ce"), ("e0_ce", "E_0^ce"),
        ("e_gamma", "E_Gamma^ce"), ("u_fomega", "U_F_omega"),
        ("enumerable", "enumerable frontier"),
        ("eset_ce", "E_set^ce")],
       [("eq_ce", "e0_ce"), ("eq_ce", "u_fomega"),
        ("e_gamma", "u_fomega"), ("enumerable", "eset_ce")]),
    _d(7, "isomorphism",
       [("eq_ce", "=^ce"), ("compiso_bin", "~=_bin^ce"),
        ("eset_ce", "E_set^ce"), ("iso_L", "iso_L^ce"),
        ("iso_bin", "iso_bin^ce ~ graph ~ lo ~ tree"),
        ("iso_group", "iso_group^ce"), ("iso_pres", "iso_pres^ce")],
       [("eq_ce", "compiso_bin"), ("compiso_bin", "eset_ce"),
        ("iso_L", "iso_bin"), ("iso_group", "iso_bin"),
        ("iso_bin", "iso_pres")]),
)

BY_NUMBER = {d.number: d for d in DIAGRAMS}


def diagram_dot(d: Diagram) -> str:
    lines = [f"digraph {d.name.replace('-', '_')} {{"]
    targets = {a for e in d.edges for a in e}
    for node, label in d.nodes:
        suffix = "" if node in targets else "  // isolated"
        lines.append(f'  "{node}" [label="{label}"];{suffix}')
    for lo, hi in d.edges:
        lines.append(f'  "{lo}" -> "{hi}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def diagram_json(d: Diagram) -> str:
    payload = {
        "figure": d.number,
        "name": d.name,
        "nodes": [{"id": n, "label": lbl} for n, lbl in d.nodes],
        "edges": [[lo, hi] for lo, hi in d.edges],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def render(number: int, fmt: str = "dot") -> str:
    if number not in BY_NUMBER:
        raise KeyError(f"no diagram numbered {number}")
    d = BY_NUMBER[number]
    return diagram_dot(d) if fmt == "dot" else diagram_json(d)


def render_all(fmt: str = "dot") -> str:
    return "".join(render(d.number, fmt) for d in DIAGRAMS)
