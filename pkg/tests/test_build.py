from __future__ import annotations

import pytest

from comaxgraph import graph as gr
from comaxgraph.build import (
    build_gamma,
    build_gamma_r,
    build_omega,
    collapse_false_twins,
    decompose_omega,
    gamma_signatures,
    quotient_retract_check,
    retraction_gamma_to_gamma_r,
)
from comaxgraph.errors import InconsistencyError
from comaxgraph.invariants import isomorphic
from comaxgraph.ring import GF, RingSpec, Zn, make_ring

from .oracles import ZnProductOracle, zn_ring


def test_gamma_z12(z12):
    G = build_gamma(z12)
    assert G.vertices == (2, 3, 4, 8, 9, 10)
    assert G.edge_count == 8
    assert isomorphic(G, gr.complete_bipartite(4, 2))


def test_gamma_r_z12(z12):
    G = build_gamma_r(z12)
    assert G.names == ("R2", "R3", "R4")
    assert [(G.names[i], G.names[j]) for i, j in G.edges()] == [("R2", "R3"), ("R3", "R4")]


@pytest.mark.parametrize("moduli", [(6,), (12,), (2, 2, 2), (2, 4), (3, 4), (30,)])
def test_omega_against_oracle(moduli):
    R = zn_ring(*moduli)
    O = ZnProductOracle(moduli)
    dec = [R.decode(x) for x in range(R.size)]
    omega = build_omega(R)
    expected = {
        frozenset((x, y)) for x in range(R.size) for y in range(x + 1, R.size) if O.comaximal(dec[x], dec[y])
    }
    assert omega.label_edges() == expected
    units = {dec.index(u) for u in O.units()}
    rad = [x for x in range(R.size) if all(O.add(O.one, O.mul(r, dec[x])) in O.units() for r in O.elements)]
    gamma = build_gamma(R)
    assert set(gamma.vertices) == set(range(R.size)) - units - set(rad)


def test_local_ring_has_empty_gamma():
    R = zn_ring(9)
    assert build_gamma(R).n == 0 and build_gamma_r(R).n == 0


@pytest.mark.parametrize("spec", [RingSpec.of(Zn(12)), RingSpec.of(Zn(2), Zn(2), Zn(2)), RingSpec.of(GF(2, 2), Zn(9)), RingSpec.of(Zn(8))])
def test_decomposition(spec):
    assert decompose_omega(make_ring(spec))


def test_collapse_by_signature(z12):
    G = build_gamma(z12)
    C = collapse_false_twins(G, gamma_signatures(z12, G))
    assert C.graph.n == 2 and C.graph.edge_count == 1
    assert sorted(C.sizes.values()) == [2, 4]
    Gr = build_gamma_r(z12)
    assert collapse_false_twins(Gr, gamma_signatures(z12, Gr)).graph.n == 2


def test_collapse_rejects_non_twins():
    G = gr.path(3)
    with pytest.raises(InconsistencyError):
        collapse_false_twins(G, {0: 1, 1: 1, 2: 2})


def test_retractions(z12):
    ret, ok = retraction_gamma_to_gamma_r(z12)
    assert ok and sorted(ret.representatives.values()) == [2, 3, 4]
    ret, ok = quotient_retract_check(z12, z12.radical)
    assert ok


def test_retraction_on_larger_rings():
    for spec in [RingSpec.of(Zn(4), Zn(9)), RingSpec.of(Zn(2), GF(2, 2), Zn(4))]:
        R = make_ring(spec)
        assert retraction_gamma_to_gamma_r(R)[1]
        assert quotient_retract_check(R, R.radical)[1]
