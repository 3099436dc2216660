from __future__ import annotations

import random
from itertools import combinations, product

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from comaxgraph import graph as gr
from comaxgraph.build import build_gamma, build_gamma_r, build_omega
from comaxgraph.errors import GuardExceeded
from comaxgraph.graph import Graph, iter_bits
from comaxgraph.invariants import (
    INF,
    bipartite_class,
    chromatic_number,
    clique_number,
    core_and_ends,
    cycle_vertices,
    diameter,
    find_homomorphism,
    girth,
    graph_core_up_to_iso,
    is_core_graph,
    is_generalized_split,
    is_split_bruteforce,
    isomorphic,
    max_clique,
    on_cycle_of_length,
    short_cycle_cover,
    split_analysis,
    split_degree_test,
    star_class,
)

from .oracles import random_graph, to_nx, zn_ring


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(range(n), [e for e, k in zip(pairs, keep) if k])


@st.composite
def blown_up_graphs(draw):
    """Small graphs with vertices replaced by cliques or independent sets, to
    exercise the twin-quotient code paths."""
    base = draw(graphs(max_n=5))
    sizes = [draw(st.integers(1, 3)) for _ in range(base.n)]
    kinds = [draw(st.booleans()) for _ in range(base.n)]
    verts = [(i, k) for i in range(base.n) for k in range(sizes[i])]
    edges = []
    for (i, a), (j, b) in combinations(verts, 2):
        if (i == j and kinds[i]) or (i != j and base.has_edge(i, j)):
            edges.append(((i, a), (j, b)))
    return Graph.from_edges(verts, edges)


def chromatic_oracle(G: Graph) -> int:
    """Subset DP: c(S) = 1 + min c(S - I) over independent I containing min(S)."""
    n = G.n
    if n == 0:
        return 0
    indep = [all(not (G.adj[v] & S) for v in iter_bits(S)) for S in range(1 << n)]
    c = [0] * (1 << n)
    for S in range(1, 1 << n):
        low = S & -S
        best = n
        sub = S
        while sub:
            if sub & low and indep[sub]:
                best = min(best, c[S & ~sub] + 1)
            sub = (sub - 1) & S
        c[S] = best
    return c[(1 << n) - 1]


def relabel_random(G: Graph, seed: int) -> Graph:
    perm = list(range(G.n))
    random.Random(seed).shuffle(perm)
    return Graph.from_edges(range(G.n), [(perm[i], perm[j]) for i, j in G.edges()])


# -- distances --------------------------------------------------------------------

@settings(max_examples=120, deadline=None)
@given(graphs())
def test_diameter_and_girth_match_networkx(G):
    H = to_nx(G)
    if G.n == 0:
        assert diameter(G) == 0
    elif nx.is_connected(H):
        assert diameter(G) == nx.diameter(H)
    else:
        assert diameter(G) == INF
    assert girth(G) == nx.girth(H)


def test_girth_examples(z12):
    assert girth(gr.cycle(7)) == 7
    assert girth(gr.path(5)) == INF
    assert girth(build_gamma(z12)) == 4
    assert girth(build_gamma_r(z12)) == INF


# -- clique and colouring -------------------------------------------------------------

@settings(max_examples=120, deadline=None)
@given(graphs())
def test_clique_and_chromatic_against_oracles(G):
    H = to_nx(G)
    w = max((len(c) for c in nx.find_cliques(H)), default=0)
    assert clique_number(G) == w
    K = max_clique(G)
    assert len(K) == w and all(G.has_edge(a, b) for a, b in combinations(K, 2))
    assert chromatic_number(G) == chromatic_oracle(G)


@settings(max_examples=60, deadline=None)
@given(blown_up_graphs())
def test_reductions_keep_numbers(G):
    if G.n <= 12:
        assert chromatic_number(G) == chromatic_oracle(G)
    assert clique_number(G) == max((len(c) for c in nx.find_cliques(to_nx(G))), default=0)


def test_named_chromatic_numbers():
    assert chromatic_number(gr.cycle(5)) == 3
    assert chromatic_number(gr.cycle(7)) == 3
    assert chromatic_number(gr.complete(6)) == 6
    assert chromatic_number(nx_petersen()) == 3
    assert clique_number(nx_petersen()) == 2


def nx_petersen() -> Graph:
    P = nx.petersen_graph()
    return Graph.from_edges(P.nodes, P.edges)


def test_solver_guard():
    G = random_graph(80, 0.5, seed=1)
    with pytest.raises(GuardExceeded):
        clique_number(G, guard=10)


def test_omega_chromatic_identity_small():
    for R in (zn_ring(12), zn_ring(2, 2, 2), zn_ring(30)):
        assert chromatic_number(build_omega(R)) == len(R.maximal_ideals) + len(R.units)


# -- recognition ---------------------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(graphs(max_n=10))
def test_split_degree_test_matches_bruteforce(G):
    ok, _ = split_degree_test(G)
    assert ok == is_split_bruteforce(G)
    part = split_analysis(G)
    assert (part is not None) == ok
    if part is not None:
        K = [G.index[v] for v in part.K]
        D = [G.index[v] for v in part.D]
        assert all(G.has_edge(a, b) for a, b in combinations(K, 2))
        assert not any(G.has_edge(a, b) for a, b in combinations(D, 2))
        # D is maximal: every clique vertex has a neighbour in D
        assert all(any(G.has_edge(k, d) for d in D) for k in K)


def test_bipartite_and_star_classes(z12):
    assert bipartite_class(build_gamma(z12)).kind == "complete_bipartite"
    assert bipartite_class(gr.cycle(6)).kind == "bipartite"
    assert bipartite_class(gr.cycle(5)).kind == "not_bipartite"
    assert star_class(build_gamma_r(z12)) == ("star", 2)
    assert star_class(gr.triangle_with_pendants()).kind == "not"
    assert star_class(gr.complete(4)).kind == "refinement_of_star"


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_bipartite_class_matches_networkx(G):
    kind = bipartite_class(G).kind
    if G.n == 0:
        return
    assert (kind != "not_bipartite") == nx.is_bipartite(to_nx(G))


# -- cycles and the core ----------------------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(graphs())
def test_cycle_vertices_and_short_cycle_cover(G):
    H = to_nx(G)
    on_cycle = set()
    for comp in nx.biconnected_components(H):
        if len(comp) >= 3:
            on_cycle |= comp
    assert set(iter_bits(cycle_vertices(G))) == on_cycle
    vs, es = short_cycle_cover(G)
    for v in range(G.n):
        brute = any(on_cycle_of_length(G, v, k) is not None for k in (3, 4))
        assert bool(vs[v]) == brute
    for (u, w), flag in zip(G.edges(), es):
        tri = bool(G.adj[u] & G.adj[w])
        sq = any(
            a != b and a not in (u, w) and b not in (u, w) and G.has_edge(u, a) and G.has_edge(a, b) and G.has_edge(b, w)
            for a, b in product(range(G.n), repeat=2)
        )
        assert bool(flag) == (tri or sq)


def test_core_report_z12_and_z2_cubed(z12):
    rep = core_and_ends(build_gamma(z12))
    assert len(rep.core) == 6 and not rep.uncovered_vertices and not rep.unclassified
    R = zn_ring(2, 2, 2)
    rep = core_and_ends(build_gamma(R))
    assert rep.core == (3, 5, 6) and rep.ends == (1, 2, 4)


def test_on_cycle_of_length():
    C = gr.cycle(5)
    cyc = on_cycle_of_length(C, 0, 5)
    assert cyc is not None and len(cyc) == 5
    assert on_cycle_of_length(C, 0, 4) is None


# -- homomorphisms and core graphs ---------------------------------------------------------

def _is_hom(G, H, f):
    return all(H.has_edge(f[u], f[w]) for u, w in G.edges())


def test_homomorphisms():
    assert _is_hom(gr.cycle(5), gr.complete(3), find_homomorphism(gr.cycle(5), gr.complete(3)))
    assert find_homomorphism(gr.complete(3), gr.cycle(5)) is None
    assert find_homomorphism(gr.cycle(5), gr.complete(2)) is None


def _is_core_bruteforce(G: Graph) -> bool:
    for f in product(range(G.n), repeat=G.n):
        if len(set(f)) < G.n and _is_hom(G, G, f):
            return False
    return True


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=6))
def test_core_graph_against_bruteforce(G):
    assert is_core_graph(G) == _is_core_bruteforce(G)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=8), st.randoms(use_true_random=False))
def test_graph_core_independent_of_order(G, rnd):
    C1 = graph_core_up_to_iso(G)
    folded_n = len(set(G.adj))
    order = list(range(folded_n))
    rnd.shuffle(order)
    C2 = graph_core_up_to_iso(G, order=order)
    assert is_core_graph(C1) and is_core_graph(C2)
    assert isomorphic(C1, C2)
    # homomorphically equivalent to G
    assert find_homomorphism(G, C1) is not None


def test_core_graph_examples(z12):
    assert is_core_graph(gr.cycle(5)) and is_core_graph(gr.complete(4))
    assert not is_core_graph(gr.path(3))
    assert isomorphic(graph_core_up_to_iso(build_gamma(z12)), gr.complete(2))
    assert isomorphic(graph_core_up_to_iso(build_gamma_r(z12)), gr.complete(2))
    assert isomorphic(graph_core_up_to_iso(gr.complete(3)), gr.complete(3))


def test_generalized_split_examples(z12):
    assert is_generalized_split(build_gamma(z12))[0] is False
    Gr = build_gamma_r(z12)
    ok, (K, D) = is_generalized_split(Gr)
    assert ok and sorted(K + D) == sorted(Gr.vertices)
    assert is_core_graph(Gr.induced(Gr.index[v] for v in K))
    assert not any(Gr.has_edge(Gr.index[a], Gr.index[b]) for a, b in combinations(D, 2))
    assert is_generalized_split(gr.complete(3))[0]


# -- isomorphism ---------------------------------------------------------------------------

@settings(max_examples=120, deadline=None)
@given(graphs(), st.integers(0, 10**6))
def test_isomorphic_to_random_relabelling(G, seed):
    assert isomorphic(G, relabel_random(G, seed))


@settings(max_examples=120, deadline=None)
@given(graphs(max_n=7), graphs(max_n=7))
def test_isomorphic_matches_networkx(G, H):
    assert isomorphic(G, H) == nx.is_isomorphic(to_nx(G), to_nx(H))


@settings(max_examples=80, deadline=None)
@given(blown_up_graphs(), blown_up_graphs(), st.integers(0, 10**6))
def test_isomorphic_on_twin_rich_graphs(G, H, seed):
    assert isomorphic(G, relabel_random(G, seed))
    assert isomorphic(G, H) == nx.is_isomorphic(to_nx(G), to_nx(H))


def test_isomorphism_shapes():
    R = zn_ring(2, 2, 2)
    H = gr.sequential_sum([gr.complete(1), gr.complete(1), gr.triangle_with_pendants()])
    assert isomorphic(build_omega(R), H)
    assert not isomorphic(gr.complete(3), gr.star(2))
    # C6 versus two triangles: same degrees, different structure
    two_tri = Graph.from_edges(range(6), [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not isomorphic(gr.cycle(6), two_tri)
