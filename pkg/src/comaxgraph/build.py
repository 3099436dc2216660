"""Graphs built from a ring: the co-maximal graph, its non-unit/non-radical
part, the principal-ideal graph, and the retraction maps between them.

Vertex labels: element indices for the element graphs, sorted member tuples
of Rx for the ideal graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping

import numpy as np

from .errors import InconsistencyError, RingError
from .graph import Graph, complete, discrete, iter_bits, sequential_sum
from .ring import Ideal, Ring, quotient_ring


def build_omega(R: Ring) -> Graph:
    labels = list(range(R.size))
    return Graph.from_matrix(labels, R.comaximal_matrix, [R.label(x) for x in labels])


def _element_subgraph(R: Ring, mask: np.ndarray) -> Graph:
    idx = np.flatnonzero(mask)
    sub = R.comaximal_matrix[np.ix_(idx, idx)]
    return Graph.from_matrix([int(x) for x in idx], sub, [R.label(int(x)) for x in idx])


def build_gamma(R: Ring) -> Graph:
    return _element_subgraph(R, R.gamma_mask)


def gamma_classes(R: Ring) -> dict[tuple[int, ...], list[int]]:
    """Group the vertices of the element graph by their principal ideal."""
    classes: dict[tuple[int, ...], list[int]] = {}
    for x in np.flatnonzero(R.gamma_mask):
        classes.setdefault(R.principal_ideal(int(x)).members, []).append(int(x))
    return classes


def build_gamma_r(R: Ring) -> Graph:
    """Vertices are the distinct ideals Rx, labelled by their member tuples.

    Adjacency is read from the least element of each class after asserting
    that every element of a class has the same co-maximality row.
    """
    comax = R.comaximal_matrix
    classes = gamma_classes(R)
    labels = sorted(classes)
    reps = [classes[lab][0] for lab in labels]
    for lab in labels:
        members = classes[lab]
        rows = comax[members]
        if not (rows == rows[0]).all():
            raise InconsistencyError(f"{R.name}: co-maximality depends on the generator of {lab}")
    sub = comax[np.ix_(reps, reps)]
    return Graph.from_matrix(labels, sub, [f"R{R.label(x)}" for x in reps])


def decompose_omega(R: Ring) -> bool:
    """Whether Omega(R) is exactly J(R) + U(R) + Gamma(R) as a sequential sum,
    with J discrete and U complete, compared vertex for vertex."""
    omega = build_omega(R)
    rad = list(R.radical.members)
    units = list(R.units)
    gamma = build_gamma(R)
    j_part = discrete(len(rad)).relabel(rad)
    u_part = complete(len(units)).relabel(units)
    parts = [j_part, u_part, gamma]
    total = sequential_sum(parts)
    flat = [lab for _, lab in total.vertices]
    if sorted(flat) != list(omega.vertices):
        return False
    mapped = {frozenset((flat[i], flat[j])) for i, j in total.edges()}
    return mapped == omega.label_edges()


# -- twin collapse ------------------------------------------------------------

@dataclass
class CollapsedGraph:
    graph: Graph
    classes: dict[Hashable, tuple[Hashable, ...]]

    @property
    def sizes(self) -> dict[Hashable, int]:
        return {k: len(v) for k, v in self.classes.items()}


def collapse_false_twins(G: Graph, signature: Mapping[Hashable, int]) -> CollapsedGraph:
    """Merge vertices with equal signatures into one vertex each.

    The collapsed vertices are the signature values; two are adjacent iff the
    signatures are disjoint.  Raises if some class is not a set of
    non-adjacent twins or if G's adjacency is not signature disjointness.
    """
    groups: dict[int, list[int]] = {}
    for i, v in enumerate(G.vertices):
        groups.setdefault(int(signature[v]), []).append(i)
    sigs = sorted(groups)
    for s in sigs:
        members = groups[s]
        row = G.adj[members[0]]
        for i in members:
            if G.adj[i] != row or any(G.has_edge(i, j) for j in members):
                raise InconsistencyError(f"signature class {s:b} is not a set of false twins")
    for a in sigs:
        for b in sigs:
            if a != b and G.has_edge(groups[a][0], groups[b][0]) != ((a & b) == 0):
                raise InconsistencyError(f"adjacency of classes {a:b}, {b:b} is not disjointness")
    edges = [(a, b) for a in sigs for b in sigs if a < b and a & b == 0]
    names = {s: "S{" + ",".join(str(i) for i in iter_bits(s)) + "}" for s in sigs}
    graph = Graph.from_edges(sigs, edges, names)
    classes = {s: tuple(G.vertices[i] for i in groups[s]) for s in sigs}
    return CollapsedGraph(graph, classes)


def gamma_signatures(R: Ring, G: Graph) -> dict[Hashable, int]:
    """S-signatures of the vertices of an element graph or the ideal graph.

    An ideal lies in a maximal ideal iff all its members do, so an ideal
    vertex gets the AND of its members' signatures.
    """
    sig = R.signatures
    out = {}
    for v in G.vertices:
        if isinstance(v, tuple):
            out[v] = int(np.bitwise_and.reduce(sig[list(v)]))
        else:
            out[v] = int(sig[v])
    return out


# -- retractions ----------------------------------------------------------------

@dataclass
class Retraction:
    """A homomorphism from a graph onto an induced subgraph of it.

    ``mapping`` sends every source label to a target label, ``representatives``
    sends each target label to the source vertex standing in for it.
    """

    mapping: dict[Hashable, Hashable]
    representatives: dict[Hashable, Hashable]
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _check_retraction(source: Graph, target: Graph, phi: Mapping[Hashable, Hashable]) -> Retraction:
    """Verify that phi: source -> target is a surjective homomorphism and that
    least-label representatives induce a copy of target inside source on
    which phi is the identity."""
    failures = []
    for i, j in source.edges():
        a, b = phi[source.vertices[i]], phi[source.vertices[j]]
        if a == b:
            failures.append(f"edge {source.names[i]}-{source.names[j]} collapses to {a!r}")
        elif not target.has_edge(target.index[a], target.index[b]):
            failures.append(f"edge {source.names[i]}-{source.names[j]} maps to a non-edge")
    reps: dict[Hashable, Hashable] = {}
    for v in source.vertices:
        reps.setdefault(phi[v], v)
    if set(reps) != set(target.vertices):
        failures.append("map is not onto the target vertices")
    else:
        for a in target.vertices:
            for b in target.vertices:
                if a < b:
                    s = source.has_edge(source.index[reps[a]], source.index[reps[b]])
                    t = target.has_edge(target.index[a], target.index[b])
                    if s != t:
                        failures.append(f"representatives of {a!r}, {b!r} disagree on adjacency")
    for a, v in reps.items():
        if phi[v] != a:
            failures.append(f"representative of {a!r} does not map back to it")
    return Retraction(dict(phi), reps, failures)


def retraction_gamma_to_gamma_r(R: Ring) -> tuple[Retraction, bool]:
    """The map x -> Rx from the element graph onto the ideal graph."""
    gamma = build_gamma(R)
    gamma_r = build_gamma_r(R)
    phi = {x: R.principal_ideal(x).members for x in gamma.vertices}
    ret = _check_retraction(gamma, gamma_r, phi)
    return ret, ret.ok


def quotient_retract_check(R: Ring, ideal: Ideal) -> tuple[Retraction, bool]:
    """Realize Gamma(R/I) inside Gamma(R) through the coset map, for I in J(R)."""
    if not ideal.issubset(R.radical):
        raise RingError("the ideal must lie inside J(R)")
    Q = quotient_ring(R, ideal)
    gamma = build_gamma(R)
    gamma_q = build_gamma(Q)
    phi = {x: int(Q.coset_of[x]) for x in gamma.vertices}
    ret = _check_retraction(gamma, gamma_q, phi)
    return ret, ret.ok
