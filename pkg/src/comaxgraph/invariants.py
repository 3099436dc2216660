"""Exact invariants of small simple graphs.

Clique and chromatic numbers are computed on a reduced graph: universal
vertices are stripped (each adds one to both numbers) and false twins,
i.e. non-adjacent vertices with equal neighbourhoods, are merged (folding
one onto the other changes neither number).  Both reductions are plain
graph facts, so the solvers never rely on the ring structure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, NamedTuple, Sequence

import numpy as np

from .errors import GuardExceeded, InconsistencyError
from .graph import Graph, iter_bits, popcount

INF = math.inf

CLIQUE_GUARD = 64
RETRACT_GUARD = 12
ISO_GUARD = 16


# -- distances ----------------------------------------------------------------

def eccentricities(G: Graph) -> list[float]:
    """BFS eccentricity of every vertex; inf where the graph is disconnected."""
    full = G.all_mask
    out: list[float] = []
    for s in range(G.n):
        seen = frontier = 1 << s
        depth = 0
        while True:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= G.adj[v]
            nxt &= ~seen
            if not nxt:
                break
            depth += 1
            seen |= nxt
            if seen == full:
                break
            frontier = nxt
        out.append(depth if seen == full else INF)
    return out


def diameter(G: Graph) -> float:
    """Largest distance between two vertices; inf if disconnected.

    A single vertex has diameter 0, and so, by the same empty-max
    convention, does the graph with no vertices.
    """
    if G.n == 0:
        return 0
    return max(eccentricities(G))


def is_connected(G: Graph) -> bool:
    return G.n > 0 and diameter(G) != INF


def _has_triangle(G: Graph) -> bool:
    for v, row in enumerate(G.adj):
        for w in iter_bits(row):
            if w > v and G.adj[w] & row:
                return True
    return False


def _has_square(G: Graph) -> bool:
    for u, v in combinations(range(G.n), 2):
        if popcount(G.adj[u] & G.adj[v]) >= 2:
            return True
    return False


def _bfs_girth(G: Graph) -> float:
    best = INF
    for root in range(G.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = [root]
        for u in queue:
            if 2 * dist[u] + 1 >= best:
                break
            for w in iter_bits(G.adj[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def girth(G: Graph) -> float:
    """Length of a shortest cycle, inf for forests.

    Triangles and 4-cycles are looked for first with bitset intersections;
    the per-root BFS only runs on graphs without them.
    """
    if _has_triangle(G):
        return 3
    if _has_square(G):
        return 4
    return _bfs_girth(G)


# -- reductions for clique and colouring ---------------------------------------

@dataclass
class Reduced:
    graph: Graph
    universal: int
    classes: dict[Hashable, tuple[Hashable, ...]]


def reduce_graph(G: Graph) -> Reduced:
    """Alternately strip universal vertices and merge false twins until neither applies."""
    classes = {v: (v,) for v in G.vertices}
    universal = 0
    cur = G
    while True:
        full = cur.all_mask
        uni = [i for i in range(cur.n) if cur.adj[i] == full & ~(1 << i)]
        if uni and cur.n > 0:
            for i in uni:
                classes.pop(cur.vertices[i])
            universal += len(uni)
            cur = cur.induced(set(range(cur.n)) - set(uni))
            continue
        first: dict[int, int] = {}
        drop = []
        for i, row in enumerate(cur.adj):
            if row in first:
                keep = cur.vertices[first[row]]
                classes[keep] += classes.pop(cur.vertices[i])
                drop.append(i)
            else:
                first[row] = i
        if not drop:
            return Reduced(cur, universal, classes)
        cur = cur.induced(set(range(cur.n)) - set(drop))


def _guard(G: Graph, guard: int, what: str) -> None:
    if G.n > guard:
        raise GuardExceeded(f"{what}: {G.n} vertices after reduction, guard is {guard}")


def _color_sort(adj: Sequence[int], P: int) -> tuple[list[int], list[int]]:
    """Greedy colour classes of P; vertices listed class by class with the
    running class count as an upper bound on any clique inside the prefix."""
    order: list[int] = []
    bounds: list[int] = []
    color = 0
    rest = P
    while rest:
        color += 1
        avail = rest
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~adj[v] & ~(1 << v)
            rest &= ~(1 << v)
            order.append(v)
            bounds.append(color)
    return order, bounds


def max_clique(G: Graph) -> list[int]:
    """A maximum clique as vertex indices, by colour-bounded branch and bound."""
    adj = G.adj
    best: list[int] = []

    def expand(R: list[int], P: int) -> None:
        nonlocal best
        order, bounds = _color_sort(adj, P)
        for k in range(len(order) - 1, -1, -1):
            if len(R) + bounds[k] <= len(best):
                return
            v = order[k]
            newP = P & adj[v]
            if newP:
                expand(R + [v], newP)
            elif len(R) + 1 > len(best):
                best = R + [v]
            P &= ~(1 << v)

    if G.n:
        expand([], G.all_mask)
    return sorted(best)


def clique_number(G: Graph, guard: int = CLIQUE_GUARD) -> int:
    red = reduce_graph(G)
    _guard(red.graph, guard, "clique number")
    return red.universal + len(max_clique(red.graph))


def _greedy_coloring(G: Graph) -> list[int]:
    """DSATUR greedy colouring, lowest index on ties."""
    n = G.n
    colors = [-1] * n
    sat = [0] * n  # bitmask of neighbour colours
    for _ in range(n):
        v = max(
            (i for i in range(n) if colors[i] < 0),
            key=lambda i: (popcount(sat[i]), G.degree(i), -i),
        )
        c = 0
        while (sat[v] >> c) & 1:
            c += 1
        colors[v] = c
        for w in iter_bits(G.adj[v]):
            sat[w] |= 1 << c
    return colors


def _k_coloring(G: Graph, k: int, clique: list[int]) -> list[int] | None:
    """Backtracking DSATUR search for a proper k-colouring.

    The clique is pre-coloured 0..|clique|-1, and a fresh colour is only ever
    the next unused one, which removes colour-permutation symmetry.
    """
    n = G.n
    colors = [-1] * n
    sat = [0] * n
    for c, v in enumerate(clique):
        colors[v] = c
        for w in iter_bits(G.adj[v]):
            sat[w] |= 1 << c

    def pick() -> int:
        best, key = -1, None
        for i in range(n):
            if colors[i] < 0:
                kk = (popcount(sat[i]), G.degree(i))
                if key is None or kk > key:
                    best, key = i, kk
        return best

    def solve(used: int, left: int) -> bool:
        if left == 0:
            return True
        v = pick()
        for c in range(min(k, used + 1)):
            if (sat[v] >> c) & 1:
                continue
            colors[v] = c
            touched = []
            for w in iter_bits(G.adj[v]):
                if colors[w] < 0 and not (sat[w] >> c) & 1:
                    sat[w] |= 1 << c
                    touched.append(w)
            if solve(max(used, c + 1), left - 1):
                return True
            for w in touched:
                sat[w] &= ~(1 << c)
            colors[v] = -1
        return False

    return colors if solve(len(clique), n - len(clique)) else None


def chromatic_number(G: Graph, guard: int = CLIQUE_GUARD) -> int:
    """Exact chromatic number: clique lower bound, DSATUR upper bound, then
    decision searches for each k in between."""
    red = reduce_graph(G)
    H = red.graph
    _guard(H, guard, "chromatic number")
    if H.n == 0:
        return red.universal
    clique = max_clique(H)
    upper = max(_greedy_coloring(H)) + 1
    for k in range(len(clique), upper):
        if _k_coloring(H, k, clique) is not None:
            return red.universal + k
    return red.universal + upper


# -- bipartite / split / star ---------------------------------------------------

class BipartiteClass(NamedTuple):
    kind: str  # "not_bipartite", "bipartite" or "complete_bipartite"
    parts: tuple[int, int] | None = None


def two_coloring(G: Graph) -> list[int] | None:
    side = [-1] * G.n
    for s in range(G.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = [s]
        for u in queue:
            for w in iter_bits(G.adj[u]):
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    return None
    return side


def bipartite_class(G: Graph) -> BipartiteClass:
    side = two_coloring(G)
    if side is None:
        return BipartiteClass("not_bipartite")
    left = sum(1 << i for i, s in enumerate(side) if s == 0)
    right = G.all_mask & ~left
    a, b = popcount(left), popcount(right)
    parts = (max(a, b), min(a, b))
    if a and b and all(G.adj[i] == (right if (left >> i) & 1 else left) for i in range(G.n)):
        return BipartiteClass("complete_bipartite", parts)
    return BipartiteClass("bipartite", parts)


@dataclass(frozen=True)
class SplitPartition:
    K: tuple
    D: tuple
    D_maximal: bool


def _is_clique(G: Graph, mask: int) -> bool:
    return all(mask & ~G.adj[v] & ~(1 << v) == 0 for v in iter_bits(mask))


def _is_independent(G: Graph, mask: int) -> bool:
    return all(G.adj[v] & mask == 0 for v in iter_bits(mask))


def split_degree_test(G: Graph) -> tuple[bool, list[int]]:
    """Degree-sequence split test; returns the verdict and the vertex order
    whose first m entries are the candidate clique."""
    order = sorted(range(G.n), key=lambda i: (-G.degrees[i], i))
    d = [G.degrees[i] for i in order]
    m = max((i for i in range(1, G.n + 1) if d[i - 1] >= i - 1), default=0)
    lhs = sum(d[:m])
    rhs = m * (m - 1) + sum(min(x, m) for x in d[m:])
    return lhs == rhs, order[:m]


def split_analysis(G: Graph) -> SplitPartition | None:
    """Split partition with D grown to a maximal independent set, or None.

    The partition is read off the degree test and verified explicitly; a
    clique vertex with no neighbour in D is then moved over to D.
    """
    ok, kverts = split_degree_test(G)
    if not ok:
        return None
    kmask = sum(1 << i for i in kverts)
    dmask = G.all_mask & ~kmask
    if not (_is_clique(G, kmask) and _is_independent(G, dmask)):
        raise InconsistencyError("degree test passed but the induced partition is not split")
    for v in sorted(iter_bits(kmask)):
        if G.adj[v] & dmask == 0:
            kmask &= ~(1 << v)
            dmask |= 1 << v
            break
    K = tuple(G.vertices[i] for i in iter_bits(kmask))
    D = tuple(G.vertices[i] for i in iter_bits(dmask))
    return SplitPartition(K, D, True)


def is_split_bruteforce(G: Graph) -> bool:
    """Oracle: try every vertex subset as the clique side."""
    for kmask in range(1 << G.n):
        if _is_clique(G, kmask) and _is_independent(G, G.all_mask & ~kmask):
            return True
    return False


class StarClass(NamedTuple):
    kind: str  # "not", "refinement_of_star" or "star"
    leaves: int | None = None


def star_class(G: Graph) -> StarClass:
    if G.n < 2:
        return StarClass("not")
    full = G.all_mask
    centers = [i for i in range(G.n) if G.adj[i] == full & ~(1 << i)]
    if not centers:
        return StarClass("not")
    if G.edge_count == G.n - 1:
        return StarClass("star", G.n - 1)
    return StarClass("refinement_of_star")


def is_tree(G: Graph) -> bool:
    return G.n > 0 and is_connected(G) and G.edge_count == G.n - 1


# -- cycles and the core ---------------------------------------------------------

@dataclass
class CoreReport:
    core: tuple
    ends: tuple
    uncovered_vertices: tuple
    uncovered_edges: tuple
    unclassified: tuple

    def summary(self) -> dict:
        return {
            "core": len(self.core),
            "ends": len(self.ends),
            "uncovered_vertices": len(self.uncovered_vertices),
            "uncovered_edges": len(self.uncovered_edges),
            "unclassified": len(self.unclassified),
        }


def cycle_vertices(G: Graph) -> int:
    """Bitmask of vertices lying on some cycle: prune degree <= 1 to a fixpoint."""
    alive = G.all_mask
    changed = True
    while changed:
        changed = False
        for v in iter_bits(alive):
            if popcount(G.adj[v] & alive) <= 1:
                alive &= ~(1 << v)
                changed = True
    return alive


def short_cycle_cover(G: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Which vertices and which edges lie on a 3- or 4-cycle.

    Walk counts: v is on a triangle iff (A^3)_vv > 0 and on a square iff some
    c != v shares two neighbours with it.  Edge uw is on a triangle iff
    (A^2)_uw > 0 and on a square iff (A^3)_uw - deg u - deg w + 1 > 0, the
    subtracted walks being those that step back along uw.
    """
    A = G.matrix.astype(np.float64)
    A2 = A @ A
    deg = A.sum(axis=1)
    tri_v = (A2 * A).sum(axis=1) > 0
    off = A2.copy()
    np.fill_diagonal(off, 0)
    sq_v = (off >= 2).any(axis=1)
    A3 = A2 @ A
    eu, ew = _edge_arrays(G)
    tri_e = A2[eu, ew] > 0
    sq_e = (A3[eu, ew] - deg[eu] - deg[ew] + 1) > 0
    return tri_v | sq_v, tri_e | sq_e


def _edge_arrays(G: Graph) -> tuple[np.ndarray, np.ndarray]:
    """Endpoints of the edges in the order of ``G.edges()``."""
    return np.nonzero(np.triu(G.matrix, 1))


def core_and_ends(G: Graph) -> CoreReport:
    core = cycle_vertices(G)
    ends = [i for i in range(G.n) if G.degree(i) == 1]
    endmask = sum(1 << i for i in ends)
    H = G.induced(iter_bits(core))
    on_v, on_e = short_cycle_cover(H)
    unc_v = tuple(H.vertices[i] for i in range(H.n) if not on_v[i])
    eu, ew = _edge_arrays(H)
    unc_e = tuple((H.vertices[i], H.vertices[j]) for i, j in zip(eu[~on_e], ew[~on_e]))
    uncl = tuple(G.vertices[i] for i in range(G.n) if not ((core | endmask) >> i) & 1)
    return CoreReport(
        core=tuple(G.vertices[i] for i in iter_bits(core)),
        ends=tuple(G.vertices[i] for i in ends),
        uncovered_vertices=unc_v,
        uncovered_edges=unc_e,
        unclassified=uncl,
    )


def on_cycle_of_length(G: Graph, v: int, length: int) -> list[int] | None:
    """A cycle of exactly ``length`` vertices through v, by depth-first search."""
    start = 1 << v

    def dfs(path: list[int], used: int):
        u = path[-1]
        if len(path) == length:
            return path if (G.adj[u] >> v) & 1 else None
        for w in iter_bits(G.adj[u] & ~used):
            found = dfs(path + [w], used | (1 << w))
            if found:
                return found
        return None

    return dfs([v], start) if length >= 3 else None


# -- homomorphisms, retracts, core graphs -----------------------------------------

def find_homomorphism(G: Graph, H: Graph) -> list[int] | None:
    """A map f from G's vertices to H's with f(u) ~ f(w) whenever u ~ w."""
    if G.n == 0:
        return []
    if H.n == 0:
        return None
    order: list[int] = []
    seen = 0
    for s in sorted(range(G.n), key=lambda i: (-G.degrees[i], i)):
        if (seen >> s) & 1:
            continue
        seen |= 1 << s
        queue = [s]
        for u in queue:
            order.append(u)
            for w in sorted(iter_bits(G.adj[u] & ~seen), key=lambda i: (-G.degrees[i], i)):
                seen |= 1 << w
                queue.append(w)
    f = [-1] * G.n
    hall = H.all_mask

    def go(k: int) -> bool:
        if k == len(order):
            return True
        x = order[k]
        dom = hall
        for u in iter_bits(G.adj[x]):
            if f[u] >= 0:
                dom &= H.adj[f[u]]
        for y in iter_bits(dom):
            f[x] = y
            if go(k + 1):
                return True
        f[x] = -1
        return False

    return f if go(0) else None


def is_core_graph(G: Graph, guard: int = RETRACT_GUARD) -> bool:
    """No homomorphism into G minus a vertex, i.e. no proper retract."""
    _guard(G, guard, "core-graph test")
    for v in range(G.n):
        if find_homomorphism(G, G.induced(set(range(G.n)) - {v})) is not None:
            return False
    return True


def fold_false_twins(G: Graph) -> Graph:
    """Keep the least vertex of each false-twin class (a retract of G)."""
    first: dict[int, int] = {}
    for i, row in enumerate(G.adj):
        first.setdefault(row, i)
    return G.induced(first.values())


def graph_core_up_to_iso(G: Graph, guard: int = RETRACT_GUARD, order: Sequence[int] | None = None) -> Graph:
    """Shrink G by single-vertex retractions until it is a core graph.

    ``order`` lists positions in the folded graph to try deleting first; the
    result is an induced subgraph of G whose isomorphism type should not
    depend on it.
    """
    cur = fold_false_twins(G)
    _guard(cur, guard, "core computation")
    labels = list(cur.vertices) if order is None else [cur.vertices[i] for i in order]
    changed = True
    while changed:
        changed = False
        for lab in labels:
            if lab not in cur.index:
                continue
            smaller = cur.induced(set(range(cur.n)) - {cur.index[lab]})
            if find_homomorphism(cur, smaller) is not None:
                cur = smaller
                changed = True
                break
    return cur


def independent_sets(G: Graph) -> list[int]:
    out = []

    def grow(mask: int, cand: int) -> None:
        out.append(mask)
        for v in iter_bits(cand):
            higher = cand & ~((1 << (v + 1)) - 1)
            grow(mask | (1 << v), higher & ~G.adj[v])

    grow(0, G.all_mask)
    return out


def is_generalized_split(G: Graph, guard: int = RETRACT_GUARD) -> tuple[bool, tuple[tuple, tuple] | None]:
    """Partition into a core graph K and an independent set D, largest D first."""
    _guard(G, guard, "generalized split test")
    for dmask in sorted(independent_sets(G), key=lambda m: (-popcount(m), m)):
        kmask = G.all_mask & ~dmask
        K = G.induced(iter_bits(kmask))
        if is_core_graph(K, guard):
            return True, (
                tuple(G.vertices[i] for i in iter_bits(kmask)),
                tuple(G.vertices[i] for i in iter_bits(dmask)),
            )
    return False, None


# -- isomorphism --------------------------------------------------------------------

def twin_quotient(G: Graph) -> tuple[list[tuple[str, int]], list[int]]:
    """Collapse twin classes (equal open or equal closed neighbourhoods).

    A vertex cannot have both a true twin and a false twin, so the classes
    are well defined; each is a clique or an independent set and two classes
    are either fully joined or not at all.  Returns per-class labels
    ``(kind, size)`` and quotient adjacency rows.
    """
    open_groups: dict[int, list[int]] = {}
    closed_groups: dict[int, list[int]] = {}
    for i, row in enumerate(G.adj):
        open_groups.setdefault(row, []).append(i)
        closed_groups.setdefault(row | (1 << i), []).append(i)
    cls_of = [-1] * G.n
    labels: list[tuple[str, int]] = []
    reps: list[int] = []
    for i in range(G.n):
        if cls_of[i] >= 0:
            continue
        og = open_groups[G.adj[i]]
        cg = closed_groups[G.adj[i] | (1 << i)]
        if len(og) > 1:
            group, kind = og, "indep"
        elif len(cg) > 1:
            group, kind = cg, "clique"
        else:
            group, kind = [i], "single"
        for j in group:
            cls_of[j] = len(labels)
        labels.append((kind, len(group)))
        reps.append(i)
    rows = []
    for r in reps:
        row = 0
        for j in iter_bits(G.adj[r]):
            if cls_of[j] != cls_of[r]:
                row |= 1 << cls_of[j]
        rows.append(row)
    return labels, rows


def _labelled_iso(la, ra, lb, rb) -> bool:
    n = len(la)
    deg_a = [popcount(r) for r in ra]
    deg_b = [popcount(r) for r in rb]
    sig_a = [(la[i], deg_a[i], tuple(sorted((la[j], deg_a[j]) for j in iter_bits(ra[i])))) for i in range(n)]
    sig_b = [(lb[i], deg_b[i], tuple(sorted((lb[j], deg_b[j]) for j in iter_bits(rb[i])))) for i in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return False
    order = sorted(range(n), key=lambda i: -deg_a[i])
    f = [-1] * n
    used = 0

    def go(k: int) -> bool:
        nonlocal used
        if k == n:
            return True
        x = order[k]
        for y in range(n):
            if (used >> y) & 1 or sig_a[x] != sig_b[y]:
                continue
            if any(((ra[x] >> u) & 1) != ((rb[y] >> f[u]) & 1) for u in order[:k]):
                continue
            f[x] = y
            used |= 1 << y
            if go(k + 1):
                return True
            used &= ~(1 << y)
            f[x] = -1
        return False

    return go(0)


def isomorphic(G: Graph, H: Graph, guard: int = ISO_GUARD) -> bool:
    """Exact isomorphism test by backtracking on the twin quotients.

    Twin classes are an isomorphism invariant, so G and H are isomorphic iff
    their quotients are isomorphic as class-labelled graphs.  Sequential sums
    of complete, discrete and complete bipartite parts have tiny quotients,
    which is what lets this run on graphs far larger than ``guard``.
    """
    if G.n != H.n or G.edge_count != H.edge_count or sorted(G.degrees) != sorted(H.degrees):
        return False
    la, ra = twin_quotient(G)
    lb, rb = twin_quotient(H)
    if sorted(la) != sorted(lb):
        return False
    if len(la) > guard:
        raise GuardExceeded(f"isomorphism: twin quotient has {len(la)} classes, guard is {guard}")
    return _labelled_iso(la, ra, lb, rb)
