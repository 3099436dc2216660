"""Executable checks of the structural claims about co-maximal graphs.

Every check takes a :class:`RingContext` (a ring plus lazily built graphs
and invariants) and returns a :class:`Verdict`.  A check whose hypothesis
does not hold for the ring is *skipped* with a reason; it never passes
vacuously.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, combinations_with_replacement
from typing import Callable, Sequence, Union

import numpy as np

from . import graph as gr
from .build import (
    build_gamma,
    build_gamma_r,
    build_omega,
    decompose_omega,
    quotient_retract_check,
    retraction_gamma_to_gamma_r,
)
from .errors import CapExceeded, GuardExceeded, InconsistencyError, RingError
from .fields import is_prime, prime_power
from .graph import Graph
from .invariants import (
    INF,
    bipartite_class,
    chromatic_number,
    clique_number,
    core_and_ends,
    cycle_vertices,
    diameter,
    girth,
    graph_core_up_to_iso,
    is_connected,
    is_tree,
    isomorphic,
    on_cycle_of_length,
    short_cycle_cover,
    split_analysis,
    star_class,
)
from .ring import (
    DEFAULT_CAP,
    GF,
    LocalFactor,
    ProductRing,
    RingSpec,
    Zn,
    local_factorization,
    make_ring,
    quotient_ring,
    stable_range_one,
)


# -- ring forms ---------------------------------------------------------------

@dataclass(frozen=True)
class RingForms:
    """Isomorphism-type predicates read off the decomposition into local rings."""

    factors: tuple[LocalFactor, ...]

    @classmethod
    def of(cls, spec: RingSpec) -> "RingForms":
        return cls(tuple(local_factorization(spec)))

    @property
    def n_local(self) -> int:
        return len(self.factors)

    @property
    def is_local(self) -> bool:
        return self.n_local == 1

    @property
    def is_field(self) -> bool:
        return self.is_local and self.factors[0].is_field

    def _all_fields_of_two(self) -> bool:
        return all(f.is_field and f.size == 2 for f in self.factors)

    @property
    def is_z2(self) -> bool:
        return self.is_local and self._all_fields_of_two()

    @property
    def is_z2xz2(self) -> bool:
        return self.n_local == 2 and self._all_fields_of_two()

    @property
    def is_z2_cubed(self) -> bool:
        return self.n_local == 3 and self._all_fields_of_two()

    @property
    def is_field_times_field(self) -> bool:
        return self.n_local == 2 and all(f.is_field for f in self.factors)

    @property
    def is_z2_times_field(self) -> bool:
        return self.is_field_times_field and any(f.size == 2 for f in self.factors)

    @property
    def is_field_times_local(self) -> bool:
        return self.n_local == 2 and any(f.is_field for f in self.factors)

    @property
    def is_local_times_local(self) -> bool:
        return self.n_local == 2

    @property
    def split_form(self) -> bool:
        """Local, Z2^3, or Z2 times a field."""
        return self.is_local or self.is_z2_cubed or self.is_z2_times_field


def local_factor_spec(f: LocalFactor) -> RingSpec:
    if f.is_field and not is_prime(f.size):
        p, k = prime_power(f.size)
        return RingSpec.of(GF(p, k))
    return RingSpec.of(Zn(f.size))


# -- context ------------------------------------------------------------------

class RingContext:
    """A ring with its graphs and invariants, each computed on first use."""

    def __init__(self, R: ProductRing, clique_guard: int = 64, retract_guard: int = 12):
        self.R = R
        self.clique_guard = clique_guard
        self.retract_guard = retract_guard
        self.forms = RingForms.of(R.spec)
        if self.forms.n_local != len(R.maximal_ideals):
            raise InconsistencyError(f"{R.name}: local factor count differs from |Max(R)|")

    @classmethod
    def of(cls, spec: RingSpec | ProductRing, **kw) -> "RingContext":
        return cls(spec if isinstance(spec, ProductRing) else make_ring(spec), **kw)

    @property
    def name(self) -> str:
        return self.R.name

    @property
    def n_max(self) -> int:
        return len(self.R.maximal_ideals)

    @cached_property
    def omega(self) -> Graph:
        return build_omega(self.R)

    @cached_property
    def gamma(self) -> Graph:
        return build_gamma(self.R)

    @cached_property
    def gamma_r(self) -> Graph:
        return build_gamma_r(self.R)

    @cached_property
    def omega_split(self):
        return split_analysis(self.omega)

    @cached_property
    def gamma_split(self):
        return split_analysis(self.gamma)

    @cached_property
    def gamma_diam(self):
        return diameter(self.gamma)

    @cached_property
    def gamma_r_diam(self):
        return diameter(self.gamma_r)

    @cached_property
    def gamma_girth(self):
        return girth(self.gamma)

    @cached_property
    def gamma_r_girth(self):
        return girth(self.gamma_r)

    @cached_property
    def gamma_bip(self):
        return bipartite_class(self.gamma)

    @cached_property
    def gamma_r_bip(self):
        return bipartite_class(self.gamma_r)

    @cached_property
    def gamma_star(self):
        return star_class(self.gamma)

    @cached_property
    def gamma_r_star(self):
        return star_class(self.gamma_r)

    def clique(self, which: str) -> int:
        return self._numbers(which)[0]

    def chi(self, which: str) -> int:
        return self._numbers(which)[1]

    @cached_property
    def _number_cache(self) -> dict:
        return {}

    def _numbers(self, which: str) -> tuple[int, int]:
        if which not in self._number_cache:
            G = getattr(self, which)
            self._number_cache[which] = (
                clique_number(G, self.clique_guard),
                chromatic_number(G, self.clique_guard),
            )
        return self._number_cache[which]

    @cached_property
    def gamma_core_report(self):
        return core_and_ends(self.gamma)

    @cached_property
    def gamma_cover(self):
        return short_cycle_cover(self.gamma)

    @cached_property
    def quotient_by_radical(self):
        return quotient_ring(self.R, self.R.radical)


# -- verdicts -------------------------------------------------------------------

def _jsonable(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    return x


@dataclass
class Verdict:
    check_id: str
    ring: str
    status: str  # "pass", "fail" or "skipped"
    reason: str | None = None
    witness: dict = field(default_factory=dict)
    counterexample: dict | None = None

    def to_dict(self) -> dict:
        return _jsonable(
            {
                "check_id": self.check_id,
                "ring": self.ring,
                "status": self.status,
                "reason": self.reason,
                "witness": self.witness,
                "counterexample": self.counterexample,
            }
        )


class _Skip(Exception):
    pass


def _skip(reason: str):
    raise _Skip(reason)


def _outcome(ok: bool, witness: dict, counterexample: dict | None = None):
    return ("pass" if ok else "fail"), witness, (None if ok else (counterexample or witness))


REGISTRY: dict[str, Callable[[RingContext], tuple]] = {}


def check(check_id: str):
    def deco(fn):
        REGISTRY[check_id] = fn
        fn.check_id = check_id
        return fn

    return deco


def _nonlocal(ctx: RingContext) -> None:
    if ctx.R.is_local:
        _skip("local ring: Gamma(R) is empty")


def _labels(R, xs):
    return [R.label(int(x)) for x in xs]


# -- split co-maximal graphs -------------------------------------------

@check("L2.1")
def _split_clique_side(ctx: RingContext):
    part = ctx.omega_split
    if part is None:
        _skip("Omega(R) is not split")
    R = ctx.R
    K = set(part.K)
    kmask = sum(1 << x for x in K)
    bad1 = [I.members for I in R.all_ideals if len(I) < R.size and bin(I.mask & kmask).count("1") > 1]
    bad2 = []
    for (i, m), (j, n) in combinations(enumerate(R.maximal_ideals), 2):
        extra = (m.mask & n.mask & kmask) & ~1
        if extra:
            bad2.append((i, j))
    exceptional = ctx.forms.is_z2 or ctx.forms.is_z2xz2
    item3 = len(K) == ctx.n_max if exceptional else len(K) >= ctx.n_max + 1
    witness = {
        "K": _labels(R, sorted(K)),
        "K_size": len(K),
        "n_max": ctx.n_max,
        "exceptional_ring": exceptional,
        "item1_ideals_checked": len(R.all_ideals) - 1,
    }
    return _outcome(not bad1 and not bad2 and item3, witness, {"item1": bad1, "item2": bad2, "item3": item3})


@check("T2.3")
def _omega_split_forms(ctx: RingContext):
    split = ctx.omega_split is not None
    form = ctx.forms.split_form
    return _outcome(split == form, {"omega_split": split, "ring_form": form})


def _seq(*parts: Graph) -> Graph:
    return gr.sequential_sum(list(parts))


@check("C2.4")
def _omega_split_shapes(ctx: RingContext):
    _nonlocal(ctx)
    if ctx.omega_split is None:
        _skip("Omega(R) is not split")
    R = ctx.R
    shapes = {}
    if R.size % 2 == 0 and prime_power(R.size // 2):
        q = R.size // 2
        shapes[f"K1+K{q - 1}+K1,{q - 1}"] = _seq(gr.complete(1), gr.complete(q - 1), gr.star(q - 1))
    shapes["K1+K1+H"] = _seq(gr.complete(1), gr.complete(1), gr.triangle_with_pendants())
    matched = [name for name, H in shapes.items() if isomorphic(ctx.omega, H)]
    return _outcome(len(matched) == 1, {"matched": matched, "tried": list(shapes)})


@check("LOCAL")
def _local_shape(ctx: RingContext):
    R = ctx.R
    if not R.is_local:
        _skip("ring is not local")
    n = R.size
    if R.is_field:
        ok = ctx.omega.edge_count == n * (n - 1) // 2
        return _outcome(ok, {"field": True, "complete": ok})
    m = len(R.maximal_ideals[0])
    u = len(R.units)
    pn, pm = prime_power(n), prime_power(m)
    shape = _seq(gr.complete(u), gr.discrete(m))
    iso = isomorphic(ctx.omega, shape)
    # orientation: units form the clique, the maximal ideal the independent side
    exact = set(R.units) | set(R.maximal_ideals[0].members) == set(range(n))
    sizes_ok = pn is not None and pm is not None and pn[0] == pm[0] and n >= 2 * m
    witness = {"units": u, "maximal_ideal": m, "isomorphic": iso, "prime_powers": sizes_ok}
    return _outcome(iso and exact and sizes_ok, witness)


# -- the graph Gamma(R) ----------------------------------------------------

def _pair_products(R, chunk_rows: int = 512):
    E = R.elements
    for start in range(0, R.size, chunk_rows):
        a = E[start : start + chunk_rows]
        yield a, R._mul(a[:, None], E[None, :])


@check("T3.1")
def _gamma_connected(ctx: RingContext):
    _nonlocal(ctx)
    R = ctx.R
    connected = is_connected(ctx.gamma)
    diam = ctx.gamma_diam
    sig = R.signatures
    full = R.full_signature
    J = R.radical_mask
    bad1 = None
    for a, prod in _pair_products(R):
        lhs = J[prod]
        rhs = (sig[a][:, None] | sig[None, :]) == full
        diff = lhs != rhs
        diff[np.arange(len(a)), a] = False
        if diff.any():
            i, j = np.argwhere(diff)[0]
            bad1 = _labels(R, [a[i], j])
            break
    try:
        R.comaximal_matrix
        claim2 = True
    except InconsistencyError as exc:
        claim2 = str(exc)
    ok = connected and diam <= 3 and bad1 is None and claim2 is True
    witness = {"connected": connected, "diameter": diam, "pairs": R.size * (R.size - 1)}
    return _outcome(ok, witness, {"claim1_pair": bad1, "claim2": claim2, **witness})


@check("T3.2")
def _gamma_bipartite_two_max(ctx: RingContext):
    _nonlocal(ctx)
    bip = ctx.gamma_bip
    Q = ctx.quotient_by_radical
    ff = len(Q.radical) == 1 and len(Q.maximal_ideals) == 2 and len(Q.all_ideals) == 4
    flags = {
        "bipartite": bip.kind != "not_bipartite",
        "complete_bipartite": bip.kind == "complete_bipartite",
        "two_maximal": ctx.n_max == 2,
        "R/J_field_product": ff,
    }
    return _outcome(len(set(flags.values())) == 1, {**flags, "parts": bip.parts})


@check("C3.3")
def _gamma_bipartite_local_pair(ctx: RingContext):
    _nonlocal(ctx)
    bip = ctx.gamma_bip
    flags = {
        "bipartite": bip.kind != "not_bipartite",
        "complete_bipartite": bip.kind == "complete_bipartite",
        "local_times_local": ctx.forms.is_local_times_local,
    }
    return _outcome(len(set(flags.values())) == 1, flags)


@check("O3")
def _gamma_edgeless_iff_empty(ctx: RingContext):
    flags = {
        "totally_disconnected": ctx.gamma.edge_count == 0,
        "empty": ctx.gamma.n == 0,
        "local": ctx.R.is_local,
    }
    return _outcome(len(set(flags.values())) == 1, flags)


@check("T3.4")
def _gamma_star_forms(ctx: RingContext):
    _nonlocal(ctx)
    st = ctx.gamma_star
    flags = {
        "refinement_of_star": st.kind in ("refinement_of_star", "star"),
        "tree": is_tree(ctx.gamma),
        "star": st.kind == "star",
        "Z2_times_field": ctx.forms.is_z2_times_field,
    }
    ok = len(set(flags.values())) == 1
    if flags["star"]:
        ok = ok and prime_power(st.leaves + 1) is not None
    return _outcome(ok, {**flags, "leaves": st.leaves})


@check("T3.6")
def _gamma_split_forms(ctx: RingContext):
    flags = {
        "omega_split": ctx.omega_split is not None,
        "gamma_empty_or_split": ctx.gamma.n == 0 or ctx.gamma_split is not None,
        "ring_form": ctx.forms.split_form,
    }
    return _outcome(len(set(flags.values())) == 1, flags)


@check("REMARK36")
def _gamma_split_shapes(ctx: RingContext):
    if ctx.gamma.n == 0:
        _skip("Gamma(R) is empty")
    if ctx.gamma_split is None:
        _skip("Gamma(R) is not split")
    st = ctx.gamma_star
    is_star = st.kind == "star" and prime_power(st.leaves + 1) is not None
    is_h = isomorphic(ctx.gamma, gr.triangle_with_pendants())
    return _outcome(is_star or is_h, {"star_leaves": st.leaves if is_star else None, "triangle_with_pendants": is_h})


@check("L3.7")
def _path_extension(ctx: RingContext):
    _nonlocal(ctx)
    R = ctx.R
    G = ctx.gamma
    comax = R.comaximal_matrix
    units = R.unit_mask
    inside = R.gamma_mask
    verts = np.array(G.vertices, dtype=np.int64)
    instances = 0
    for xi in range(G.n):
        x = verts[xi]
        nb = verts[G.neighbors(xi)]
        if len(nb) < 2:
            continue
        A, B = np.triu_indices(len(nb), k=1)
        a, b = nb[A], nb[B]
        c = R._add(R._mul(a, b), x)
        live = ~units[c]
        if not live.any():
            continue
        a, b, c = a[live], b[live], c[live]
        instances += len(c)
        ok = inside[c] & comax[c, a] & comax[c, b] & comax[c, x] & (c != a) & (c != b) & (c != x)
        if not ok.all():
            k = int(np.flatnonzero(~ok)[0])
            cex = {"a": R.label(int(a[k])), "x": R.label(int(x)), "b": R.label(int(b[k])), "ab+x": R.label(int(c[k]))}
            return _outcome(False, {"instances": instances}, cex)
    if instances == 0:
        _skip("no path a-x-b with ab+x outside U(R)")
    return _outcome(True, {"instances": instances})


def _needs_cycle(ctx: RingContext) -> None:
    _nonlocal(ctx)
    if ctx.gamma_girth == INF:
        _skip("Gamma(R) has no cycle")


@check("L3.8")
def _five_cycle_vertices(ctx: RingContext):
    _needs_cycle(ctx)
    G = ctx.gamma
    covered, _ = ctx.gamma_cover
    if ctx.gamma_bip.kind != "not_bipartite":
        searched = []  # no odd cycles at all
    else:
        searched = [i for i in range(G.n) if not covered[i]]
    for i in searched:
        cyc = on_cycle_of_length(G, i, 5)
        if cyc is not None:
            return _outcome(False, {}, {"vertex": G.names[i], "five_cycle": [G.names[j] for j in cyc]})
    return _outcome(True, {"on_3_or_4_cycle": int(covered.sum()), "searched_for_5_cycles": len(searched)})


@check("L3.9")
def _core_path_middles(ctx: RingContext):
    _needs_cycle(ctx)
    G = ctx.gamma
    covered, _ = ctx.gamma_cover
    core = cycle_vertices(G)
    middles = [i for i in gr.iter_bits(core) if gr.popcount(G.adj[i] & core) >= 2]
    missing = [i for i in middles if not covered[i] and on_cycle_of_length(G, i, 5) is None]
    witness = {"core_path_middles": len(middles), "via_5_cycle": sum(1 for i in middles if not covered[i])}
    return _outcome(not missing, witness, {"vertices": [G.names[i] for i in missing]})


@check("T3.10")
def _core_short_cycles(ctx: RingContext):
    _needs_cycle(ctx)
    rep = ctx.gamma_core_report
    ok = not rep.unclassified and not rep.uncovered_vertices
    witness = {**rep.summary(), "edge_level_cover_holds": not rep.uncovered_edges}
    cex = {
        "unclassified": _labels(ctx.R, rep.unclassified),
        "uncovered_vertices": _labels(ctx.R, rep.uncovered_vertices),
    }
    return _outcome(ok, witness, cex)


# -- the retract Gamma_r(R) ------------------------------------------------

@check("P4.2")
def _gamma_r_retract(ctx: RingContext):
    _nonlocal(ctx)
    R = ctx.R
    items: dict[str, object] = {}
    ret, ok1 = retraction_gamma_to_gamma_r(R)
    items["1_retract"] = ok1
    _, ok2 = quotient_retract_check(R, R.radical)
    items["2_quotient_retract"] = ok2
    items["3_girth3_transfer"] = ctx.gamma_girth != 3 or ctx.gamma_r_girth == 3
    items["4_connected_diam_le_3"] = is_connected(ctx.gamma_r) and ctx.gamma_r_diam <= 3
    try:
        items["5_clique_chi_equal"] = (
            ctx.clique("gamma") == ctx.clique("gamma_r") and ctx.chi("gamma") == ctx.chi("gamma_r")
        )
    except GuardExceeded as exc:
        items["5_clique_chi_equal"] = f"skipped: {exc}"
    try:
        c1 = graph_core_up_to_iso(ctx.gamma, ctx.retract_guard)
        c2 = graph_core_up_to_iso(ctx.gamma_r, ctx.retract_guard)
        items["6_same_core_graph"] = isomorphic(c1, c2)
        items["core_graph_size"] = c1.n
    except GuardExceeded as exc:
        items["6_same_core_graph"] = f"skipped: {exc}"
    failed = [k for k, v in items.items() if v is False]
    witness = {**items, "representatives": _labels(R, sorted(ret.representatives.values()))}
    return _outcome(not failed, witness, {"failed_items": failed, "retraction_failures": ret.failures[:5]})


@check("C4.3")
def _gamma_r_chromatic_bound(ctx: RingContext):
    _nonlocal(ctx)
    bip = ctx.gamma_r_bip
    chi = ctx.chi("gamma_r")
    flags = {
        "complete_bipartite": bip.kind == "complete_bipartite",
        "two_maximal": ctx.n_max == 2,
        "bipartite": bip.kind != "not_bipartite",
    }
    ok = chi >= ctx.n_max and len(set(flags.values())) == 1
    return _outcome(ok, {**flags, "chi_gamma_r": chi, "n_max": ctx.n_max})


@check("T4.5")
def _chromatic_equals_max(ctx: RingContext):
    _nonlocal(ctx)
    numbers = {
        "chi_gamma": ctx.chi("gamma"),
        "clique_gamma": ctx.clique("gamma"),
        "n_max": ctx.n_max,
        "chi_gamma_r": ctx.chi("gamma_r"),
        "clique_gamma_r": ctx.clique("gamma_r"),
    }
    ok = len(set(numbers.values())) == 1
    try:
        chi_omega = chromatic_number(ctx.omega, ctx.clique_guard)
        numbers["chi_omega"] = chi_omega
        numbers["n_max_plus_units"] = ctx.n_max + len(ctx.R.units)
        ok = ok and chi_omega == numbers["n_max_plus_units"]
    except GuardExceeded as exc:
        numbers["chi_omega"] = f"skipped: {exc}"
    return _outcome(ok, numbers)


def _local_principal_count(f: LocalFactor) -> int:
    """Distinct ideals Tx over x in the maximal ideal of T, zero included."""
    T = make_ring(local_factor_spec(f))
    m = T.maximal_ideals[0]
    return len({T.principal_ideal(x).members for x in m.members})


@check("P4.6")
def _gamma_r_star_forms(ctx: RingContext):
    _nonlocal(ctx)
    st = ctx.gamma_r_star
    flags = {
        "refinement_of_star": st.kind in ("refinement_of_star", "star"),
        "star": st.kind == "star",
        "field_times_local": ctx.forms.is_field_times_local,
    }
    ok = len(set(flags.values())) == 1
    witness = {**flags, "leaves": st.leaves}
    if flags["field_times_local"]:
        a, b = ctx.forms.factors
        T = b if a.is_field else a
        r = _local_principal_count(T)
        witness["r"] = r
        ok = ok and st.leaves == r
    return _outcome(ok, witness)


@check("C4.7")
def _gamma_r_diameter_one(ctx: RingContext):
    _nonlocal(ctx)
    d = ctx.gamma_r_diam
    flags = {"diam_is_1": d == 1, "field_times_field": ctx.forms.is_field_times_field}
    return _outcome(len(set(flags.values())) == 1, {**flags, "diameter": d})


@check("P4.8")
def _gamma_r_diameter_two(ctx: RingContext):
    _nonlocal(ctx)
    R = ctx.R
    d = ctx.gamma_r_diam
    j_prime = R.is_prime_ideal(R.radical)
    cond2 = ctx.n_max == 2 and not ctx.forms.is_field_times_field
    predicted = j_prime or cond2
    return _outcome((d == 2) == predicted, {"diameter": d, "J_prime": j_prime, "two_max_not_FxF": cond2})


@check("C4.9")
def _equal_diameters(ctx: RingContext):
    _nonlocal(ctx)
    d1, d2 = ctx.gamma_diam, ctx.gamma_r_diam
    predicted = (not ctx.forms.is_field_times_field) or ctx.forms.is_z2xz2
    witness = {
        "diam_gamma": d1,
        "diam_gamma_r": d2,
        "field_times_field": ctx.forms.is_field_times_field,
        "Z2xZ2": ctx.forms.is_z2xz2,
        "predicted_equal": predicted,
    }
    return _outcome((d1 == d2) == predicted, witness)


@check("SR1")
def _stable_range(ctx: RingContext):
    ok, pair = stable_range_one(ctx.R)
    cex = None if ok else {"x": ctx.R.label(pair[0]), "y": ctx.R.label(pair[1])}
    return _outcome(ok, {"comaximal_pairs": int(ctx.R.comaximal_matrix.sum())}, cex)


@check("O1")
def _omega_decomposition(ctx: RingContext):
    ok = decompose_omega(ctx.R)
    return _outcome(ok, {"J": len(ctx.R.radical), "U": len(ctx.R.units), "Gamma": ctx.gamma.n})


# -- running ------------------------------------------------------------------------

CHECK_IDS = tuple(REGISTRY)


def _as_context(R) -> RingContext:
    if isinstance(R, RingContext):
        return R
    if isinstance(R, RingSpec):
        return RingContext.of(R)
    return RingContext(R)


def run_check(check_id: str, R) -> Verdict:
    if check_id not in REGISTRY:
        raise KeyError(f"unknown check {check_id!r}; known: {', '.join(CHECK_IDS)}")
    ctx = _as_context(R)
    try:
        status, witness, cex = REGISTRY[check_id](ctx)
    except _Skip as s:
        return Verdict(check_id, ctx.name, "skipped", reason=str(s))
    except GuardExceeded as exc:
        return Verdict(check_id, ctx.name, "skipped", reason=f"guard exceeded: {exc}")
    return Verdict(check_id, ctx.name, status, witness=witness, counterexample=cex)


def run_all(R, checks: Sequence[str] | None = None) -> list[Verdict]:
    ctx = _as_context(R)
    return [run_check(cid, ctx) for cid in (checks or CHECK_IDS)]


# -- families and surveys ---------------------------------------------------------------

@dataclass(frozen=True)
class ZnRange:
    lo: int
    hi: int

    def specs(self, cap: int = DEFAULT_CAP) -> list[RingSpec]:
        return [RingSpec.of(Zn(n)) for n in range(max(2, self.lo), self.hi + 1)]


@dataclass(frozen=True)
class Products:
    bases: tuple
    max_factors: int
    size_cap: int = DEFAULT_CAP

    def specs(self, cap: int = DEFAULT_CAP) -> list[RingSpec]:
        out = []
        for r in range(1, self.max_factors + 1):
            for combo in combinations_with_replacement(self.bases, r):
                spec = RingSpec(tuple(combo))
                if spec.size <= min(cap, self.size_cap):
                    out.append(spec)
        return out


@dataclass(frozen=True)
class Explicit:
    rings: tuple

    def specs(self, cap: int = DEFAULT_CAP) -> list[RingSpec]:
        return list(self.rings)


FamilySpec = Union[ZnRange, Products, Explicit]

SURVEY_COLUMNS = (
    "spec",
    "size",
    "n_units",
    "n_radical",
    "n_max_ideals",
    "gamma_vertices",
    "gamma_edges",
    "gamma_diam",
    "gamma_girth",
    "gammar_diam",
    "gammar_girth",
    "omega_clique",
    "chi",
    "is_split_omega",
    "is_bipartite_gamma",
    "is_star_gamma",
    "checks_failed",
)


def _safe(fn):
    try:
        return fn()
    except GuardExceeded:
        return None


def survey_row(ctx: RingContext, verdicts: list[Verdict]) -> dict:
    R = ctx.R
    empty = ctx.gamma.n == 0
    return {
        "spec": ctx.name,
        "size": R.size,
        "n_units": len(R.units),
        "n_radical": len(R.radical),
        "n_max_ideals": ctx.n_max,
        "gamma_vertices": ctx.gamma.n,
        "gamma_edges": ctx.gamma.edge_count,
        "gamma_diam": None if empty else ctx.gamma_diam,
        "gamma_girth": None if empty else ctx.gamma_girth,
        "gammar_diam": None if empty else ctx.gamma_r_diam,
        "gammar_girth": None if empty else ctx.gamma_r_girth,
        "omega_clique": _safe(lambda: ctx.clique("gamma")),
        "chi": _safe(lambda: ctx.chi("gamma")),
        "is_split_omega": ctx.omega_split is not None,
        "is_bipartite_gamma": ctx.gamma_bip.kind != "not_bipartite" and not empty,
        "is_star_gamma": ctx.gamma_star.kind == "star",
        "checks_failed": sum(v.status == "fail" for v in verdicts),
    }


def _survey_one(spec: RingSpec, cap: int, checks):
    try:
        ctx = RingContext(make_ring(spec, cap=cap))
    except (CapExceeded, RingError) as exc:
        return None, [], str(exc)
    verdicts = run_all(ctx, checks)
    return survey_row(ctx, verdicts), verdicts, None


@dataclass
class SurveyReport:
    rows: list[dict]
    verdicts: list[Verdict]
    errors: list[tuple[str, str]]

    @property
    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for v in self.verdicts:
            out[v.status] += 1
        return out

    @property
    def failures(self) -> list[Verdict]:
        return [v for v in self.verdicts if v.status == "fail"]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=SURVEY_COLUMNS, lineterminator="\n")
        w.writeheader()
        for row in self.rows:
            w.writerow({k: _csv_cell(row[k]) for k in SURVEY_COLUMNS})
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "rows": _jsonable(self.rows),
            "counts": self.counts,
            "failures": [v.to_dict() for v in self.failures],
            "errors": [{"spec": s, "error": e} for s, e in self.errors],
        }
        return json.dumps(payload, indent=2)


def _csv_cell(v):
    if v is None:
        return ""
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    return v


def survey(
    family: FamilySpec | Sequence[RingSpec],
    *,
    cap: int = DEFAULT_CAP,
    jobs: int = 1,
    checks: Sequence[str] | None = None,
) -> SurveyReport:
    """Run every check over a ring family; results keep family order."""
    specs = list(family) if isinstance(family, (list, tuple)) else family.specs(cap)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_survey_one, specs, [cap] * len(specs), [checks] * len(specs)))
    else:
        results = [_survey_one(s, cap, checks) for s in specs]
    rows, verdicts, errors = [], [], []
    for spec, (row, vs, err) in zip(specs, results):
        if err is not None:
            errors.append((str(spec), err))
            continue
        rows.append(row)
        verdicts.extend(vs)
    return SurveyReport(rows, verdicts, errors)


DESK_BASES = (Zn(2), Zn(3), Zn(4), GF(2, 2), Zn(5), GF(2, 3), Zn(9))


def desk_sweep(max_n: int = 200) -> list[RingSpec]:
    """Non-local Z_n up to max_n together with all products of at most three
    factors drawn from a fixed small base list."""
    zn = [s for s in ZnRange(2, max_n).specs() if len(local_factorization(s)) > 1]
    return zn + Products(DESK_BASES, 3).specs()
