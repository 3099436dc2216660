"""Command line interface: ``comaxgraph <subcommand> ...``.

Data goes to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 verification failure, 2 usage or parse error, 3 guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from typing import Sequence

from . import __version__
from .build import build_gamma, build_gamma_r, build_omega
from .errors import CapExceeded, GuardExceeded, RingError
from .fields import prime_power
from .graph import Graph, export_graph
from .invariants import (
    CLIQUE_GUARD,
    INF,
    bipartite_class,
    chromatic_number,
    clique_number,
    core_and_ends,
    diameter,
    girth,
    is_generalized_split,
    split_analysis,
    star_class,
)
from .ring import DEFAULT_CAP, GF, Ring, RingSpec, Zn, make_ring, quotient_ring
from .theorems import CHECK_IDS, Explicit, Products, ZnRange, run_all, survey

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class ParseError(RingError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(?P<z>Z)(?P<zn>\d+)|(?P<gf>GF\(\s*(?P<q>\d+)\s*\))|(?P<times>[x×]))")


def parse_ring_spec(text: str, cap: int = DEFAULT_CAP) -> RingSpec:
    """Parse ``atom ( "x" atom )*`` with ``atom := Z<n> | GF(<q>)``."""
    factors = []
    pos = 0
    expect_atom = True
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected {text[pos]!r}", pos)
        start = m.start() + len(m.group(0)) - len(m.group(0).lstrip())
        if m.group("times"):
            if expect_atom:
                raise ParseError("expected a ring factor", start)
            expect_atom = True
        else:
            if not expect_atom:
                raise ParseError("expected 'x' between factors", start)
            if m.group("z"):
                n = int(m.group("zn"))
                if n < 2:
                    raise ParseError(f"Z needs n >= 2, got {n}", start)
                factors.append(Zn(n))
            else:
                q = int(m.group("q"))
                pk = prime_power(q)
                if pk is None:
                    raise ParseError(f"GF({q}): {q} is not a prime power", start)
                factors.append(GF(*pk))
            expect_atom = False
        pos = m.end()
    if expect_atom:
        raise ParseError("expected a ring factor", pos)
    spec = RingSpec(tuple(factors))
    spec.validate(cap)
    return spec


def format_ring_spec(spec: RingSpec) -> str:
    return str(spec)


# -- output helpers -------------------------------------------------------------

def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _header(args, *fields: str) -> None:
    if not args.no_header:
        print("# comaxgraph " + __version__ + " " + " ".join(fields))


def _ring(args) -> Ring:
    return make_ring(parse_ring_spec(args.spec, args.cap), cap=args.cap)


def _target_ring(args) -> Ring:
    R = _ring(args)
    if getattr(args, "mod_radical", False):
        return quotient_ring(R, R.radical)
    return R


_GRAPHS = {"omega": build_omega, "gamma": build_gamma, "gamma-r": build_gamma_r}


def _member_list(R: Ring, xs) -> str:
    return "{" + ", ".join(R.label(int(x)) for x in xs) + "}"


def _print_info(R: Ring, verbose: bool) -> None:
    print(f"ring: {R.name}")
    print(f"size: {R.size}")
    print(f"local: {_fmt(R.is_local)}")
    print(f"field: {_fmt(R.is_field)}")
    print(f"units: {len(R.units)}")
    print(f"radical: {len(R.radical)}")
    print(f"maximal ideals: {len(R.maximal_ideals)}")
    print(f"ideals: {len(R.all_ideals)}")
    if verbose:
        print(f"U = {_member_list(R, R.units)}")
        print(f"J = {_member_list(R, R.radical.members)}")
        for i, m in enumerate(R.maximal_ideals):
            print(f"M{i} = {_member_list(R, m.members)}")
        moduli = getattr(R, "gf_moduli", None)
        for k, poly in (moduli or {}).items():
            print(f"factor {k} modulus: {poly}")


def invariant_vector(G: Graph, guard: int = CLIQUE_GUARD) -> dict:
    """Invariants of one graph; exact solvers may raise GuardExceeded."""
    out = {
        "vertices": G.n,
        "edges": G.edge_count,
        "diameter": diameter(G),
        "girth": girth(G),
        "clique_number": clique_number(G, guard),
        "chromatic_number": chromatic_number(G, guard),
    }
    part = split_analysis(G)
    out["split"] = part is not None
    if part is not None:
        out["split_clique_size"] = len(part.K)
    out["bipartite"] = bipartite_class(G).kind
    st = star_class(G)
    out["star"] = st.kind
    if st.leaves is not None:
        out["star_leaves"] = st.leaves
    if G.n <= 12:
        out["generalized_split"] = is_generalized_split(G)[0]
    out.update({f"core_{k}": v for k, v in core_and_ends(G).summary().items()})
    return out


# -- subcommands ------------------------------------------------------------------

def cmd_info(args) -> int:
    R = _ring(args)
    _header(args, "info", args.spec)
    _print_info(R, args.verbose)
    return EXIT_OK


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_build(args) -> int:
    R = _target_ring(args)
    G = _GRAPHS[args.graph](R)
    _emit(export_graph(G, args.format), args.out)
    return EXIT_OK


def cmd_invariants(args) -> int:
    R = _target_ring(args)
    vec = invariant_vector(_GRAPHS[args.graph](R), args.guard)
    if args.json:
        print(json.dumps({k: ("inf" if v == INF else v) for k, v in vec.items()}))
    else:
        _header(args, "invariants", args.spec, args.graph)
        for k, v in vec.items():
            print(f"{k}: {_fmt(v)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    for cid in args.check or ():
        if cid not in CHECK_IDS:
            print(f"error: unknown check {cid!r}; known: {', '.join(CHECK_IDS)}", file=sys.stderr)
            return EXIT_USAGE
    R = _ring(args)
    verdicts = run_all(R, args.check or None)
    if args.json:
        print(json.dumps([v.to_dict() for v in verdicts], indent=2))
    else:
        _header(args, "verify", args.spec)
        for v in verdicts:
            line = f"{v.check_id:<9} {v.status}"
            if v.status == "skipped":
                line += f"  ({v.reason})"
            elif v.status == "fail":
                line += f"  {json.dumps(v.to_dict()['counterexample'])}"
            print(line)
    return EXIT_FAIL if any(v.status == "fail" for v in verdicts) else EXIT_OK


def _parse_zn_range(text: str) -> ZnRange:
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", text)
    if not m:
        raise ParseError("expected LO..HI", 0)
    return ZnRange(int(m.group(1)), int(m.group(2)))


def _parse_products(text: str, cap: int) -> Products:
    bases, sep, count = text.rpartition(":")
    if not sep or not count.strip().isdigit():
        raise ParseError("expected BASES:MAXFACTORS", len(text))
    specs = [parse_ring_spec(b, cap) for b in bases.split(",")]
    if any(len(s.factors) != 1 for s in specs):
        raise ParseError("product bases must be single factors", 0)
    return Products(tuple(s.factors[0] for s in specs), int(count), cap)


def cmd_survey(args) -> int:
    if args.zn:
        family = _parse_zn_range(args.zn)
    elif args.products:
        family = _parse_products(args.products, args.cap)
    else:
        family = Explicit(tuple(parse_ring_spec(s, args.cap) for s in args.explicit.split(",")))
    report = survey(family, cap=args.cap, jobs=args.jobs)
    for spec, err in report.errors:
        print(f"skipped {spec}: {err}", file=sys.stderr)
    for v in report.failures:
        print(f"FAIL {v.check_id} on {v.ring}", file=sys.stderr)
    if args.format == "json":
        sys.stdout.write(report.to_json() + "\n")
    else:
        _header(args, "survey", f"rings={len(report.rows)}", *(f"{k}={n}" for k, n in report.counts.items()))
        sys.stdout.write(report.to_csv())
    return EXIT_FAIL if report.failures else EXIT_OK


def cmd_quotient(args) -> int:
    Q = _target_ring(args)
    if args.graph:
        _emit(export_graph(_GRAPHS[args.graph](Q), args.format), args.out)
        return EXIT_OK
    _header(args, "quotient", args.spec)
    _print_info(Q, args.verbose)
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum ring size")
    common.add_argument("--no-header", action="store_true", help="omit the metadata line")

    p = argparse.ArgumentParser(prog="comaxgraph", description="Co-maximal graphs of finite commutative rings.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", parents=[common], help="ring structure")
    s.add_argument("spec")
    s.add_argument("-v", "--verbose", action="store_true", help="list members")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("build", parents=[common], help="export a graph")
    s.add_argument("spec")
    s.add_argument("--graph", choices=list(_GRAPHS), default="gamma")
    s.add_argument("--format", choices=["dot", "json"], default="json")
    s.add_argument("--out")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("invariants", parents=[common], help="graph invariant vector")
    s.add_argument("spec")
    s.add_argument("--graph", choices=list(_GRAPHS), default="gamma")
    s.add_argument("--json", action="store_true")
    s.add_argument("--guard", type=int, default=CLIQUE_GUARD, help="vertex limit for the exact solvers after reduction")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("verify", parents=[common], help="run the registered checks")
    s.add_argument("spec")
    s.add_argument("--check", action="append", metavar="ID", help=f"one of {', '.join(CHECK_IDS)}")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("survey", parents=[common], help="run all checks over a ring family")
    fam = s.add_mutually_exclusive_group(required=True)
    fam.add_argument("--zn", metavar="LO..HI")
    fam.add_argument("--products", metavar="BASES:MAXFACTORS", help="e.g. Z2,Z3,GF(4):3")
    fam.add_argument("--explicit", metavar="SPEC,...")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_survey)

    s = sub.add_parser("quotient", parents=[common], help="work in R/J(R)")
    s.add_argument("spec")
    s.add_argument("--mod-radical", action="store_true", required=True)
    s.add_argument("-v", "--verbose", action="store_true")
    s.add_argument("--graph", choices=list(_GRAPHS))
    s.add_argument("--format", choices=["dot", "json"], default="json")
    s.add_argument("--out")
    s.set_defaults(func=cmd_quotient)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except GuardExceeded as exc:
        print(f"error: guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (RingError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
