"""Command-line interface: ``subgroup-graphs <command> ...``.

Exit codes: 0 success (including inconclusive verdicts), 1 usage or input
error, 2 a theorem-backed check was violated.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import compression, echelon, essential, inertness, ordering
from .core_graph import (Alphabet, arcs, branching_vertices, components, core, euler_characteristic,
                         is_connected, rank, reduced_rank)
from .errors import InvalidArgument, InvalidOracle, WordParseError
from .harness import SUITES, HarnessConfig, report_bytes, run_harness
from .io import dumps, export_dot, graph_to_dict, graph_to_json, load_graph, save_text
from .pullback import bound_report, component_census, fiber_product, intersection_graph
from .stallings import build_subgroup_graph
from .words import parse_word, parse_word_list

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


class TheoremViolation(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", type=int, default=d(0), help="seed for every random choice")
    p.add_argument("--json", dest="as_json", action="store_true", default=d(False),
                   help="print machine-readable JSON")
    p.add_argument("--quiet", action="store_true", default=d(False), help="suppress human-readable output")
    return p


def parse_alphabet(text: str) -> Alphabet:
    names = [x.strip() for x in text.split(",")] if "," in text else list(text.strip())
    if not names or any(not x for x in names):
        raise InvalidArgument(f"bad alphabet {text!r}")
    return Alphabet(tuple(names))


def _emit(args, payload: dict, lines=()):
    if args.as_json:
        print(dumps(payload))
    elif not args.quiet:
        for line in lines:
            print(line)


def _dump_graph_outputs(args, g):
    if getattr(args, "out_json", None):
        save_text(args.out_json, graph_to_json(g) + "\n")
    if getattr(args, "dot", None):
        save_text(args.dot, export_dot(g))


def cmd_build(args):
    alphabet = parse_alphabet(args.alphabet)
    gens = parse_word_list(args.gens, alphabet)
    g = build_subgroup_graph(gens, alphabet)
    _dump_graph_outputs(args, g)
    _emit(args, graph_to_dict(g), [graph_to_json(g)] if not args.out_json else
          [f"{g.num_vertices} vertices, {g.num_edges} edges, rank {rank(g)}"])
    return EXIT_OK


def cmd_intersect(args):
    h, k = load_graph(args.h), load_graph(args.k)
    p = fiber_product(h, k)
    comp = intersection_graph(h, k)
    rep = bound_report(h, k)
    payload = {"intersection": graph_to_dict(comp), "bounds": rep.as_dict(),
               "components": [{"vertices": c.num_vertices, "edges": c.num_edges, "rank": rank(c)}
                              for c in components(p.graph)]}
    if args.report:
        save_text(args.report, dumps(payload) + "\n")
    if args.dot:
        save_text(args.dot, export_dot(comp))
    _emit(args, payload, [f"rank(H n K) = {rep.rank_intersection}",
                          f"bounds: howson {rep.howson_bound}, hn {rep.hn_weak_bound}, "
                          f"hnc {rep.hnc_bound}, actual mrank {rep.actual}"])
    if not rep.all_satisfied:
        raise TheoremViolation("intersection exceeds a proven bound")
    return EXIT_OK


def cmd_analyze(args):
    g = load_graph(args.h)
    names = g.alphabet.names
    c = core(g)
    payload = {
        "vertices": g.num_vertices,
        "edges": g.num_edges,
        "euler_characteristic": euler_characteristic(g),
        "rank": rank(g) if g.num_vertices and is_connected(g) else None,
        "reduced_rank": reduced_rank(g),
        "branching": sorted(branching_vertices(g)),
        "core": graph_to_dict(c),
        "arcs": [{"edges": list(a.edge_ids),
                  "word": "".join(names[g.edge(s.edge).label] if s.forward else names[g.edge(s.edge).label].upper()
                                  for s in a.steps),
                  "boundary": list(a.boundary)} for a in arcs(c)] if c.num_vertices else [],
    }
    _emit(args, payload, [f"{k}: {v}" for k, v in payload.items() if k != "core"])
    return EXIT_OK


def cmd_check_inert(args):
    h = load_graph(args.h)
    v = inertness.certify_inert(h)
    if v.status != inertness.CERTIFIED:
        v = inertness.refute_inertness(h, budget_edges=args.budget_edges, trials=args.trials, seed=args.seed)
    payload = v.as_dict()
    _emit(args, payload, [f"status: {v.status}"] + (
        [f"witness rank {v.rank_witness}, intersection rank {v.rank_intersection}"] if v.witness else []))
    return EXIT_OK


def cmd_check_compressed(args):
    h = load_graph(args.h)
    v = compression.is_compressed(h, args.budget_edges)
    payload = {"status": v.status, "budget_edges": v.budget_edges, "quotients_explored": v.quotients_explored,
               "note": v.note,
               "witness": None if v.witness is None else {
                   "target": graph_to_dict(v.witness.target), "mrank_source": v.witness.mrank_source,
                   "mrank_target": v.witness.mrank_target}}
    _emit(args, payload, [f"status: {v.status}", v.note])
    return EXIT_OK


def cmd_essential(args):
    h = load_graph(args.h)
    if args.injective:
        e = essential.injective_maximal_essential(h)
        sets = [] if e is None else [e.sorted()]
    else:
        sets = [e.sorted() for e in essential.maximal_essential_sets(h)]
    _emit(args, {"sets": sets}, [dumps(sets)])
    return EXIT_OK


def cmd_deflate(args):
    h = load_graph(args.h)
    arc = compression.find_arc(h, args.edge)
    word = compression.arc_word(h, arc, args.edge)
    g = compression.deflate(h, arc, args.edge)
    _dump_graph_outputs(args, g)
    _emit(args, {"graph": graph_to_dict(g), "arc_word": word.format(h.alphabet)},
          [graph_to_json(g), f"arc word: {word.format(h.alphabet)}"])
    return EXIT_OK


def cmd_inflate(args):
    h = load_graph(args.h)
    g = compression.inflate(h, args.edge, parse_word(args.word, h.alphabet))
    _dump_graph_outputs(args, g)
    _emit(args, {"graph": graph_to_dict(g)}, [graph_to_json(g)])
    return EXIT_OK


def cmd_check_echelon(args):
    basis = parse_alphabet(args.basis)
    gens = parse_word_list(args.gens, basis)
    res = echelon.check_echelon_form(gens, basis)
    fresh = [[basis.names[l] for l in sorted(f)] for f in res.fresh]
    _emit(args, {"echelon": res.is_echelon, "fresh": fresh},
          [f"echelon: {str(res.is_echelon).lower()}"] + [f"  y{i + 1}: {','.join(f) or '-'}"
                                                          for i, f in enumerate(fresh)])
    return EXIT_OK


def cmd_check_generalized_echelon(args):
    h = load_graph(args.h)
    cert = echelon.generalized_echelon_certificate(h)
    payload = {"certificate": None if cert is None else cert.as_dict(h)}
    if cert is not None and not ordering.verify_bridge_certificate(h, cert):
        raise TheoremViolation("certificate fails the bridge check")
    if h.base is not None:
        payload["abelianization"] = echelon.non_echelon_witness(h).status
    if args.certificate and cert is not None:
        save_text(args.certificate, dumps(payload["certificate"]) + "\n")
    _emit(args, payload, ["generalized echelon: " + ("certificate found" if cert else "none found")]
          + ([dumps(payload["certificate"])] if cert else []))
    return EXIT_OK


def cmd_bridge_line(args):
    alphabet = parse_alphabet(args.alphabet)
    try:
        data = json.loads(args.line)
    except json.JSONDecodeError:
        try:
            with open(args.line) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidArgument(f"cannot read line spec {args.line}: {exc}") from None
    line = ordering.LineSpec.from_dict(data, alphabet)
    order = ordering.LabelOrder.from_names([x.strip() for x in args.order.split("<")], alphabet) \
        if args.order else ordering.LabelOrder.identity(alphabet.size)
    n = len(line.mid.letters)
    if args.ranking:
        ranking = [int(x) for x in args.ranking.split(",")]
        if len(ranking) != n:
            raise InvalidArgument(f"ranking needs {n} entries")
    else:
        ranking = [n if i == line.marked else i for i in range(n)]
    res = ordering.bridge_in_line(line, order, ordering.position_order(ranking))
    _emit(args, res.as_dict(), [f"{res.kind}" + (f" {res.index}" if res.index is not None else "")])
    return EXIT_OK


def cmd_harness(args):
    cfg = HarnessConfig(seed=args.seed, trials=args.trials, max_edges=args.max_edges,
                        alphabet_size=args.alphabet_size, opponents=args.opponents,
                        suites=tuple(args.suites.split(",")) if args.suites else SUITES)
    try:
        cfg.validate()
    except ValueError as exc:
        raise InvalidArgument(str(exc)) from None
    t0 = time.perf_counter()
    report = run_harness(cfg)
    data = report_bytes(report)
    if args.report:
        save_text(args.report, data.decode())
    if args.as_json or not args.report:
        sys.stdout.write(data.decode())
    elif not args.quiet:
        for name, s in report["suites"].items():
            print(f"{name}: {len(s['violations'])} violations {s['counters']}")
    print(f"wall time {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    if report["total_violations"]:
        raise TheoremViolation(f"{report['total_violations']} violations")
    return EXIT_OK


def cmd_export_dot(args):
    g = load_graph(args.h)
    text = export_dot(g)
    if args.out:
        save_text(args.out, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    parser = _Parser(prog="subgroup-graphs", parents=[_global_flags(suppress=False)],
                     description="Subgroups of free groups as labeled graph immersions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("build", cmd_build, "fold generators into a Stallings graph")
    p.add_argument("--gens", required=True, help='comma-separated words, e.g. "abAB,ABab"')
    p.add_argument("--alphabet", default="ab", help='letter names, e.g. "abc" or "x,y,z"')
    p.add_argument("--out-json", "--json-out", dest="out_json")
    p.add_argument("--dot")

    p = add("intersect", cmd_intersect, "based component of the fiber product")
    p.add_argument("--h", required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--report")
    p.add_argument("--dot")

    p = add("analyze", cmd_analyze, "rank, Euler characteristic, core, arcs, branching vertices")
    p.add_argument("--h", required=True)

    p = add("check-inert", cmd_check_inert, "certify or refute inertness")
    p.add_argument("--h", required=True)
    p.add_argument("--budget-edges", type=int, default=8)
    p.add_argument("--trials", type=int, default=10_000)

    p = add("check-compressed", cmd_check_compressed, "exhaustive quotient search")
    p.add_argument("--h", required=True)
    p.add_argument("--budget-edges", type=int, default=compression.DEFAULT_BUDGET_EDGES)

    p = add("essential", cmd_essential, "maximal essential edge sets")
    p.add_argument("--h", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true")
    g.add_argument("--injective", action="store_true")

    p = add("deflate", cmd_deflate, "replace the arc through an edge by that edge")
    p.add_argument("--h", required=True)
    p.add_argument("--edge", type=int, required=True)
    p.add_argument("--out-json", dest="out_json")

    p = add("inflate", cmd_inflate, "subdivide an edge into a path spelling a word")
    p.add_argument("--h", required=True)
    p.add_argument("--edge", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--out-json", dest="out_json")

    p = add("check-echelon", cmd_check_echelon, "echelon form with respect to an explicit basis")
    p.add_argument("--gens", required=True)
    p.add_argument("--basis", required=True, help='ordered basis names, e.g. "abcde"')

    p = add("check-generalized-echelon", cmd_check_generalized_echelon, "search for a certificate")
    p.add_argument("--h", required=True)
    p.add_argument("--certificate", help="write the certificate JSON here")

    p = add("bridge-line", cmd_bridge_line, "largest edge of an eventually periodic line")
    p.add_argument("--line", required=True, help="line spec JSON (inline or a file path)")
    p.add_argument("--alphabet", default="ab")
    p.add_argument("--order", help='label order, e.g. "a<b"')
    p.add_argument("--ranking", help="comma-separated rank per middle position (higher is larger)")

    p = add("harness", cmd_harness, "seeded randomized property suites")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-edges", type=int, default=8)
    p.add_argument("--alphabet-size", type=int, default=2)
    p.add_argument("--opponents", type=int, default=20)
    p.add_argument("--suites", help=f"comma-separated subset of {','.join(SUITES)}")
    p.add_argument("--report")

    p = add("export-dot", cmd_export_dot, "Graphviz DOT for a graph JSON file")
    p.add_argument("--h", required=True)
    p.add_argument("--out")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidArgument, WordParseError, InvalidOracle) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TheoremViolation, AssertionError) as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
