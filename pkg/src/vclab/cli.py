"""Command-line front end.

Every subcommand that consumes a family reads it from ``--in FILE`` or
standard input (``-`` also means stdin); ``gen`` output pipes losslessly
into any other subcommand.  ``--json`` switches machine output on; human
text is the default.  Exit codes: 0 success, 1 verification failure or
table mismatch, 2 input/format error, 3 budget exhaustion.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .dimensions import (
    DEFAULT_SEARCH_BUDGET,
    compute_dimensions,
    report_to_json_obj,
)
from .errors import (
    CliqueBudgetExceeded,
    SearchBudgetExceeded,
    VCLabError,
)
from .family import (
    elements_of,
    family_to_json_obj,
    parse_family,
    serialize_family,
)
from .graphs import (
    GraphMode,
    build_graph,
    format_stats,
    graph_stats,
    graph_to_edge_list_text,
    graph_to_json_obj,
    stats_to_json_obj,
)
from .lab import (
    ExploreConfig,
    GenConfig,
    explore_questions,
    format_table,
    gen_named,
    gen_random,
    reproduce_table,
    verify_bouquet_pipeline,
    verify_density,
    verify_shift_step,
)
from .shifting import (
    complete_classical_shift,
    complete_d_shift,
    d_shift,
    shift_classical,
    trace_to_json_obj,
)


def _read_family(args):
    if args.infile in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.infile, "r", encoding="utf-8") as fh:
            text = fh.read()
    return parse_family(text)


def _emit(args, text: str) -> None:
    if getattr(args, "outfile", None):
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _cmd_gen(args) -> int:
    if args.random:
        try:
            m_str, n_str = args.random.split(",")
            m, n = int(m_str), int(n_str)
        except ValueError:
            raise VCLabError(f"--random expects 'm,n', got {args.random!r}")
        fam = gen_random(GenConfig(m, n, args.seed,
                                   require_even=args.even,
                                   require_pointed=args.pointed))
    elif args.name:
        fam = gen_named(args.name, m=args.m, k=args.k, r=args.r)
    else:
        raise VCLabError("gen needs --name or --random m,n")
    if args.json:
        _emit(args, _dump(family_to_json_obj(fam)))
    else:
        _emit(args, serialize_family(fam))
    return 0


def _cmd_dims(args) -> int:
    fam = _read_family(args)
    report = compute_dimensions(fam, budget=args.budget)
    if args.json:
        _emit(args, _dump(report_to_json_obj(report)))
        return 0
    lines = [f"vcd = {report.vcd}"]
    lines.append(f"vccdim = {report.vccdim if report.vccdim is not None else '-'}")
    star = report.vccdim_star
    lifted = " (on the lifting)" if star.lifted else ""
    lines.append(f"vccdim* = {star.value} via twist "
                 f"{{{','.join(map(str, elements_of(star.twist_by)))}}}{lifted}")
    lines.append(f"vcsdim = {report.vcsdim if report.vcsdim is not None else '-'}")
    vstar = report.vcsdim_star
    lines.append(f"vcsdim* = {vstar.value} via twist "
                 f"{{{','.join(map(str, elements_of(vstar.twist_by)))}}}")
    lines.append(f"2vc = {report.two_vc}")
    _emit(args, "\n".join(lines) + "\n")
    return 0


def _cmd_graph(args) -> int:
    fam = _read_family(args)
    mode = GraphMode(args.mode)
    g = build_graph(fam, mode)
    if args.stats:
        stats = graph_stats(g, want_clique=args.clique,
                            clique_budget=args.clique_budget)
        if args.json:
            _emit(args, _dump(stats_to_json_obj(stats, g.vertices)))
        else:
            _emit(args, format_stats(stats))
        return 3 if stats.clique_budget_exceeded else 0
    if args.json:
        _emit(args, _dump(graph_to_json_obj(g)))
    else:
        _emit(args, graph_to_edge_list_text(g))
    return 0


def _cmd_shift(args) -> int:
    fam = _read_family(args)
    if args.complete:
        trace = complete_classical_shift(fam) if args.classical else complete_d_shift(fam)
    elif args.pair:
        try:
            i_str, j_str = args.pair.split(",")
            i, j = int(i_str), int(j_str)
        except ValueError:
            raise VCLabError(f"--pair expects 'i,j', got {args.pair!r}")
        shifted, step = d_shift(fam, i, j)
        trace = _single_step_trace(fam, shifted, step)
    elif args.elem is not None:
        shifted, step = shift_classical(fam, args.elem)
        trace = _single_step_trace(fam, shifted, step)
    else:
        raise VCLabError("shift needs --pair i,j, --elem e, or --complete")
    if args.trace:
        _emit(args, _dump(trace_to_json_obj(trace)))
    elif args.json:
        _emit(args, _dump(family_to_json_obj(trace.final)))
    else:
        _emit(args, serialize_family(trace.final))
    return 0


def _single_step_trace(fam, shifted, step):
    from .shifting import ShiftTrace

    steps = (step,) if step.effective else ()
    history = (fam.potential(),) + ((shifted.potential(),) if step.effective else ())
    return ShiftTrace(fam, steps, shifted, history)


def _cmd_verify(args) -> int:
    fam = _read_family(args)
    from .dimensions import vcd as vcd_fn
    from .graphs import GraphMode as GM

    payload: dict = {}
    lines: list[str] = []
    all_ok = True
    inconclusive = False

    dens = verify_density(fam, budget=args.budget)
    payload["density"] = dens.to_json_obj()
    if not dens.conclusive:
        inconclusive = True
        lines.append("density: inconclusive (search budget exhausted)")
    else:
        ok = bool(dens.holds)
        all_ok &= ok
        lines.append(f"density: {dens.ratio} <= C({dens.d},2) = {dens.bound} "
                     f"... {'ok' if ok else 'VIOLATED'}")

    g1 = build_graph(fam, GM.G1)
    vcd_v, _ = vcd_fn(fam)
    ratio1 = Fraction(g1.e, g1.n)
    hauss_ok = ratio1 <= vcd_v
    all_ok &= hauss_ok
    payload["one_inclusion"] = {"ratio": str(ratio1), "vcd": vcd_v, "holds": hauss_ok}
    lines.append(f"1-inclusion: {ratio1} <= vcd = {vcd_v} ... "
                 f"{'ok' if hauss_ok else 'VIOLATED'}")

    if fam.pointed and fam.even:
        shift_objs = []
        for i in range(1, fam.ground.m + 1):
            for j in range(i + 1, fam.ground.m + 1):
                rep = verify_shift_step(fam, i, j, budget=args.budget)
                shift_objs.append({"pair": [i, j], **rep.to_json_obj()})
                all_ok &= rep.all_ok
                status = "ok" if rep.all_ok else "VIOLATED"
                lines.append(f"shift pair ({i},{j}): {status}")
        payload["shift_checks"] = shift_objs
        pipeline = verify_bouquet_pipeline(fam, budget=args.budget)
        payload["bouquet"] = pipeline.to_json_obj()
        all_ok &= pipeline.all_ok
        lines.append(f"bouquet pipeline: {'ok' if pipeline.all_ok else 'VIOLATED'}")
    else:
        payload["shift_checks"] = None
        payload["bouquet"] = None
        lines.append("shift/bouquet checks skipped (family not pointed and even)")

    payload["all_hold"] = all_ok and not inconclusive
    lines.append("VERIFY: " + ("INCONCLUSIVE" if inconclusive
                               else "PASS" if all_ok else "FAIL"))
    _emit(args, _dump(payload) if args.json else "\n".join(lines) + "\n")
    if inconclusive:
        return 3
    return 0 if all_ok else 1


def _cmd_table(args) -> int:
    report = reproduce_table(args.m, args.k, budget=args.budget)
    _emit(args, _dump(report.to_json_obj()) if args.json else format_table(report))
    return 0 if report.ok else 1


def _cmd_explore(args) -> int:
    cfg = ExploreConfig(trials=args.trials, seed=args.seed, max_m=args.max_m,
                        max_sets=args.max_sets,
                        c_square=Fraction(args.c1), c_product=Fraction(args.c2),
                        budget=args.budget)
    out = sys.stdout
    close = False
    if args.outfile:
        out = open(args.outfile, "w", encoding="utf-8")
        close = True
    try:
        _records, summary = explore_questions(cfg, out)
    finally:
        if close:
            out.close()
    return 3 if summary["completed"] < summary["requested"] else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vclab",
        description="inclusion graphs of set families: dimensions, shifting, density checks")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, reads_family=True):
        if reads_family:
            p.add_argument("--in", dest="infile", default=None,
                           help="family file ('-' or omitted: stdin)")
        p.add_argument("--out", dest="outfile", default=None,
                       help="write output to this file instead of stdout")
        p.add_argument("--json", action="store_true", help="JSON output")

    p = sub.add_parser("gen", help="emit a named or random family")
    add_io(p, reads_family=False)
    p.add_argument("--name", default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--random", default=None, metavar="m,n")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--even", action="store_true")
    p.add_argument("--pointed", action="store_true")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("dims", help="dimension report with witnesses")
    add_io(p)
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p.set_defaults(func=_cmd_dims)

    p = sub.add_parser("graph", help="inclusion graph edge list or statistics")
    add_io(p)
    p.add_argument("--mode", choices=[m.value for m in GraphMode], default="g12")
    p.add_argument("--stats", action="store_true")
    p.add_argument("--clique", action=argparse.BooleanOptionalAction, default=False)
    p.add_argument("--clique-budget", type=int, default=10**7)
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("shift", help="apply one shift or shift to a bouquet")
    add_io(p)
    p.add_argument("--pair", default=None, metavar="i,j")
    p.add_argument("--elem", type=int, default=None)
    p.add_argument("--complete", action="store_true")
    p.add_argument("--classical", action="store_true",
                   help="with --complete: classical single-element sweeps")
    p.add_argument("--trace", action="store_true", help="emit the trace JSON")
    p.set_defaults(func=_cmd_shift)

    p = sub.add_parser("verify", help="density, shifting, and bouquet checks")
    add_io(p)
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("table", help="reproduce the named-family dimension table")
    add_io(p, reads_family=False)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("explore", help="random sweeps for the open density questions")
    add_io(p, reads_family=False)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-m", type=int, default=8)
    p.add_argument("--max-sets", type=int, default=24)
    p.add_argument("--c1", default="1", help="square-flag multiple (rational)")
    p.add_argument("--c2", default="1", help="product-flag multiple (rational)")
    p.add_argument("--budget", type=int, default=None,
                   help="stop after this many trials (partial report, exit 3)")
    p.set_defaults(func=_cmd_explore)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SearchBudgetExceeded, CliqueBudgetExceeded) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except VCLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
