"""Command-line interface (``hh`` / ``python -m hollow_helly``).

Exit codes: 0 success, 1 property violation or algorithm disagreement,
2 input error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import EngineDisagreement, HellyError, InputError, ResourceCapExceeded
from .extremal import (
    FacetFamilySpec,
    VertexFamilySpec,
    gen_facet_family,
    gen_vertex_family,
    recognize_facet_form,
    recognize_onedim_triple,
    recognize_vertex_form,
)
from .geometry import Box, Interval, point
from .intersection import dfs_intersect, oracle_intersect
from .io import (
    dump_json,
    format_point,
    load_family,
    load_json,
    parse_patterns,
    parse_rational,
    report_document,
    serialize_family,
)
from . import patterns as pc
from .sampling import SweepConfig, sweep
from .svg import render_svg
from .verify import INF, defect_search, pi_k

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _parse_box(text: str) -> Box:
    sides = []
    for part in text.split(","):
        lo, sep, hi = part.partition(":")
        if not sep:
            raise InputError(f"box axes are written lo:hi, got {part!r}")
        sides.append(Interval(parse_rational(lo.strip(), "--box"), parse_rational(hi.strip(), "--box")))
    return Box(tuple(sides))


def _parse_point(text: str) -> tuple:
    return tuple(parse_rational(c.strip(), "--p") for c in text.split(","))


def _emit(args, command: str, config: dict, results: dict, lines: list) -> None:
    if getattr(args, "json", False):
        sys.stdout.write(dump_json(report_document(command, config, results)))
    else:
        for line in lines:
            print(line)


def _fmt(p) -> str:
    return "(" + ", ".join(str(c) for c in format_point(p)) + ")"


# ---------------------------------------------------------------------------
# subcommands


def cmd_intersect(args) -> int:
    f = load_family(args.family)
    results, lines = {}, []
    algs = {"grid": ["grid"], "dfs": ["dfs"], "both": ["dfs", "grid"]}[args.alg]
    for name in algs:
        res = dfs_intersect(f) if name == "dfs" else oracle_intersect(f)
        results[name] = None if res.is_empty else format_point(res.witness)
        lines.append(f"{name}: " + ("empty" if res.is_empty else f"witness {_fmt(res.witness)}"))
    code = EXIT_OK
    if len(algs) == 2 and (results["dfs"] is None) != (results["grid"] is None):
        lines.append("DISAGREEMENT between dfs and grid oracle")
        results["disagreement"] = True
        code = EXIT_VIOLATION
    _emit(args, "intersect", {"alg": args.alg, "family": serialize_family(f)}, results, lines)
    return code


def cmd_helly(args) -> int:
    f = load_family(args.family)
    config = {"family": serialize_family(f), "k": args.k, "defect": args.defect}
    if args.k is not None:
        holds, sub = pi_k(f, args.k)
        _emit(args, "helly", config, {"k": args.k, "holds": holds, "violating_subfamily": sub},
              [f"pi_{args.k}: {'true' if holds else 'false'}"] + ([f"violating subfamily: {sub}"] if sub else []))
        return EXIT_OK
    defect, sub = defect_search(f)
    shown = "inf" if defect == INF else str(defect)
    results = {"defect": "inf" if defect == INF else defect, "witness_subfamily": sub}
    if args.defect:
        _emit(args, "helly", config, results, [shown])
        return EXIT_OK
    lines = [f"members: {len(f)}", f"defect: {shown}"]
    if sub:
        lines.append("smallest empty subfamily: " + " ".join(map(str, sub)))
    if f.all_hollow:
        recs = []
        if f.dim == 1:
            triple = recognize_onedim_triple(f)
            results["onedim_triple"] = triple
            lines.append(f"two-point triple: {'yes' if triple else 'no'}")
        else:
            recs = [recognize_facet_form(f), recognize_vertex_form(f)]
        for r in recs:
            results[f"{r.form}_form"] = r.to_json()
            lines.append(f"{r.form} form: " + ("accepted" if r.accepted else f"rejected (condition {r.failed_condition})"))
    _emit(args, "helly", config, results, lines)
    return EXIT_OK


def cmd_gen(args) -> int:
    d = args.d
    if args.form == "facet":
        B = _parse_box(args.box) if args.box else Box.cube(d, 0, 4)
        if args.box is None and args.p is None:
            p = (2,) * d
        else:
            p = _parse_point(args.p) if args.p else tuple((s.lo + s.hi) / 2 for s in B.sides)
        f = gen_facet_family(FacetFamilySpec(B, p))
    else:
        B = _parse_box(args.box) if args.box else Box.cube(d, 0, 1)
        margins = _parse_point(args.margin) if args.margin else (1,)
        if len(margins) == 1:
            spec = VertexFamilySpec(B, margins[0])
        else:
            spec = VertexFamilySpec(B, margins=margins)
        f = gen_vertex_family(spec)
    if f.dim != d:
        raise InputError(f"--d {d} does not match the box dimension {f.dim}")
    text = dump_json(serialize_family(f))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _read_patterns(args) -> list:
    pats = list(args.patterns)
    if args.file:
        pats += parse_patterns(load_json(args.file))
    if not pats:
        raise InputError("no patterns given")
    return pats


def cmd_covers(args) -> int:
    if args.action == "enumerate":
        if args.d is None:
            raise InputError("covers enumerate needs --d")
        classes = pc.enumerate_minimal_covers(args.d, group=args.group, allow_search=args.search, node_budget=args.budget)
        results = {"d": args.d, "group": args.group, "classes": [list(c) for c in classes]}
        _emit(args, "covers enumerate", {"d": args.d, "group": args.group}, results,
              [pc.format_cover(c) for c in classes] + [f"{len(classes)} classes"])
        return EXIT_OK
    pats = _read_patterns(args)
    config = {"patterns": pats}
    if args.action == "check":
        ok, miss = pc.is_cover(pats)
        _emit(args, "covers check", config, {"is_cover": ok, "uncovered": miss},
              ["cover" if ok else f"not a cover; uncovered {miss}"])
        return EXIT_OK
    if args.action == "minimal":
        if args.minimalize:
            sub = pc.minimalize(pats)
            _emit(args, "covers minimal", config, {"minimal_subcover": list(sub)}, [pc.format_cover(sub)])
            return EXIT_OK
        ok = pc.is_minimal_cover(pats)
        _emit(args, "covers minimal", config, {"is_minimal_cover": ok}, ["minimal cover" if ok else "not a minimal cover"])
        return EXIT_OK
    rep = pc.analyze(pats)
    lines = [
        f"size {rep.size}, s = {rep.s}, J = {sorted(rep.star_positions)}",
        "E_i: " + " ".join("{" + ",".join(sorted(e, key=pc.pattern_key)) + "}" for e in rep.position_sets),
        f"lemma1_ok: {rep.lemma1_ok}  equality case: {rep.lemma1_equality_case}",
        f"lemma3 class: {rep.lemma3_class}",
    ] + rep.notes
    _emit(args, "covers analyze", config, rep.to_json(), lines)
    return EXIT_OK if rep.lemma1_ok and rep.lemma3_class.consistent else EXIT_VIOLATION


def cmd_verify(args) -> int:
    if args.what == "num":
        rows, bad = [], 0
        for d in range(0, args.d_max + 1):
            for s in range(0, d + 1):
                got = pc.num_trichotomy(d, s)
                want = pc.lemma2_case(d, s)
                agree = got is want
                bad += not agree
                rows.append({"d": d, "s": s, "relation": got.value, "case_list": want.value, "agree": agree})
        lines = [f"{r['d']:>3} {r['s']:>3}  {r['relation']:<8} {'ok' if r['agree'] else 'MISMATCH'}"
                 for r in rows if r["relation"] != "less" or not r["agree"]]
        lines.append(f"{len(rows)} pairs, {bad} mismatches (rows with relation 'less' omitted)")
        _emit(args, "verify num", {"d_max": args.d_max}, {"rows": rows, "mismatches": bad}, lines)
        return EXIT_OK if bad == 0 else EXIT_VIOLATION
    mode = {"thm1": "theorem1", "thm2": "theorem2", "lemma4": "lemma4", "solid": "solid",
            "agree": "oracle_agreement", "onedim": "onedim"}[args.what]
    d = args.d
    if d is None:
        d = {"thm1": 2, "thm2": 3, "lemma4": 2, "solid": 2, "agree": 4, "onedim": 1}[args.what]
    grid = args.grid if args.grid is not None else (3 if args.what == "onedim" else 6)
    size_max = args.size_max if args.size_max is not None else (6 if args.what == "solid" else 8)
    cfg = SweepConfig(mode=mode, d=d, trials=args.trials, size_min=args.size_min, size_max=size_max,
                      grid=grid, seed=args.seed, style=args.style, workers=args.workers)
    report = sweep(cfg)
    if args.replay_dir and report["failures"]:
        out = Path(args.replay_dir)
        out.mkdir(parents=True, exist_ok=True)
        for doc in report["failures"]:
            dump_json(doc, out / f"{mode}-seed{cfg.seed}-trial{doc['replay']['index']}.json")
    lines = [f"{mode}: {report['trials']} trials, {report['passed']} passed, {report['failed']} failed",
             "tags: " + ", ".join(f"{k}={v}" for k, v in report["tags"].items())]
    for doc in report["failures"][:5]:
        lines.append(f"  trial {doc['replay']['index']}: {doc['replay']['detail']}")
    _emit(args, f"verify {args.what}", report["config"], report, lines)
    return EXIT_OK if report["failed"] == 0 else EXIT_VIOLATION


def cmd_render(args) -> int:
    f = load_family(args.family)
    marks = [point(_parse_point(m)) for m in args.mark]
    text = render_svg(f, marks).to_svg()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hh", description="Exact Helly-type computations for hollow boxes.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("intersect", help="decide emptiness of a family's intersection")
    s.add_argument("family")
    s.add_argument("--alg", choices=("grid", "dfs", "both"), default="both")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_intersect)

    s = sub.add_parser("helly", help="k-wise intersection property and Helly defect")
    s.add_argument("family")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--k", type=int)
    g.add_argument("--defect", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_helly)

    s = sub.add_parser("gen", help="generate an extremal family")
    s.add_argument("form", choices=("facet", "vertex"))
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--box", help="per-axis lo:hi, comma separated, e.g. 0:4,0:4")
    s.add_argument("--p", help="interior point for the facet form, e.g. 2,2")
    s.add_argument("--margin", help="outer slack for the vertex form (one value or one per axis)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("covers", help="pattern covers of the Boolean cube")
    s.add_argument("action", choices=("check", "minimal", "analyze", "enumerate"))
    s.add_argument("patterns", nargs="*")
    s.add_argument("--d", type=int)
    s.add_argument("--file", help="JSON array of pattern strings")
    s.add_argument("--group", choices=(pc.HYPEROCTAHEDRAL, pc.GLOBAL_SWAP), default=pc.HYPEROCTAHEDRAL)
    s.add_argument("--search", action="store_true", help="allow the bounded search for d >= 3")
    s.add_argument("--budget", type=int, default=2_000_000)
    s.add_argument("--minimalize", action="store_true", help="with 'minimal': print a minimal subcover")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_covers)

    s = sub.add_parser("verify", help="randomized verification sweeps")
    s.add_argument("what", choices=("thm1", "thm2", "lemma4", "solid", "num", "agree", "onedim"))
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--grid", type=int)
    s.add_argument("--d", type=int)
    s.add_argument("--d-max", type=int, default=20)
    s.add_argument("--size-min", type=int, default=2)
    s.add_argument("--size-max", type=int)
    s.add_argument("--style", choices=("uniform", "enclosing"), default="uniform",
                   help="'enclosing' draws hulls around a shared core box")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--replay-dir")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("render", help="draw a planar family as SVG")
    s.add_argument("family")
    s.add_argument("-o", "--output")
    s.add_argument("--mark", action="append", default=[], help="point to mark, e.g. 2,2 (repeatable)")
    s.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ResourceCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except EngineDisagreement as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (InputError, HellyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
