"""Command-line front end.

Exit codes: 0 success, 1 bad input, 2 failed internal check (confluence
disagreement, nonconforming normal form, broken invariant).
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .algebra import Element, Field, FieldMismatch, element_mul, graded_parts, parity_of
from .analyze import analyze, growth_class, in_jacobson_radical, project_bosonic
from .basis import basis_words, dimension_series, fit_growth
from .canonical import ShapeError, conforms_to_monomial_form
from .fixtures import fixture
from .graph import GraphError, SuperGraph
from .report import SCHEMA_VERSION, dumps, to_dict
from .rewrite import InvariantError, ReductionSystem, check_confluence
from .textio import ExprError, ParseError, dump_graph_spec, format_element, format_word, parse_element_expr, parse_graph_file

# Largest |fitted degree - gk estimate| still counted as agreement.
DEGREE_TOLERANCE = 0.4


class InputError(Exception):
    pass


def load_graph(ref: str) -> tuple[SuperGraph, Field, str]:
    """Read a graph file, or fall back to a built-in fixture name."""
    if os.path.isfile(ref):
        with open(ref, encoding="utf-8") as fh:
            spec = parse_graph_file(fh.read())
        return spec.build(), spec.field, os.path.basename(ref)
    try:
        return fixture(ref), Field(0), ref
    except KeyError:
        raise InputError(f"{ref}: no such graph file or fixture") from None


def _emit(args, payload: dict, lines: Sequence[str]) -> None:
    if args.json:
        print(dumps({"schema_version": SCHEMA_VERSION, **payload}))
    else:
        for line in lines:
            print(line)


def _check_conformance(g: SuperGraph, x: Element) -> None:
    for w in x.terms:
        if not conforms_to_monomial_form(g, w):
            raise InvariantError(f"normal form word {format_word(w)} has no canonical shape")


def cmd_info(args, g, field, name):
    if args.dump_spec:
        sys.stdout.write(dump_graph_spec(g, field))
        return 0
    r = analyze(g, field, nil_samples=args.nil_samples, seed=args.seed)
    d = to_dict(r)
    lines = [f"graph: {name}", f"field: {field.name}"]
    lines += [f"{k}: {_plain(v)}" for k, v in d.items() if k not in ("kind", "schema_version", "warnings")]
    lines += [f"warning: {w}" for w in sorted(r.warnings)]
    if args.json:
        print(dumps(d))
    else:
        print("\n".join(lines))
    return 0


def _plain(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    return "none" if v is None else str(v)


def cmd_nf(args, g, field, name):
    rs = ReductionSystem(g, field)
    x = parse_element_expr(g, args.expr[0], field)
    nf = rs.reduce_element(x)
    _check_conformance(g, nf)
    text = format_element(nf)
    _emit(args, {"kind": "normal_form", "input": args.expr[0], "normal_form": text}, [text])
    return 0


def cmd_mul(args, g, field, name):
    if len(args.expr) != 2:
        raise InputError("mul needs exactly two -e expressions")
    rs = ReductionSystem(g, field)
    a, b = (parse_element_expr(g, e, field) for e in args.expr)
    p = element_mul(rs, a, b)
    _check_conformance(g, p)
    text = format_element(p)
    _emit(args, {"kind": "product", "left": args.expr[0], "right": args.expr[1], "product": text}, [text])
    return 0


def cmd_basis(args, g, field, name):
    rs = ReductionSystem(g, field)
    s = dimension_series(rs, args.max_len, name)
    if args.count_only:
        lines = [f"{n}: {c} (cumulative {t})" for n, (c, t) in enumerate(zip(s.per_length, s.cumulative), 1)]
        _emit(args, to_dict(s), lines)
        return 0
    levels = basis_words(rs, args.max_len) if args.max_len else []
    words = [[format_word(w) for w in level] for level in levels]
    lines = [" ".join([f"{n}:", *level]) for n, level in enumerate(words, 1)]
    _emit(args, {**to_dict(s), "kind": "basis", "words": words}, lines)
    return 0


def agreement(theory, fit) -> bool:
    if theory.classification != fit.classification:
        return False
    if theory.classification == "polynomial":
        return abs(fit.degree_estimate - theory.gk_estimate) <= DEGREE_TOLERANCE
    return True


def cmd_growth(args, g, field, name):
    rs = ReductionSystem(g, field)
    s = dimension_series(rs, args.max_len, name)
    try:
        fit = fit_growth(s, args.window)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    theory = growth_class(rs)
    agree = agreement(theory, fit)
    payload = {
        "kind": "growth",
        "series": to_dict(s),
        "fit": to_dict(fit),
        "theory": {"classification": theory.classification, "gk_estimate": theory.gk_estimate,
                   "dimension": theory.dimension},
        "agreement": agree,
    }
    lines = [
        f"per_length: {' '.join(map(str, s.per_length))}",
        f"fit: {fit.classification} window {fit.window[0]}..{fit.window[1]} "
        f"degree {_num(fit.degree_estimate)} ratio {_num(fit.ratio_estimate)} r2 {fit.fit_quality:.4f}",
        f"theory: {theory.classification} gk {_plain(theory.gk_estimate)} dimension {_plain(theory.dimension)}",
        f"agreement: {_plain(agree)}",
    ]
    _emit(args, payload, lines)
    return 0


def _num(x: float | None) -> str:
    return "none" if x is None else f"{x:.4f}"


def cmd_confluence(args, g, field, name):
    rs = ReductionSystem(g, field)
    r = check_confluence(rs, args.max_len, seed=args.seed)
    lines = [f"{r.words_tested} words tested, max steps {r.max_steps}", f"{len(r.disagreements)} disagreements"]
    for w, nfs in r.disagreements[:10]:
        lines.append(f"  {format_word(w)}: " + "; ".join(f"{k} -> {format_element(v)}" for k, v in nfs.items()))
    _emit(args, to_dict(r), lines)
    return 0 if r.passed else 2


def cmd_radical(args, g, field, name):
    rs = ReductionSystem(g, field)
    x = parse_element_expr(g, args.expr[0], field)
    member = in_jacobson_radical(rs, x)
    proj = format_element(project_bosonic(g, rs.reduce_element(x)))
    _emit(args, {"kind": "radical", "input": args.expr[0], "member": member, "bosonic_projection": proj},
          [f"member: {_plain(member)}", f"bosonic projection: {proj}"])
    return 0


def cmd_grade(args, g, field, name):
    rs = ReductionSystem(g, field)
    x = rs.reduce_element(parse_element_expr(g, args.expr[0], field))
    even, odd = graded_parts(x)
    p = parity_of(x)
    _emit(args, {"kind": "grade", "input": args.expr[0], "even": format_element(even),
                 "odd": format_element(odd), "parity": p},
          [f"even: {format_element(even)}", f"odd: {format_element(odd)}", f"parity: {p}"])
    return 0


COMMANDS = {
    "info": cmd_info, "nf": cmd_nf, "mul": cmd_mul, "basis": cmd_basis, "growth": cmd_growth,
    "confluence": cmd_confluence, "radical": cmd_radical, "grade": cmd_grade,
}


def _natural(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", required=True, help="graph file path or fixture name (arrow, grass(1,2), ...)")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="superleavitt", description="Normal forms and structure of graph superalgebras.")
    sub = p.add_subparsers(dest="command", required=True)

    info = sub.add_parser("info", parents=[common], help="structural analysis report")
    info.add_argument("--dump-spec", action="store_true", help="print the graph in file syntax")
    info.add_argument("--nil-samples", type=_natural, default=0, help="random radical elements to test")
    info.add_argument("--seed", type=int, default=0)

    for cmd, helptext in (("nf", "normal form"), ("radical", "radical membership"), ("grade", "even/odd parts")):
        sp = sub.add_parser(cmd, parents=[common], help=helptext)
        sp.add_argument("-e", dest="expr", action="append", required=True, metavar="EXPR")
    mul = sub.add_parser("mul", parents=[common], help="product of two elements")
    mul.add_argument("-e", dest="expr", action="append", required=True, metavar="EXPR")

    basis = sub.add_parser("basis", parents=[common], help="irreducible words by length")
    basis.add_argument("--max-len", type=_natural, required=True)
    basis.add_argument("--count-only", action="store_true")

    growth = sub.add_parser("growth", parents=[common], help="dimension series and growth fit")
    growth.add_argument("--max-len", type=_natural, required=True)
    growth.add_argument("--window", type=int, default=None)

    conf = sub.add_parser("confluence", parents=[common], help="compare reduction strategies")
    conf.add_argument("--max-len", type=_natural, required=True)
    conf.add_argument("--seed", type=int, default=0)
    return p


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        g, field, name = load_graph(args.graph)
        return COMMANDS[args.command](args, g, field, name)
    except (InputError, ParseError, ExprError, GraphError, FieldMismatch, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InvariantError, ShapeError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())
