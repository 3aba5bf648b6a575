"""Command-line surface.

Subcommands: classify, roots, dim, chain, hecke-words, ft-verify, induct,
pic2, diagram.  All output is a single deterministic JSON line (or DOT for
``diagram --format dot``); numeric values are exact integers or "p/q"
strings.  Exit codes: 0 success/consistent, 1 input error, 2 classification
contradiction, 3 realizability violation.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import cartan, coxeter, flags, ftverify, picard2, rootsys
from .cartan import FINITE, GeneralizedCartanMatrix


def _rat(x):
    """Exact JSON value: int when integral, else a p/q string."""
    f = Fraction(x)
    return int(f) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _emit(payload) -> None:
    print(json.dumps(payload, separators=(",", ":")))


def _parse_matrix_arg(text: str) -> GeneralizedCartanMatrix:
    data = json.loads(text)
    if isinstance(data, dict):
        data = data.get("matrix", data)
    return cartan.validate_gcm(data)


def _parse_spec(diagram: str | None, matrix: str | None, fmt: str = "json") -> GeneralizedCartanMatrix:
    if fmt != "json":
        raise ValueError("--format dot is only supported by the diagram command")
    if (diagram is None) == (matrix is None):
        raise ValueError("exactly one of --diagram and --matrix is required")
    if diagram is not None:
        return cartan.parse_dsl(diagram)
    return _parse_matrix_arg(matrix)


def _parse_positional_spec(spec: str) -> GeneralizedCartanMatrix:
    if spec.lstrip().startswith("["):
        return _parse_matrix_arg(spec)
    return cartan.parse_dsl(spec)


def _parse_marks(text: str | None, m: GeneralizedCartanMatrix) -> list[int]:
    if text is None:
        return list(m.nodes)
    try:
        marks = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(f"bad mark list {text!r}; expected comma-separated integers")
    return marks


def _component_payload(c: cartan.Component, dimension: int | None = None):
    payload = {"type": c.type_name, "nodes": list(c.nodes), "kind": c.kind}
    if dimension is not None:
        payload["dimension"] = dimension
    return payload


def _cmd_classify(args) -> int:
    m = _parse_spec(args.diagram, args.matrix, args.format)
    verdict = cartan.classify(m)
    payload = {
        "kind": verdict.kind,
        "components": [_component_payload(c) for c in verdict.components],
        "dimension_bound": rootsys.flag_dimension(m, m.nodes) if verdict.kind == FINITE else None,
        "kernel": list(verdict.affine_kernel) if verdict.affine_kernel else None,
    }
    _emit(payload)
    return 0 if verdict.kind == FINITE else 2


def _cmd_roots(args) -> int:
    m = _parse_spec(args.diagram, args.matrix, args.format)
    roots = rootsys.positive_roots(m)
    _emit({"rank": m.n, "count": len(roots), "roots": [list(r) for r in roots]})
    return 0


def _cmd_dim(args) -> int:
    m = _parse_spec(args.diagram, args.matrix, args.format)
    marks = _parse_marks(args.mark, m)
    _emit({"marked": sorted(set(marks)), "dimension": rootsys.flag_dimension(m, marks)})
    return 0


def _cmd_chain(args) -> int:
    m = _parse_positional_spec(args.spec)
    word = tuple(args.letters)
    demazure = coxeter.demazure_product(m, word)
    dim = coxeter.length(m, demazure.carrier)
    _, top = coxeter.longest_element(m)
    _emit(
        {
            "dimension": dim,
            "saturated": dim == top,
            "reduced": coxeter.is_reduced(m, word),
        }
    )
    return 0


def _cmd_hecke_words(args) -> int:
    m = _parse_positional_spec(args.spec)
    h = coxeter.demazure_product(m, tuple(args.letters))
    words = sorted(coxeter.reduced_words(m, h))
    _emit(
        {
            "length": coxeter.length(m, h.carrier),
            "count": len(words),
            "words": [list(w) for w in words],
        }
    )
    return 0


def _cmd_ft_verify(args) -> int:
    with open(args.path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "intersection_matrix" not in data:
        raise ValueError('input file must contain {"intersection_matrix": [[...]]}')
    m = ftverify.ingest(data["intersection_matrix"])
    report = ftverify.verdict(m)
    components = []
    for c in report.verdict.components:
        dim = rootsys.flag_dimension(m, c.nodes) if report.verdict.kind == FINITE else None
        components.append(_component_payload(c, dim))
    _emit(
        {
            "verdict": report.verdict.kind,
            "components": components,
            "dimension_bound": report.dimension_bound,
            "affine_witness": list(report.affine_witness) if report.affine_witness else None,
            "violating_subconfiguration": list(report.violating_nodes) if report.violating_nodes else None,
            "consistency": report.consistency,
        }
    )
    return 0 if report.verdict.kind == FINITE else 2


def _cmd_induct(args) -> int:
    match = re.fullmatch(r"([A-G])([0-9]+)", args.type.strip())
    if match is None:
        raise ValueError(f"bad type {args.type!r}; expected a single token like A4")
    family, n = match.group(1), int(match.group(2))
    seq = flags.induction_sequence(family, n)
    _emit(
        {
            "type": f"{family}{n}",
            "start": list(seq[0][0]),
            "steps": [{"I": list(step), "i": pivot} for step, pivot in seq],
        }
    )
    return 0


def _cmd_pic2(args) -> int:
    values = args.values
    if len(values) not in (2, 5):
        raise ValueError("pic2 expects nu1 nu2 or nu1 nu2 mu1 mu2 m")
    nu1, nu2 = values[0], values[1]
    verdict = picard2.classify_rank2(nu1, nu2)
    payload = {
        "classification": verdict.type_name,
        "reason": verdict.reason,
        "nu": [nu1, nu2],
        "mu": None,
        "m": None,
        "basechange": None,
        "discriminants": None,
        "checks": None,
    }
    if len(values) == 5:
        mu1, mu2, m = values[2], values[3], values[4]
        data = picard2.Rank2Data(nu1, nu2, mu1, mu2, m)
        a = picard2.basechange_matrix(data)
        payload["mu"] = [mu1, mu2]
        payload["m"] = m
        payload["basechange"] = [[_rat(x) for x in row] for row in a]
        discs = []
        reality = []
        for nu, mu in ((nu1, mu1), (nu2, mu2)):
            try:
                delta = picard2.discriminant_for(m, nu, mu)
            except (picard2.ZeroNu, picard2.InadmissibleDegree):
                discs.append(None)
                reality.append(None)
                continue
            discs.append(_rat(delta))
            reality.append(picard2.im_power_vanishes(picard2.ExactComplex(Fraction(nu, mu), -delta), m + 1))
        payload["discriminants"] = discs
        pair = (
            a[0][0] * 2 + a[0][1] * 0 == -nu1 and a[1][0] * 2 + a[1][1] * 0 == mu1
        )
        try:
            cos_ok = picard2.verify_cos_identity(m, data)
        except picard2.InadmissibleDegree:
            cos_ok = False
        payload["checks"] = {
            "basechange_pair": pair,
            "cos_identity": cos_ok,
            "im_power_vanishes": reality,
        }
    _emit(payload)
    return 0 if verdict.type_name is not None else 3


def _cmd_diagram(args) -> int:
    m = _parse_spec(args.diagram, args.matrix)
    d = cartan.to_diagram(m)
    if args.format == "dot":
        sys.stdout.write(cartan.diagram_to_dot(d, name=args.diagram or "dynkin"))
        return 0
    _emit(
        {
            "rank": d.n,
            "nodes": list(range(1, d.n + 1)),
            "edges": [
                {"nodes": [e.i, e.j], "multiplicity": e.multiplicity, "arrow_to": e.arrow_to}
                for e in d.edges
            ],
        }
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ftcartan",
        description="Exact classification and combinatorics of generalized Cartan matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    spec_parent = argparse.ArgumentParser(add_help=False)
    spec_parent.add_argument("--diagram", help='diagram string like "A3" or "A2xA1"')
    spec_parent.add_argument("--matrix", help='matrix as JSON, e.g. "[[2,-1],[-1,2]]"')
    spec_parent.add_argument("--format", choices=("json", "dot"), default="json")
    spec_parent.add_argument("--mark", help="comma-separated 1-based marked nodes")

    p = sub.add_parser("classify", parents=[spec_parent], help="finite/affine/indefinite verdict")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("roots", parents=[spec_parent], help="positive roots in canonical order")
    p.set_defaults(func=_cmd_roots)

    p = sub.add_parser("dim", parents=[spec_parent], help="flag dimension of a marking")
    p.set_defaults(func=_cmd_dim)

    p = sub.add_parser("chain", help="dimension of a chain locus")
    p.add_argument("spec", help="diagram string or JSON matrix")
    p.add_argument("letters", nargs="*", type=int, help="word letters, 1-based")
    p.set_defaults(func=_cmd_chain)

    p = sub.add_parser("hecke-words", help="all minimal words for a saturated product")
    p.add_argument("spec", help="diagram string or JSON matrix")
    p.add_argument("letters", nargs="*", type=int, help="word letters, 1-based")
    p.set_defaults(func=_cmd_hecke_words)

    p = sub.add_parser("ft-verify", help="verify an intersection-data file")
    p.add_argument("path", help='JSON file with {"intersection_matrix": [[...]]}')
    p.set_defaults(func=_cmd_ft_verify)

    p = sub.add_parser("induct", help="extension chain from the start marking to the full set")
    p.add_argument("type", help="connected finite type, e.g. A4")
    p.set_defaults(func=_cmd_induct)

    p = sub.add_parser("pic2", help="rank-2 numeric core")
    p.add_argument("values", nargs="+", type=int, help="nu1 nu2 [mu1 mu2 m]")
    p.set_defaults(func=_cmd_pic2)

    p = sub.add_parser("diagram", parents=[spec_parent], help="diagram structure as JSON or DOT")
    p.set_defaults(func=_cmd_diagram)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if not exc.code else 1
    try:
        return args.func(args)
    except ftverify.ProductOutOfRange as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
