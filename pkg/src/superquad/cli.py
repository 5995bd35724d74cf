"""Command-line interface.

Subcommands: verify, extend, decompose, catalog, roundtrip. Exit codes:
0 success, 1 mathematical violation (witness printed), 2 I/O or parse error.
All serialised output is deterministic, byte-identical across repeated runs.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import catalog as cat
from .algebra import QuadraticLieSuperAlgebra, check_invariance, check_jacobi
from .decompose import decompose, find_central_minimal_ideal
from .errors import (
    NotHomogeneous,
    ParseError,
    SuperquadError,
    ValidationError,
    Violation,
    format_residual,
)
from .extension import contexts_equal, double_extend, validate_context
from .fileformat import (
    AlgebraDocument,
    ContextDocument,
    IdealDocument,
    algebra_to_document,
    context_to_document,
    document_to_algebra,
    document_to_context,
    document_to_raw,
    parse_document,
    serialize_document,
)
from .linalg import unit_vec
from .spaces import check_form_degree

EQUATION_NAMES = {
    "grading": "bracket grading",
    "super-skew": "super skew-symmetry",
    "jacobi": "Jacobi super identity",
    "invariance": "metric invariance",
    "super-symmetry": "metric super-symmetry",
    "metric-degree": "metric homogeneity degree",
    "non-degenerate": "metric non-degeneracy",
    "deh1": "curvature condition (deh1)",
    "deh2": "lambda cocycle condition (deh2)",
    "deh3": "omega cocycle condition (deh3)",
    "super-cyclic": "super cyclic condition",
    "rho-derivation": "rho into derivations",
    "rho-skew": "rho into metric-skew maps",
    "rho-degree": "rho evenness",
    "lambda-even": "lambda evenness",
    "lambda-skew": "lambda super skew-symmetry",
    "omega-even": "omega evenness",
    "omega-skew": "omega super skew-symmetry",
}


def describe(v: Violation) -> str:
    name = EQUATION_NAMES.get(v.equation, v.equation)
    parts = [name]
    if v.indices:
        parts.append("witness (" + ",".join(str(i) for i in v.indices) + ")")
    if v.residual is not None:
        parts.append(f"residual {format_residual(v.residual)}")
    if v.detail:
        parts.append(v.detail)
    return ": ".join([parts[0], " ".join(parts[1:])]) if len(parts) > 1 else parts[0]


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(str(exc)) from exc
    return parse_document(text)


def _write(path: str, content: str) -> None:
    try:
        Path(path).write_text(content)
    except OSError as exc:
        raise ParseError(str(exc)) from exc


def _expect(doc, klass, what: str):
    if not isinstance(doc, klass):
        raise ParseError(f"expected {what} document, got {type(doc).__name__}")
    return doc


def cmd_verify(args) -> int:
    doc = _expect(_load(args.file), AlgebraDocument, "an algebra")
    space, bracket, form = document_to_raw(doc)
    checks: list[tuple[str, bool, str]] = []

    def run(name, violation):
        checks.append((name, violation is None, describe(violation) if violation else ""))

    run("grading", bracket.check_grading())
    run("super-skew", bracket.check_super_skew())
    run("jacobi", check_jacobi(bracket))
    if form is None:
        checks.append(("metric", True, "absent"))
    else:
        try:
            realised = check_form_degree(form)
            ok = realised == form.degree
            checks.append(("metric-degree", ok,
                           f"degree {realised}" if ok else f"pattern is degree {realised}, declared {form.degree}"))
        except NotHomogeneous as exc:
            checks.append(("metric-degree", False, str(exc)))
        run("super-symmetry", form.check_supersymmetry())
        run("invariance", check_invariance(form, bracket))
        rk = form.rank()
        checks.append(("non-degeneracy", rk == space.dim, f"rank {rk} of {space.dim}"))

    ok_all = all(ok for _, ok, _ in checks)
    if args.format == "json":
        print(json.dumps({
            "algebra": doc.name,
            "dim": space.dim,
            "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in checks],
            "ok": ok_all,
        }, sort_keys=True, separators=(",", ":")))
    else:
        print(f"algebra {doc.name} dim {space.dim} ({space.dim_even}|{space.dim_odd})")
        for name, ok, detail in checks:
            status = "PASS" if ok else "FAIL"
            line = f"check {name:<15} {status}"
            if detail:
                line += f"  {detail}"
            print(line)
        print("RESULT " + ("ok" if ok_all else "violation"))
    return 0 if ok_all else 1


def cmd_extend(args) -> int:
    doc = _expect(_load(args.context), ContextDocument, "a context")
    ctx = document_to_context(doc)
    violations = validate_context(ctx)
    if violations:
        for v in violations:
            print("violation: " + describe(v), file=sys.stderr)
        return 1
    g = double_extend(ctx)
    out_doc = algebra_to_document(g, doc.name)
    _write(args.out, serialize_document(out_doc, args.format))
    print(f"extended {doc.name}: dim {g.dim} ({g.space.dim_even}|{g.space.dim_odd}), "
          f"metric degree {g.delta} -> {args.out}")
    return 0


def cmd_decompose(args) -> int:
    doc = _expect(_load(args.file), AlgebraDocument, "an algebra")
    g = document_to_algebra(doc)
    if not isinstance(g, QuadraticLieSuperAlgebra):
        print("decompose needs a quadratic algebra (no metric in document)", file=sys.stderr)
        return 1
    if args.ideal == "auto":
        ideal = find_central_minimal_ideal(g)
        if ideal is None:
            print("auto ideal discovery handles only the central case and found no "
                  "isotropic central line; supply --ideal FILE", file=sys.stderr)
            return 1
    else:
        ideal_doc = _expect(_load(args.ideal), IdealDocument, "an ideal")
        ideal = list(ideal_doc.vectors)
    res = decompose(g, ideal)
    out_doc = context_to_document(res.context, doc.name)
    _write(args.out, serialize_document(out_doc, args.format))
    print(f"decomposed {doc.name}: dim a {len(res.a_basis)}, dim h {len(res.h_basis)}, "
          f"ideal dim {len(res.ideal_basis)}; isometry verified -> {args.out}")
    return 0


def cmd_catalog(args) -> int:
    if args.name == "odd-dim1":
        params = cat.default_odd_dim1_params(Fraction(args.eta))
        algebra = cat.odd_extension_dim1(params)
        ctx = cat.odd_extension_context(params)
    elif args.name == "heisenberg":
        params = cat.default_heisenberg_params(args.pairs)
        algebra = cat.heisenberg_extension(params)
        ctx = cat.heisenberg_context(params)
    else:
        raise ParseError(f"unknown catalog name {args.name!r} (use odd-dim1 or heisenberg)")
    if args.emit == "context":
        doc = context_to_document(ctx, args.name)
    else:
        doc = algebra_to_document(algebra, args.name)
    _write(args.out, serialize_document(doc, args.format))
    print(f"catalog {args.name}: dim {algebra.dim} -> {args.out}")
    return 0


def cmd_roundtrip(args) -> int:
    doc = _expect(_load(args.context), ContextDocument, "a context")
    ctx = document_to_context(doc)
    violations = validate_context(ctx)
    if violations:
        for v in violations:
            print("violation: " + describe(v), file=sys.stderr)
        return 1
    print("roundtrip: context valid")
    g = double_extend(ctx)
    print(f"roundtrip: extension dim {g.dim}")
    na = ctx.a.dim
    ideal = [unit_vec(g.dim, g.dim - na + k) for k in range(na)]
    res = decompose(g, ideal)
    print("roundtrip: decomposition claims and isometry verified")
    again = double_extend(res.context)
    if again.bracket.table != g.bracket.table or again.metric.matrix != g.metric.matrix:
        print("roundtrip: re-extension differs from the original", file=sys.stderr)
        return 1
    print("roundtrip: re-extension equals the original exactly")
    if not contexts_equal(ctx, res.context):
        print("roundtrip: reconstructed context differs from the input", file=sys.stderr)
        return 1
    print("roundtrip: context recovered exactly")
    print("PASS")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superquad",
        description="Construct, verify and decompose homogeneous quadratic Lie "
                    "superalgebras in exact rational arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run all structure checks on an algebra file")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("extend", help="validate a context and build its double extension")
    p.add_argument("--context", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("decompose", help="split a quadratic algebra along an ideal")
    p.add_argument("file")
    p.add_argument("--ideal", default="auto",
                   help="ideal file, or 'auto' for a central isotropic line")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("catalog", help="emit a worked example (odd-dim1, heisenberg)")
    p.add_argument("name")
    p.add_argument("--eta", default="1", help="omega scale for odd-dim1")
    p.add_argument("--pairs", type=int, default=1, help="hyperbolic pairs for heisenberg")
    p.add_argument("--emit", choices=("algebra", "context"), default="algebra")
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("roundtrip", help="extend, decompose, re-extend and compare exactly")
    p.add_argument("context")
    p.set_defaults(func=cmd_roundtrip)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        for v in exc.violations:
            print("violation: " + describe(v), file=sys.stderr)
        if not exc.violations:
            print(f"violation: {exc}", file=sys.stderr)
        return 1
    except SuperquadError as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
