"""Command-line front end.

Subcommands: analyze, decompose, loop-homology, allday, porter, check.
Output is deterministic text, or JSON with --json.  Exit codes: 0 clean,
1 flagged disagreement or failed series factorization, 2 parse error,
3 violated precondition.
"""

from __future__ import annotations

import argparse
import json
import sys

from .allday import (
    ModelError,
    build_fat_wedge_model,
    build_product_model,
    bubenik_series,
    check_d_squared,
    homology_series,
)
from .complexes import (
    ComplexError,
    ParseError,
    is_mf_complex,
    is_shifted,
    is_shifted_any,
    missing_faces,
    parse_complex,
)
from .decompose import consistency_report, decompose_cp, decompose_spheres, porter_fnk
from .presentations import (
    PresentationError,
    abelian_series,
    build_cp_presentation,
    build_sphere_presentation,
    graded_dimensions,
    kernel_generator_series,
)
from .rewriting import BudgetError
from .series import FactorizationError, SeriesError, TruncatedSeries

EXIT_OK = 0
EXIT_FLAGGED = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3


def _series_text(series):
    return " ".join(str(c) for c in series.coeffs)


def _read_complex(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_complex(text)


def _parse_dims(text, n=None):
    try:
        dims = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise ComplexError(f"bad --dims value {text!r}") from None
    if any(m < 1 for m in dims):
        raise ComplexError(f"sphere parameters must be >= 1, got {dims}")
    if n is not None and len(dims) != n:
        raise ComplexError(f"expected {n} sphere parameters, got {len(dims)}")
    return dims


def _emit(doc, text_lines, as_json):
    if as_json:
        print(json.dumps(doc, indent=2))
    else:
        for line in text_lines:
            print(line)


def _wedge_text(dec):
    counts = dec.counts()
    if not counts:
        body = "contractible"
    else:
        parts = []
        for dim in sorted(counts):
            c = counts[dim]
            parts.append((f"{c}" if c > 1 else "") + f"S^{dim}")
        body = " v ".join(parts)
    suffix = " (truncated)" if dec.truncated else ""
    return f"Z_K ~ {body}{suffix}"


def _decomposition_lines(dec, target):
    lines = [_wedge_text(dec)]
    for s in dec.summands:
        label = s.label.text(target) if s.label is not None else f"<{s.provenance}>"
        lines.append(f"S^{s.dimension}: {label}")
    for f in dec.flags:
        routes = " ".join(f"{name}={count}" for name, count in f.routes)
        lines.append(f"FLAG dim {f.dimension}: {routes}")
    return lines


def cmd_analyze(args):
    K = _read_complex(args.input)
    mfs = missing_faces(K)
    ok, witness = is_mf_complex(K)
    shifted_id = is_shifted(K, tuple(range(1, K.n + 1)))
    shifted_any = None
    ordering = None
    if K.n <= args.shift_search_bound:
        shifted_any, ordering = is_shifted_any(K, args.shift_search_bound)
    doc = {
        "vertices": K.n,
        "face_counts": {str(k): v for k, v in K.face_counts().items()},
        "missing_faces": [list(m.vertices) for m in mfs],
        "is_mf_complex": ok,
        "witness": list(witness) if witness is not None else None,
        "shifted_identity": shifted_id,
        "shifted_any": shifted_any,
        "shifted_ordering": list(ordering) if ordering is not None else None,
    }
    lines = [
        f"vertices: {K.n}",
        "face counts: "
        + " ".join(f"{k}:{v}" for k, v in K.face_counts().items()),
        "MF(K): " + " ".join("(" + ",".join(map(str, m.vertices)) + ")" for m in mfs),
        "MF-complex: " + ("yes" if ok else f"no (witness face ({','.join(map(str, witness))}))"),
        f"shifted(identity): {'yes' if shifted_id else 'no'}",
    ]
    if shifted_any is None:
        lines.append(f"shifted(any): skipped (n > {args.shift_search_bound})")
    elif shifted_any:
        lines.append("shifted(any): yes (ordering " + " ".join(map(str, ordering)) + ")")
    else:
        lines.append("shifted(any): no")
    _emit(doc, lines, args.json)
    return EXIT_OK


def cmd_decompose(args):
    K = _read_complex(args.input)
    if args.target == "cp":
        dec = decompose_cp(K, args.max_dim, budget_words=args.budget_words)
    else:
        if args.dims is None or args.max_dim is None:
            raise ComplexError("sphere target requires --dims and --max-dim")
        dims = _parse_dims(args.dims, K.n)
        dec = decompose_spheres(K, dims, args.max_dim, budget_words=args.budget_words)
    _emit(dec.to_json_dict(K), _decomposition_lines(dec, args.target), args.json)
    return EXIT_FLAGGED if dec.flags else EXIT_OK


def _relation_text(rel):
    terms = []
    for word, coeff in rel.sorted_terms():
        mono = "*".join(word)
        if coeff == 1:
            terms.append(f"+ {mono}")
        elif coeff == -1:
            terms.append(f"- {mono}")
        else:
            sign = "+" if coeff > 0 else "-"
            terms.append(f"{sign} {abs(coeff)}*{mono}")
    text = " ".join(terms)
    return text[2:] if text.startswith("+ ") else text


def cmd_loop_homology(args):
    K = _read_complex(args.input)
    if args.target == "cp":
        p = build_cp_presentation(K)
    else:
        if args.dims is None:
            raise ComplexError("sphere target requires --dims")
        p = build_sphere_presentation(K, _parse_dims(args.dims, K.n), args.convention)
    D = args.max_degree
    total = graded_dimensions(p, D, budget_words=args.budget_words)
    lines = ["generators:"]
    for g in p.generators:
        lines.append(f"  {g.name} degree {g.degree}")
    lines.append("relations:")
    for rel in p.relations:
        lines.append(f"  {_relation_text(rel)} = 0")
    lines.append(f"graded dimensions (degrees 0..{D}): {_series_text(total)}")
    doc = p.to_json_dict()
    doc["graded_dimensions"] = list(total.coeffs)
    code = EXIT_OK
    try:
        g_series = kernel_generator_series(total, abelian_series(p, D))
        lines.append(f"kernel generator series (degrees 0..{D}): {_series_text(g_series)}")
        doc["kernel_generator_series"] = list(g_series.coeffs)
    except FactorizationError as exc:
        lines.append(f"kernel factorization failed: {exc}")
        doc["kernel_generator_series"] = None
        doc["factorization_error"] = {"degree": exc.degree, "message": str(exc)}
        code = EXIT_FLAGGED
    _emit(doc, lines, args.json)
    return code


def cmd_allday(args):
    dims = _parse_dims(args.dims)
    build = build_product_model if args.model == "product" else build_fat_wedge_model
    model = build(dims)
    D = args.max_degree
    ok, witness = check_d_squared(model, D + 1)
    lines = [
        "generator degrees: "
        + " ".join(f"{d}:{c}" for d, c in model.generator_degree_counts().items()),
        "d^2=0: " + ("ok" if ok else f"FAIL (witness word {witness})"),
    ]
    doc = {
        "dims": list(dims),
        "model": args.model,
        "generator_degree_counts": {str(d): c for d, c in model.generator_degree_counts().items()},
        "d_squared_zero": ok,
    }
    code = EXIT_OK
    if not ok:
        doc["witness"] = [list(w) for w in witness]
        _emit(doc, lines, args.json)
        return EXIT_FLAGGED
    h = homology_series(model, D)
    lines.append(f"homology series (degrees 0..{D}): {_series_text(h)}")
    doc["homology_series"] = list(h.coeffs)
    if args.check_bubenik:
        b = bubenik_series(dims, args.convention, D)
        agree = h == b
        lines.append(f"Bubenik closed form (degrees 0..{D}): {_series_text(b)}")
        lines.append("homology == Bubenik closed form: " + ("ok" if agree else "MISMATCH"))
        doc["bubenik_series"] = list(b.coeffs)
        doc["bubenik_agrees"] = agree
        if not agree:
            code = EXIT_FLAGGED
    _emit(doc, lines, args.json)
    return code


def cmd_porter(args):
    dims = _parse_dims(args.dims, args.n) if args.dims is not None else None
    dec = porter_fnk(args.n, args.k, target=args.target, dims=dims, max_dim=args.max_dim)
    _emit(dec.to_json_dict(), _decomposition_lines(dec, args.target), args.json)
    return EXIT_OK


def cmd_check(args):
    K = _read_complex(args.input)
    dims = _parse_dims(args.dims, K.n) if args.dims is not None else None
    report = consistency_report(
        K, target=args.target, dims=dims, max_dim=args.max_dim,
        budget_words=args.budget_words,
    )
    lines = []
    for (dim, routes), (_, verdict) in zip(report.table, report.verdicts):
        cells = " ".join(f"{name}={count}" for name, count in routes)
        lines.append(f"dim {dim}: {cells} -> {verdict}")
    mismatched = any(v == "mismatch" for _, v in report.verdicts)
    lines.append("verdict: " + ("mismatch" if mismatched else "all routes agree"))
    _emit(report.to_json_dict(), lines, args.json)
    return EXIT_FLAGGED if mismatched else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="momentangle",
        description="Exact loop-homology and wedge-decomposition calculator "
        "for missing-face simplicial complexes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, input_file=True):
        if input_file:
            p.add_argument("input", help="complex description file")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--budget-words", type=int, default=2_000_000,
                       help="word-count budget per computation")

    p = sub.add_parser("analyze", help="classify a complex")
    common(p)
    p.add_argument("--shift-search-bound", type=int, default=8,
                   help="max n for the exhaustive shiftedness search")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("decompose", help="sphere-wedge decomposition")
    common(p)
    p.add_argument("--target", choices=("cp", "spheres"), default="cp")
    p.add_argument("--dims", help="comma-separated sphere parameters m_i")
    p.add_argument("--max-dim", type=int, default=None)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("loop-homology", help="presentation and graded dimensions")
    common(p)
    p.add_argument("--target", choices=("cp", "spheres"), default="cp")
    p.add_argument("--dims", help="comma-separated sphere parameters m_i")
    p.add_argument("--max-degree", type=int, default=10)
    p.add_argument("--convention", choices=("exterior-on-odd", "polynomial-all"),
                   default="exterior-on-odd")
    p.set_defaults(func=cmd_loop_homology)

    p = sub.add_parser("allday", help="differential graded model of a fat wedge")
    common(p, input_file=False)
    p.add_argument("--dims", required=True, help="comma-separated sphere parameters m_i")
    p.add_argument("--model", choices=("fat-wedge", "product"), default="fat-wedge")
    p.add_argument("--max-degree", type=int, default=10)
    p.add_argument("--check-bubenik", action="store_true",
                   help="compare homology with the closed-form series")
    p.add_argument("--convention", choices=("exterior-on-odd", "polynomial-all"),
                   default="exterior-on-odd")
    p.set_defaults(func=cmd_allday)

    p = sub.add_parser("porter", help="skeleton-family closed-form decomposition")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--target", choices=("cp", "spheres"), default="cp")
    p.add_argument("--dims", help="comma-separated sphere parameters m_i")
    p.add_argument("--max-dim", type=int, default=None)
    p.set_defaults(func=cmd_porter)

    p = sub.add_parser("check", help="cross-route consistency report")
    common(p)
    p.add_argument("--target", choices=("cp", "spheres"), default="cp")
    p.add_argument("--dims", help="comma-separated sphere parameters m_i")
    p.add_argument("--max-dim", type=int, default=8)
    p.set_defaults(func=cmd_check)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FactorizationError as exc:
        print(f"error: factorization failed: {exc}", file=sys.stderr)
        return EXIT_FLAGGED
    except BudgetError as exc:
        print(f"error: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ComplexError, PresentationError, ModelError, SeriesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
