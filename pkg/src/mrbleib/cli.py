"""Command line surface: check, cohomology, derived, search, deform, extend.

Input documents arrive as a positional file path or on standard input;
reports are JSON on standard output with stable key order, diagnostics go
to standard error.  Exit codes: 0 all requested checks pass, 1 a checked
property failed, 2 input or usage error.  Reports contain no timestamps or
environment data, so identical inputs produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from .algebra import (
    DefectReport,
    derived_algebra,
    grid_search_operators,
    leibniz_defect,
    mrb_defect,
)
from .cohomology import (
    Cochain,
    ConeCochain,
    apply_delta,
    classify_cochain,
    cohomology_dimensions,
    cone_differential,
    cone_space_dim,
    cone_to_vec,
    vec_to_cone,
)
from .deformation import (
    deformation_residuals,
    gauge_step,
    infinitesimal,
)
from .documents import (
    AlgebraDocument,
    cocycle_json,
    deformation_json,
    document_json,
    extension_json,
    parse_cocycle,
    parse_deformation,
    parse_document,
    parse_extension,
)
from .errors import (
    BudgetExceeded,
    MrbError,
    NotACocycle,
    ParseError,
    UnknownCommand,
)
from .extensions import (
    extension_from_cocycle,
    extract_cocycle,
    iso_from_gamma,
    section_from_proj,
    validate_extension,
)
from .linalg import Matrix, format_rational, parse_rational, solve_with_free_zero
from .representations import (
    induced_rep,
    mrb_rep_defect,
    regular_rep,
    rep_defect,
)

USAGE_ERRORS = (ParseError, BudgetExceeded, UnknownCommand)


def _digest_text(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def _residuals_json(report: DefectReport):
    return [
        {
            "kind": d.section,
            "at": list(d.where),
            "value": [format_rational(v) for v in d.residual],
        }
        for d in report.entries
    ]


def _section(name: str, report: DefectReport):
    return {
        "name": name,
        "status": "pass" if report.is_empty else "fail",
        "residuals": _residuals_json(report),
    }


def _table_json(table):
    return {
        "cochainDims": list(table.cochain_dims),
        "differentialRanks": list(table.differential_ranks),
        "cohomologyDims": list(table.cohomology_dims),
    }


def _matrix_json(m: Matrix):
    return [[format_rational(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def cmd_check(doc: AlgebraDocument):
    sections = [_section("leibniz", leibniz_defect(doc.algebra))]
    rep = doc.effective_representation()
    if doc.operator is not None:
        sections.append(_section("mrb", mrb_defect(doc.algebra, doc.operator)))
    if rep is not None:
        sections.append(_section("representation", rep_defect(doc.algebra, rep)))
    if doc.operator is not None and rep is not None:
        sections.append(
            _section("mrb-representation", mrb_rep_defect(doc.algebra, doc.operator, rep))
        )
    return sections, None


def cmd_cohomology(doc: AlgebraDocument, max_degree: int, budget: int):
    rep = doc.effective_representation()
    if rep is None:
        rep = regular_rep(doc.algebra)
    report = cohomology_dimensions(
        doc.algebra, rep, doc.operator, max_degree=max_degree, budget=budget
    )
    result = {
        "maxDegree": report.max_degree,
        "convention": report.convention,
        "leibniz": _table_json(report.leibniz),
    }
    if report.operator is not None:
        result["operator"] = _table_json(report.operator)
        result["cone"] = _table_json(report.cone)
    return [], result


def cmd_derived(doc: AlgebraDocument):
    if doc.operator is None:
        raise ParseError("derived requires a document with an operator")
    rep = doc.effective_representation()
    derived = derived_algebra(doc.algebra, doc.operator)
    induced = induced_rep(doc.algebra, doc.operator, rep)
    out = AlgebraDocument(derived, doc.operator, induced)
    return [], document_json(out)


def cmd_search(doc: AlgebraDocument, weight: str, grid: str, mask_text: str | None, budget: int):
    w = parse_rational(weight)
    grid_vals = [parse_rational(g) for g in grid.split(",") if g.strip()]
    if not grid_vals:
        raise ParseError("empty grid")
    mask = None
    if mask_text is not None:
        data = json.loads(mask_text)
        mask = {}
        for item in data.get("entries", []):
            i, j, c = item
            mask[(i, j)] = parse_rational(c)
    solutions = grid_search_operators(doc.algebra, w, grid_vals, mask, budget)
    result = {
        "weight": format_rational(w),
        "grid": [format_rational(g) for g in grid_vals],
        "count": len(solutions),
        "solutions": [_matrix_json(m) for m in solutions],
    }
    return [], result


def _mu_entries_json(cochain: Cochain, d: int):
    out = []
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            col = cochain.values.column((i - 1) * d + (j - 1))
            for k, v in enumerate(col):
                if v:
                    out.append([i, j, k + 1, format_rational(v)])
    return out


def cmd_deform(doc: AlgebraDocument, sub: str, deformation_text: str):
    dfm = parse_deformation(deformation_text, doc)
    if sub == "verify":
        reports = deformation_residuals(dfm)
        sections = [_section(f"order-{n}", r) for n, r in enumerate(reports)]
        return sections, None
    if sub == "infinitesimal":
        cone = infinitesimal(dfm)
        rep = regular_rep(dfm.algebra, dfm.ctx)
        cls = classify_cochain(dfm.algebra, dfm.ctx, rep, cone)
        result = {
            "mu1": _mu_entries_json(cone.leib, dfm.algebra.dim),
            "k1": _matrix_json(cone.op.values),
            "cocycle": cls.cocycle,
            "coboundary": cls.coboundary,
        }
        return [], result
    if sub == "gauge":
        cone = infinitesimal(dfm)
        rep = regular_rep(dfm.algebra, dfm.ctx)
        cls = classify_cochain(dfm.algebra, dfm.ctx, rep, cone)
        if not cls.coboundary:
            sections = [
                {
                    "name": "gauge",
                    "status": "fail",
                    "residuals": [],
                    "reason": "infinitesimal is not a coboundary",
                }
            ]
            return sections, None
        gauged = gauge_step(dfm, cls.witness)
        return [], deformation_json(gauged)
    raise UnknownCommand(f"deform {sub}")


def cmd_extend_build(doc: AlgebraDocument, cocycle_text: str):
    rep = doc.effective_representation()
    if doc.operator is None or rep is None:
        raise ParseError("extend build needs a document with operator (and representation)")
    pair = parse_cocycle(cocycle_text, doc)
    try:
        ext = extension_from_cocycle(doc.algebra, doc.operator, rep, pair)
    except NotACocycle as exc:
        return [_section("cocycle", exc.report)], None
    sections = [
        {"name": "cocycle", "status": "pass", "residuals": []},
    ]
    return sections, extension_json(ext)


def cmd_extend_extract(ext_text: str):
    ext = parse_extension(ext_text)
    report = validate_extension(ext)
    sections = [_section("validation", report)]
    if not report.is_empty:
        return sections, None
    section = section_from_proj(ext)
    rep, pair = extract_cocycle(ext, section)
    base_doc = AlgebraDocument(ext.base, ext.base_op, None)
    result = {
        "representation": {
            "dimV": rep.dim_v,
            "rhoL": [_matrix_json(m) for m in rep.rho_left],
            "rhoR": [_matrix_json(m) for m in rep.rho_right],
            "kV": _matrix_json(rep.k_v),
        },
        "cocycle": cocycle_json(pair, base_doc),
        "section": _matrix_json(section),
    }
    return sections, result


def cmd_extend_compare(text1: str, text2: str):
    e1 = parse_extension(text1)
    e2 = parse_extension(text2)
    if (e1.base, e1.base_op, e1.fiber_op) != (e2.base, e2.base_op, e2.fiber_op):
        raise ParseError("extensions live over different base or fiber data")
    rep1, c1 = extract_cocycle(e1, section_from_proj(e1))
    rep2, c2 = extract_cocycle(e2, section_from_proj(e2))
    d, m = e1.base.dim, e1.fiber_dim
    target = ConeCochain(c1.psi - c2.psi, c1.chi - c2.chi)
    d1 = cone_differential(e1.base, e1.base_op, rep1, 1)
    rhs = Matrix.from_cols([cone_to_vec(target)], cone_space_dim(m, d, 2))
    sol = solve_with_free_zero(d1, rhs)
    if sol is None:
        sections = [{"name": "cohomologous", "status": "fail", "residuals": []}]
        return sections, {"cohomologous": False}
    # fold the degree-0 part of the witness into gamma so that the cocycle
    # difference is (delta gamma, -phi gamma) on the nose
    witness = vec_to_cone(sol.column(0), m, d, 1)
    gamma_vals = witness.leib.values + apply_delta(e1.base, rep1, witness.op).values
    gamma = Cochain(1, gamma_vals)
    result = {"cohomologous": True, "gamma": _matrix_json(gamma.values)}
    try:
        zeta = iso_from_gamma(e1, e2, gamma)
        result["zeta"] = _matrix_json(zeta)
    except MrbError:
        # not direct-sum models; the class comparison still stands
        pass
    sections = [{"name": "cohomologous", "status": "pass", "residuals": []}]
    return sections, result


def _read(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mrbleib",
        description="Exact checks, cohomology, deformations and extensions "
        "of modified Rota-Baxter Leibniz algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="run all applicable axiom checks")
    p.add_argument("document", nargs="?", default="-")

    p = sub.add_parser("cohomology", help="cohomology dimension tables")
    p.add_argument("document", nargs="?", default="-")
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--budget", type=int, default=10 ** 7)

    p = sub.add_parser("derived", help="derived algebra and induced representation")
    p.add_argument("document", nargs="?", default="-")

    p = sub.add_parser("search", help="grid search for modified Rota-Baxter operators")
    p.add_argument("document", nargs="?", default="-")
    p.add_argument("--weight", required=True)
    p.add_argument("--grid", required=True)
    p.add_argument("--mask", default=None)
    p.add_argument("--budget", type=int, default=10 ** 7)

    p = sub.add_parser("deform", help="truncated formal deformations")
    p.add_argument("subcommand", choices=["verify", "infinitesimal", "gauge"])
    p.add_argument("document", nargs="?", default="-")
    p.add_argument("--deformation", required=True)

    p = sub.add_parser("extend", help="abelian extensions")
    ext_sub = p.add_subparsers(dest="subcommand", required=True)
    b = ext_sub.add_parser("build", help="build an extension from a cocycle")
    b.add_argument("document", nargs="?", default="-")
    b.add_argument("--cocycle", required=True)
    e = ext_sub.add_parser("extract", help="extract module and cocycle")
    e.add_argument("extension")
    c = ext_sub.add_parser("compare", help="decide whether two extensions are cohomologous")
    c.add_argument("extension")
    c.add_argument("extension2")
    return parser


def execute(args) -> tuple[dict, int]:
    """Run one command; returns (report, exit_code)."""
    command = args.command
    if command == "extend":
        command = f"extend {args.subcommand}"
    elif command == "deform":
        command = f"deform {args.subcommand}"

    if args.command == "extend" and args.subcommand == "extract":
        text = _read(args.extension)
        sections, result = cmd_extend_extract(text)
        digest = _digest_text(text)
    elif args.command == "extend" and args.subcommand == "compare":
        text1 = _read(args.extension)
        text2 = _read(args.extension2)
        sections, result = cmd_extend_compare(text1, text2)
        digest = _digest_text(text1 + text2)
    else:
        text = _read(args.document)
        digest = _digest_text(text)
        doc = parse_document(text)
        if args.command == "check":
            sections, result = cmd_check(doc)
        elif args.command == "cohomology":
            sections, result = cmd_cohomology(doc, args.max_degree, args.budget)
        elif args.command == "derived":
            sections, result = cmd_derived(doc)
        elif args.command == "search":
            mask_text = _read(args.mask) if args.mask else None
            sections, result = cmd_search(doc, args.weight, args.grid, mask_text, args.budget)
        elif args.command == "deform":
            sections, result = cmd_deform(doc, args.subcommand, _read(args.deformation))
        elif args.command == "extend" and args.subcommand == "build":
            sections, result = cmd_extend_build(doc, _read(args.cocycle))
        else:
            raise UnknownCommand(args.command)

    passed = all(s["status"] == "pass" for s in sections)
    report = {
        "command": command,
        "inputDigest": digest,
        "sections": sections,
        "status": "pass" if passed else "fail",
    }
    if result is not None:
        report["result"] = result
    return report, 0 if passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = execute(args)
    except USAGE_ERRORS as exc:
        print(f"mrbleib: {exc}", file=sys.stderr)
        return 2
    except MrbError as exc:
        report = {
            "command": args.command,
            "sections": [
                {
                    "name": "error",
                    "status": "fail",
                    "residuals": [],
                    "error": type(exc).__name__,
                    "reason": str(exc),
                }
            ],
            "status": "fail",
        }
        print(json.dumps(report, indent=2))
        return 1
    print(json.dumps(report, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
