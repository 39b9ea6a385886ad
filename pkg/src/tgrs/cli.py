"""Command-line front end: ``tgrs <command> --config FILE [options]``.

Exit codes: 0 success, 1 validation error, 2 guard exceeded, 3 internal
invariant violation, 130 interrupted (partial census checkpointed).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .census import TIERS, run_census
from .classify import (ClassificationReport, PreconditionError, mds_fast, mds_oracle,
                       nmds_check, parity_check, selfdual_direct, selfdual_sufficient)
from .code import (CodeError, GuardExceeded, InvariantViolation, brute_min_distance, generator,
                   load_config, row_space_basis)
from .ff import FieldError, default_modulus, make_field, primitive_root
from .grs import (grs_classify, minors, schur_square_dim, systematic_form,
                  triangular_twist_order)
from .matrix import MatrixError, format_matrix, nullspace, rank
from .poly import PolyError, format_poly
from .polysearch import census_classify, default_selection, minor_numerator, symbolic_system

EXIT_OK, EXIT_INVALID, EXIT_GUARD, EXIT_INVARIANT, EXIT_INTERRUPTED = 0, 1, 2, 3, 130


class UsageError(ValueError):
    pass


# --- commands (each returns an ordered dict ready for rendering) ---

def cmd_check(cfg) -> ClassificationReport:
    code = cfg.code()
    notes = []
    ok, witness = mds_fast(code)
    try:
        if mds_oracle(code) != ok:
            raise InvariantViolation("fast MDS test disagrees with the minor oracle")
    except GuardExceeded as e:
        notes.append(f"oracle skipped: {e}")
    rep = ClassificationReport(is_mds=ok, witness_subset=witness, notes=notes)
    try:
        rep.is_nmds = nmds_check(code)["nmds"]
    except GuardExceeded as e:
        notes.append(f"nmds skipped: {e}")
    rep.is_selfdual = selfdual_direct(code)
    if code.n == 2 * code.k:
        rep.selfdual_sufficient = selfdual_sufficient(code)[0]
    rep.grs_status = grs_classify(code)
    rep.schur_dim = schur_square_dim(generator(code))
    try:
        rep.d, rep.defect = brute_min_distance(code)
        if (rep.defect == 0) != ok:
            raise InvariantViolation("minimum distance disagrees with the MDS verdict")
    except GuardExceeded as e:
        notes.append(f"distance skipped: {e}")
    return rep


def cmd_census(cfg, args, progress=None):
    if not cfg.wildcards:
        raise UsageError("census needs at least one '*' cell in B")
    return run_census(cfg.params, cfg.twist, threads=args.threads, tier=args.tier,
                      limit=args.limit, early_exit=not args.no_early_exit,
                      checkpoint=args.checkpoint, resume=args.resume, progress=progress)


def cmd_parity(cfg) -> dict:
    code = cfg.code()
    G = generator(code)
    H = parity_check(code)
    return {
        "H": format_matrix(H),
        "rank_ok": rank(H) == code.n - code.k,
        "orthogonal": (G @ H.T).is_zero(),
        "matches_nullspace": row_space_basis(H) == row_space_basis(nullspace(G)),
    }


def cmd_dual(cfg) -> dict:
    code = cfg.code()
    H = parity_check(code)
    out = {"dual_generator": format_matrix(row_space_basis(H)),
           "selfdual": selfdual_direct(code)}
    if code.n == 2 * code.k:
        holds, lam = selfdual_sufficient(code)
        out["selfdual_sufficient"] = holds
        out["lambda"] = code.field.format(lam.index) if lam is not None else None
    return out


def cmd_schur(cfg) -> dict:
    code = cfg.code()
    n, k = code.n, code.k
    return {
        "schur_dim": schur_square_dim(generator(code)),
        "grs_dim": min(n, 2 * k - 1),
        "triangular_order": triangular_twist_order(code.B, n, k),
    }


def cmd_grs(cfg) -> dict:
    code = cfg.code()
    status = grs_classify(code)
    out = {"status": status}
    try:
        sf = systematic_form(generator(code))
    except MatrixError:
        return out
    out["M"] = format_matrix(sf.M)
    if sf.Mprime is not None:
        out["M_inverse_entries"] = format_matrix(sf.Mprime)
        if min(code.k, code.n - code.k) >= 3:
            witness = next(((rs, cs) for rs, cs, v in minors(sf.Mprime, 3) if v), None)
            if witness is not None:
                out["nonzero_3x3_minor"] = {"rows": list(witness[0]), "cols": list(witness[1])}
    return out


def var_names(n):
    return ["x", "y", "z", "w"][:n] if n <= 2 else [f"x{i}" for i in range(n)]


def cmd_polyp(cfg, reference=None, rows=None, cols=None):
    params, twist = cfg.params, cfg.twist
    if not twist.free_cells:
        raise UsageError("polyp needs at least one '*' cell in B (no variables)")
    F = params.field
    system = symbolic_system(params, twist)
    names = var_names(system.nvars)
    census = census_classify(params, twist, build_p=False)
    if reference is None:
        if not census.nongrs_points:
            raise UsageError("no non-GRS MDS assignment exists, so P is undefined")
        reference = census.nongrs_points[0]
    if len(reference) != system.nvars:
        raise UsageError(f"reference needs {system.nvars} values, got {len(reference)}")
    if rows is None or cols is None:
        try:
            rows, cols = default_selection(system, reference)
        except ValueError as e:
            raise UsageError(f"reference {_fmt_point(F, reference)}: {e}") from None
    P = minor_numerator(system, rows, cols).monic()
    census = census_classify(params, twist, P=P)
    return {
        "variables": {nm: list(cell) for nm, cell in zip(names, twist.free_cells)},
        "reference": _fmt_point(F, reference),
        "reference_status": census.status[tuple(reference)],
        "p": format_poly(system.p, names),
        "pij": [[format_poly(x, names) for x in row] for row in system.pij],
        "rows": list(rows),
        "cols": list(cols),
        "P": format_poly(P, names),
        "P_terms": len(P.terms),
        "P_zeros": census.pzeros,
        "mds": census.mds,
        "grs": census.grs,
        "nongrs": census.nongrs,
        "grs_points": [_fmt_point(F, pt) for pt in census.grs_points],
    }, census, P


def _fmt_point(F, pt):
    return ",".join(F.format(v) for v in pt)


def cmd_field_info(p, m=1, modulus=None) -> dict:
    F = make_field(p, m, modulus)
    g = primitive_root(F)
    out = {"p": F.p, "m": F.m, "q": F.q, "primitive": F.format(g.index)}
    if m > 1:
        out["modulus"] = list(F.modulus)
        out["default_modulus"] = list(default_modulus(p, m)) == list(F.modulus)
    return out


# --- rendering ---

def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        for key, val in report.items():
            w.writerow([key, val if isinstance(val, (str, int, float, bool)) or val is None
                        else json.dumps(val)])
        return buf.getvalue()
    lines = []
    for key, val in report.items():
        if isinstance(val, list) and val and isinstance(val[0], list):
            lines.append(f"{key}:")
            lines += ["  " + "  |  ".join(map(str, row)) for row in val]
        elif isinstance(val, str) and ";" in val and key not in ("reference",):
            lines.append(f"{key}:")
            lines += ["  " + row.strip() for row in val.split(";")]
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def render_census(rep, fmt: str, timing: bool) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["member"] + [f"b{i}{j}" for i, j in rep.free_cells])
        for idx, B in enumerate(rep.sample_members):
            w.writerow([idx] + [B.data[i][j] for i, j in rep.free_cells])
        return buf.getvalue()
    d = rep.to_dict(with_elapsed=timing)
    if fmt == "json":
        return json.dumps(d, indent=2) + "\n"
    lines = [f"total: {rep.total}", f"omega_count: {rep.omega_count}"]
    if not rep.complete:
        lines.append(f"partial: {rep.done} of {rep.total} candidates done")
    lines.append("free_cells: " + " ".join(f"({i},{j})" for i, j in rep.free_cells))
    lines.append("first_failure:")
    lines += [f"  {k}: {v}" for k, v in d["first_failure"].items()]
    for idx, B in enumerate(rep.sample_members):
        lines.append(f"member {idx}: {format_matrix(B)}")
    if timing:
        lines.append(f"elapsed: {rep.elapsed:.3f}s")
    return "\n".join(lines) + "\n"


def _emit(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_ints(text):
    return tuple(int(t) for t in text.split(",") if t.strip())


# --- argument parsing ---

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="code description file")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", help="write the report here instead of stdout")

    ap = argparse.ArgumentParser(prog="tgrs", description="Twisted GRS code toolkit")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, helptext in [("check", "classify a single code"),
                           ("parity", "parity-check matrix with verification flags"),
                           ("dual", "dual code generator and self-duality"),
                           ("schur", "Schur square dimension"),
                           ("grs", "GRS / non-GRS classification")]:
        sub.add_parser(name, parents=[common], help=helptext)

    c = sub.add_parser("census", parents=[common], help="count MDS assignments of '*' cells")
    c.add_argument("--threads", type=int, default=1)
    c.add_argument("--tier", choices=tuple(TIERS), default="standard")
    c.add_argument("--limit", type=int, default=0, help="member matrices to list")
    c.add_argument("--no-early-exit", action="store_true",
                   help="evaluate every subset even after a failure")
    c.add_argument("--checkpoint", help="partial-progress file written on interrupt")
    c.add_argument("--resume", action="store_true", help="continue from --checkpoint")
    c.add_argument("--timing", action="store_true", help="include elapsed time in the report")
    c.add_argument("--plot", help="save a first-failure histogram (PNG/PDF/SVG)")

    pp = sub.add_parser("polyp", parents=[common], help="symbolic p, pij and P over '*' cells")
    pp.add_argument("--reference", help="comma-separated assignment fixing the 3x3 minor")
    pp.add_argument("--rows", help="override the minor's rows, e.g. 0,1,2")
    pp.add_argument("--cols", help="override the minor's columns, e.g. 0,1,2")
    pp.add_argument("--plot", help="save the classification map (two variables only)")

    fi = sub.add_parser("field-info", help="field parameters and a primitive element")
    fi.add_argument("--p", type=int, required=True)
    fi.add_argument("--m", type=int, default=1)
    fi.add_argument("--modulus", help="coefficients c0,..,c(m-1),1")
    fi.add_argument("--format", choices=("text", "json", "csv"), default="text")
    fi.add_argument("--out")
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except GuardExceeded as e:
        print(f"error: guard exceeded: {e}", file=sys.stderr)
        return EXIT_GUARD
    except InvariantViolation as e:
        print(f"error: invariant violated: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (CodeError, FieldError, MatrixError, PolyError, PreconditionError, UsageError,
            ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


def _dispatch(args) -> int:
    if args.command == "field-info":
        modulus = _parse_ints(args.modulus) if args.modulus else None
        _emit(render(cmd_field_info(args.p, args.m, modulus), args.format), args.out)
        return EXIT_OK
    cfg = load_config(args.config)
    if args.command == "census":
        rep = cmd_census(cfg, args)
        _emit(render_census(rep, args.format, args.timing), args.out)
        if args.plot:
            from .plotting import first_failure_figure
            first_failure_figure(rep, args.plot)
        if not rep.complete:
            print(f"interrupted after {rep.done} of {rep.total} candidates"
                  + (f"; checkpoint in {args.checkpoint}" if args.checkpoint else ""),
                  file=sys.stderr)
            return EXIT_INTERRUPTED
        return EXIT_OK
    if args.command == "polyp":
        F = cfg.field
        ref = tuple(F.parse(t) for t in args.reference.split(",")) if args.reference else None
        if ref is None and "reference" in cfg.extra:
            ref = tuple(F.parse(t) for t in cfg.extra["reference"].split(","))
        rows = _parse_ints(args.rows) if args.rows else None
        cols = _parse_ints(args.cols) if args.cols else None
        report, census, P = cmd_polyp(cfg, ref, rows, cols)
        _emit(render(report, args.format), args.out)
        if args.plot:
            if P.nvars != 2:
                raise UsageError("--plot needs exactly two variables")
            import numpy as np
            from .plotting import grid_figure
            q = F.q
            zeros = np.zeros((q, q), dtype=bool)
            for x in range(q):
                for y in range(q):
                    zeros[y, x] = P.eval_index((x, y)) == 0
            grid_figure(census, q, args.plot, zeros, var_names(2))
        return EXIT_OK
    if args.command == "check":
        report = cmd_check(cfg).to_dict()
    else:
        report = {"parity": cmd_parity, "dual": cmd_dual, "schur": cmd_schur,
                  "grs": cmd_grs}[args.command](cfg)
    _emit(render(report, args.format), args.out)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
