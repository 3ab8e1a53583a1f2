"""Command line front end: validated config, dispatch, JSON/CSV emitters.

Exit codes: 0 success, 1 property failure, 2 usage or input error,
3 resource bound exceeded.  For a fixed command line and seed the JSON
output is byte identical between runs.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import statistics
import sys

from .basis import (
    DEFAULT_MAX_N,
    ResourceLimitError,
    enumerate_basis,
    enumerate_bras,
    rank_identity,
    standard_labels,
    walk_count,
)
from .cache import CacheError, cached_basis, default_cache_dir
from .checks import all_passed, run_checks
from .diagram import BLUE, RED
from .spinchain import NumericParams, diagram_matrix, homomorphism_report
from .stdmod import gram_blocks, gram_det_report, gram_matrix, scan_gram_roots
from .yangbaxter import SweepReport, transfer_sweep, ybe_sweep

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

YBE_TOLERANCE = {"tl": 1e-12, "bubble": 1e-10}
TRANSFER_TOLERANCE = 1e-9
DEFAULT_SEED = 20260822


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _emit_csv(header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


def _complex_pair(z: complex) -> list[float]:
    return [z.real, z.imag]


# ---------------------------------------------------------------------------
# subcommands


def cmd_basis(args: argparse.Namespace) -> int:
    cache_dir = args.cache_dir if args.cache_dir is not None else default_cache_dir()
    diagrams = cached_basis(args.n, cache_dir=cache_dir, max_n=args.max_n)
    strata = []
    for i, j in standard_labels(args.n):
        dim = walk_count(args.n, i, j)
        strata.append({"i": i, "j": j, "dim": dim, "count": dim * dim})
    payload = {"n": args.n, "total": len(diagrams), "strata": strata}
    if args.diagrams:
        payload["diagrams"] = [d.encode() for d in diagrams]
    _emit_json(payload)
    return EXIT_OK


def cmd_dims(args: argparse.Namespace) -> int:
    report = rank_identity(args.n, max_n=args.max_n)
    rows = []
    for i, j in standard_labels(args.n):
        dim = walk_count(args.n, i, j)
        rows.append({"i": i, "j": j, "dim": dim, "count": dim * dim})
    if args.format == "csv":
        _emit_csv(
            ["i", "j", "dim", "count"],
            [[r["i"], r["j"], r["dim"], r["count"]] for r in rows],
        )
    else:
        _emit_json(
            {
                "n": args.n,
                "labels": rows,
                "basis_size": report.basis_size,
                "dim_square_sum": report.dim_square_sum,
                "walk_total": report.walk_total,
                "rank_identity": report.holds,
            }
        )
    return EXIT_OK if report.holds else EXIT_PROPERTY


def cmd_gram(args: argparse.Namespace) -> int:
    n, i, j = args.n, args.i, args.j
    bras = enumerate_bras(n, i, j, max_n=args.max_n)
    if not bras:
        raise ValueError(f"label ({i},{j}) carries no module at n={n}")
    matrix = gram_matrix(n, i, j, bras=bras, max_n=args.max_n)
    payload: dict = {
        "n": n,
        "i": i,
        "j": j,
        "size": len(bras),
        "basis": [b.encode() for b in bras],
        "entries": [[str(matrix[r, c]) for c in range(matrix.cols)] for r in range(matrix.rows)],
    }
    status = EXIT_OK
    if args.det:
        report = gram_det_report(n, i, j, max_n=args.max_n)
        payload["det"] = str(report.det)
        payload["det_cross_checked"] = report.cross_checked
    if args.blocks:
        _, blocks = gram_blocks(n, i, j, max_n=args.max_n)
        payload["blocks"] = [
            {
                "word": blk.word,
                "indices": list(blk.indices),
                "size": len(blk.indices),
                "det": str(blk.det),
            }
            for blk in blocks
        ]
    if args.roots is not None:
        var = RED if args.roots == "r" else BLUE
        scan = scan_gram_roots(n, i, j, var=var, max_n=args.max_n)
        payload["roots"] = {
            "var": args.roots,
            "det_is_zero": scan.det_is_zero,
            "all_matched": scan.all_matched,
            "samples": [
                {
                    "other_value": str(sample.other_value),
                    "degenerate": sample.degenerate,
                    "zero_root_multiplicity": sample.zero_root_multiplicity,
                    "roots": [
                        {
                            "value": _complex_pair(record.value),
                            "matched": list(record.matched) if record.matched else None,
                        }
                        for record in sample.roots
                    ],
                }
                for sample in scan.samples
            ],
        }
        if not scan.all_matched:
            status = EXIT_PROPERTY
    _emit_json(payload)
    return status


def _format_complex_matrix(mat) -> str:
    return ";".join(f"{z.real!r},{z.imag!r}" for z in mat.reshape(-1))


def cmd_rep(args: argparse.Namespace) -> int:
    try:
        q_r, q_b = complex(args.qr), complex(args.qb)
    except ValueError as exc:
        raise ValueError(f"could not parse a colour parameter: {exc}") from exc
    params = NumericParams(q_r=q_r, q_b=q_b)
    basis = enumerate_basis(args.n, max_n=args.max_n)
    payload: dict = {
        "n": args.n,
        "qr": _complex_pair(q_r),
        "qb": _complex_pair(q_b),
        "delta_r": _complex_pair(params.delta_r),
        "delta_b": _complex_pair(params.delta_b),
        "site_dim": 4,
        "matrix_dim": 4**args.n,
        "basis_size": len(basis),
    }
    status = EXIT_OK
    if args.check:
        report = homomorphism_report(args.n, params, basis=basis)
        passed = report.max_residual < args.tol
        payload["check"] = {
            "pairs_checked": report.pairs_checked,
            "max_residual": report.max_residual,
            "tolerance": args.tol,
            "passed": passed,
        }
        if not passed:
            status = EXIT_PROPERTY
    if args.matrices:
        payload["matrices"] = {
            d.encode(): _format_complex_matrix(diagram_matrix(d, params)) for d in basis
        }
    _emit_json(payload)
    return status


def _sweep_payload(report: SweepReport, tolerance: float) -> dict:
    residuals = report.residuals
    return {
        "quantity": report.quantity,
        "count": report.count,
        "max_residual": report.max_residual,
        "median_residual": statistics.median(residuals) if residuals else None,
        "tolerance": tolerance,
        "passed": report.max_residual < tolerance,
        "points": [
            {"lambda": p.lam, "u": p.u, "v": p.v, "residual": res}
            for p, res in report.points
        ],
    }


def cmd_ybe(args: argparse.Namespace) -> int:
    if args.sweep < 1:
        raise ValueError("--sweep must be a positive count")
    ybe = ybe_sweep(args.family, count=args.sweep, seed=args.seed, lam=args.lam)
    sections = {"ybe": _sweep_payload(ybe, YBE_TOLERANCE[args.family])}
    if args.transfer is not None:
        trans = transfer_sweep(
            args.transfer, args.family, count=args.sweep, seed=args.seed, lam=args.lam
        )
        sections["transfer"] = _sweep_payload(trans, TRANSFER_TOLERANCE)
        sections["transfer"]["n"] = args.transfer
    passed = all(section["passed"] for section in sections.values())
    if args.format == "csv":
        rows = []
        for name, section in sorted(sections.items()):
            for idx, point in enumerate(section["points"]):
                rows.append(
                    [name, idx, point["lambda"], point["u"], point["v"], point["residual"]]
                )
        _emit_csv(["quantity", "index", "lambda", "u", "v", "residual"], rows)
    else:
        payload = {
            "family": args.family,
            "seed": args.seed,
            "lambda": args.lam,
            "passed": passed,
        }
        payload.update(sections)
        _emit_json(payload)
    return EXIT_OK if passed else EXIT_PROPERTY


def cmd_check(args: argparse.Namespace) -> int:
    results = run_checks(size=args.n, seed=args.seed, quick=args.quick)
    payload = {
        "size": args.n,
        "seed": args.seed,
        "quick": args.quick,
        "results": [
            {"name": r.name, "passed": r.passed, "detail": r.detail} for r in results
        ],
        "all_passed": all_passed(results),
    }
    _emit_json(payload)
    return EXIT_OK if all_passed(results) else EXIT_PROPERTY


# ---------------------------------------------------------------------------
# parser and dispatch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bubble",
        description="Exact engine for the two-colour diagram algebra: "
        "bases, Gram forms, the spin-chain representation, and spectral checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def new(name: str, help_text: str) -> argparse.ArgumentParser:
        return sub.add_parser(
            name, help=help_text, formatter_class=argparse.ArgumentDefaultsHelpFormatter
        )

    p = new("basis", "enumerate the diagram basis and its strata")
    p.add_argument("--n", type=int, required=True, help="number of strands")
    p.add_argument("--diagrams", action="store_true", help="include canonical encodings")
    p.add_argument(
        "--cache-dir",
        default=None,
        help="basis cache directory (default: $BUBBLE_CACHE_DIR if set, else no cache)",
    )
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="resource bound on n")
    p.set_defaults(func=cmd_basis)

    p = new("dims", "module dimensions and the rank identity")
    p.add_argument("--n", type=int, required=True, help="number of strands")
    p.add_argument("--format", choices=("json", "csv"), default="json", help="output format")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="resource bound on n")
    p.set_defaults(func=cmd_dims)

    p = new("gram", "Gram matrix of one standard module")
    p.add_argument("--n", type=int, required=True, help="number of strands")
    p.add_argument("--i", type=int, required=True, help="red propagating count")
    p.add_argument("--j", type=int, required=True, help="blue propagating count")
    p.add_argument("--det", action="store_true", help="include the determinant")
    p.add_argument("--blocks", action="store_true", help="include the word-block report")
    p.add_argument(
        "--roots",
        choices=("r", "b"),
        default=None,
        help="scan determinant roots in this colour's loop weight",
    )
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="resource bound on n")
    p.set_defaults(func=cmd_gram)

    p = new("rep", "spin-chain representation at numeric parameters")
    p.add_argument("--n", type=int, required=True, help="number of strands / chain sites")
    p.add_argument("--qr", required=True, help="red parameter, python complex syntax")
    p.add_argument("--qb", required=True, help="blue parameter, python complex syntax")
    p.add_argument("--check", action="store_true", help="verify products against matrices")
    p.add_argument("--matrices", action="store_true", help="include matrices as re,im;... text")
    p.add_argument("--tol", type=float, default=1e-9, help="residual tolerance for --check")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="resource bound on n")
    p.set_defaults(func=cmd_rep)

    p = new("ybe", "Yang-Baxter and transfer-matrix residual sweeps")
    p.add_argument("--family", choices=("tl", "bubble"), required=True, help="solution family")
    p.add_argument(
        "--lambda",
        dest="lam",
        type=float,
        default=None,
        help="fixed spectral parameter (default: sampled per point)",
    )
    p.add_argument("--sweep", type=int, default=20, help="number of sampled points")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="sampling seed")
    p.add_argument(
        "--transfer",
        type=int,
        default=None,
        metavar="N",
        help="also sweep the N-site transfer-matrix commutator",
    )
    p.add_argument("--format", choices=("json", "csv"), default="json", help="output format")
    p.set_defaults(func=cmd_ybe)

    p = new("check", "run the cross-module property suite")
    p.add_argument("--n", type=int, default=4, help="size bound for the suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="sampling seed")
    p.add_argument("--quick", action="store_true", help="trim sizes and sweep counts")
    p.set_defaults(func=cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except CacheError as exc:
        print(f"cache error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"property failure: {exc}", file=sys.stderr)
        return EXIT_PROPERTY
    except ValueError as exc:
        print(f"invalid request: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
