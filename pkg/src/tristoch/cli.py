"""Command line entry point.

Exit codes: 0 success, 1 property violation, 2 input error.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
from fractions import Fraction

from .eigen import DEFAULT_TOL, eigenvalues
from .fileio import load_params, parse_inline
from .inertia import inertia_report
from .model import ConstraintError, ModeError, format_scalar, from_chain_params
from .perturb import genericize, mix
from .symmetrize import symmetrize
from .verify import CampaignConfig, SAMPLERS, MODES, explore_higher, param_names, region_rows, run_campaign


class InputError(Exception):
    pass


def _records(args) -> list[tuple]:
    if args.params is not None and args.input is not None:
        raise InputError("give either --params or --input, not both")
    if args.params is not None:
        return [parse_inline(args.params)]
    if args.input is not None:
        return load_params(args.input)
    raise InputError("one of --params or --input is required")


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _dump_json(payload, out) -> None:
    out.write(json.dumps(payload, indent=2) + "\n")


def _fmt(values) -> list[str]:
    return [format_scalar(v) for v in values]


def cmd_eig(args) -> int:
    results = []
    for vals in _records(args):
        m = from_chain_params(vals)
        spec = eigenvalues(symmetrize(m), args.tol)
        lam2 = spec[1] if len(spec) > 1 else None
        results.append((vals, spec, lam2))
    with _open_out(args.output) as out:
        if args.format == "json":
            payload = [{
                "params": _fmt(vals),
                "eigenvalues": list(spec.eigenvalues),
                "lambda2": lam2,
                "spectral_gap": None if lam2 is None else 1.0 - lam2,
                "tol": spec.abs_tolerance,
                "blocks": [list(b) for b in spec.block_structure],
            } for vals, spec, lam2 in results]
            _dump_json(payload[0] if len(payload) == 1 else payload, out)
        elif args.format == "csv":
            n = len(results[0][1])
            w = csv.writer(out, lineterminator="\n")
            w.writerow([*param_names(n), *[f"lambda{k}" for k in range(1, n + 1)],
                        "lambda2", "spectral_gap"])
            for vals, spec, lam2 in results:
                w.writerow([*_fmt(vals), *_fmt(spec.eigenvalues), format_scalar(lam2),
                            format_scalar(1.0 - lam2)])
        else:
            for vals, spec, lam2 in results:
                out.write(" ".join(_fmt(spec.eigenvalues)) + "\n")
                out.write(f"lambda2 {format_scalar(lam2)}\n")
                out.write(f"spectral_gap {format_scalar(1.0 - lam2)}\n")
    return 0


def cmd_inertia(args) -> int:
    reports = []
    for vals in _records(args):
        s = symmetrize(from_chain_params(vals))
        shift = Fraction(args.shift) if s.exact else float(Fraction(args.shift))
        reports.append((vals, inertia_report(s, shift)))
    with _open_out(args.output) as out:
        if args.format == "json":
            payload = [{
                "params": _fmt(vals),
                "shift": format_scalar(r.minors.shift),
                "minors": _fmt(r.minors.values),
                "generic": r.minors.generic,
                "sign_changes": r.sign_changes if r.minors.generic else "non-generic",
                "count_below": r.count_below,
            } for vals, r in reports]
            _dump_json(payload[0] if len(payload) == 1 else payload, out)
        else:
            for _, r in reports:
                out.write("minors " + " ".join(_fmt(r.minors.values)) + "\n")
                changes = r.sign_changes if r.minors.generic else "non-generic"
                out.write(f"sign_changes {changes}\n")
                out.write(f"count_below {r.count_below}\n")
    return 0


def cmd_perturb(args) -> int:
    traces = []
    for vals in _records(args):
        if args.scheme == "mix":
            eps = Fraction(args.epsilon)
            if not any(isinstance(v, Fraction) for v in vals):
                eps = float(eps)
            traces.append(mix(vals, eps))
        else:
            traces.append(genericize(vals, args.n))
    with _open_out(args.output) as out:
        if args.format == "json":
            payload = [t.to_json() for t in traces]
            _dump_json(payload[0] if len(payload) == 1 else payload, out)
        else:
            for t in traces:
                out.write("perturbed " + ",".join(_fmt(t.perturbed)) + "\n")
                out.write(f"distance {format_scalar(t.distance)}\n")
                if t.certificates is not None:
                    out.write("certificates " + " ".join(_fmt(t.certificates)) + "\n")
    return 0


def _campaign_config(args) -> CampaignConfig:
    return CampaignConfig(
        n=args.n, sample_count=args.samples, sampler=args.sampler, seed=args.seed,
        tol=args.tol, numeric_mode=args.mode, grid_resolution=args.grid_resolution,
    )


def _run(args, runner) -> int:
    cfg = _campaign_config(args)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            report = runner(cfg, fh)
    else:
        report = runner(cfg)
    with _open_out(args.output) as out:
        if args.format == "json":
            _dump_json(report.to_json(include_timing=args.timing), out)
        else:
            out.write(f"samples {report.samples_run}\n")
            out.write(f"min_lambda2 {format_scalar(report.min_lambda2)}\n")
            out.write(f"violations {report.violation_count}\n")
            hist = report.negative_count_histogram or report.exact_negative_count_histogram
            out.write("negative_counts " + json.dumps(hist) + "\n")
    if cfg.n == 4 and not report.ok:
        dump = {"seed": cfg.seed, "sampler": cfg.sampler, "violations": report.violations}
        print("lambda2 < -tol found; reproducer:", file=sys.stderr)
        print(json.dumps(dump, indent=2), file=sys.stderr)
        return 1
    return 0


def cmd_verify(args) -> int:
    return _run(args, run_campaign)


def cmd_explore(args) -> int:
    if args.n < 5:
        raise InputError("explore needs --n >= 5")
    return _run(args, explore_higher)


def cmd_region(args) -> int:
    if args.resolution < 2:
        raise InputError("--resolution must be >= 2")
    with _open_out(args.output) as out:
        w = csv.writer(out, lineterminator="\n")
        w.writerow([*param_names(4), "lambda1", "lambda2", "lambda3", "lambda4"])
        for params, lams in region_rows(args.resolution, args.tol):
            w.writerow([*(format_scalar(float(p)) for p in params), *_fmt(lams)])
    return 0


def _add_params(p):
    p.add_argument("--params", help="comma separated values, decimals or p/q")
    p.add_argument("--input", help="JSON or CSV parameter file")
    p.add_argument("--output", "-o", default=None, help="output path (default stdout)")


def _add_campaign(p, n_default):
    p.add_argument("--n", type=int, default=n_default)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sampler", choices=SAMPLERS, default="uniform")
    p.add_argument("--grid-resolution", type=int, default=None)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--mode", choices=MODES, default="float")
    p.add_argument("--csv", default=None, help="stream per-sample rows to this CSV file")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identity)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tristoch",
                                     description="Spectra of tridiagonal stochastic matrices")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eig", help="eigenvalues, lambda2 and spectral gap")
    _add_params(p)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.set_defaults(func=cmd_eig)

    p = sub.add_parser("inertia", help="leading minors and Sturm count")
    _add_params(p)
    p.add_argument("--shift", default="0")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_inertia)

    p = sub.add_parser("perturb", help="mix or genericize a parameter tuple")
    _add_params(p)
    p.add_argument("--scheme", choices=("mix", "genericize"), default="mix")
    p.add_argument("--epsilon", default="1/2")
    p.add_argument("--n", type=int, default=9)
    p.add_argument("--format", choices=("text", "json"), default="json")
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("verify", help="sampling campaign (n = 4 asserts lambda2 >= -tol)")
    _add_campaign(p, 4)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("explore", help="sampling campaign for n >= 5, findings only")
    _add_campaign(p, 5)
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("region", help="grid of the 4x4 family as CSV")
    p.add_argument("--resolution", type=int, default=5, help="grid points per parameter axis")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_region)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ConstraintError, ModeError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
