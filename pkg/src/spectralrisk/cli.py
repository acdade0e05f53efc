"""Command-line front end: compute, converge, ci and validate subcommands.

Tables are emitted as CSV (default) or JSON with floats carrying 17
significant digits, so every number round-trips losslessly and any row
can be reproduced from the provenance columns it carries.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

import numpy as np

from .bootstrap import BootstrapConfig, bootstrap_ci
from .distributions import NormalLossModel
from .quadrature import QuadratureRule, build_grid
from .riskmeasures import es, reference_srm, srm
from .spectra import ESSpectrum, ExponentialSpectrum, validate_spectrum

_U64_MAX = (1 << 64) - 1


def _parse_dist(text: str) -> NormalLossModel:
    kind, _, params = text.partition(":")
    if kind.strip().lower() != "normal":
        raise ValueError(f"unknown distribution {kind!r} (expected normal:<mu>,<sigma>)")
    try:
        mu_s, sigma_s = params.split(",")
        return NormalLossModel(float(mu_s), float(sigma_s))
    except ValueError:
        raise ValueError(f"cannot parse distribution {text!r} as normal:<mu>,<sigma>")


def _parse_spectrum(text: str):
    kind, _, param = text.partition(":")
    kind = kind.strip().lower()
    if kind == "exp":
        return ExponentialSpectrum(float(param))
    if kind == "es":
        return ESSpectrum(float(param))
    raise ValueError(f"unknown spectrum {text!r} (expected exp:<a> or es:<alpha>)")


def _parse_seed(text: str) -> int:
    value = int(text)
    if not 0 <= value <= _U64_MAX:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {text}")
    return value


def _parse_sweep(text: str) -> list[float]:
    try:
        start_s, stop_s, count_s = text.split(":")
        start, stop, count = float(start_s), float(stop_s), int(count_s)
    except ValueError:
        raise ValueError(f"cannot parse sweep {text!r} as <start>:<stop>:<count>")
    if count < 1:
        raise ValueError(f"sweep count must be >= 1, got {count}")
    return [float(a) for a in np.linspace(start, stop, count)]


def _expand_n_item(item: str) -> list[int]:
    if ".." in item:
        span, _, count_s = item.partition(":")
        lo_s, _, hi_s = span.partition("..")
        lo, hi = int(lo_s), int(hi_s)
        count = int(count_s) if count_s else 20
        if lo < 3 or hi <= lo or count < 2:
            raise ValueError(f"bad node-count range {item!r}")
        # log-spaced, forced odd so the sweep works under every rule
        raw = np.unique(np.geomspace(lo, hi, count).round().astype(int))
        return sorted({int(v) | 1 for v in raw})
    return [int(item)]


def _parse_n_list(text: str) -> list[int]:
    out: list[int] = []
    for item in text.split(","):
        out.extend(_expand_n_item(item.strip()))
    return out


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def _emit(header: list[str], rows: list[list], fmt: str, out_path):
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        text = buf.getvalue()
    else:
        parts = []
        for row in rows:
            fields = []
            for key, value in zip(header, row):
                if isinstance(value, bool):
                    rendered = "true" if value else "false"
                elif isinstance(value, float):
                    rendered = format(value, ".17g")
                elif value is None:
                    rendered = "null"
                elif isinstance(value, (int, np.integer)):
                    rendered = str(int(value))
                else:
                    rendered = json.dumps(str(value))
                fields.append(f"{json.dumps(key)}: {rendered}")
            parts.append("  {" + ", ".join(fields) + "}")
        text = "[\n" + ",\n".join(parts) + "\n]\n"
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_compute(args) -> int:
    model = _parse_dist(args.dist)
    spectrum = _parse_spectrum(args.spectrum)
    if isinstance(spectrum, ExponentialSpectrum):
        a_values = _parse_sweep(args.sweep_a) if args.sweep_a else [spectrum.a]
        rows = []
        for a in a_values:
            est = srm(ExponentialSpectrum(a), model, args.rule, args.n)
            rows.append([a, est.value, est.rule.value, est.n, est.elapsed])
        _emit(["a", "srm_value", "rule", "n", "elapsed_seconds"],
              rows, args.format, args.out)
        return 0
    if args.sweep_a:
        raise ValueError("--sweep-a applies to exponential spectra only")
    mode = args.mode.replace("-", "_")
    start = time.perf_counter()
    value = es(model, spectrum.alpha, mode=mode, n=args.n, rule=args.rule)
    elapsed = time.perf_counter() - start
    if mode == "closed_form":
        row = [spectrum.alpha, value, "closed_form", None, None, elapsed]
    else:
        row = [spectrum.alpha, value, "quadrature", args.rule.value, args.n, elapsed]
    _emit(["alpha", "srm_value", "mode", "rule", "n", "elapsed_seconds"],
          [row], args.format, args.out)
    return 0


def _cmd_converge(args) -> int:
    model = _parse_dist(args.dist)
    spectrum = _parse_spectrum(args.spectrum)
    if not isinstance(spectrum, ExponentialSpectrum):
        raise ValueError("converge studies the exponential spectrum; pass exp:<a>")
    rules = [QuadratureRule.parse(r) for r in args.rules.split(",")]
    n_values = _parse_n_list(args.n_list)
    reference = reference_srm(spectrum.a, model)
    print(f"# reference_srm={reference:.12g}", file=sys.stderr)
    rows = []
    for rule in rules:
        for n in n_values:
            est = srm(spectrum, model, rule, n)
            pct = 100.0 * (est.value - reference) / reference
            rows.append([rule.value, n, est.value, pct, est.elapsed])
    _emit(["rule", "n", "estimate", "pct_error", "elapsed_seconds"],
          rows, args.format, args.out)
    return 0


def _cmd_ci(args) -> int:
    model = _parse_dist(args.dist)
    spectrum = _parse_spectrum(args.spectrum)
    config = BootstrapConfig(spectrum=spectrum, model=model, n=args.n, b=args.b,
                             confidence=args.confidence, master_seed=args.seed,
                             rule=args.rule)
    result = bootstrap_ci(config, workers=args.workers)
    header = ["lower", "upper", "std_lower", "std_upper", "estimates_mean",
              "b", "n", "seed", "confidence", "rule", "spectrum", "dist"]
    row = [result.lower, result.upper, result.std_lower, result.std_upper,
           result.estimates_mean, args.b, args.n, args.seed, args.confidence,
           args.rule.value, spectrum.describe(), model.describe()]
    _emit(header, [row], args.format, args.out)
    print(f"# elapsed_seconds={result.elapsed:.6f}", file=sys.stderr)
    return 0


def _cmd_validate(args) -> int:
    spectrum = _parse_spectrum(args.spectrum)
    report = validate_spectrum(spectrum, args.grid_size, args.tolerance)
    if args.weights_out:
        grid_n = args.grid_size if args.grid_size % 2 == 1 else args.grid_size + 1
        p = np.linspace(0.0, 1.0, grid_n)
        w = spectrum.weights(p)
        _emit(["p", "weight"], [[float(pi), float(wi)] for pi, wi in zip(p, w)],
              args.format, args.weights_out)
    header = ["spectrum", "grid_size", "tolerance", "positivity_ok",
              "normalisation_value", "normalisation_ok", "increasing_ok", "all_ok"]
    row = [spectrum.describe(), args.grid_size, args.tolerance,
           report.positivity_ok, report.normalisation_value,
           report.normalisation_ok, report.increasing_ok, report.all_ok]
    _emit(header, [row], args.format, args.out)
    return 0 if report.all_ok else 1


def _add_common(parser, *, dist=True, rule=True, n=None, fmt=True):
    if dist:
        parser.add_argument("--dist", default="normal:0,1",
                            help="loss distribution, normal:<mu>,<sigma>")
    if rule:
        parser.add_argument("--rule", type=QuadratureRule.parse,
                            default=QuadratureRule.SIMPSON,
                            help="trapezoid|simpson|niederreiter|weyl")
    if n is not None:
        parser.add_argument("--n", type=int, default=n,
                            help="quadrature node count")
    if fmt:
        parser.add_argument("--format", choices=("csv", "json"), default="csv")
        parser.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectralrisk",
        description="Spectral risk measures, VaR and expected shortfall with "
                    "quadrature convergence studies and bootstrap confidence intervals")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="risk-measure values (sweeps supported)")
    p.add_argument("--spectrum", required=True, help="exp:<a> or es:<alpha>")
    p.add_argument("--sweep-a", default=None, help="<start>:<stop>:<count> sweep over a")
    p.add_argument("--mode", choices=("closed-form", "quadrature"),
                   default="closed-form", help="expected-shortfall evaluation mode")
    _add_common(p, n=10001)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("converge", help="estimate vs reference across rules and n")
    p.add_argument("--spectrum", required=True, help="exp:<a>")
    p.add_argument("--rules", default="simpson",
                   help="comma list of trapezoid|simpson|niederreiter|weyl")
    p.add_argument("--n-list", required=True,
                   help="comma list of node counts; an item start..stop[:k] "
                        "expands to k log-spaced odd counts (default 20)")
    _add_common(p, rule=False)
    p.set_defaults(func=_cmd_converge)

    p = sub.add_parser("ci", help="parametric bootstrap confidence interval")
    p.add_argument("--spectrum", required=True, help="exp:<a> or es:<alpha>")
    p.add_argument("--b", type=int, default=1000, help="bootstrap trial count (>= 2)")
    p.add_argument("--confidence", type=float, default=0.90)
    p.add_argument("--seed", type=_parse_seed, default=0, help="64-bit master seed")
    p.add_argument("--workers", type=int, default=1, help="parallel trial workers")
    _add_common(p, n=10001)
    p.set_defaults(func=_cmd_ci)

    p = sub.add_parser("validate", help="spectrum admissibility report")
    p.add_argument("--spectrum", required=True, help="exp:<a> or es:<alpha>")
    p.add_argument("--grid-size", type=int, default=10001)
    p.add_argument("--tolerance", type=float, default=1e-3)
    p.add_argument("--weights-out", default=None,
                   help="also write the p,weight curve to this path")
    _add_common(p, dist=False, rule=False)
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "b", 2) < 2:
        parser.error("--b must be >= 2")
    if getattr(args, "workers", 1) < 1:
        parser.error("--workers must be >= 1")
    try:
        return args.func(args)
    except (ValueError, IndexError, TypeError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
