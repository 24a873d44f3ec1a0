"""Command-line front end: samples, CDF/density tables, paths and named experiments.

Exit codes: 0 success (or the expected verdict), 1 verdict failure,
2 usage or validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import sys
import time
from pathlib import Path

import jsonschema
import numpy as np

from . import __version__
from .distributions import (Degenerate, GgMixing, GgParams, GigMixing, GigParams, NvmmSpec,
                            OneSidedStable, StableParams, gg_cdf, gg_density, gg_sample,
                            gig_cdf, gig_density, gig_sample, nvmm_cdf, nvmm_density,
                            nvmm_sample, stable_cdf, stable_sample)
from .limits.presets import REGISTRY, RunSettings, get_experiment, run_experiment
from .processes import (SubordinatorScheme, TimeGrid, deterministic_scheme, gamma_scheme,
                        ig_scheme, jumps_from_dict, simulate_compound_poisson,
                        simulate_subordinator, stable_scheme)
from .seeding import SEED_BITS, stream
from .special import QuadratureError

EXIT_OK, EXIT_VERDICT, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

FAMILIES = ("stable", "gig", "gg", "gh", "gvg", "nvmm", "weibull")

CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "seed": {"type": "integer", "minimum": 0, "maximum": 2 ** SEED_BITS - 1},
        "workers": {"type": "integer", "minimum": 1},
        "output_dir": {"type": "string"},
        "n_samples": {"type": "integer", "minimum": 1},
        "kn": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 2},
        "streams": {
            "type": "object", "additionalProperties": False,
            "properties": {"block_size": {"type": "integer", "minimum": 1}},
        },
        "experiment": {
            "type": "object", "additionalProperties": False, "required": ["name"],
            "properties": {"name": {"type": "string"}, "preset": {"type": "string"},
                           "params": {"type": "object"}},
        },
    },
}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- family parameters


def _add_family_args(p: argparse.ArgumentParser):
    p.add_argument("family", choices=FAMILIES)
    g = p.add_argument_group("family parameters")
    g.add_argument("--alpha", type=float, help="stable exponent (stable, one-sided-stable mixing)")
    g.add_argument("--theta", type=float, default=0.0, help="stable skewness")
    g.add_argument("--nu", type=float, help="GIG index or GG power")
    g.add_argument("--mu", type=float, help="GIG concentration")
    g.add_argument("--lambda", dest="lam", type=float, help="GIG rate")
    g.add_argument("--kappa", type=float, default=1.0, help="GG shape")
    g.add_argument("--delta", type=float, default=1.0, help="GG scale")
    g.add_argument("--a", type=float, default=0.0, help="NVMM location coefficient")
    g.add_argument("--sigma", type=float, default=1.0, help="NVMM scale")
    g.add_argument("--mixing", choices=("gig", "gg", "one-sided-stable", "degenerate",
                                        "exponential"), help="NVMM mixing law")
    g.add_argument("--c", type=float, default=1.0, help="point of a degenerate mixing law")


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--lambda" if n == "lam" else f"--{n}" for n in missing)
        raise UsageError(f"{args.family} needs {flags}")


def _mixing(args):
    m = args.mixing
    if m is None:
        raise UsageError("nvmm needs --mixing")
    if m == "gig":
        _need(args, "nu", "mu", "lam")
        return GigMixing(GigParams(args.nu, args.mu, args.lam))
    if m == "gg":
        _need(args, "nu")
        return GgMixing(GgParams(args.nu, args.kappa, args.delta))
    if m == "one-sided-stable":
        _need(args, "alpha")
        return OneSidedStable(args.alpha)
    if m == "exponential":
        return GgMixing(GgParams(1.0, 1.0, args.delta))
    return Degenerate(args.c)


def family_ops(args):
    """(sampler(rng, n), cdf(xs), density(xs) or None) for the chosen family."""
    f = args.family
    if f == "stable":
        _need(args, "alpha")
        p = StableParams(args.alpha, args.theta)
        return (lambda rng, n: stable_sample(p, rng, n),
                lambda xs: np.array([stable_cdf(p, x) for x in xs]), None)
    if f == "gig":
        _need(args, "nu", "mu", "lam")
        p = GigParams(args.nu, args.mu, args.lam)
        return (lambda rng, n: gig_sample(p, rng, n), lambda xs: gig_cdf(p, xs),
                lambda xs: gig_density(p, xs))
    if f in ("gg", "weibull"):
        _need(args, "nu")
        p = GgParams(args.nu, 1.0 if f == "weibull" else args.kappa, args.delta)
        return (lambda rng, n: gg_sample(p, rng, n), lambda xs: gg_cdf(p, xs),
                lambda xs: gg_density(p, xs))
    if f == "gh":
        _need(args, "nu", "mu", "lam")
        spec = NvmmSpec(args.a, args.sigma, GigMixing(GigParams(args.nu, args.mu, args.lam)))
    elif f == "gvg":
        _need(args, "nu")
        spec = NvmmSpec(args.a, args.sigma, GgMixing(GgParams(args.nu, args.kappa, args.delta)))
    else:
        spec = NvmmSpec(args.a, args.sigma, _mixing(args))
    has_density = spec.mixing.has_density or isinstance(spec.mixing, Degenerate)
    return (lambda rng, n: nvmm_sample(spec, rng, n), lambda xs: nvmm_cdf(spec, xs),
            (lambda xs: nvmm_density(spec, xs)) if has_density else None)


# ---------------------------------------------------------------- output helpers


def _write(text: str, path):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _table(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _parse_x(args) -> np.ndarray:
    xs = []
    for item in args.x or []:
        xs += [float(v) for v in str(item).split(",") if v.strip()]
    if args.grid:
        try:
            lo, hi, n = args.grid.split(":")
            xs += list(np.linspace(float(lo), float(hi), int(n)))
        except ValueError:
            raise UsageError(f"--grid must be lo:hi:count, got {args.grid!r}") from None
    if not xs:
        raise UsageError("give evaluation points with --x and/or --grid")
    return np.asarray(xs, dtype=float)


# ---------------------------------------------------------------- subcommands


def cmd_sample(args) -> int:
    if args.n < 0:
        raise UsageError(f"-n must be >= 0, got {args.n}")
    sampler, _, _ = family_ops(args)
    values = np.asarray(sampler(stream(args.seed, 0), args.n), dtype=float)
    _write(_table(["index", "value"], ((i, repr(float(v))) for i, v in enumerate(values))),
           args.output)
    return EXIT_OK


def _cmd_table(args, which: str) -> int:
    xs = _parse_x(args)
    _, cdf, density = family_ops(args)
    fn = cdf if which == "cdf" else density
    if fn is None:
        raise UsageError(f"no density is available for the {args.family} family "
                         "with these parameters")
    if which == "density" and np.any(xs < 0) and args.family in ("gig", "gg", "weibull"):
        raise UsageError(f"{args.family} density is defined for x >= 0")
    try:
        values = np.atleast_1d(np.asarray(fn(xs), dtype=float))
    except QuadratureError as e:
        raise ArithmeticError(f"{which} integral for {args.family} did not converge: {e}") from e
    _write(_table(["x", "value"], ((repr(float(x)), repr(float(v))) for x, v in zip(xs, values))),
           args.output)
    return EXIT_OK


def cmd_cdf(args) -> int:
    return _cmd_table(args, "cdf")


def cmd_density(args) -> int:
    return _cmd_table(args, "density")


def _clock(args) -> SubordinatorScheme:
    c = args.clock
    if c == "stable":
        return stable_scheme(args.clock_alpha)
    if c == "gamma":
        return gamma_scheme(args.shape_rate, args.rate)
    if c == "ig":
        return ig_scheme(args.ig_mean, args.ig_shape)
    return deterministic_scheme(args.slope)


def cmd_simulate_path(args) -> int:
    if args.paths < 1:
        raise UsageError(f"--paths must be >= 1, got {args.paths}")
    grid = TimeGrid.uniform(args.cells)
    scheme = _clock(args)
    rng = stream(args.seed, 0)
    n = None if args.paths == 1 else args.paths
    path = simulate_subordinator(scheme, grid, rng, n)
    if args.process == "cox":
        jumps = jumps_from_dict({"family": args.jumps, "shift": args.shift}, args.kn)
        path = simulate_compound_poisson(jumps, path, rng)
    _write(path.to_csv(), args.output)
    return EXIT_OK


def load_config(path) -> dict:
    if path is None:
        return {}
    try:
        cfg = json.loads(Path(path).read_text())
    except OSError as e:
        raise UsageError(f"cannot read config {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"config {path} is not valid JSON: {e}") from None
    try:
        jsonschema.validate(cfg, CONFIG_SCHEMA)
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise UsageError(f"config {path}: {where}: {e.message}") from None
    return cfg


def settings_from(args, cfg: dict) -> tuple[str, RunSettings, Path]:
    """Merge config file and flags (flags win) into run settings."""
    exp = cfg.get("experiment", {})
    name = args.name or exp.get("name")
    if name is None:
        raise UsageError("name an experiment (argument or experiment.name in the config)")
    kn = cfg.get("kn")
    if args.kn:
        try:
            kn = [int(v) for v in args.kn.split(",")]
        except ValueError:
            raise UsageError(f"--kn must be a comma-separated list of integers, got {args.kn!r}") from None
    settings = RunSettings()
    merged = {
        "seed": args.seed if args.seed is not None else cfg.get("seed", settings.seed),
        "n_samples": args.n if args.n is not None else cfg.get("n_samples", settings.n_samples),
        "kn_values": tuple(kn) if kn else settings.kn_values,
        "workers": args.workers if args.workers is not None else cfg.get("workers", 1),
        "block": (args.block if args.block is not None
                  else cfg.get("streams", {}).get("block_size", settings.block)),
        "preset": args.preset if args.preset is not None else exp.get("preset"),
        "params": exp.get("params", {}),
    }
    if not 0 <= merged["seed"] < 2 ** SEED_BITS:
        raise UsageError(f"seed must be an unsigned {SEED_BITS}-bit integer")
    if merged["n_samples"] < 1 or merged["workers"] < 1 or merged["block"] < 1:
        raise UsageError("n, workers and block size must all be >= 1")
    if any(b <= a for a, b in zip(merged["kn_values"], merged["kn_values"][1:])):
        raise UsageError("kn values must be strictly increasing")
    out = Path(args.output_dir or cfg.get("output_dir", "."))
    return name, RunSettings(**merged), out


def cmd_experiment(args) -> int:
    cfg = load_config(args.config)
    name, settings, out = settings_from(args, cfg)
    try:
        exp = get_experiment(name)
    except KeyError as e:
        raise UsageError(e.args[0]) from None
    exp.preset(settings)
    started = _dt.datetime.now(_dt.timezone.utc)
    t0 = time.perf_counter()
    report = run_experiment(name, settings)
    elapsed = time.perf_counter() - t0
    out.mkdir(parents=True, exist_ok=True)
    stem = name if settings.preset is None else f"{name}.{settings.preset}"
    (out / f"{stem}.json").write_text(report.to_json())
    (out / f"{stem}.csv").write_text(report.to_csv())
    meta = {"started_utc": started.isoformat(), "elapsed_seconds": elapsed,
            "workers": settings.workers, "version": __version__}
    (out / f"{stem}.meta.json").write_text(json.dumps(meta, sort_keys=True, indent=2) + "\n")
    print(report.summary())
    return EXIT_OK if report.as_expected else EXIT_VERDICT


def cmd_list_experiments(args) -> int:
    for name in sorted(REGISTRY):
        e = REGISTRY[name]
        tag = " [negative control: expects FAIL]" if e.expected == "FAIL" else ""
        presets = f" (presets: {', '.join(e.presets)})" if e.presets else ""
        print(f"{name}{presets}{tag}\n    {e.summary}")
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coxlevy", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw samples from a distribution family")
    _add_family_args(p)
    p.add_argument("-n", type=int, default=1000, help="number of draws")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", help="CSV file (default stdout)")
    p.set_defaults(func=cmd_sample)

    for name, fn in (("cdf", cmd_cdf), ("density", cmd_density)):
        p = sub.add_parser(name, help=f"tabulate the {name} of a distribution family")
        _add_family_args(p)
        p.add_argument("--x", action="append", help="evaluation point(s), comma-separated")
        p.add_argument("--grid", help="evenly spaced points lo:hi:count")
        p.add_argument("-o", "--output", help="CSV file (default stdout)")
        p.set_defaults(func=fn)

    p = sub.add_parser("simulate-path", help="simulate a clock or compound Cox path")
    p.add_argument("--process", choices=("cox", "clock"), default="cox")
    p.add_argument("--clock", choices=("stable", "gamma", "ig", "deterministic"),
                   default="deterministic")
    p.add_argument("--clock-alpha", type=float, default=0.5, help="stable clock exponent")
    p.add_argument("--shape-rate", type=float, default=1.0, help="gamma clock shape per unit time")
    p.add_argument("--rate", type=float, default=1.0, help="gamma clock rate")
    p.add_argument("--ig-mean", type=float, default=1.0)
    p.add_argument("--ig-shape", type=float, default=1.0)
    p.add_argument("--slope", type=float, default=1.0, help="deterministic clock slope")
    p.add_argument("--jumps", choices=("rademacher", "normal", "laplace", "unit", "pareto"),
                   default="rademacher")
    p.add_argument("--kn", type=float, default=1.0, help="jump normalization kn")
    p.add_argument("--shift", type=float, default=0.0, help="jump mean times kn")
    p.add_argument("--cells", type=int, default=1024)
    p.add_argument("--paths", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", help="CSV file (default stdout)")
    p.set_defaults(func=cmd_simulate_path)

    p = sub.add_parser("experiment", help="run a named verification experiment")
    p.add_argument("name", nargs="?", help="experiment name (see list-experiments)")
    p.add_argument("--config", help="JSON run configuration; flags override its keys")
    p.add_argument("--preset")
    p.add_argument("--kn", help="comma-separated kn schedule")
    p.add_argument("-n", type=int, help="draws per kn value")
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--block", type=int, help="draws per random stream")
    p.add_argument("--output-dir")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("list-experiments", help="list registered experiments")
    p.set_defaults(func=cmd_list_experiments)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, TypeError, KeyError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"coxlevy {args.command}: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, FloatingPointError) as e:
        print(f"coxlevy {args.command}: numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
