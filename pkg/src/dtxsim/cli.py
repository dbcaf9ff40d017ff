"""Command-line entry point.

Verbs:
  sweep            run the rate sweep, write per-scheme curve files, a gain
                   report and a re-runnable manifest
  mu-curves        tabulate the optimal weighting factor versus the gain
                   ratio of the two links for selected spectral efficiencies
  inspect          print one drop's realization and every scheme's result
  validate-config  parse and validate a configuration file

Configuration is a flat key=value text file; command-line flags override
file values. Exit codes: 0 success, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
import time
from pathlib import Path

import numpy as np

import dtxsim
from dtxsim.montecarlo import (
    ALL_SCHEMES,
    SimulationConfig,
    gain_report,
    realization_for_drop,
    run_drop,
    run_sweep,
)
from dtxsim.channel import GeometryParams, ShadowingParams
from dtxsim.optimizer import DEFAULT_SETTINGS, brute_force_mu, optimal_mu
from dtxsim.powermodel import PowerModelParams
from dtxsim.schemes import SchemeId

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3

NA = "NA"

CONFIG_DEFAULTS = {
    "carrier_freq_hz": "2e9",
    "cell_radius_m": "250",
    "min_distance_m": "35",
    "shadowing_std_db": "8",
    "iterations": "10000",
    "bandwidth_hz": "1e7",
    "noise_dbm": "-100",
    "p0_w": "233",
    "m_slope": "5",
    "p_sleep_w": "50",
    "p_max_tx_dbm": "46",
    "master_seed": "1",
    "rate_grid": "1e5:1e8:25",
    "schemes": ",".join(s.value for s in ALL_SCHEMES),
}

# manifest bookkeeping keys, ignored when a manifest is re-used as a config
MANIFEST_ONLY_KEYS = {"tool_version", "duration_s"}


class ConfigError(Exception):
    pass


def _parse_kv_file(path: str) -> dict[str, str]:
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config file {path}: {e}") from e
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in MANIFEST_ONLY_KEYS:
            continue
        if key not in CONFIG_DEFAULTS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = value
    return values


def parse_rates(spec: str) -> tuple[float, ...]:
    """Parse 'min:max:points' (log-spaced) or a comma list of rates in bps."""
    spec = spec.strip()
    try:
        if ":" in spec:
            lo_s, hi_s, n_s = spec.split(":")
            lo, hi, n = float(lo_s), float(hi_s), int(n_s)
            if lo <= 0 or hi <= lo or n < 2:
                raise ValueError("need 0 < min < max and points >= 2")
            return tuple(float(r) for r in np.geomspace(lo, hi, n))
        return tuple(sorted(float(r) for r in spec.split(",")))
    except ValueError as e:
        raise ConfigError(f"invalid rate grid {spec!r}: {e}") from e


def parse_schemes(spec: str) -> tuple[SchemeId, ...]:
    names = [s.strip() for s in spec.split(",") if s.strip()]
    if not names:
        raise ConfigError("scheme list is empty")
    try:
        return tuple(SchemeId(n) for n in names)
    except ValueError as e:
        valid = ", ".join(s.value for s in SchemeId)
        raise ConfigError(f"unknown scheme in {spec!r}; valid: {valid}") from e


def _coerce(values: dict[str, str], key: str, kind):
    try:
        return kind(values[key])
    except ValueError as e:
        raise ConfigError(f"field {key!r}: cannot parse {values[key]!r}") from e


def build_config(values: dict[str, str]) -> SimulationConfig:
    merged = dict(CONFIG_DEFAULTS)
    merged.update(values)
    f = lambda k: _coerce(merged, k, float)
    i = lambda k: _coerce(merged, k, int)
    try:
        return SimulationConfig(
            geometry=GeometryParams(
                cell_radius_m=f("cell_radius_m"),
                min_distance_m=f("min_distance_m"),
                carrier_freq_hz=f("carrier_freq_hz"),
            ),
            shadow=ShadowingParams(std_dev_db=f("shadowing_std_db")),
            pm=PowerModelParams(
                p0_w=f("p0_w"),
                m_slope=f("m_slope"),
                p_sleep_w=f("p_sleep_w"),
                p_max_tx_w=10.0 ** (f("p_max_tx_dbm") / 10.0) / 1000.0,
            ),
            bandwidth_hz=f("bandwidth_hz"),
            noise_w=10.0 ** (f("noise_dbm") / 10.0) / 1000.0,
            iterations=i("iterations"),
            master_seed=i("master_seed"),
            rate_grid_bps=parse_rates(merged["rate_grid"]),
            schemes=parse_schemes(merged["schemes"]),
        )
    except ValueError as e:
        raise ConfigError(str(e)) from e


def load_config(args) -> tuple[SimulationConfig, dict[str, str]]:
    values = _parse_kv_file(args.config) if args.config else {}
    if getattr(args, "iterations", None) is not None:
        values["iterations"] = str(args.iterations)
    if getattr(args, "seed", None) is not None:
        values["master_seed"] = str(args.seed)
    if getattr(args, "schemes", None):
        values["schemes"] = args.schemes
    if getattr(args, "rates", None):
        values["rate_grid"] = args.rates
    resolved = dict(CONFIG_DEFAULTS)
    resolved.update(values)
    return build_config(values), resolved


def _fmt(x) -> str:
    if x is None:
        return NA
    return repr(float(x))


def _dbm(p_w) -> str:
    if p_w is None or p_w <= 0:
        return NA
    return repr(10.0 * math.log10(p_w * 1000.0))


def _write_outputs(out_dir: Path, files: dict[str, str]) -> None:
    written = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, content in files.items():
            path = out_dir / name
            path.write_text(content)
            written.append(path)
    except OSError:
        for path in written:
            try:
                path.unlink()
            except OSError:
                pass
        raise


def cmd_sweep(args) -> int:
    config, resolved = load_config(args)
    started = time.monotonic()
    curves = run_sweep(config)
    duration = time.monotonic() - started

    files: dict[str, str] = {}
    header = (
        "rate_bps,scheme,mean_supply_w,mean_supply_dbm,"
        "outage_prob,mean_mu,mean_t,n_feasible\n"
    )
    for curve in curves:
        rows = [header]
        for p in curve.points:
            rows.append(
                f"{_fmt(p.rate_bps)},{curve.scheme.value},{_fmt(p.mean_supply_w)},"
                f"{_dbm(p.mean_supply_w)},{_fmt(p.outage_prob)},{_fmt(p.mean_mu)},"
                f"{_fmt(p.mean_t)},{p.n_feasible}\n"
            )
        files[f"curve_{curve.scheme.value}.csv"] = "".join(rows)

    if SchemeId.SOTA in config.schemes:
        report = gain_report(curves)
        rows = ["rate_bps,scheme,gain_db,saving_frac\n"]
        for scheme, col in sorted(report.gains_db.items()):
            for rate, g in zip(report.rates_bps, col):
                frac = None if g is None else 1.0 - 10.0 ** (-g / 10.0)
                rows.append(f"{_fmt(rate)},{scheme.value},{_fmt(g)},{_fmt(frac)}\n")
        files["gains.csv"] = "".join(rows)
        files["gains_summary.txt"] = (
            f"low_load_rate_bps = {_fmt(report.low_load_rate_bps)}\n"
            f"low_load_gain_db = {_fmt(report.low_load_gain_db)}\n"
            f"low_load_saving_frac = {_fmt(report.low_load_saving_frac)}\n"
            f"high_load_rate_bps = {_fmt(report.high_load_rate_bps)}\n"
            f"high_load_gain_db = {_fmt(report.high_load_gain_db)}\n"
            f"high_load_saving_frac = {_fmt(report.high_load_saving_frac)}\n"
        )

    manifest = [f"tool_version = {dtxsim.__version__}\n",
                f"duration_s = {duration:.3f}\n"]
    for key in CONFIG_DEFAULTS:
        manifest.append(f"{key} = {resolved[key]}\n")
    files["manifest.txt"] = "".join(manifest)

    _write_outputs(Path(args.out), files)
    print(f"wrote {len(files)} files to {args.out} ({duration:.1f} s)")
    return EXIT_OK


def cmd_mu_curves(args) -> int:
    try:
        sigmas = tuple(float(s) for s in args.sigma.split(","))
    except ValueError as e:
        raise ConfigError(f"invalid sigma list {args.sigma!r}") from e
    if not sigmas or any(not 0.1 <= s <= 6.0 for s in sigmas):
        raise ConfigError("spectral efficiencies must lie in [0.1, 6] bps/Hz")
    try:
        lo_s, hi_s, n_s = args.ratio_db.split(":")
        lo, hi, n = float(lo_s), float(hi_s), int(n_s)
        if hi <= lo or n < 2:
            raise ValueError("need min < max and points >= 2")
    except ValueError as e:
        raise ConfigError(f"invalid ratio range {args.ratio_db!r}: {e}") from e

    g2 = 10.0 ** (args.g2_db / 10.0)
    noise_w = 10.0 ** (args.noise_dbm / 10.0) / 1000.0
    rows = ["ratio_db,sigma,mu_star,p_tx_w\n"]
    for sigma in sigmas:
        for ratio_db in np.linspace(lo, hi, n):
            g1 = g2 * 10.0 ** (ratio_db / 10.0)
            mu, p = optimal_mu(sigma, g1, g2, noise_w, DEFAULT_SETTINGS)
            rows.append(f"{_fmt(ratio_db)},{_fmt(sigma)},{_fmt(mu)},{_fmt(p)}\n")
    out = Path(args.out)
    if out.parent != Path(""):
        out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("".join(rows))
    print(f"wrote {out}")
    return EXIT_OK


def cmd_inspect(args) -> int:
    config, _ = load_config(args)
    if not 0 <= args.drop_index < config.iterations:
        raise ConfigError(
            f"drop index {args.drop_index} outside [0, {config.iterations})"
        )
    realization = realization_for_drop(config, args.drop_index)
    results = run_drop(config, args.drop_index, args.rate)

    def db(g):
        return 10.0 * math.log10(g)

    print(f"drop {args.drop_index} (seed {config.master_seed}), "
          f"rate {args.rate:g} bps")
    print(f"  G1 = {db(realization.g1):.2f} dB, G2 = {db(realization.g2):.2f} dB, "
          f"noise = {_dbm(realization.noise_w)} dBm, "
          f"W = {realization.bandwidth_hz:g} Hz")
    for scheme in config.schemes:
        r = results[scheme]
        status = "OUTAGE" if r.outage else "ok"
        supply = "inf" if math.isinf(r.p_supply_w) else f"{r.p_supply_w:.3f}"
        p_tx = "inf" if math.isinf(r.p_tx_w) else f"{r.p_tx_w:.6f}"
        print(f"  {scheme.value:<10} supply={supply} W  p_tx={p_tx} W  "
              f"mu={r.allocation.mu:.4f}  t={r.allocation.t:.4f}  [{status}]")
    if SchemeId.RS_PC_DTX in config.schemes:
        r = results[SchemeId.RS_PC_DTX]
        sigma = args.rate / config.bandwidth_hz
        mu_bf, p_bf = brute_force_mu(
            max(sigma, 1e-12) / max(r.allocation.t, 1e-12),
            realization.g1, realization.g2, realization.noise_w, 10001,
        )
        print(f"  optimizer trace: mu*={r.allocation.mu:.6f} t*={r.allocation.t:.6f}; "
              f"grid oracle at t*: mu={mu_bf:.6f} p_tx={p_bf:.6g} W")
    return EXIT_OK


def cmd_validate_config(args) -> int:
    load_config(args)
    print("config OK")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dtxsim",
        description="Two-user downlink supply-power simulator "
        "(resource sharing, power control, DTX).",
    )
    parser.add_argument("--version", action="version", version=dtxsim.__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config_flags(p, with_overrides=True):
        p.add_argument("--config", help="key=value configuration file")
        if with_overrides:
            p.add_argument("--iterations", type=int, help="number of drops")
            p.add_argument("--seed", type=int, help="master RNG seed")
            p.add_argument("--schemes", help="comma list of schemes to evaluate")
            p.add_argument("--rates", help="rate grid: min:max:points (log) or comma list")

    p = sub.add_parser("sweep", help="run the rate sweep and write curve files")
    add_config_flags(p)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("mu-curves", help="optimal weighting factor vs gain ratio")
    p.add_argument("--sigma", default="0.5,1,2,4,6",
                   help="comma list of spectral efficiencies in bps/Hz")
    p.add_argument("--ratio-db", default="-30:30:61",
                   help="G1/G2 ratio range in dB: min:max:points")
    p.add_argument("--g2-db", type=float, default=-100.0,
                   help="fixed gain of link 2 in dB")
    p.add_argument("--noise-dbm", type=float, default=-100.0,
                   help="noise power in dBm")
    p.add_argument("--out", required=True, help="output CSV file")
    p.set_defaults(func=cmd_mu_curves)

    p = sub.add_parser("inspect", help="print one drop's scheme results")
    add_config_flags(p)
    p.add_argument("--drop-index", type=int, default=0)
    p.add_argument("--rate", type=float, required=True, help="link rate in bps")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("validate-config", help="check a configuration file")
    add_config_flags(p)
    p.set_defaults(func=cmd_validate_config)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(f"I/O error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
