"""Command-line front end writing plot-ready CSV or JSON.

    negtemp thermo --system chain6 --alpha 1 --beta -4:4:801 --out fig2.csv
    negtemp concurrence --system ring4 --alpha 0.5,1,1.5 --out c12.csv
    negtemp threshold --system chain6,chain8,ring4,ring6 --alpha 1 --out th.json
    negtemp spectrum --system ring6 --alpha 1
    negtemp units --omega-d 1e5
    negtemp units --gamma 4.0025 --local-field 8 --beta 2,-0.8

Exit status: 0 on success, 2 for usage errors, 1 for numerical failures.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import sys
from dataclasses import dataclass, field

from .hamiltonian import MODELS, PRESETS, SpinSystem, build_hamiltonian
from .scan import (
    DEFAULT_GRID,
    PhysicalParams,
    SweepGrid,
    dimensionless_from_physical,
    entanglement_thresholds,
    estimate_entanglement_temperature,
    r12_for_local_field,
    sweep_concurrence,
    sweep_thermo,
    temperature_from_beta,
)
from .spin_ops import NumericalError, hermitian_eigendecomposition

COMMANDS = ("thermo", "concurrence", "threshold", "spectrum", "units")

SCHEMAS = {
    "thermo": ["beta", "energy", "entropy", "heat_capacity"],
    "concurrence": ["beta", "alpha", "q", "concurrence"],
    "threshold": ["system", "alpha", "beta_star_pos", "beta_star_neg"],
    "spectrum": ["index", "energy"],
    "units_temperature": ["omega_d_hz", "temperature_kelvin"],
    "units_beta": ["beta", "temperature_kelvin"],
    "units_dimensionless": ["alpha", "beta"],
}


@dataclass
class RunConfig:
    command: str
    systems: list = field(default_factory=list)
    alphas: list = field(default_factory=list)
    grid: SweepGrid = DEFAULT_GRID
    pair: tuple = (1, 2)
    model: str = "dipolar"
    output_path: str = "-"
    format: str = "csv"
    workers: int | None = None
    units: dict = field(default_factory=dict)

    @property
    def system(self):
        return self.systems[0] if self.systems else None


def _system(text: str) -> SpinSystem:
    if text.startswith("custom:"):
        path = text[len("custom:"):]
        try:
            return SpinSystem.from_file(path)
        except OSError as exc:
            raise argparse.ArgumentTypeError(f"cannot read custom geometry {path!r}: {exc}")
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"bad custom geometry {path!r}: {exc}")
    if text not in PRESETS:
        raise argparse.ArgumentTypeError(
            f"unknown preset {text!r} (choose from {', '.join(sorted(PRESETS))} or custom:<path>)"
        )
    return SpinSystem.preset(text)


def _systems(text: str) -> list:
    return [_system(t) for t in text.split(",")]


def _floats(text: str) -> list:
    try:
        values = [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed number list {text!r}")
    if not values or not all(math.isfinite(v) for v in values):
        raise argparse.ArgumentTypeError(f"malformed number list {text!r}")
    return values


def _grid(text: str) -> SweepGrid:
    parts = text.split(":")
    try:
        if len(parts) != 3:
            raise ValueError
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        return SweepGrid(lo, hi, n)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"malformed grid {text!r}; expected min:max:count with min < max and count >= 2"
        )


def _pair(text: str) -> tuple:
    try:
        j, k = (int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed pair {text!r}; expected j,k")
    if j == k or min(j, k) < 1:
        raise argparse.ArgumentTypeError(f"pair sites must be distinct and >= 1, got {text!r}")
    return j, k


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="negtemp", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--out", default="-", help="output file (default: stdout)")
    out.add_argument("--format", choices=("csv", "json"),
                     help="output format (default: from --out suffix, else csv)")

    sysargs = argparse.ArgumentParser(add_help=False)
    sysargs.add_argument("--system", type=_systems,
                         help="preset (chain6, chain8, ring4, ring6) or custom:<path>")
    sysargs.add_argument("--alpha", type=_floats, required=True,
                         help="Zeeman ratio, or a comma-separated list")
    sysargs.add_argument("--model", choices=MODELS, default="dipolar",
                         help="dipolar form (default: dipolar)")
    sysargs.add_argument("--full-dipolar", action="store_true",
                         help="use the coordinate-based dipolar Hamiltonian; needs --coords")
    sysargs.add_argument("--coords", help="x y z file for --full-dipolar")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--beta", type=_grid, default=DEFAULT_GRID, metavar="MIN:MAX:COUNT",
                      help="inverse-temperature grid (default -4:4:801)")
    grid.add_argument("--workers", type=int, default=None, help="threads for the sweep")

    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("--pair", type=_pair, default=(1, 2), help="spin pair j,k (default 1,2)")

    sub.add_parser("thermo", parents=[sysargs, grid, out], help="E, S, C against beta")
    sub.add_parser("concurrence", parents=[sysargs, grid, pair, out], help="C12 against beta")
    sub.add_parser("threshold", parents=[sysargs, pair, out], help="entanglement boundaries")
    sub.add_parser("spectrum", parents=[sysargs, out], help="eigenvalues")

    units = sub.add_parser("units", parents=[out], help="physical unit conversions")
    units.add_argument("--omega-d", type=float, help="dipolar frequency in Hz for a rough T estimate")
    units.add_argument("--gamma", type=float, help="gyromagnetic ratio, kHz/G")
    units.add_argument("--r12", type=float, help="nearest-neighbour distance, angstrom")
    units.add_argument("--local-field", type=float, help="local dipolar field, G (sets r12)")
    units.add_argument("--field", type=float, default=0.0, help="applied field H0, G")
    units.add_argument("--temperature", type=float, help="spin temperature, K (signed)")
    units.add_argument("--beta", type=_floats, help="dimensionless beta values to convert to K")
    return parser


_VALUE_FLAGS = ("--beta", "--alpha", "--temperature")


def _attach_values(argv):
    # "--beta -4:4:801" would otherwise be read as an unknown option
    argv = list(argv)
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") \
                and not argv[i + 1].startswith("--"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def parse_args(argv=None) -> RunConfig:
    parser = build_parser()
    ns = parser.parse_args(_attach_values(sys.argv[1:] if argv is None else argv))
    fmt = ns.format or ("json" if str(ns.out).endswith(".json") else "csv")
    cfg = RunConfig(command=ns.command, output_path=ns.out, format=fmt)

    if ns.command == "units":
        cfg.units = _units_request(parser, ns)
        return cfg

    cfg.alphas = ns.alpha
    cfg.model = ns.model
    if ns.full_dipolar:
        if not ns.coords:
            parser.error("--full-dipolar requires --coords")
        cfg.systems = [_wrap_type(parser, "--coords", _system, f"custom:{ns.coords}")]
        cfg.model = "full"
    elif ns.system is None:
        parser.error("the following arguments are required: --system")
    else:
        cfg.systems = ns.system
    if ns.command != "threshold" and len(cfg.systems) != 1:
        parser.error(f"{ns.command} takes a single --system")
    if ns.command in ("thermo", "spectrum") and len(cfg.alphas) != 1:
        parser.error(f"{ns.command} takes a single --alpha")
    if hasattr(ns, "beta"):
        cfg.grid = ns.beta
        cfg.workers = ns.workers
    if hasattr(ns, "pair"):
        cfg.pair = ns.pair
        n = min(s.n_spins for s in cfg.systems)
        if max(cfg.pair) > n:
            parser.error(f"--pair {cfg.pair} out of range for {n} spins")
    return cfg


def _wrap_type(parser, flag, fn, value):
    try:
        return fn(value)
    except argparse.ArgumentTypeError as exc:
        parser.error(f"argument {flag}: {exc}")


def _units_request(parser, ns) -> dict:
    if ns.omega_d is not None:
        if ns.omega_d <= 0:
            parser.error("--omega-d must be positive")
        return {"mode": "temperature", "omega_d": ns.omega_d}
    if ns.gamma is None:
        parser.error("units needs --omega-d, or --gamma with --r12 or --local-field")
    if (ns.r12 is None) == (ns.local_field is None):
        parser.error("give exactly one of --r12 and --local-field")
    if ns.gamma <= 0 or (ns.r12 is not None and ns.r12 <= 0) or (
            ns.local_field is not None and ns.local_field <= 0):
        parser.error("--gamma, --r12 and --local-field must be positive")
    r12 = ns.r12 if ns.r12 is not None else r12_for_local_field(ns.gamma, ns.local_field)
    req = {"gamma": ns.gamma, "r12": r12, "field": ns.field}
    if ns.beta is not None:
        return {"mode": "beta", "betas": ns.beta, **req}
    if ns.temperature is None or ns.temperature == 0:
        parser.error("units needs --beta or a nonzero --temperature")
    return {"mode": "dimensionless", "temperature": ns.temperature, **req}


def run(cfg: RunConfig) -> tuple[list, list]:
    """Execute ``cfg``; returns (schema, records as dicts)."""
    cmd = cfg.command
    if cmd == "thermo":
        pts = sweep_thermo(cfg.system, cfg.alphas[0], cfg.grid, cfg.model, cfg.workers)
        return SCHEMAS[cmd], [dataclasses.asdict(p) for p in pts]
    if cmd == "concurrence":
        rows = []
        for a in cfg.alphas:
            for p in sweep_concurrence(cfg.system, a, cfg.grid, cfg.pair, cfg.model, cfg.workers):
                rows.append({"beta": p.beta, "alpha": p.alpha, "q": p.q_value,
                             "concurrence": p.concurrence})
        return SCHEMAS[cmd], rows
    if cmd == "threshold":
        rows = []
        for s in cfg.systems:
            for a in cfg.alphas:
                t = entanglement_thresholds(s, a, cfg.pair, cfg.model)
                rows.append({"system": s.name, "alpha": a, "beta_star_pos": t.beta_star_positive,
                             "beta_star_neg": t.beta_star_negative})
        return SCHEMAS[cmd], rows
    if cmd == "spectrum":
        spectrum = hermitian_eigendecomposition(build_hamiltonian(cfg.system, cfg.alphas[0], cfg.model))
        return SCHEMAS[cmd], [{"index": i, "energy": e} for i, e in enumerate(spectrum.eigenvalues)]
    if cmd == "units":
        return _run_units(cfg.units)
    raise ValueError(f"unknown command {cmd!r}")


def _run_units(req: dict) -> tuple[list, list]:
    mode = req["mode"]
    if mode == "temperature":
        t = estimate_entanglement_temperature(req["omega_d"])
        return SCHEMAS["units_temperature"], [{"omega_d_hz": req["omega_d"], "temperature_kelvin": t}]
    params = PhysicalParams(req["gamma"], req["r12"], req["field"],
                            req.get("temperature", float("inf")))
    if mode == "beta":
        rows = [{"beta": b, "temperature_kelvin": temperature_from_beta(b, params)}
                for b in req["betas"]]
        return SCHEMAS["units_beta"], rows
    alpha, beta = dimensionless_from_physical(params)
    return SCHEMAS["units_dimensionless"], [{"alpha": alpha, "beta": beta}]


def _fmt(value) -> str:
    if value is None:
        return "nan"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _open(path):
    if path in ("-", None):
        return _Stdout()
    return open(path, "w", newline="", encoding="utf-8")


class _Stdout:
    def __enter__(self):
        return sys.stdout

    def __exit__(self, *exc):
        sys.stdout.flush()


def emit_csv(records, schema, path) -> None:
    """Header line, then one row per record with floats at 12 significant digits."""
    with _open(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(schema)
        for r in records:
            w.writerow([_fmt(r[c]) for c in schema])


def emit_json(records, schema, path) -> None:
    def clean(v):
        if isinstance(v, float):
            return None if math.isnan(v) else float(_fmt(v))
        return v

    rows = [{c: clean(r[c]) for c in schema} for r in records]
    with _open(path) as fh:
        json.dump(rows, fh, indent=1)
        fh.write("\n")


def main(argv=None) -> int:
    try:
        cfg = parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        schema, records = run(cfg)
    except NumericalError as exc:
        print(f"negtemp: numerical failure: {exc}", file=sys.stderr)
        return 1
    emit = emit_json if cfg.format == "json" else emit_csv
    try:
        emit(records, schema, cfg.output_path)
    except OSError as exc:
        print(f"negtemp: cannot write {cfg.output_path}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
