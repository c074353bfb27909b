"""
Command-line front end.

    click-homodyne clicks     --config scenario.yaml --out clicks.csv
    click-homodyne moments    --preset fig2
    click-homodyne witness    --config scenario.yaml --phase-grid 0:pi:33
    click-homodyne noise      --preset fig5 --format json
    click-homodyne montecarlo --preset montecarlo --shots 1000000 --seed 7
    click-homodyne figure fig3 --out fig3.csv

Exit status is 0 when every computation met its accuracy budget, 2 for an
invalid configuration and 3 for a numerical failure (truncation, quadrature
instability, negative probabilities).
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .detector import click_statistics, difference_distribution
from .errors import ClickHomodyneError
from .gaussian import GaussianState
from .interferometer import LocalOscillator
from .lo_noise import noisy_moments
from .moments import closed_form_coherent_X, default_max_order, x_moments_analytic, x_moments_from_counts
from .montecarlo import estimate_moments, estimate_witness, sample_clicks
from .scenario import PRESETS, ConfigError, ScenarioConfig, _merge, load_config
from .witness import minor_determinant, moment_matrix, normally_ordered_variance, scan_witnesses

THREADS_ENV = "CLICK_HOMODYNE_THREADS"


@dataclass
class Table:
    columns: list[str]
    rows: list[tuple] = field(default_factory=list)


def _threads() -> int:
    value = os.environ.get(THREADS_ENV)
    if not value:
        return 1
    try:
        return max(1, int(value))
    except ValueError:
        raise ConfigError(THREADS_ENV, f"must be an integer, got {value!r}") from None


def _map(fn, items) -> list:
    """Order-preserving map, parallel when CLICK_HOMODYNE_THREADS > 1."""
    items = list(items)
    threads = _threads()
    if threads == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _label(index_set) -> str:
    return "det_" + "_".join(str(i) for i in index_set)


# ---------------------------------------------------------------- commands

def cmd_clicks(cfg: ScenarioConfig) -> dict[str, Table]:
    signal = cfg.build_signal()

    def one(phi):
        return click_statistics(signal, LocalOscillator(cfg.r, phi), cfg.detector)

    diff = Table(["phi", "dk", "c_dk"])
    joint = Table(["phi", "k1", "k2", "c"])
    for phi, stats in zip(cfg.phases, _map(one, cfg.phases)):
        d = difference_distribution(stats)
        diff.rows += [(phi, int(k), p) for k, p in zip(d.delta_k, d.c)]
        N = stats.N
        joint.rows += [(phi, k1, k2, stats.c[k1, k2]) for k1 in range(N + 1) for k2 in range(N + 1)]
    return {"": diff, "joint": joint}


def cmd_moments(cfg: ScenarioConfig) -> dict[str, Table]:
    signal = cfg.build_signal()
    order = default_max_order(cfg.detector.N) if cfg.max_order is None else cfg.max_order

    def one(phi):
        return x_moments_analytic(signal, LocalOscillator(cfg.r, phi), cfg.detector, order).moments

    table = Table(["phi"] + [f"X{m}" for m in range(order + 1)])
    for phi, m in zip(cfg.phases, _map(one, cfg.phases)):
        table.rows.append((phi, *m))
    return {"": table}


def _witness_row(moments) -> tuple[list[str], list]:
    reports = sorted(scan_witnesses(moment_matrix(moments)), key=lambda r: (len(r.index_set), r.index_set))
    names = ["variance"] + [_label(r.index_set) for r in reports] + ["min_det", "verdict"]
    strongest = min(reports, key=lambda r: r.determinant)
    values = [normally_ordered_variance(moments)] + [r.determinant for r in reports]
    values += [strongest.determinant, strongest.verdict]
    return names, values


def cmd_witness(cfg: ScenarioConfig) -> dict[str, Table]:
    sweep_name = next(iter(cfg.sweep), None)
    sweep_values = cfg.sweep.get(sweep_name, [None]) if sweep_name else [None]
    tasks = [(s, phi) for s in sweep_values for phi in cfg.phases]

    def one(task):
        s, phi = task
        signal = cfg.build_signal(xi=s) if sweep_name == "xi" else cfg.build_signal()
        det = cfg.detector_with(eta=s) if sweep_name == "eta" else cfg.detector
        return _witness_row(x_moments_analytic(signal, LocalOscillator(cfg.r, phi), det))

    results = _map(one, tasks)
    prefix = [sweep_name] if sweep_name else []
    table = Table(prefix + ["phi"] + results[0][0])
    for (s, phi), (_, values) in zip(tasks, results):
        table.rows.append(tuple(([s] if sweep_name else []) + [phi] + values))
    return {"": table}


NOISE_CURVES = ("noiseless", "phase_noise", "amplitude_noise", "combined")


def cmd_noise(cfg: ScenarioConfig) -> dict[str, Table]:
    signal = cfg.build_signal()
    settings = {
        "noiseless": (0.0, 0.0),
        "phase_noise": (0.0, cfg.sigma_p),
        "amplitude_noise": (cfg.sigma_x, 0.0),
        "combined": (cfg.sigma_x, cfg.sigma_p),
    }

    def one(phi):
        out = []
        for name in NOISE_CURVES:
            sx, sp = settings[name]
            m = noisy_moments(signal, cfg.noise_model(phi, sx, sp), cfg.detector, 2)
            out.append(normally_ordered_variance(m))
        return out

    table = Table(["phi", *NOISE_CURVES])
    for phi, values in zip(cfg.phases, _map(one, cfg.phases)):
        table.rows.append((phi, *values))
    return {"": table}


def cmd_montecarlo(cfg: ScenarioConfig) -> dict[str, Table]:
    signal = cfg.build_signal()
    N = cfg.detector.N
    order = default_max_order(N) if cfg.max_order is None else cfg.max_order
    index_sets = [tuple(range(k + 1)) for k in range(1, order // 2 + 1)]

    def one(task):
        i, phi = task
        exact = click_statistics(signal, LocalOscillator(cfg.r, phi), cfg.detector)
        hist = sample_clicks(exact, cfg.shots, cfg.seed, task=i)
        exact_m = x_moments_from_counts(exact, order)
        rows = []
        for m, est in enumerate(estimate_moments(hist, order, cfg.resamples, task=i)):
            rows.append((phi, f"X{m}", est.value, est.standard_error, exact_m[m], ""))
        matrix = moment_matrix(exact_m, order // 2 + 1) if order >= 2 else None
        for idx in index_sets:
            w = estimate_witness(hist, idx, cfg.resamples, task=i)
            truth = minor_determinant(matrix, idx).determinant
            rows.append((phi, _label(idx), w.value, w.standard_error, truth, w.verdict))
        return rows

    table = Table(["phi", "quantity", "estimate", "standard_error", "exact", "verdict"])
    for rows in _map(one, list(enumerate(cfg.phases))):
        table.rows += rows
    return {"": table}


def figure_fig1c(cfg: ScenarioConfig) -> dict[str, Table]:
    table = Table(["r", "phi", "X_closed_form", "X_analytic"])
    for amp in (2.0, 4.0, 8.0):
        signal = GaussianState(alpha=amp)
        for phi in cfg.phases:
            lo = LocalOscillator(amp, phi)
            analytic = x_moments_analytic(signal, lo, cfg.detector, 1)[1]
            table.rows.append((amp, phi, closed_form_coherent_X(amp, lo, cfg.detector), analytic))
    return {"": table}


def figure_fig2(cfg: ScenarioConfig) -> dict[str, Table]:
    table = Table(["n", "phi", "X", "X_scaled", "log10_abs_X0"])
    for n in (1, 3, 5):
        sub = ScenarioConfig.from_dict({**cfg.raw, "signal": {"kind": "superposition", "n": n}})
        moments = cmd_moments(sub)[""]
        x0 = x_moments_analytic(sub.build_signal(), LocalOscillator(cfg.r, 0.0), cfg.detector, 1)[1]
        for phi, _, x in moments.rows:
            table.rows.append((n, phi, x, x / abs(x0), float(np.log10(abs(x0)))))
    return {"": table}


COMMANDS = {
    "clicks": cmd_clicks,
    "moments": cmd_moments,
    "witness": cmd_witness,
    "noise": cmd_noise,
    "montecarlo": cmd_montecarlo,
}

FIGURES = {
    "fig1b": cmd_clicks,
    "fig1c": figure_fig1c,
    "fig2": figure_fig2,
    "fig3": cmd_witness,
    "fig4": cmd_witness,
    "fig5": cmd_noise,
}


# ---------------------------------------------------------------- output

def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _jsonable(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value


def render(table: Table, meta: dict, fmt: str) -> str:
    if fmt == "json":
        payload = {
            **meta,
            "columns": table.columns,
            "rows": [[_jsonable(v) for v in row] for row in table.rows],
        }
        return json.dumps(payload, indent=1, default=_jsonable) + "\n"
    buf = io.StringIO()
    buf.write(f"# {meta['program']} {meta['version']}\n")
    buf.write(f"# command: {meta['command']} ({meta['table']})\n")
    config = yaml.safe_dump({"config": meta["config"]}, sort_keys=True)
    for line in config.splitlines():
        buf.write(f"# {line}\n")
    buf.write(",".join(table.columns) + "\n")
    for row in table.rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _companion(path: Path, name: str) -> Path:
    return path.with_name(f"{path.stem}.{name}{path.suffix}")


def write_tables(tables: dict[str, Table], meta: dict, fmt: str, out: str | None) -> None:
    for name, table in tables.items():
        text = render(table, {**meta, "table": name or "main"}, fmt)
        if out is None:
            if name:
                continue
            sys.stdout.write(text)
        else:
            path = Path(out) if not name else _companion(Path(out), name)
            path.write_text(text)


# ---------------------------------------------------------------- argument handling

def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="YAML scenario file")
    parser.add_argument("--preset", choices=sorted(PRESETS), help="start from an embedded scenario")
    parser.add_argument("--out", help="output file (default: stdout)")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--shots", type=int)
    parser.add_argument("--max-order", type=int, dest="max_order")
    parser.add_argument("--phase-grid", dest="phase_grid", help="start:stop:count, e.g. 0:pi:33")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="click-homodyne", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        _common(sub.add_parser(name))
    fig = sub.add_parser("figure", help="reproduce the data behind a figure")
    fig.add_argument("name", choices=sorted(FIGURES))
    _common(fig)
    return parser


def _scenario(args) -> dict:
    data: dict = {}
    preset = args.preset or (args.name if args.command == "figure" else None)
    if preset:
        data = json.loads(json.dumps(PRESETS[preset]))
    if args.config:
        data = _merge(data, load_config(args.config))
    for key in ("seed", "shots", "max_order"):
        value = getattr(args, key)
        if value is not None:
            data[key] = value
    if args.phase_grid is not None:
        data.setdefault("lo", {})["phase_grid"] = args.phase_grid
    return data


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        data = _scenario(args)
        cfg = ScenarioConfig.from_dict(data)
        command = FIGURES[args.name] if args.command == "figure" else COMMANDS[args.command]
        tables = command(cfg)
        label = f"figure {args.name}" if args.command == "figure" else args.command
        meta = {"program": "click_homodyne", "version": __version__, "command": label,
                "config": cfg.to_dict()}
        write_tables(tables, meta, args.format, args.out)
    except ConfigError as exc:
        print(f"click-homodyne: configuration error: {exc}", file=sys.stderr)
        return 2
    except (ClickHomodyneError, OSError, yaml.YAMLError) as exc:
        print(f"click-homodyne: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
