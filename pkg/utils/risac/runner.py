#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
RISAC Experiment Runner
=======================
Monte-Carlo sweeps over the SNR threshold or the RIS size for the SRE
solver, the gain-maximization benchmark and the w/oRIS baseline, with
CSV output and a reproducible run manifest.

Every trial draws its channels from SeededRng(base seed).child(trial), so
results do not depend on execution order or the number of workers.

Authors: superguru, gazorper
License: GPL v3.0
"""

import argparse
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

import pandas as pd

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent.parent))
from utils.beamforming import SolveReport, solve_no_ris
from utils.channel import ChannelSet, Scenario, build_channels
from utils.gainmax import solve_gain_max
from utils.linalg import (
    ConfigError,
    DegenerateGeometry,
    DegenerateSpan,
    Infeasible,
    SeededRng,
)
from utils.rsconfig import RunConfig, find_project_root, load_run_config
from utils.rslogging import LoggingContext, get_logging_context
from utils.sre import solve_sre
from .results import (
    ResultRow,
    build_manifest,
    mean_by,
    monotone_violations,
    rows_to_frames,
    summarize,
    write_csv,
    write_manifest,
)

__version__ = '1.0.0'

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_ALL_INFEASIBLE = 2
RIS_ALGORITHMS = ('sre', 'benchmark')


@dataclass
class ExperimentResult:
    """Tables produced by one run."""

    results: pd.DataFrame
    timing: pd.DataFrame
    summary: pd.DataFrame

    @property
    def all_failed(self) -> bool:
        return bool((self.results['status'] != 'ok').all())


def trial_seed(base_seed: int, trial: int) -> int:
    """Seed of one Monte-Carlo trial, a pure function of (base seed, trial)."""
    return SeededRng(base_seed).child(trial).seed


def _solver(cfg: RunConfig, algorithm: str) -> Callable[[ChannelSet, Scenario, SeededRng], SolveReport]:
    if algorithm == 'sre':
        return lambda ch, sc, rng: solve_sre(ch, sc, cfg.sre, rng)
    if algorithm == 'benchmark':
        return lambda ch, sc, rng: solve_gain_max(ch, sc, cfg.gain_max, rng)
    return lambda ch, sc, rng: solve_no_ris(ch, sc)


def run_cell(
    cfg: RunConfig, sweep_value: float, trial: int, log: Optional[LoggingContext] = None
) -> list[ResultRow]:
    """Solve one trial of one sweep value with every selected algorithm."""
    seed = trial_seed(cfg.seed, trial)
    sc = cfg.scenario_at(sweep_value, seed)
    ch = build_channels(sc, SeededRng(seed))
    rows = []
    for algorithm in cfg.algorithms:
        solve = _solver(cfg, algorithm)
        started = time.perf_counter()
        try:
            report = solve(ch, sc, SeededRng(seed))
        except (Infeasible, DegenerateSpan) as e:
            elapsed_ms = (time.perf_counter() - started) * 1000.0
            status = 'infeasible' if isinstance(e, Infeasible) else 'degenerate'
            rows.append(ResultRow.failed(algorithm, cfg.sweep, sweep_value, trial, seed, status, elapsed_ms))
            continue
        if log:
            log.dbg(f"trial {trial} sweep value {sweep_value:g}: {report.summary()}")
        m = report.metrics
        rows.append(ResultRow(
            algorithm=algorithm,
            sweep=cfg.sweep,
            sweep_value=sweep_value,
            trial=trial,
            seed=seed,
            snr_s=m.snr_s,
            snr_s_db=m.snr_s_db,
            snr_c=m.snr_c,
            snr_c_db=m.snr_c_db,
            rate_bps_hz=m.rate_bps_hz,
            rho_abs=m.rho_abs,
            iterations=report.iterations,
            converged=report.converged,
            status='ok',
            wall_time_ms=report.wall_time_ms,
        ))
    return rows


def _run_cell_args(args: tuple[RunConfig, float, int]) -> list[ResultRow]:
    return run_cell(*args)


def check_geometry(cfg: RunConfig) -> None:
    """
    Raises:
        ConfigError: If the scene geometry is degenerate
    """
    try:
        build_channels(cfg.scenario, SeededRng(cfg.seed))
    except DegenerateGeometry as e:
        raise ConfigError(f"Invalid scene geometry: {e}")


def run_experiment(cfg: RunConfig, log: Optional[LoggingContext] = None) -> ExperimentResult:
    """
    Run every (sweep value, trial, algorithm) combination.

    Infeasible solves become converged=false rows; the sweep continues.

    Raises:
        ConfigError: If the geometry is degenerate
    """
    check_geometry(cfg)
    cells = [(cfg, value, trial) for value in cfg.sweep_values for trial in range(cfg.trials)]
    if log:
        log.inf(
            f"Running {len(cells)} cells: algorithms={','.join(cfg.algorithms)} "
            f"sweep={cfg.sweep} trials={cfg.trials} seed={cfg.seed} jobs={cfg.jobs}"
        )

    rows: list[ResultRow] = []
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            for cell_rows in pool.map(_run_cell_args, cells, chunksize=max(1, len(cells) // (4 * cfg.jobs))):
                rows.extend(cell_rows)
    else:
        for i, cell in enumerate(cells, 1):
            rows.extend(run_cell(*cell, log=log))
            if log and i % max(1, len(cells) // 10) == 0:
                log.dbg(f"Completed {i}/{len(cells)} cells")

    if log:
        for row in rows:
            if row.status != 'ok':
                log.wrn(
                    f"{row.algorithm} {row.status} at sweep value {row.sweep_value} "
                    f"trial {row.trial} (seed {row.seed})"
                )

    results, timing = rows_to_frames(rows)
    return ExperimentResult(results=results, timing=timing, summary=summarize(results, timing))


def write_outputs(result: ExperimentResult, cfg: RunConfig) -> dict[str, Path]:
    """Write results.csv, timing.csv, summary.csv and manifest.toml."""
    out = cfg.out_dir
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        'results': out / 'results.csv',
        'timing': out / 'timing.csv',
        'summary': out / 'summary.csv',
        'manifest': out / 'manifest.toml',
    }
    write_csv(result.results, paths['results'])
    write_csv(result.timing, paths['timing'])
    write_csv(result.summary, paths['summary'])
    write_manifest(build_manifest(cfg.to_dict(), __version__, result.results), paths['manifest'])
    return paths


def ris_size_report(result: ExperimentResult) -> list[str]:
    """Mean SNR_s monotonicity in M for the RIS schemes (reported, not enforced)."""
    lines = []
    means = mean_by(result.results, 'snr_s_db', ['algorithm', 'sweep_value'])
    for algorithm in RIS_ALGORITHMS:
        if algorithm not in means.index.get_level_values(0):
            continue
        series = means.loc[algorithm]
        drops = monotone_violations(series)
        if drops:
            pairs = ', '.join(f"M={int(a)}->{int(b)}" for a, b in drops)
            lines.append(f"⚠️  {algorithm}: mean SNR_s decreases at {pairs}")
        else:
            lines.append(f"✓ {algorithm}: mean SNR_s non-decreasing in M")
    return lines


def timing_report(result: ExperimentResult) -> list[str]:
    """Mean solve time per algorithm, fastest first."""
    merged = result.results.merge(result.timing, on=['algorithm', 'sweep_value', 'trial'])
    means = mean_by(merged, 'wall_time_ms', ['algorithm']).sort_values()
    if len(means) < 2:
        return []
    order = ' < '.join(f"{name} ({ms:.2f} ms)" for name, ms in means.items())
    return [f"⏱️  Mean solve time: {order}"]


def _parse_grid(text: Optional[str]) -> Optional[list[float]]:
    if text is None:
        return None
    try:
        return [float(x) for x in text.split(',') if x.strip()]
    except ValueError:
        raise ConfigError(f"--grid must be comma-separated numbers, got {text!r}")


def _default_config() -> Path:
    return find_project_root() / 'config' / 'risac.toml'


def _print_summary(result: ExperimentResult, cfg: RunConfig) -> None:
    print("")
    print("=" * 60)
    print("  📊 Summary (converged rows)")
    print("=" * 60)
    for _, row in result.summary.iterrows():
        value = row['sweep_value']
        cell = '' if isinstance(value, float) and math.isnan(value) else f" @ {value:g}"
        mean_db = row.get('snr_s_db_mean', math.nan)
        print(
            f"  {row['algorithm']:<10}{cell:<10} SNR_s {mean_db:8.3f} dB  "
            f"ok {int(row['converged_rows'])}/{int(row['rows'])}"
        )
    print("=" * 60)


def main(argv: Optional[list[str]] = None) -> int:
    """Command-line entry point."""
    parser = argparse.ArgumentParser(
        prog='risac',
        description='RISAC Bench - RIS-assisted ISAC beamforming experiments',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python -m utils.risac run                                   # config/risac.toml as is
  python -m utils.risac run --algo sre --sweep none --trials 1
  python -m utils.risac run --sweep ris-size --trials 50 --jobs 4
  python -m utils.risac run --config my.toml --grid 0,6,12 --out results/quick

Exit codes: 0 success, 1 configuration error, 2 every solve infeasible
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)
    run = sub.add_parser('run', help='Run an experiment')
    run.add_argument('--config', type=Path, default=None, help='Run configuration (default: config/risac.toml)')
    run.add_argument('--algo', choices=['sre', 'benchmark', 'no-ris', 'all'], help='Solver(s) to run')
    run.add_argument('--sweep', choices=['gamma0', 'ris-size', 'none'], help='Swept parameter')
    run.add_argument('--grid', help='Comma-separated sweep values (dB for gamma0, elements for ris-size)')
    run.add_argument('--trials', type=int, help='Monte-Carlo trials per sweep value')
    run.add_argument('--seed', type=int, help='Base seed')
    run.add_argument('--out', type=Path, help='Output directory')
    run.add_argument('--jobs', type=int, help='Worker processes')
    run.add_argument('-e', '--environment', default='dev', help='Logging environment from config/tools.toml')
    args = parser.parse_args(argv)

    try:
        log = get_logging_context(args.environment, 'risac')
    except ValueError as e:
        print(f"✗ {e}")
        return EXIT_CONFIG

    config_path = args.config if args.config is not None else _default_config()
    try:
        grid = _parse_grid(args.grid)
        if grid is None and args.sweep is not None:
            grid = []
        overrides = {
            'algorithm': args.algo,
            'sweep': args.sweep,
            'grid': grid,
            'trials': args.trials,
            'seed': args.seed,
            'out_dir': args.out,
            'jobs': args.jobs,
        }
        cfg = load_run_config(config_path, overrides)
        print(f"⚙️  Config: {config_path}")
        print(
            f"   algorithms={','.join(cfg.algorithms)} sweep={cfg.sweep} "
            f"grid={list(cfg.grid)} trials={cfg.trials} seed={cfg.seed}"
        )
        log.inf(f"Loaded {config_path}")
        started = time.perf_counter()
        result = run_experiment(cfg, log)
    except ConfigError as e:
        print(f"✗ Configuration error: {e}")
        log.err(f"Configuration error: {e}")
        return EXIT_CONFIG

    paths = write_outputs(result, cfg)
    elapsed = time.perf_counter() - started
    _print_summary(result, cfg)
    reports = ris_size_report(result) if cfg.sweep == 'ris-size' else []
    reports += timing_report(result)
    for line in reports:
        print(line)
        log.inf(line)
    for name, path in paths.items():
        print(f"✓ Wrote {name}: {path}")
    log.inf(f"Wrote {len(result.results)} rows to {cfg.out_dir} in {elapsed:.1f} s")

    if result.all_failed:
        print("✗ Every solve was infeasible")
        log.err("Every solve was infeasible")
        return EXIT_ALL_INFEASIBLE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
