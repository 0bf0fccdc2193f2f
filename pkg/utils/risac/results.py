#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Result Tables
=============
Row records, pandas tables, summaries and the files written for a run:

- results.csv   one row per (algorithm, sweep value, trial); deterministic
- timing.csv    solve wall time per row (kept apart so results.csv is
                byte-stable between runs)
- summary.csv   per (algorithm, sweep value) statistics
- manifest.toml configuration echo, base seed, tool version, row counts

Authors: superguru, gazorper
License: GPL v3.0
"""

import math
from dataclasses import asdict, dataclass
from datetime import datetime
from pathlib import Path
from typing import Iterable

import numpy as np
import pandas as pd
import tomlkit

from utils.linalg import EmptyInput

RESULT_COLUMNS = [
    'algorithm', 'sweep', 'sweep_value', 'trial', 'seed',
    'snr_s', 'snr_s_db', 'snr_c', 'snr_c_db', 'rate_bps_hz', 'rho_abs',
    'iterations', 'converged', 'status',
]
TIMING_COLUMNS = ['algorithm', 'sweep_value', 'trial', 'wall_time_ms']
SORT_KEYS = ['algorithm', 'sweep_value', 'trial']
SUMMARY_METRICS = ['snr_s', 'snr_s_db', 'rate_bps_hz', 'rho_abs', 'wall_time_ms']
FLOAT_FORMAT = '%.17g'


@dataclass(frozen=True)
class ResultRow:
    """Outcome of one solver on one trial of one sweep cell."""

    algorithm: str
    sweep: str
    sweep_value: float
    trial: int
    seed: int
    snr_s: float
    snr_s_db: float
    snr_c: float
    snr_c_db: float
    rate_bps_hz: float
    rho_abs: float
    iterations: int
    converged: bool
    status: str
    wall_time_ms: float

    @classmethod
    def failed(
        cls, algorithm: str, sweep: str, sweep_value: float, trial: int, seed: int, status: str, wall_time_ms: float
    ) -> 'ResultRow':
        """Row for a solve that produced no beamformer."""
        nan = math.nan
        return cls(
            algorithm=algorithm, sweep=sweep, sweep_value=sweep_value, trial=trial, seed=seed,
            snr_s=nan, snr_s_db=nan, snr_c=nan, snr_c_db=nan, rate_bps_hz=nan, rho_abs=nan,
            iterations=0, converged=False, status=status, wall_time_ms=wall_time_ms,
        )


def rows_to_frames(rows: Iterable[ResultRow]) -> tuple[pd.DataFrame, pd.DataFrame]:
    """
    Split rows into the sorted results and timing tables.

    Raises:
        EmptyInput: If there are no rows
    """
    records = [asdict(r) for r in rows]
    if not records:
        raise EmptyInput("no result rows")
    frame = pd.DataFrame.from_records(records)
    frame = frame.sort_values(SORT_KEYS, kind='mergesort', na_position='last').reset_index(drop=True)
    return frame[RESULT_COLUMNS].copy(), frame[TIMING_COLUMNS].copy()


def _p10(x: pd.Series) -> float:
    return float(x.quantile(0.10))


def _p90(x: pd.Series) -> float:
    return float(x.quantile(0.90))


_p10.__name__ = 'p10'
_p90.__name__ = 'p90'


def summarize(results: pd.DataFrame, timing: pd.DataFrame | None = None) -> pd.DataFrame:
    """
    Per (algorithm, sweep value) mean, median, 10th and 90th percentile of
    snr_s, snr_s_db, rate, rho_abs and wall time over converged rows, plus
    row and non-converged counts.

    Raises:
        EmptyInput: If results is empty
    """
    if results.empty:
        raise EmptyInput("cannot summarize an empty result set")
    keys = ['algorithm', 'sweep_value']
    frame = results
    if timing is not None:
        frame = results.merge(timing, on=SORT_KEYS, how='left')
    metrics = [m for m in SUMMARY_METRICS if m in frame.columns]

    counts = frame.groupby(keys, dropna=False, sort=True).agg(
        rows=('trial', 'size'),
        converged_rows=('converged', 'sum'),
    )
    counts['non_converged'] = counts['rows'] - counts['converged_rows']

    ok = frame[frame['converged'].astype(bool)]
    stats = ok.groupby(keys, dropna=False, sort=True)[metrics].agg(['mean', 'median', _p10, _p90])
    stats.columns = [f"{metric}_{stat}" for metric, stat in stats.columns]

    summary = counts.join(stats, how='left').reset_index()
    return summary


def write_csv(frame: pd.DataFrame, path: Path) -> None:
    """Write a table with fixed float formatting and '\\n' line ends."""
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep='nan', lineterminator='\n')


def build_manifest(config: dict, version: str, results: pd.DataFrame) -> tomlkit.TOMLDocument:
    """Run manifest: tool identity, configuration echo and row counts."""
    doc = tomlkit.document()
    doc.add(tomlkit.comment("RISAC Bench run manifest"))
    doc.add('config_path', config.get('config_path', ''))
    doc.add('base_seed', int(config['run']['seed']))

    tool = tomlkit.table()
    tool.add('name', 'risac')
    tool.add('version', version)
    tool.add('generated', datetime.now().isoformat(timespec='seconds'))
    doc.add('tool', tool)

    counts = tomlkit.table()
    counts.add('rows', int(len(results)))
    counts.add('converged', int(results['converged'].sum()))
    by_status = results['status'].value_counts().sort_index()
    for status, count in by_status.items():
        counts.add(str(status), int(count))
    doc.add('counts', counts)

    for section in ('run', 'scenario', 'sre', 'gain_max'):
        table = tomlkit.table()
        for key, value in config[section].items():
            table.add(key, value)
        doc.add(section, table)
    return doc


def write_manifest(doc: tomlkit.TOMLDocument, path: Path) -> None:
    """Serialize the manifest."""
    path.write_text(tomlkit.dumps(doc), encoding='utf-8')


def mean_by(results: pd.DataFrame, column: str, by: list[str]) -> pd.Series:
    """Mean of column over converged rows, grouped by the given keys."""
    ok = results[results['converged'].astype(bool)]
    return ok.groupby(by, sort=True)[column].mean()


def monotone_violations(values: pd.Series, tolerance_db: float = 0.0) -> list[tuple[float, float]]:
    """
    Adjacent pairs (index_before, index_after) where a dB series drops by
    more than tolerance_db.
    """
    drops = []
    index = list(values.index)
    data = np.asarray(values, dtype=float)
    for i in range(1, len(data)):
        if data[i] < data[i - 1] - tolerance_db:
            drops.append((index[i - 1], index[i]))
    return drops
