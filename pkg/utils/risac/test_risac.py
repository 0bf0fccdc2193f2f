#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Tests for the experiment runner, result tables and CLI.

Usage:
    pytest utils/risac
    pytest utils/risac -m "not slow"
"""

import math
from pathlib import Path

import numpy as np
import pandas as pd
import pytest
import tomlkit

from utils.channel import Scenario
from utils.linalg import ConfigError, EmptyInput, SeededRng
from utils.oracles import bootstrap_mean_ci
from utils.rsconfig import RunConfig, load_run_config
from utils.rslogging import get_logging_context
from utils.risac import ResultRow, main, rows_to_frames, run_experiment, summarize, trial_seed, write_outputs
from utils.risac.results import mean_by, monotone_violations
from utils.risac.runner import EXIT_ALL_INFEASIBLE, EXIT_CONFIG, EXIT_OK, run_cell

SMALL = Scenario(m_ris=8)


def _cfg(tmp_path: Path, **kwargs) -> RunConfig:
    kwargs.setdefault('scenario', SMALL)
    kwargs.setdefault('out_dir', tmp_path / 'out')
    return RunConfig(**kwargs)


def _row(algorithm: str, value: float, trial: int, snr_s: float, converged: bool = True) -> ResultRow:
    if not converged:
        return ResultRow.failed(algorithm, 'gamma0', value, trial, trial, 'infeasible', 1.0)
    return ResultRow(
        algorithm=algorithm, sweep='gamma0', sweep_value=value, trial=trial, seed=trial,
        snr_s=snr_s, snr_s_db=10.0 * math.log10(snr_s), snr_c=10.0, snr_c_db=10.0,
        rate_bps_hz=math.log2(11.0), rho_abs=0.5, iterations=3, converged=True,
        status='ok', wall_time_ms=2.0,
    )


def _write_config(path: Path, body: str) -> Path:
    path.write_text(body, encoding='utf-8')
    return path


def test_trial_seed_is_pure():
    assert trial_seed(0, 3) == trial_seed(0, 3)
    assert trial_seed(0, 3) != trial_seed(0, 4)
    assert trial_seed(0, 3) != trial_seed(1, 3)
    assert trial_seed(5, 2) == SeededRng(5).child(2).seed


def test_single_no_ris_run(tmp_path):
    cfg = _cfg(tmp_path, algorithm='no-ris', sweep='none', trials=1)
    result = run_experiment(cfg)
    assert len(result.results) == 1
    row = result.results.iloc[0]
    assert row['algorithm'] == 'no-ris'
    assert row['status'] == 'ok'
    assert math.isnan(row['sweep_value'])
    assert not result.all_failed


def test_each_solve_is_logged(tmp_path):
    log = get_logging_context('dev', 'risac-cells', log_root=tmp_path / 'logs')
    cfg = _cfg(tmp_path, algorithm='all', sweep='none', trials=1)
    run_experiment(cfg, log)
    text = log.log_file.read_text(encoding='utf-8')
    for algorithm in ('sre', 'benchmark', 'no-ris'):
        assert f"{algorithm}: SNR_s=" in text
    assert "converged=" in text


def test_row_count_for_full_sweep(tmp_path):
    cfg = _cfg(tmp_path, algorithm='all', sweep='gamma0', grid=(0, 3, 6, 9, 12), trials=10)
    result = run_experiment(cfg)
    assert len(result.results) == 3 * 5 * 10
    assert len(result.timing) == len(result.results)
    counts = result.results.groupby(['algorithm', 'sweep_value']).size()
    assert (counts == 10).all()


def test_results_are_sorted(tmp_path):
    cfg = _cfg(tmp_path, algorithm='all', sweep='gamma0', grid=(6, 0), trials=3)
    frame = run_experiment(cfg).results
    keys = list(zip(frame['algorithm'], frame['sweep_value'], frame['trial']))
    assert keys == sorted(keys)


def test_algorithms_share_channels_within_a_trial(tmp_path):
    cfg = _cfg(tmp_path, algorithm='all', sweep='none', trials=1)
    rows = run_cell(cfg, math.nan, 0)
    assert {r.algorithm for r in rows} == {'sre', 'benchmark', 'no-ris'}
    assert len({r.seed for r in rows}) == 1


def test_results_csv_is_byte_identical_across_runs(tmp_path):
    first = _cfg(tmp_path / 'a', algorithm='all', sweep='gamma0', grid=(0, 6), trials=3, seed=7)
    second = _cfg(tmp_path / 'b', algorithm='all', sweep='gamma0', grid=(0, 6), trials=3, seed=7)
    a = write_outputs(run_experiment(first), first)['results'].read_bytes()
    b = write_outputs(run_experiment(second), second)['results'].read_bytes()
    assert a == b


def test_results_do_not_depend_on_worker_count(tmp_path):
    serial = _cfg(tmp_path / 'serial', algorithm='all', sweep='gamma0', grid=(0, 6), trials=4, seed=3)
    parallel = _cfg(tmp_path / 'parallel', algorithm='all', sweep='gamma0', grid=(0, 6), trials=4, seed=3, jobs=2)
    a = write_outputs(run_experiment(serial), serial)['results'].read_bytes()
    b = write_outputs(run_experiment(parallel), parallel)['results'].read_bytes()
    assert a == b


def test_outputs_and_manifest(tmp_path):
    cfg = _cfg(tmp_path, algorithm='no-ris', sweep='gamma0', grid=(0, 3), trials=2, seed=11)
    paths = write_outputs(run_experiment(cfg), cfg)
    for path in paths.values():
        assert path.exists()
    manifest = tomlkit.parse(paths['manifest'].read_text(encoding='utf-8'))
    assert manifest['base_seed'] == 11
    assert manifest['tool']['name'] == 'risac'
    assert manifest['counts']['rows'] == 4
    assert list(manifest['run']['grid']) == [0.0, 3.0]
    assert manifest['scenario']['m_ris'] == 8
    assert b'\r\n' not in paths['results'].read_bytes()


def test_infeasible_rows_do_not_abort_the_sweep(tmp_path):
    cfg = _cfg(tmp_path, algorithm='no-ris', sweep='gamma0', grid=(0, 120), trials=2)
    result = run_experiment(cfg)
    frame = result.results.set_index('sweep_value')
    assert (frame.loc[0.0, 'status'] == 'ok').all()
    assert (frame.loc[120.0, 'status'] == 'infeasible').all()
    assert not frame.loc[120.0, 'converged'].any()
    assert not result.all_failed


def test_degenerate_geometry_is_a_config_error(tmp_path):
    cfg = _cfg(tmp_path, scenario=Scenario(m_ris=8, ris_pos=(0.0, 0.0)), algorithm='no-ris')
    with pytest.raises(ConfigError):
        run_experiment(cfg)


def test_summarize_single_row():
    results, timing = rows_to_frames([_row('sre', 3.0, 0, 4.0)])
    summary = summarize(results, timing)
    assert len(summary) == 1
    row = summary.iloc[0]
    assert row['snr_s_mean'] == pytest.approx(4.0)
    assert row['snr_s_median'] == pytest.approx(4.0)
    assert row['snr_s_p10'] == pytest.approx(4.0)
    assert row['snr_s_p90'] == pytest.approx(4.0)
    assert row['rows'] == 1
    assert row['non_converged'] == 0


def test_summarize_mean_of_two():
    results, timing = rows_to_frames([_row('sre', 3.0, 0, 2.0), _row('sre', 3.0, 1, 4.0)])
    summary = summarize(results, timing)
    assert summary.iloc[0]['snr_s_mean'] == pytest.approx(3.0)
    assert summary.iloc[0]['wall_time_ms_mean'] == pytest.approx(2.0)


def test_summarize_skips_non_converged_rows():
    rows = [_row('sre', 3.0, 0, 2.0), _row('sre', 3.0, 1, 0.0, converged=False)]
    summary = summarize(*rows_to_frames(rows))
    row = summary.iloc[0]
    assert row['rows'] == 2
    assert row['non_converged'] == 1
    assert row['snr_s_mean'] == pytest.approx(2.0)


def test_summarize_empty_input():
    with pytest.raises(EmptyInput):
        rows_to_frames([])
    empty = pd.DataFrame(columns=['algorithm', 'sweep_value', 'trial', 'converged'])
    with pytest.raises(EmptyInput):
        summarize(empty)


def test_monotone_violations():
    series = pd.Series([1.0, 2.0, 1.9, 3.0], index=[16, 32, 64, 128])
    assert monotone_violations(series) == [(32, 64)]
    assert monotone_violations(series, tolerance_db=0.2) == []


def test_config_file_with_overrides(tmp_path):
    path = _write_config(tmp_path / 'run.toml', """
m_ris = 16
noise_s_dbm = -60.0
gamma0_db = 10.0

[run]
algorithm = "sre"
sweep = "gamma0"
grid = [0, 3]
trials = 5

[sre]
max_iters = 50
""")
    cfg = load_run_config(path, {'trials': 2, 'seed': None, 'sweep': 'ris-size', 'grid': []})
    assert cfg.scenario.m_ris == 16
    assert cfg.scenario.noise_s_w == pytest.approx(1e-9)
    assert cfg.scenario.gamma0 == pytest.approx(10.0)
    assert cfg.algorithm == 'sre'
    assert cfg.trials == 2
    assert cfg.sweep == 'ris-size'
    assert cfg.grid == (16.0, 32.0, 64.0, 128.0, 256.0)
    assert cfg.sre.max_iters == 50
    assert cfg.config_path == path


def test_gamma0_sweep_values_are_db(tmp_path):
    cfg = _cfg(tmp_path, sweep='gamma0', grid=(10.0,))
    assert cfg.scenario_at(10.0, 1).gamma0 == pytest.approx(10.0)
    assert cfg.scenario_at(10.0, 1).seed == 1


@pytest.mark.parametrize('body', [
    'bogus_key = 1\n',
    'noise_s_w = 1e-9\nnoise_s_dbm = -60.0\n',
    'gamma0 = 10.0\ngamma0_db = 10.0\n',
    '[run]\nalgorithm = "fastest"\n',
    '[run]\ntrials = 0\n',
    '[run]\ncolour = "blue"\n',
    '[sre]\nstep = 1.0\n',
    '[extras]\nx = 1\n',
    'm_ris = 8.5\n',
    'this is not toml\n',
])
def test_bad_config_files(tmp_path, body):
    path = _write_config(tmp_path / 'bad.toml', body)
    with pytest.raises(ConfigError):
        load_run_config(path)


def test_missing_config_file(tmp_path):
    with pytest.raises(ConfigError):
        load_run_config(tmp_path / 'absent.toml')


def test_cli_single_run(tmp_path):
    path = _write_config(tmp_path / 'run.toml', 'm_ris = 8\n')
    out = tmp_path / 'out'
    code = main(['run', '--config', str(path), '--algo', 'no-ris', '--sweep', 'none', '--trials', '1', '--out', str(out)])
    assert code == EXIT_OK
    frame = pd.read_csv(out / 'results.csv')
    assert len(frame) == 1


def test_cli_config_error(tmp_path, capsys):
    path = _write_config(tmp_path / 'bad.toml', 'bogus_key = 1\n')
    code = main(['run', '--config', str(path), '--out', str(tmp_path / 'out')])
    assert code == EXIT_CONFIG
    assert 'bogus_key' in capsys.readouterr().out


def test_cli_unknown_environment(tmp_path):
    path = _write_config(tmp_path / 'run.toml', 'm_ris = 8\n')
    assert main(['run', '--config', str(path), '-e', 'nowhere']) == EXIT_CONFIG


def test_cli_bad_grid(tmp_path):
    path = _write_config(tmp_path / 'run.toml', 'm_ris = 8\n')
    code = main(['run', '--config', str(path), '--sweep', 'gamma0', '--grid', '0,x', '--out', str(tmp_path / 'out')])
    assert code == EXIT_CONFIG


def test_cli_all_infeasible(tmp_path):
    path = _write_config(tmp_path / 'run.toml', 'm_ris = 8\ngamma0_db = 150.0\n')
    code = main([
        'run', '--config', str(path), '--algo', 'all', '--sweep', 'none',
        '--trials', '2', '--out', str(tmp_path / 'out'),
    ])
    assert code == EXIT_ALL_INFEASIBLE
    frame = pd.read_csv(tmp_path / 'out' / 'results.csv')
    assert (frame['status'] == 'infeasible').all()


@pytest.mark.slow
def test_ris_schemes_beat_the_baseline(tmp_path):
    cfg = _cfg(tmp_path, scenario=Scenario(), algorithm='all', sweep='none', trials=100, seed=0)
    frame = run_experiment(cfg).results.set_index(['algorithm', 'trial'])
    baseline = frame.loc['no-ris', 'snr_s_db']
    for algorithm in ('sre', 'benchmark'):
        ours = frame.loc[algorithm]
        ok = ours['converged'].astype(bool) & baseline.notna()
        gain = (ours.loc[ok, 'snr_s_db'] - baseline[ok]).to_numpy()
        lo, _ = bootstrap_mean_ci(gain, rng=SeededRng(1))
        assert lo > 0.0, algorithm


@pytest.mark.slow
def test_sensing_snr_grows_with_ris_size(tmp_path):
    cfg = _cfg(tmp_path, scenario=Scenario(), algorithm='all', sweep='ris-size', grid=(16, 32, 64, 128), trials=50)
    means = mean_by(run_experiment(cfg).results, 'snr_s_db', ['algorithm', 'sweep_value'])
    for algorithm in ('sre', 'benchmark'):
        series = means.loc[algorithm]
        assert list(series.index) == [16.0, 32.0, 64.0, 128.0]
        assert len(monotone_violations(series)) <= 1, algorithm
        assert monotone_violations(series, tolerance_db=0.2) == [], algorithm


@pytest.mark.slow
def test_solve_time_ordering(tmp_path):
    cfg = _cfg(tmp_path, scenario=Scenario(), algorithm='all', sweep='none', trials=100)
    result = run_experiment(cfg)
    merged = result.results.merge(result.timing, on=['algorithm', 'sweep_value', 'trial'])
    times = merged.groupby('algorithm')['wall_time_ms'].mean()
    assert times['no-ris'] < times['sre'] < times['benchmark']
    assert np.isfinite(times.to_numpy()).all()
