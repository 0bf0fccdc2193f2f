#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Tests for the subspace rotation and expansion solver.

Usage:
    pytest utils/sre
    pytest utils/sre -m "not slow"
"""

import dataclasses
import math

import numpy as np
import pytest

from utils.beamforming import solve_no_ris, sensing_snr
from utils.channel import PhaseConfig, Scenario, assemble_h, build_channels, disconnect_ris, project
from utils.linalg import ConfigError, DimensionMismatch, SeededRng, norm2
from utils.oracles import finite_difference_gradient
from utils.sre import (
    SreParams,
    riemannian_gradient,
    run_sre,
    solve_sre,
    sre_gradient,
    sre_objective,
    sre_solve_full,
)


def _point(seed: int, m: int = 16):
    sc = Scenario(m_ris=m, seed=seed)
    ch = build_channels(sc)
    return sc, ch, PhaseConfig.random(m, SeededRng(seed + 1000))


def test_params_validation():
    SreParams()
    for bad in ({'bt_alpha': 0.5}, {'bt_beta': 1.0}, {'tol': 0.0}, {'max_iters': 0}, {'init_step': -1.0}):
        with pytest.raises(ConfigError):
            SreParams(**bad)


def test_objective_matches_channel_metrics():
    _, ch, v = _point(1)
    h_t, h_r, h_c = assemble_h(ch, v)
    expected = -norm2(h_r) * abs(np.vdot(h_t, h_c)) ** 2
    assert sre_objective(ch, v) == pytest.approx(expected, rel=1e-12)
    assert sre_objective(ch, v) <= 0.0


def test_objective_vanishes_without_echo():
    _, ch, v = _point(2)
    silent = dataclasses.replace(ch, alpha_r=0.0, u_r=np.zeros_like(ch.u_r))
    assert sre_objective(silent, v) == 0.0


def test_gradient_vanishes_when_both_factors_vanish():
    _, ch, v = _point(3)
    # alpha_r = 0 and h_t orthogonal to h_c at every v
    silent = dataclasses.replace(
        ch,
        alpha_r=0.0,
        u_r=np.zeros_like(ch.u_r),
        h_bu=np.zeros_like(ch.h_bu),
        u_c=np.zeros_like(ch.u_c),
    )
    assert np.all(sre_gradient(silent, v) == 0)


def test_gradient_rejects_wrong_length():
    _, ch, _ = _point(4)
    with pytest.raises(DimensionMismatch):
        sre_gradient(ch, np.ones(15, dtype=complex))


def test_gradient_matches_finite_differences():
    worst = 0.0
    for seed in range(20):
        _, ch, v = _point(seed)
        analytic = sre_gradient(ch, v)
        numeric = finite_difference_gradient(ch, v, step=1e-6)
        err = np.max(np.abs(analytic - numeric)) / np.max(np.abs(analytic))
        worst = max(worst, err)
    assert worst < 1e-5


def test_gradient_first_order_contract():
    _, ch, v = _point(5)
    gen = SeededRng(6).generator
    delta = gen.standard_normal(16) + 1j * gen.standard_normal(16)
    delta /= np.linalg.norm(delta)
    eps = 1e-6
    grad = sre_gradient(ch, v)
    lhs = (sre_objective(ch, v.v + eps * delta) - sre_objective(ch, v.v - eps * delta)) / (2 * eps)
    assert lhs == pytest.approx(2 * np.real(np.sum(grad * delta)), rel=1e-6)


def test_gradient_scales_with_sixth_power():
    _, ch, v = _point(7)
    c = 1.7
    scaled = dataclasses.replace(
        ch,
        alpha_t=c * ch.alpha_t,
        alpha_r=c * ch.alpha_r,
        h_bu=c * ch.h_bu,
        u_c=c * ch.u_c,
    )
    assert np.allclose(sre_gradient(scaled, v), c ** 6 * sre_gradient(ch, v), rtol=1e-10, atol=0.0)


def test_riemannian_gradient_is_tangent():
    _, ch, v = _point(8)
    r = riemannian_gradient(v, sre_gradient(ch, v))
    assert np.max(np.abs(np.real(r * np.conj(v.v)))) < 1e-12 * np.max(np.abs(r))


def test_disconnected_ris_stops_immediately():
    _, ch, _ = _point(9)
    phases, trace = run_sre(disconnect_ris(ch), rng=SeededRng(9))
    assert trace.iterations == 1
    assert trace.converged
    assert len(trace.objective) == 1
    assert phases.m == 16


def test_trace_is_monotone_and_unit_modulus():
    _, ch, v = _point(10, m=32)
    phases, trace = run_sre(ch, v0=v)
    assert np.max(np.abs(np.abs(phases.v) - 1.0)) < 1e-12
    assert np.max(np.abs(project(phases.v) - phases.v)) < 1e-15
    diffs = np.diff(trace.objective)
    assert np.all(diffs <= 0.0)
    assert trace.objective[-1] <= sre_objective(ch, v)
    assert len(trace.step_sizes) == len(trace.objective) - 1


def test_run_is_deterministic_in_seed():
    _, ch, _ = _point(11)
    a, _ = run_sre(ch, rng=SeededRng(5))
    b, _ = run_sre(ch, rng=SeededRng(5))
    c, _ = run_sre(ch, rng=SeededRng(6))
    assert np.array_equal(a.v, b.v)
    assert not np.array_equal(a.v, c.v)


def test_converged_point_is_nearly_stationary():
    for seed in range(5):
        _, ch, v = _point(seed, m=4)
        start = np.linalg.norm(riemannian_gradient(v, sre_gradient(ch, v)))
        phases, trace = run_sre(ch, SreParams(tol=1e-14, max_iters=2000), v0=v)
        assert trace.converged
        end = np.linalg.norm(riemannian_gradient(phases, sre_gradient(ch, phases)))
        assert end < 1e-2 * start


def test_two_element_grid_optimum():
    sc, ch, _ = _point(12, m=2)
    mu = np.linspace(0.0, 2.0 * np.pi, 512, endpoint=False)
    best = 0.0
    for mu1 in mu:
        vs = np.stack([np.full(mu.size, np.exp(1j * mu1)), np.exp(1j * mu)], axis=1)
        h_t = ch.alpha_t * (ch.a_t[None, :] + vs @ ch.u_t.T)
        h_r = ch.alpha_r * (ch.a_r[None, :] + vs @ ch.u_r.T)
        h_c = ch.h_bu[None, :] + vs @ ch.u_c.T
        f = -np.sum(np.abs(h_r) ** 2, axis=1) * np.abs(np.sum(np.conj(h_t) * h_c, axis=1)) ** 2
        best = min(best, float(np.min(f)))
    _, trace = run_sre(ch, rng=SeededRng(sc.seed))
    assert trace.objective[-1] <= best * (1 - 1e-4)


def test_disconnected_full_solve_equals_baseline():
    sc = Scenario(m_ris=8, seed=13)
    ch = disconnect_ris(build_channels(sc))
    report = solve_sre(ch, sc)
    baseline = solve_no_ris(ch, sc)
    assert report.metrics.snr_s == pytest.approx(baseline.metrics.snr_s, rel=1e-12)
    assert report.metrics.snr_c == pytest.approx(baseline.metrics.snr_c, rel=1e-12)


def test_solve_full_report():
    report = sre_solve_full(Scenario(m_ris=16, seed=14))
    assert report.algorithm == 'sre'
    assert report.metrics.snr_c >= 10.0 * (1 - 1e-9)
    assert report.iterations >= 1
    assert report.trace == sorted(report.trace, reverse=True)
    assert report.wall_time_ms > 0.0


def test_gamma0_sweep_is_non_increasing():
    previous = math.inf
    for gamma0_db in (0, 3, 6, 9):
        sc = Scenario(m_ris=16, seed=15, gamma0=10 ** (gamma0_db / 10))
        snr_s = sre_solve_full(sc).metrics.snr_s
        assert snr_s <= previous * (1 + 1e-9)
        previous = snr_s


@pytest.mark.slow
def test_monotone_traces_over_seeds():
    for seed in range(50):
        sc = Scenario(seed=seed)
        ch = build_channels(sc)
        _, trace = run_sre(ch, rng=SeededRng(seed))
        assert np.all(np.diff(trace.objective) <= 0.0)
        init = PhaseConfig.random(sc.m_ris, SeededRng(seed).child(1))
        assert trace.objective[-1] <= sre_objective(ch, init)


@pytest.mark.slow
def test_beats_direct_link_on_most_seeds():
    wins = 0
    for seed in range(100):
        sc = Scenario(seed=seed)
        ch = build_channels(sc)
        rotated = solve_sre(ch, sc).metrics.snr_s
        direct = solve_no_ris(ch, sc).metrics.snr_s
        wins += rotated >= direct
    assert wins >= 90


def test_snr_uses_rotated_channels():
    sc = Scenario(m_ris=8, seed=16)
    ch = build_channels(sc)
    report = solve_sre(ch, sc)
    h_t, h_r, _ = assemble_h(ch, report.phases)
    assert sensing_snr(h_t, h_r, report.w, sc.noise_s_w) == pytest.approx(report.metrics.snr_s, rel=1e-12)
