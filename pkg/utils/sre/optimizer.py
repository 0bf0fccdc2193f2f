#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Subspace Rotation and Expansion
===============================
Chooses the RIS phases that maximize ||h_r||^2 |h_t^H h_c|^2, i.e. that
jointly grow the channel norms and align the sensing and communication
channels, then applies the closed-form beamformer on the result.

The phase search minimizes f(v) = -||h_r(v)||^2 |h_t(v)^H h_c(v)|^2 over
the unit-modulus torus by projected gradient descent with a backtracking
line search.

Gradient convention: sre_gradient returns the row vector g with
df = 2 Re{g . dv}; the steepest-descent direction in C^M is -g^H.

Authors: superguru, gazorper
License: GPL v3.0
"""

import math
import time
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional, Union

import numpy as np

from utils.beamforming import SolveReport, compute_metrics, optimal_beamformer
from utils.channel import ChannelSet, PhaseConfig, Scenario, assemble_h, build_channels, project
from utils.linalg import (
    ComplexVector,
    ConfigError,
    DimensionMismatch,
    SeededRng,
    STREAM_PHASE_INIT,
    as_vector,
    norm2,
)

if TYPE_CHECKING:
    from utils.rslogging import LoggingContext

PhaseLike = Union[PhaseConfig, np.ndarray]


@dataclass(frozen=True)
class SreParams:
    """Stopping and line-search parameters of the phase search."""

    max_iters: int = 500
    tol: float = 1e-8
    bt_alpha: float = 0.3
    bt_beta: float = 0.5
    init_step: float = 1.0
    max_backtracks: int = 60

    def __post_init__(self):
        """Validate parameter ranges"""
        if not isinstance(self.max_iters, int) or self.max_iters < 1:
            raise ConfigError(f"sre.max_iters must be a positive integer, got {self.max_iters!r}")
        if not isinstance(self.max_backtracks, int) or self.max_backtracks < 1:
            raise ConfigError(f"sre.max_backtracks must be a positive integer, got {self.max_backtracks!r}")
        if not self.tol > 0:
            raise ConfigError(f"sre.tol must be positive, got {self.tol!r}")
        if not 0.0 < self.bt_alpha < 0.5:
            raise ConfigError(f"sre.bt_alpha must lie in (0, 0.5), got {self.bt_alpha!r}")
        if not 0.0 < self.bt_beta < 1.0:
            raise ConfigError(f"sre.bt_beta must lie in (0, 1), got {self.bt_beta!r}")
        if not self.init_step > 0:
            raise ConfigError(f"sre.init_step must be positive, got {self.init_step!r}")


@dataclass
class SreTrace:
    """History of one phase search."""

    v: PhaseConfig
    objective: list[float] = field(default_factory=list)
    step_sizes: list[float] = field(default_factory=list)
    iterations: int = 0
    backtracks: int = 0
    converged: bool = False


def _phases(ch: ChannelSet, v: PhaseLike) -> ComplexVector:
    vec = v.v if isinstance(v, PhaseConfig) else as_vector(v, "v")
    if vec.shape[0] != ch.m_ris:
        raise DimensionMismatch(f"phase vector has length {vec.shape[0]}, RIS has {ch.m_ris} elements")
    return vec


def sre_objective(ch: ChannelSet, v: PhaseLike) -> float:
    """f(v) = -||h_r(v)||^2 |h_t(v)^H h_c(v)|^2 (always <= 0)."""
    h_t, h_r, h_c = assemble_h(ch, _phases(ch, v))
    return -norm2(h_r) * abs(np.vdot(h_t, h_c)) ** 2


def sre_gradient(ch: ChannelSet, v: PhaseLike) -> ComplexVector:
    """
    Row gradient of f at v.

    With f0 = -||h_r||^2, f1 = h_t^H h_c and f2 = conj(f1):

        grad f  = f1 f2 grad f0 + f0 f2 grad f1 + f0 f1 grad f2
        grad f0 = -|alpha_r|^2 (a_r^H U_r + v^H U_r^H U_r) = -alpha_r h_r^H U_r
        grad f1 = conj(alpha_t) (a_t^H U_c + v^H U_t^H U_c) = h_t^H U_c
        grad f2 = alpha_t (h_BU^H U_t + v^H U_c^H U_t) = alpha_t h_c^H U_t

    Raises:
        DimensionMismatch: If len(v) != M
    """
    vec = _phases(ch, v)
    h_t, h_r, h_c = assemble_h(ch, vec)
    f0 = -norm2(h_r)
    f1 = complex(np.vdot(h_t, h_c))
    f2 = f1.conjugate()

    grad_f0 = -ch.alpha_r * (np.conj(h_r) @ ch.u_r)
    grad_f1 = np.conj(h_t) @ ch.u_c
    grad_f2 = ch.alpha_t * (np.conj(h_c) @ ch.u_t)
    return f1 * f2 * grad_f0 + f0 * f2 * grad_f1 + f0 * f1 * grad_f2


def riemannian_gradient(v: PhaseLike, grad: np.ndarray) -> ComplexVector:
    """
    Descent-space gradient with its radial part removed per element.

    r_m = conj(g_m) - Re{conj(g_m) conj(v_m)} v_m, tangent to the unit
    circle at v_m. Zero at stationary points of f on the torus.
    """
    vec = v.v if isinstance(v, PhaseConfig) else as_vector(v, "v")
    direction = np.conj(as_vector(grad, "grad"))
    return direction - np.real(direction * np.conj(vec)) * vec


def run_sre(
    ch: ChannelSet,
    params: Optional[SreParams] = None,
    rng: Optional[SeededRng] = None,
    v0: Optional[PhaseConfig] = None,
    log: Optional['LoggingContext'] = None,
) -> tuple[PhaseConfig, SreTrace]:
    """
    Projected gradient descent on the unit-modulus torus.

    Starts from v0, or from uniform random phases on the phase-init child
    stream of rng. Every accepted step satisfies the sufficient-decrease
    test measured after projection, so the objective trace never rises.

    Args:
        ch: Channel set
        params: Search parameters (defaults when omitted)
        rng: Parent random stream for the initial phases
        v0: Explicit starting phases
        log: Optional logging context

    Returns:
        (final phases, trace)
    """
    params = params if params is not None else SreParams()
    if v0 is None:
        parent = rng if rng is not None else SeededRng(0)
        v0 = PhaseConfig.random(ch.m_ris, parent.child(STREAM_PHASE_INIT))
    v = np.array(_phases(ch, v0))
    f = sre_objective(ch, v)
    trace = SreTrace(v=PhaseConfig(v), objective=[f])

    for k in range(1, params.max_iters + 1):
        trace.iterations = k
        grad = sre_gradient(ch, v)
        grad_norm = math.sqrt(norm2(grad))
        if grad_norm == 0.0 or norm2(riemannian_gradient(v, grad)) == 0.0:
            trace.converged = True
            break

        step = params.init_step / grad_norm
        accepted = False
        for _ in range(params.max_backtracks):
            candidate = project(v - step * np.conj(grad))
            decrease = 2.0 * float(np.real(np.sum(grad * (candidate - v))))
            f_new = sre_objective(ch, candidate)
            if f_new <= f and f_new <= f + params.bt_alpha * decrease:
                accepted = True
                break
            step *= params.bt_beta
            trace.backtracks += 1
        if not accepted:
            # No representable descent left along the projection arc
            trace.converged = True
            if log:
                log.dbg(f"sre: line search exhausted at iteration {k}, f={f:.6e}")
            break

        f_prev = f
        v, f = candidate, f_new
        trace.objective.append(f)
        trace.step_sizes.append(step)
        if log and k % 50 == 0:
            log.dbg(f"sre: iteration {k}, f={f:.6e}, step={step:.3e}")
        if abs(f - f_prev) < params.tol * abs(f_prev):
            trace.converged = True
            break

    trace.v = PhaseConfig(v)
    if log:
        log.dbg(f"sre: {trace.iterations} iterations, converged={trace.converged}, f={f:.6e}")
    return trace.v, trace


def solve_sre(
    ch: ChannelSet,
    sc: Scenario,
    params: Optional[SreParams] = None,
    rng: Optional[SeededRng] = None,
    log: Optional['LoggingContext'] = None,
) -> SolveReport:
    """
    Phase search followed by the closed-form beamformer on the rotated channels.

    Raises:
        Infeasible: If the rotated communication channel cannot reach gamma0
    """
    started = time.perf_counter()
    rng = rng if rng is not None else SeededRng(sc.seed)
    phases, trace = run_sre(ch, params, rng, log=log)
    h_t, h_r, h_c = assemble_h(ch, phases)
    bf = optimal_beamformer(h_t, h_c, sc.tx_power_w, sc.gamma0, sc.noise_c_w)
    metrics = compute_metrics(h_t, h_r, h_c, bf.w, sc.noise_s_w, sc.noise_c_w)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    return SolveReport(
        algorithm='sre',
        w=bf.w,
        phases=phases,
        metrics=metrics,
        trace=trace.objective,
        iterations=trace.iterations,
        converged=trace.converged,
        wall_time_ms=elapsed_ms,
    )


def sre_solve_full(
    sc: Scenario,
    params: Optional[SreParams] = None,
    log: Optional['LoggingContext'] = None,
) -> SolveReport:
    """Build the scenario's channels and solve them with SRE."""
    ch = build_channels(sc)
    return solve_sre(ch, sc, params, SeededRng(sc.seed), log)
