#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Solve Reports
=============
Common result record returned by every solver.

Authors: superguru, gazorper
License: GPL v3.0
"""

import time
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Optional

from utils.channel import ChannelSet, PhaseConfig, Scenario, assemble_h, disconnect_ris
from utils.linalg import ComplexVector
from .beamformer import optimal_beamformer
from .metrics import Metrics, compute_metrics

if TYPE_CHECKING:
    from utils.rslogging import LoggingContext


@dataclass
class SolveReport:
    """
    Outcome of one solve.

    trace holds the solver's monitored objective per accepted iteration
    (f(v) for SRE, exact SNR_s for gain-max); comm_trace the matching
    SNR_c values when the solver tracks them.
    """

    algorithm: str
    w: ComplexVector
    phases: PhaseConfig
    metrics: Metrics
    trace: list[float] = field(default_factory=list)
    comm_trace: list[float] = field(default_factory=list)
    iterations: int = 0
    element_updates: int = 0
    converged: bool = True
    wall_time_ms: float = 0.0

    def summary(self) -> str:
        """One-line human readable digest."""
        return (
            f"{self.algorithm}: SNR_s={self.metrics.snr_s_db:.3f} dB "
            f"SNR_c={self.metrics.snr_c_db:.3f} dB |rho|={self.metrics.rho_abs:.4f} "
            f"iters={self.iterations} converged={self.converged} "
            f"time={self.wall_time_ms:.2f} ms"
        )


def solve_no_ris(ch: ChannelSet, sc: Scenario, log: Optional['LoggingContext'] = None) -> SolveReport:
    """
    The w/oRIS baseline: optimal beamformer on the direct paths only.

    Raises:
        Infeasible: If the direct user link cannot reach gamma0
    """
    started = time.perf_counter()
    direct = disconnect_ris(ch)
    phases = PhaseConfig.ones(ch.m_ris)
    h_t, h_r, h_c = assemble_h(direct, phases)
    bf = optimal_beamformer(h_t, h_c, sc.tx_power_w, sc.gamma0, sc.noise_c_w)
    metrics = compute_metrics(h_t, h_r, h_c, bf.w, sc.noise_s_w, sc.noise_c_w)
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    if log:
        log.dbg(f"no-ris: case {bf.case}, SNR_s {metrics.snr_s_db:.3f} dB")
    return SolveReport(
        algorithm='no-ris',
        w=bf.w,
        phases=phases,
        metrics=metrics,
        iterations=1,
        wall_time_ms=elapsed_ms,
    )

