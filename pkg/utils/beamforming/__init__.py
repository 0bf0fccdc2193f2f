#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Beamforming - Metrics and the Closed-Form ISAC Beamformer
=========================================================
Sensing/communication SNRs, channel correlation, the optimal beamformer
for a fixed RIS configuration and the w/oRIS baseline.

Authors: superguru, gazorper
License: GPL v3.0
"""

from .metrics import (
    Metrics,
    to_db,
    from_db,
    sensing_snr,
    comm_snr,
    correlation,
    compute_metrics,
)
from .beamformer import (
    FEASIBILITY_SLACK,
    Beamformer,
    RegimePrediction,
    is_feasible,
    optimal_beamformer,
    correlation_regime_prediction,
)
from .report import SolveReport, solve_no_ris

__version__ = '1.0.0'
__all__ = [
    'Metrics',
    'to_db',
    'from_db',
    'sensing_snr',
    'comm_snr',
    'correlation',
    'compute_metrics',
    'FEASIBILITY_SLACK',
    'Beamformer',
    'RegimePrediction',
    'is_feasible',
    'optimal_beamformer',
    'correlation_regime_prediction',
    'SolveReport',
    'solve_no_ris',
]
