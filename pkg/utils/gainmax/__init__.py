#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
GainMax - Alternating-Optimization Benchmark Solver
===================================================
Per-element closed-form RIS phase updates alternated with the optimal
beamformer.

Authors: superguru, gazorper
License: GPL v3.0
"""

from .element import (
    FeasibilityKind,
    Feasibility,
    PhaseCandidates,
    per_element_objective,
    stationary_angles,
    feasibility_arc,
    exact_stationary_angles,
    element_candidates,
    select_phase,
    optimize_element,
    restore_feasibility,
)
from .optimizer import AoParams, solve_gain_max, run_gain_max

__version__ = '1.0.0'
__all__ = [
    'FeasibilityKind',
    'Feasibility',
    'PhaseCandidates',
    'per_element_objective',
    'stationary_angles',
    'feasibility_arc',
    'exact_stationary_angles',
    'element_candidates',
    'select_phase',
    'optimize_element',
    'restore_feasibility',
    'AoParams',
    'solve_gain_max',
    'run_gain_max',
]
