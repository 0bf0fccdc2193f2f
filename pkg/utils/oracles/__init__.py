#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Oracles - Brute-Force References for RISAC Bench
================================================
Grid searches, literal channel evaluation, finite-difference gradients
and bootstrap intervals for the test suite.

Authors: superguru, gazorper
License: GPL v3.0
"""

from .oracles import (
    GridOptimum,
    ElementGrid,
    direct_channels,
    beamformer_grid_oracle,
    element_grid,
    joint_phase_grid_oracle,
    finite_difference_gradient,
    bootstrap_mean_ci,
)

__version__ = '1.0.0'
__all__ = [
    'GridOptimum',
    'ElementGrid',
    'direct_channels',
    'beamformer_grid_oracle',
    'element_grid',
    'joint_phase_grid_oracle',
    'finite_difference_gradient',
    'bootstrap_mean_ci',
]
