#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
SRE - Subspace Rotation and Expansion Solver
============================================
Gradient-projection RIS phase search plus the closed-form beamformer.

Authors: superguru, gazorper
License: GPL v3.0
"""

from .optimizer import (
    SreParams,
    SreTrace,
    sre_objective,
    sre_gradient,
    riemannian_gradient,
    run_sre,
    solve_sre,
    sre_solve_full,
)

__version__ = '1.0.0'
__all__ = [
    'SreParams',
    'SreTrace',
    'sre_objective',
    'sre_gradient',
    'riemannian_gradient',
    'run_sre',
    'solve_sre',
    'sre_solve_full',
]
