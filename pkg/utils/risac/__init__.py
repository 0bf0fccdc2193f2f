#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
RISAC - Experiment Runner for RISAC Bench
=========================================
Threshold and RIS-size sweeps, per-trial CSV rows, summaries and run
manifests.

Authors: superguru, gazorper
License: GPL v3.0
"""

from .results import ResultRow, rows_to_frames, summarize, write_csv, build_manifest
from .runner import (
    ExperimentResult,
    trial_seed,
    run_cell,
    run_experiment,
    write_outputs,
    main,
)

__version__ = '1.0.0'
__all__ = [
    'ResultRow',
    'rows_to_frames',
    'summarize',
    'write_csv',
    'build_manifest',
    'ExperimentResult',
    'trial_seed',
    'run_cell',
    'run_experiment',
    'write_outputs',
    'main',
]
