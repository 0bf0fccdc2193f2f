#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Linalg - Complex Linear Algebra Kernel for RISAC Bench
======================================================
Dense complex vector helpers, seeded random streams and the shared
exception hierarchy.

Authors: superguru, gazorper
License: GPL v3.0
"""

from .errors import (
    RisacError,
    DimensionMismatch,
    IndexOutOfRange,
    DegenerateGeometry,
    ZeroChannel,
    Infeasible,
    DegenerateSpan,
    DegenerateObjective,
    ConfigError,
    EmptyInput,
)
from .kernel import (
    ComplexVector,
    ComplexMatrix,
    as_vector,
    as_matrix,
    check_same_length,
    hermitian_inner,
    norm2,
    matvec,
    matmul,
    conj_transpose,
    scale,
    add,
    unit_phase,
)
from .rng import SeededRng, sample_cn01, STREAM_CHANNELS, STREAM_PHASE_INIT

__version__ = '1.0.0'
__all__ = [
    'RisacError',
    'DimensionMismatch',
    'IndexOutOfRange',
    'DegenerateGeometry',
    'ZeroChannel',
    'Infeasible',
    'DegenerateSpan',
    'DegenerateObjective',
    'ConfigError',
    'EmptyInput',
    'ComplexVector',
    'ComplexMatrix',
    'as_vector',
    'as_matrix',
    'check_same_length',
    'hermitian_inner',
    'norm2',
    'matvec',
    'matmul',
    'conj_transpose',
    'scale',
    'add',
    'unit_phase',
    'SeededRng',
    'sample_cn01',
    'STREAM_CHANNELS',
    'STREAM_PHASE_INIT',
]
