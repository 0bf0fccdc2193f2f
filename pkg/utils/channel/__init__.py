#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Channel - Scene Geometry and Channel Synthesis
==============================================
Scenario description, steering vectors, path coefficients, RIS cascade
matrices and the per-element channel decomposition.

Authors: superguru, gazorper
License: GPL v3.0
"""

from .scenario import Scenario, SPEED_OF_LIGHT
from .channels import (
    MIN_SEPARATION_M,
    ChannelSet,
    PhaseConfig,
    PerElementTerms,
    steering_vector,
    free_space_gain,
    path_coefficient,
    array_angle,
    project,
    build_channels,
    disconnect_ris,
    assemble_h,
    decompose_element,
)

__version__ = '1.0.0'
__all__ = [
    'Scenario',
    'SPEED_OF_LIGHT',
    'MIN_SEPARATION_M',
    'ChannelSet',
    'PhaseConfig',
    'PerElementTerms',
    'steering_vector',
    'free_space_gain',
    'path_coefficient',
    'array_angle',
    'project',
    'build_channels',
    'disconnect_ris',
    'assemble_h',
    'decompose_element',
]
