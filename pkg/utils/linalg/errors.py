#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
RISAC Error Types
=================
Exception hierarchy shared by every RISAC Bench tool.

Value-type failures also derive from ValueError (or IndexError) so callers
that only know the builtin types keep working.

Authors: superguru, gazorper
License: GPL v3.0
"""


class RisacError(Exception):
    """Base class for all RISAC Bench errors."""


class DimensionMismatch(RisacError, ValueError):
    """Operand shapes do not conform."""


class IndexOutOfRange(RisacError, IndexError):
    """RIS element index outside 0..M-1."""


class DegenerateGeometry(RisacError, ValueError):
    """Two scene nodes are closer than the minimum separation."""


class ZeroChannel(RisacError, ValueError):
    """A channel vector has zero norm where a direction is required."""


class Infeasible(RisacError, ValueError):
    """No beamformer within the power budget meets the SNR threshold."""


class DegenerateSpan(RisacError, ValueError):
    """Sensing and communication channels are parallel and case 1 failed."""


class DegenerateObjective(RisacError, ValueError):
    """Per-element objective does not depend on the phase angle."""


class ConfigError(RisacError, ValueError):
    """Configuration file or command-line value is invalid."""


class EmptyInput(RisacError, ValueError):
    """An aggregate was requested over no rows."""
