#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Scenario Description
====================
Scene geometry, array sizes and RF parameters of one RIS-assisted ISAC
deployment. Defaults reproduce the reference deployment: 1 W budget,
-60 dBm noise, 64 RIS elements, 15 transmit/receive antennas, 3 GHz
carrier, BS at the origin, RIS at (30, 30) m, target at (40, 0) m and the
user 30 m from the BS.

Authors: superguru, gazorper
License: GPL v3.0
"""

import math
import dataclasses
from dataclasses import dataclass
from typing import Any, Optional

from utils.linalg import ConfigError

SPEED_OF_LIGHT = 299_792_458.0

Point = tuple[float, float]


@dataclass(frozen=True)
class Scenario:
    """Scene geometry and RF parameters (SI units; angles in degrees)."""
    
    bs_pos: Point = (0.0, 0.0)
    ris_pos: Point = (30.0, 30.0)
    target_pos: Point = (40.0, 0.0)
    ue_pos: Optional[Point] = None
    d_bu: float = 30.0
    ue_azimuth_deg: float = -60.0
    bs_axis_deg: float = 90.0
    ris_axis_deg: float = 0.0
    n_tx: int = 15
    n_rx: int = 15
    m_ris: int = 64
    carrier_hz: float = 3e9
    tx_power_w: float = 1.0
    noise_s_w: float = 1e-9
    noise_c_w: float = 1e-9
    gamma0: float = 10.0
    pathloss_exp_bu: float = 3.0
    pathloss_exp_ru: float = 2.2
    seed: int = 0
    
    def __post_init__(self):
        """Validate configuration values"""
        for name in ('n_tx', 'n_rx', 'm_ris'):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        for name in ('carrier_hz', 'tx_power_w', 'noise_s_w', 'noise_c_w', 'gamma0', 'd_bu'):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0:
                raise ConfigError(f"{name} must be positive, got {value!r}")
        for name in ('pathloss_exp_bu', 'pathloss_exp_ru'):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ConfigError(f"{name} must be non-negative, got {value!r}")
        
        for name in ('bs_pos', 'ris_pos', 'target_pos'):
            object.__setattr__(self, name, _as_point(name, getattr(self, name)))
        if self.ue_pos is not None:
            object.__setattr__(self, 'ue_pos', _as_point('ue_pos', self.ue_pos))
    
    @property
    def wavelength(self) -> float:
        """Carrier wavelength in meters."""
        return SPEED_OF_LIGHT / self.carrier_hz
    
    @property
    def user_pos(self) -> Point:
        """
        User position.
        
        The explicit ue_pos when given, otherwise d_bu meters from the BS at
        ue_azimuth_deg from the BS->target axis.
        """
        if self.ue_pos is not None:
            return self.ue_pos
        bx, by = self.bs_pos
        tx, ty = self.target_pos
        heading = math.atan2(ty - by, tx - bx) + math.radians(self.ue_azimuth_deg)
        return (bx + self.d_bu * math.cos(heading), by + self.d_bu * math.sin(heading))
    
    def distances(self) -> dict[str, float]:
        """
        Pairwise node distances used by the channel model.
        
        Returns:
            Mapping of link name to distance in meters
        """
        nodes = {
            'bs': self.bs_pos,
            'ris': self.ris_pos,
            'target': self.target_pos,
            'ue': self.user_pos,
        }
        names = list(nodes)
        result = {}
        for i, a in enumerate(names):
            for b in names[i + 1:]:
                result[f"{a}-{b}"] = math.dist(nodes[a], nodes[b])
        return result
    
    def with_overrides(self, **changes: Any) -> 'Scenario':
        """Return a copy with the given fields replaced (and re-validated)."""
        return dataclasses.replace(self, **changes)


def _as_point(name: str, value: Any) -> Point:
    try:
        x, y = value
        point = (float(x), float(y))
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a pair of coordinates [x, y], got {value!r}")
    if not all(math.isfinite(c) for c in point):
        raise ConfigError(f"{name} must be finite, got {value!r}")
    return point
