#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Scenario Configuration
======================
Turns the flat top-level keys of a run configuration into a Scenario.

Every key is optional (defaults are the reference deployment). Noise
powers may be given in watts or dBm, the SNR threshold linear or in dB.

Authors: superguru, gazorper
License: GPL v3.0
"""

import dataclasses
import math
from pathlib import Path
from typing import Any, Union

from utils.channel import Scenario
from utils.linalg import ConfigError
from .tools import read_toml

POINT_KEYS = ('bs_pos', 'ris_pos', 'target_pos', 'ue_pos')
INT_KEYS = ('n_tx', 'n_rx', 'm_ris', 'seed')
FLOAT_KEYS = (
    'd_bu', 'ue_azimuth_deg', 'bs_axis_deg', 'ris_axis_deg', 'carrier_hz', 'tx_power_w',
    'noise_s_w', 'noise_c_w', 'gamma0', 'pathloss_exp_bu', 'pathloss_exp_ru',
)
# Alternate-unit key -> Scenario field it sets
DERIVED_KEYS = {
    'noise_s_dbm': 'noise_s_w',
    'noise_c_dbm': 'noise_c_w',
    'gamma0_db': 'gamma0',
}
SCENARIO_KEYS = frozenset(POINT_KEYS + INT_KEYS + FLOAT_KEYS) | frozenset(DERIVED_KEYS)


def dbm_to_watts(dbm: float) -> float:
    """Power in dBm to watts."""
    return 10.0 ** ((dbm - 30.0) / 10.0)


def _number(key: str, value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    return float(value)


def _integer(key: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{key} must be an integer, got {value!r}")
    return value


def _point(key: str, value: Any) -> tuple[float, float]:
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ConfigError(f"{key} must be a two-element array [x, y], got {value!r}")
    return (_number(key, value[0]), _number(key, value[1]))


def scenario_from_dict(data: dict[str, Any], base: Scenario = Scenario()) -> Scenario:
    """
    Build a Scenario from flat key/value pairs layered over base.

    Raises:
        ConfigError: On unknown keys, wrong types, conflicting units or
            values the Scenario rejects
    """
    unknown = sorted(set(data) - SCENARIO_KEYS)
    if unknown:
        raise ConfigError(f"Unknown scenario key(s): {', '.join(unknown)}")

    changes: dict[str, Any] = {}
    for key, value in data.items():
        if key in POINT_KEYS:
            changes[key] = _point(key, value)
        elif key in INT_KEYS:
            changes[key] = _integer(key, value)
        elif key in FLOAT_KEYS:
            changes[key] = _number(key, value)

    for key, target in DERIVED_KEYS.items():
        if key not in data:
            continue
        if target in data:
            raise ConfigError(f"Give either {target} or {key}, not both")
        value = _number(key, data[key])
        changes[target] = 10.0 ** (value / 10.0) if key == 'gamma0_db' else dbm_to_watts(value)

    if 'seed' in changes and changes['seed'] < 0:
        raise ConfigError(f"seed must be non-negative, got {changes['seed']}")
    for key, value in changes.items():
        if isinstance(value, float) and not math.isfinite(value):
            raise ConfigError(f"{key} must be finite, got {value!r}")

    return dataclasses.replace(base, **changes)


def scenario_keys(data: dict[str, Any]) -> dict[str, Any]:
    """The top-level (non-table) entries of a parsed configuration."""
    return {k: v for k, v in data.items() if not isinstance(v, dict)}


def load_scenario(path: Union[str, Path]) -> Scenario:
    """
    Load the Scenario part of a configuration file.

    Raises:
        FileNotFoundError: If the file does not exist
        ConfigError: If the file or a key is invalid
    """
    path = Path(path)
    try:
        data = read_toml(path)
    except ValueError as e:
        raise ConfigError(str(e))
    return scenario_from_dict(scenario_keys(data))
