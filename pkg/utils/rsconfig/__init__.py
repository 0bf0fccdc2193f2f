#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
RSConfig - Configuration Management for RISAC Bench
===================================================
Access to the project configuration files:

- Tools configuration (tools.toml, logrotate.toml)
- Scenario keys of a run configuration
- Run configuration (risac.toml and friends)

Authors: superguru, gazorper
License: GPL v3.0
"""

from .tools import (
    LogRotation,
    ToolsEnvironment,
    ToolsConfig,
    find_project_root,
    read_toml,
    parse_tools_config,
    get_tools_config,
)
from .scenario import SCENARIO_KEYS, dbm_to_watts, scenario_from_dict, load_scenario
from .run import (
    ALGORITHMS,
    SWEEPS,
    DEFAULT_GRIDS,
    RunConfig,
    run_config_from_dict,
    load_run_config,
)

__all__ = [
    'LogRotation',
    'ToolsEnvironment',
    'ToolsConfig',
    'find_project_root',
    'read_toml',
    'parse_tools_config',
    'get_tools_config',
    'SCENARIO_KEYS',
    'dbm_to_watts',
    'scenario_from_dict',
    'load_scenario',
    'ALGORITHMS',
    'SWEEPS',
    'DEFAULT_GRIDS',
    'RunConfig',
    'run_config_from_dict',
    'load_run_config',
]

__version__ = '1.0.0'
