#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Run Configuration
=================
Everything one experiment run needs: the scenario, which solvers to run,
the sweep, Monte-Carlo size, base seed, output location and solver
parameters.

File layout (config/risac.toml):

    m_ris = 64            # flat Scenario keys at top level
    gamma0_db = 10

    [run]
    algorithm = "all"     # sre | benchmark | no-ris | all
    sweep = "gamma0"      # gamma0 | ris-size | none
    grid = [0, 3, 6]      # dB for gamma0, element counts for ris-size
    trials = 100
    seed = 0
    out_dir = "results"
    jobs = 1

    [sre]
    max_iters = 500

    [gain_max]
    k_max = 30

Authors: superguru, gazorper
License: GPL v3.0
"""

import dataclasses
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional, Union

from utils.channel import Scenario
from utils.gainmax import AoParams
from utils.linalg import ConfigError
from utils.sre import SreParams
from .scenario import scenario_from_dict, scenario_keys
from .tools import read_toml

ALGORITHMS = ('sre', 'benchmark', 'no-ris')
ALGORITHM_CHOICES = ALGORITHMS + ('all',)
SWEEPS = ('gamma0', 'ris-size', 'none')
DEFAULT_GRIDS: dict[str, tuple[float, ...]] = {
    'gamma0': tuple(float(x) for x in range(0, 22, 3)),
    'ris-size': (16.0, 32.0, 64.0, 128.0, 256.0),
    'none': (),
}
RUN_KEYS = frozenset({'algorithm', 'sweep', 'grid', 'trials', 'seed', 'out_dir', 'jobs'})
TABLES = frozenset({'run', 'sre', 'gain_max'})


@dataclass(frozen=True)
class RunConfig:
    """Validated configuration of one experiment run."""

    scenario: Scenario = field(default_factory=Scenario)
    algorithm: str = 'all'
    sweep: str = 'none'
    grid: tuple[float, ...] = ()
    trials: int = 1
    seed: int = 0
    out_dir: Path = Path('results')
    jobs: int = 1
    sre: SreParams = field(default_factory=SreParams)
    gain_max: AoParams = field(default_factory=AoParams)
    config_path: Optional[Path] = None

    def __post_init__(self):
        """Validate configuration values and fill the default grid"""
        if self.algorithm not in ALGORITHM_CHOICES:
            raise ConfigError(f"algorithm must be one of {', '.join(ALGORITHM_CHOICES)}, got {self.algorithm!r}")
        if self.sweep not in SWEEPS:
            raise ConfigError(f"sweep must be one of {', '.join(SWEEPS)}, got {self.sweep!r}")
        for name in ('trials', 'jobs'):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError(f"seed must be a non-negative integer, got {self.seed!r}")

        grid = tuple(float(g) for g in self.grid) if self.grid else DEFAULT_GRIDS[self.sweep]
        if self.sweep == 'none':
            grid = ()
        for value in grid:
            if not math.isfinite(value):
                raise ConfigError(f"grid values must be finite, got {value!r}")
            if self.sweep == 'ris-size' and (value < 1 or value != int(value)):
                raise ConfigError(f"ris-size grid values must be positive integers, got {value!r}")
        object.__setattr__(self, 'grid', grid)
        object.__setattr__(self, 'out_dir', Path(self.out_dir))

    @property
    def algorithms(self) -> tuple[str, ...]:
        """Solvers selected by the algorithm field."""
        return ALGORITHMS if self.algorithm == 'all' else (self.algorithm,)

    @property
    def sweep_values(self) -> tuple[float, ...]:
        """Grid to iterate; a single NaN placeholder when not sweeping."""
        return self.grid if self.sweep != 'none' else (math.nan,)

    def scenario_at(self, sweep_value: float, seed: int) -> Scenario:
        """Scenario for one (sweep value, trial seed) cell."""
        changes: dict[str, Any] = {'seed': seed}
        if self.sweep == 'gamma0':
            changes['gamma0'] = 10.0 ** (sweep_value / 10.0)
        elif self.sweep == 'ris-size':
            changes['m_ris'] = int(sweep_value)
        return self.scenario.with_overrides(**changes)

    def to_dict(self) -> dict[str, Any]:
        """Plain-data echo of the configuration (for the run manifest)."""
        scenario = {}
        for f in dataclasses.fields(self.scenario):
            value = getattr(self.scenario, f.name)
            if value is None:
                continue
            scenario[f.name] = list(value) if isinstance(value, tuple) else value
        return {
            'config_path': str(self.config_path) if self.config_path else '',
            'run': {
                'algorithm': self.algorithm,
                'sweep': self.sweep,
                'grid': list(self.grid),
                'trials': self.trials,
                'seed': self.seed,
                'out_dir': str(self.out_dir),
                'jobs': self.jobs,
            },
            'scenario': scenario,
            'sre': dataclasses.asdict(self.sre),
            'gain_max': dataclasses.asdict(self.gain_max),
        }


def _section(data: dict[str, Any], name: str) -> dict[str, Any]:
    value = data.get(name, {})
    if not isinstance(value, dict):
        raise ConfigError(f"[{name}] must be a table")
    return value


def _params(cls: type, name: str, data: dict[str, Any]) -> Any:
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"Unknown [{name}] key(s): {', '.join(unknown)}")
    try:
        return cls(**data)
    except TypeError as e:
        raise ConfigError(f"Invalid [{name}] section: {e}")


def run_config_from_dict(
    data: dict[str, Any],
    overrides: Optional[dict[str, Any]] = None,
    config_path: Optional[Path] = None,
) -> RunConfig:
    """
    Build a RunConfig from parsed TOML content plus command-line overrides.

    overrides holds [run] keys; None values are ignored.

    Raises:
        ConfigError: On unknown keys/tables or invalid values
    """
    tables = {k for k, v in data.items() if isinstance(v, dict)}
    unknown_tables = sorted(tables - TABLES)
    if unknown_tables:
        raise ConfigError(f"Unknown table(s): {', '.join(unknown_tables)}")

    scenario = scenario_from_dict(scenario_keys(data))
    run = dict(_section(data, 'run'))
    unknown = sorted(set(run) - RUN_KEYS)
    if unknown:
        raise ConfigError(f"Unknown [run] key(s): {', '.join(unknown)}")
    for key, value in (overrides or {}).items():
        if key not in RUN_KEYS:
            raise ConfigError(f"Unknown run override: {key}")
        if value is not None:
            run[key] = value

    grid = run.get('grid', ())
    if not isinstance(grid, (list, tuple)):
        raise ConfigError(f"grid must be an array, got {grid!r}")
    for value in grid:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"grid values must be numbers, got {value!r}")

    return RunConfig(
        scenario=scenario,
        algorithm=run.get('algorithm', 'all'),
        sweep=run.get('sweep', 'none'),
        grid=tuple(grid),
        trials=run.get('trials', 1),
        seed=run.get('seed', scenario.seed),
        out_dir=Path(run.get('out_dir', 'results')),
        jobs=run.get('jobs', 1),
        sre=_params(SreParams, 'sre', _section(data, 'sre')),
        gain_max=_params(AoParams, 'gain_max', _section(data, 'gain_max')),
        config_path=config_path,
    )


def load_run_config(path: Union[str, Path], overrides: Optional[dict[str, Any]] = None) -> RunConfig:
    """
    Load a run configuration file.

    Raises:
        ConfigError: If the file is missing, unparsable or invalid
    """
    path = Path(path)
    try:
        data = read_toml(path)
    except (FileNotFoundError, ValueError) as e:
        raise ConfigError(str(e))
    return run_config_from_dict(data, overrides, path)
