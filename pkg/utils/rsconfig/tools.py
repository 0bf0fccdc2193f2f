#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Tools Configuration Handler
============================
Reads config/tools.toml (logging environments and per-tool log rotation
overrides) and config/logrotate.toml (global rotation defaults).

Authors: superguru, gazorper
License: GPL v3.0
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

try:
    import tomllib  # Python 3.11+
except ModuleNotFoundError:
    try:
        import tomli as tomllib  # type: ignore # Fallback for Python < 3.11
    except ModuleNotFoundError:
        tomllib = None  # type: ignore

DEFAULT_COMPRESS = True
DEFAULT_ROTATION_COUNT = 30


def find_project_root() -> Path:
    """
    Locate the repository root (the directory holding config/).

    Raises:
        FileNotFoundError: If no config/ directory is found upward
    """
    current = Path(__file__).resolve().parent
    while current.parent != current:
        if (current / 'config').is_dir():
            return current
        current = current.parent
    raise FileNotFoundError(
        f"Could not find project root (no config/ directory above {Path(__file__).resolve()})"
    )


def read_toml(path: Path) -> dict[str, Any]:
    """
    Parse a TOML file.

    Raises:
        FileNotFoundError: If path does not exist
        ImportError: If no TOML parser is installed
        ValueError: If the file is not valid TOML
    """
    if tomllib is None:
        raise ImportError("No TOML library available. Use Python 3.11+ or: pip install tomli")
    if not path.exists():
        raise FileNotFoundError(f"Configuration file not found: {path}")
    try:
        with open(path, 'rb') as f:
            return tomllib.load(f)
    except tomllib.TOMLDecodeError as e:
        raise ValueError(f"Failed to parse {path.name}: {e}")


@dataclass(frozen=True)
class LogRotation:
    """How many old day-logs to keep and whether to zip them."""

    compress: bool = DEFAULT_COMPRESS
    rotation_count: int = DEFAULT_ROTATION_COUNT

    def __post_init__(self):
        """Validate configuration values"""
        if not isinstance(self.rotation_count, int) or self.rotation_count < 0:
            raise ValueError(f"rotation_count must be a non-negative integer, got {self.rotation_count!r}")


@dataclass(frozen=True)
class ToolsEnvironment:
    """One [environments.<name>] entry of tools.toml."""

    name: str
    log_dir: str
    description: str = ''
    tool_overrides: dict[str, dict[str, Any]] = field(default_factory=dict)
    root: Optional[Path] = None

    @property
    def log_directory_path(self) -> Path:
        """logs/<log_dir> under the project root."""
        root = self.root if self.root is not None else find_project_root()
        return root / 'logs' / self.log_dir

    def rotation_for(self, tool_name: str) -> LogRotation:
        """
        Rotation settings for a tool: logrotate.toml defaults overridden by
        [tools.<tool_name>] in tools.toml. Unreadable defaults fall back to
        the built-in values.
        """
        compress, count = DEFAULT_COMPRESS, DEFAULT_ROTATION_COUNT
        try:
            root = self.root if self.root is not None else find_project_root()
            rotation = read_toml(root / 'config' / 'logrotate.toml').get('rotation', {})
            compress = rotation.get('compress', compress)
            count = rotation.get('rotation_count', count)
        except (FileNotFoundError, ImportError, ValueError):
            pass
        override = self.tool_overrides.get(tool_name, {})
        return LogRotation(
            compress=bool(override.get('compress', compress)),
            rotation_count=override.get('rotation_count', count),
        )

    def __str__(self) -> str:
        return f"{self.name} ({self.log_dir})"


@dataclass(frozen=True)
class ToolsConfig:
    """All logging environments."""

    environments: dict[str, ToolsEnvironment]

    @property
    def environment_names(self) -> list[str]:
        return list(self.environments)

    def get_environment(self, name: str) -> ToolsEnvironment:
        """
        Raises:
            ValueError: If the environment is not defined
        """
        if name not in self.environments:
            available = ', '.join(self.environments)
            raise ValueError(
                f"Environment '{name}' is not defined in tools.toml. Available environments: {available}"
            )
        return self.environments[name]


def parse_tools_config(data: dict[str, Any], root: Optional[Path] = None) -> ToolsConfig:
    """
    Build a ToolsConfig from parsed tools.toml content.

    Raises:
        ValueError: If the environments table is missing or empty
    """
    envs = data.get('environments')
    if not envs:
        raise ValueError("Invalid tools.toml: missing or empty 'environments' section")
    overrides = data.get('tools', {})
    return ToolsConfig({
        name: ToolsEnvironment(
            name=name,
            log_dir=str(cfg.get('log_dir', name)),
            description=str(cfg.get('description', '')),
            tool_overrides=overrides,
            root=root,
        )
        for name, cfg in envs.items()
    })


_cached_config: Optional[ToolsConfig] = None


def get_tools_config(reload: bool = False) -> ToolsConfig:
    """
    Load config/tools.toml (cached after the first call).

    Raises:
        FileNotFoundError: If tools.toml is missing
        ValueError: If it is invalid
    """
    global _cached_config
    if _cached_config is None or reload:
        root = find_project_root()
        _cached_config = parse_tools_config(read_toml(root / 'config' / 'tools.toml'), root)
    return _cached_config
