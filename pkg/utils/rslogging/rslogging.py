#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
RSLogging - Core Logging Implementation
=======================================
Environment-aware file logging configured from config/tools.toml.

Log files: logs/<log_dir>/<tool>_<YYYYMMDD>.log
Line format: [YYYY-MM-DD HH:MM:SS] [environment] [LVL] message

Authors: superguru, gazorper
License: GPL v3.0
"""

import logging
import shutil
import zipfile
from datetime import datetime
from pathlib import Path
from typing import Optional

from utils.rsconfig import LogRotation, ToolsEnvironment, get_tools_config

ROTATED_DIR = '00rotated'


class EnvironmentFormatter(logging.Formatter):
    """Adds the environment name and the three-letter level tag."""

    LEVEL_TAGS = {
        'DEBUG': 'DBG',
        'INFO': 'INF',
        'WARNING': 'WRN',
        'ERROR': 'ERR',
    }

    def __init__(self, environment: str):
        super().__init__('[%(asctime)s] [%(environment)s] [%(tag)s] %(message)s', '%Y-%m-%d %H:%M:%S')
        self._environment = environment

    def format(self, record: logging.LogRecord) -> str:
        record.environment = self._environment
        record.tag = self.LEVEL_TAGS.get(record.levelname, record.levelname)
        return super().format(record)


class LoggingContext:
    """
    Logging handle for one (environment, tool) pair.

    Client code logs through dbg/inf/wrn/err; file locations are managed by
    the module.
    """

    def __init__(self, environment: str, tool_name: str, log_file: Path, logger: logging.Logger):
        self._environment = environment
        self._tool_name = tool_name
        self._log_file = log_file
        self._logger = logger

    @property
    def environment(self) -> str:
        """Environment name (read-only)."""
        return self._environment

    @property
    def tool_name(self) -> str:
        """Tool name (read-only)."""
        return self._tool_name

    @property
    def log_file(self) -> Path:
        """Today's log file."""
        return self._log_file

    def dbg(self, message: str) -> None:
        """Log a debug message (DBG level)."""
        self._logger.debug(message)

    def inf(self, message: str) -> None:
        """Log an informational message (INF level)."""
        self._logger.info(message)

    def wrn(self, message: str) -> None:
        """Log a warning message (WRN level)."""
        self._logger.warning(message)

    def err(self, message: str) -> None:
        """Log an error message (ERR level)."""
        self._logger.error(message)


def rotate_old_logs(log_dir: Path, tool_name: str, rotation: LogRotation, today: Optional[str] = None) -> None:
    """
    Move a tool's older day-logs to logs/00rotated (zipped when configured)
    and prune the rotated files down to rotation.rotation_count.

    Rotation problems are swallowed; logging must keep working.
    """
    today = today or datetime.now().strftime('%Y%m%d')
    rotated_dir = log_dir.parent / ROTATED_DIR
    rotated_dir.mkdir(parents=True, exist_ok=True)
    active = f"{tool_name}_{today}.log"

    for old_log in log_dir.glob(f"{tool_name}_*.log"):
        if old_log.name == active:
            continue
        try:
            if rotation.compress:
                zip_path = rotated_dir / f"{old_log.stem}.zip"
                if not zip_path.exists():
                    with zipfile.ZipFile(zip_path, 'w', zipfile.ZIP_DEFLATED) as zf:
                        zf.write(old_log, arcname=old_log.name)
                old_log.unlink()
            else:
                target = rotated_dir / old_log.name
                if not target.exists():
                    shutil.move(str(old_log), str(target))
        except OSError:
            pass

    rotated = [p for ext in ('log', 'zip') for p in rotated_dir.glob(f"{tool_name}_*.{ext}")]
    excess = len(rotated) - rotation.rotation_count
    if excess <= 0:
        return
    rotated.sort(key=lambda p: p.stat().st_mtime)
    for stale in rotated[:excess]:
        try:
            stale.unlink()
        except OSError:
            pass


class _LoggingManager:
    """Creates and caches one logger per (log directory, tool)."""

    def __init__(self):
        self._loggers: dict[str, logging.Logger] = {}

    def get_context(
        self,
        env: ToolsEnvironment,
        tool_name: str,
        console: bool = False,
        log_root: Optional[Path] = None,
    ) -> LoggingContext:
        log_dir = (log_root / env.log_dir) if log_root is not None else env.log_directory_path
        log_dir.mkdir(parents=True, exist_ok=True)
        log_file = log_dir / f"{tool_name}_{datetime.now().strftime('%Y%m%d')}.log"

        key = f"{log_dir.resolve()}::{tool_name}"
        logger = self._loggers.get(key)
        if logger is None:
            logger = logging.getLogger(f"rslogging.{env.name}.{tool_name}.{len(self._loggers)}")
            logger.setLevel(logging.DEBUG)
            logger.propagate = False
            rotate_old_logs(log_dir, tool_name, env.rotation_for(tool_name))

            formatter = EnvironmentFormatter(env.name)
            file_handler = logging.FileHandler(log_file, mode='a', encoding='utf-8')
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)
            if console:
                console_handler = logging.StreamHandler()
                console_handler.setLevel(logging.INFO)
                console_handler.setFormatter(formatter)
                logger.addHandler(console_handler)
            self._loggers[key] = logger

        return LoggingContext(env.name, tool_name, log_file, logger)


_manager = _LoggingManager()


def get_logging_context(
    environment: str,
    tool_name: str,
    console: bool = False,
    log_root: Optional[Path] = None,
) -> LoggingContext:
    """
    Get a logging context for an environment defined in config/tools.toml.

    Example:
        ctx = get_logging_context('dev', 'risac')
        ctx.inf("Sweep started")

    Args:
        environment: Environment name (dev, bench, ...)
        tool_name: Short tool name; used in log file names
        console: Also echo INF and above to stderr
        log_root: Write under this directory instead of <project>/logs

    Raises:
        ValueError: If the environment is not defined
    """
    env = get_tools_config().get_environment(environment)
    return _manager.get_context(env, tool_name, console, log_root)
