#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
RSLogging - Logging Module for RISAC Bench
==========================================
Environment-aware logging configured from tools.toml.

Authors: superguru, gazorper
License: GPL v3.0
"""

from .rslogging import get_logging_context, rotate_old_logs, LoggingContext

__all__ = ['get_logging_context', 'rotate_old_logs', 'LoggingContext']
