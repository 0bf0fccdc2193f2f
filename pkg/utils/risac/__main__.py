#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
RISAC Module Entry Point
========================
Entry point for the experiment runner when run as a module.

Usage:
    python -m utils.risac run [--config PATH] [--algo ALGO] [--sweep SWEEP] [--grid V1,V2,...]
                        [--trials N] [--seed S] [--out DIR] [--jobs J] [-e ENVIRONMENT]

Examples:
    python -m utils.risac run
    python -m utils.risac run --algo all --sweep gamma0 --trials 100
    python -m utils.risac run --sweep ris-size --jobs 4 -e bench

Authors: superguru, gazorper
License: GPL v3.0
"""

import sys
from .runner import main

if __name__ == "__main__":
    sys.exit(main())
