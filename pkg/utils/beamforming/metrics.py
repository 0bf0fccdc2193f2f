#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
ISAC Performance Metrics
========================
Sensing SNR, communication SNR, sensing/communication channel correlation
and the Shannon rate proxy.

Authors: superguru, gazorper
License: GPL v3.0
"""

import math
from dataclasses import dataclass

import numpy as np

from utils.linalg import ZeroChannel, as_vector, check_same_length, hermitian_inner, norm2


@dataclass(frozen=True)
class Metrics:
    """Performance of one (channels, beamformer) pair."""
    
    snr_s: float
    snr_c: float
    rho_abs: float
    rate_bps_hz: float
    
    @property
    def snr_s_db(self) -> float:
        """Sensing SNR in dB (-inf for zero)."""
        return to_db(self.snr_s)
    
    @property
    def snr_c_db(self) -> float:
        """Communication SNR in dB (-inf for zero)."""
        return to_db(self.snr_c)


def to_db(value: float) -> float:
    """10*log10(value), -inf for zero."""
    return 10.0 * math.log10(value) if value > 0 else float('-inf')


def from_db(value_db: float) -> float:
    """Inverse of to_db."""
    return 10.0 ** (value_db / 10.0)


def sensing_snr(h_t: np.ndarray, h_r: np.ndarray, w: np.ndarray, sigma_s2: float) -> float:
    """
    Sensing SNR ||h_r^* h_t^H w||^2 / sigma_s^2 = ||h_r||^2 |h_t^H w|^2 / sigma_s^2.
    """
    if sigma_s2 <= 0:
        raise ValueError(f"sigma_s2 must be positive, got {sigma_s2}")
    return norm2(h_r) * abs(hermitian_inner(h_t, w)) ** 2 / sigma_s2


def comm_snr(h_c: np.ndarray, w: np.ndarray, sigma_c2: float) -> float:
    """Communication SNR |h_c^H w|^2 / sigma_c^2."""
    if sigma_c2 <= 0:
        raise ValueError(f"sigma_c2 must be positive, got {sigma_c2}")
    return abs(hermitian_inner(h_c, w)) ** 2 / sigma_c2


def correlation(h_c: np.ndarray, h_t: np.ndarray) -> complex:
    """
    Subspace correlation rho = h_c^H h_t / (||h_c|| ||h_t||).
    
    Raises:
        ZeroChannel: If either channel is the zero vector
    """
    hc = as_vector(h_c, "h_c")
    ht = as_vector(h_t, "h_t")
    check_same_length(hc, ht)
    nc = math.sqrt(norm2(hc))
    nt = math.sqrt(norm2(ht))
    if nc == 0.0 or nt == 0.0:
        raise ZeroChannel("correlation needs non-zero h_c and h_t")
    rho = hermitian_inner(hc, ht) / (nc * nt)
    mag = abs(rho)
    # Cauchy-Schwarz; clip rounding overshoot
    if mag > 1.0:
        rho = rho / mag
    return rho


def compute_metrics(
    h_t: np.ndarray,
    h_r: np.ndarray,
    h_c: np.ndarray,
    w: np.ndarray,
    sigma_s2: float,
    sigma_c2: float,
) -> Metrics:
    """
    Evaluate every metric for one beamformer.
    
    rho_abs is reported as 0 when either channel vanishes.
    """
    snr_c = comm_snr(h_c, w, sigma_c2)
    try:
        rho_abs = abs(correlation(h_c, h_t))
    except ZeroChannel:
        rho_abs = 0.0
    return Metrics(
        snr_s=sensing_snr(h_t, h_r, w, sigma_s2),
        snr_c=snr_c,
        rho_abs=rho_abs,
        rate_bps_hz=math.log2(1.0 + snr_c),
    )
