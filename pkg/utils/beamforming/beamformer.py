#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Optimal ISAC Beamformer
=======================
Closed-form beamformer maximizing the sensing SNR subject to a
communication SNR threshold and a transmit power budget, plus the
correlation-regime predictions derived from it.

The optimum lies in span{h_c, h_t}:

  case 1 (strong coupling), P_t |h_c^H h_t|^2 >= G sigma_c^2 ||h_t||^2:
      w = sqrt(P_t) h_t / ||h_t||
  case 2 (weak coupling):
      w = x1 u1 + x2 u2, u1 = h_c/||h_c||, u2 = normalized remainder of h_t
      |x1|^2 = G sigma_c^2 / ||h_c||^2, |x2|^2 = P_t - |x1|^2

Authors: superguru, gazorper
License: GPL v3.0
"""

import math
from dataclasses import dataclass

import numpy as np

from utils.linalg import (
    ComplexVector,
    DegenerateSpan,
    Infeasible,
    ZeroChannel,
    as_vector,
    check_same_length,
    norm2,
    unit_phase,
)

# Relative slack on equality-active constraints
FEASIBILITY_SLACK = 1e-9
# Remainder norm (relative to ||h_t||) below which h_t is treated as parallel to h_c
PARALLEL_TOL = 1e-12


@dataclass(frozen=True)
class Beamformer:
    """Transmit beamformer with the power budget it was designed for."""

    w: ComplexVector
    power_budget: float
    case: int = 1

    def __post_init__(self):
        """Validate the power constraint"""
        w = as_vector(self.w, "w")
        w.setflags(write=False)
        object.__setattr__(self, 'w', w)
        power = norm2(w)
        if power > self.power_budget * (1.0 + FEASIBILITY_SLACK):
            raise ValueError(f"beamformer power {power:.6e} W exceeds budget {self.power_budget:.6e} W")

    @property
    def power(self) -> float:
        """Radiated power ||w||^2."""
        return norm2(self.w)


@dataclass(frozen=True)
class RegimePrediction:
    """Closed-form SNR prediction for the coupling regime of a channel pair."""

    strong: bool
    rho_abs: float
    snr_s: float
    snr_c: float


def _prepare(h_t: np.ndarray, h_c: np.ndarray, p_t: float) -> tuple[ComplexVector, ComplexVector, float, float]:
    ht = as_vector(h_t, "h_t")
    hc = as_vector(h_c, "h_c")
    check_same_length(ht, hc)
    if p_t <= 0:
        raise ValueError(f"power budget must be positive, got {p_t}")
    nt2 = norm2(ht)
    nc2 = norm2(hc)
    if nt2 == 0.0:
        raise ZeroChannel("sensing channel h_t is zero")
    if nc2 == 0.0:
        raise ZeroChannel("communication channel h_c is zero")
    return ht, hc, nt2, nc2


def is_feasible(h_c: np.ndarray, p_t: float, gamma0: float, sigma_c2: float) -> bool:
    """True when some ||w||^2 <= P_t reaches SNR_c >= gamma0."""
    return gamma0 * sigma_c2 <= p_t * norm2(h_c) * (1.0 + FEASIBILITY_SLACK)


def optimal_beamformer(
    h_t: np.ndarray,
    h_c: np.ndarray,
    p_t: float,
    gamma0: float,
    sigma_c2: float,
) -> Beamformer:
    """
    Closed-form optimal ISAC beamformer.

    Args:
        h_t: Transmit sensing channel
        h_c: Communication channel
        p_t: Power budget in watts
        gamma0: Linear communication SNR threshold
        sigma_c2: Communication noise power in watts

    Returns:
        Beamformer with ||w||^2 = P_t

    Raises:
        ZeroChannel: If either channel is zero
        Infeasible: If gamma0 sigma_c^2 > P_t ||h_c||^2
        DegenerateSpan: If h_t is parallel to h_c but case 1 does not hold
    """
    ht, hc, nt2, nc2 = _prepare(h_t, h_c, p_t)
    need = gamma0 * sigma_c2
    if not is_feasible(hc, p_t, gamma0, sigma_c2):
        raise Infeasible(
            f"SNR threshold {gamma0:.6g} unreachable: needs {need:.6e}, "
            f"best is P_t||h_c||^2 = {p_t * nc2:.6e}"
        )

    cross = abs(np.vdot(hc, ht)) ** 2
    if p_t * cross * (1.0 + FEASIBILITY_SLACK) >= need * nt2:
        return Beamformer(w=math.sqrt(p_t / nt2) * ht, power_budget=p_t, case=1)

    u1 = hc / math.sqrt(nc2)
    proj = complex(np.vdot(u1, ht))
    remainder = ht - proj * u1
    rem_norm = math.sqrt(norm2(remainder))
    if rem_norm <= PARALLEL_TOL * math.sqrt(nt2):
        raise DegenerateSpan("h_t is parallel to h_c but the strong-coupling condition failed")
    u2 = remainder / rem_norm

    p1 = min(need / nc2, p_t)
    p2 = max(p_t - p1, 0.0)
    x1 = math.sqrt(p1) * unit_phase(proj)
    x2 = math.sqrt(p2) * unit_phase(complex(np.vdot(u2, ht)))
    return Beamformer(w=x1 * u1 + x2 * u2, power_budget=p_t, case=2)


def correlation_regime_prediction(
    h_t: np.ndarray,
    h_r: np.ndarray,
    h_c: np.ndarray,
    p_t: float,
    gamma0: float,
    sigma_c2: float,
    sigma_s2: float,
) -> RegimePrediction:
    """
    Predict the optimal-beamformer SNRs from ||h_t||, ||h_c||, ||h_r|| and |rho|.

    Strong coupling (|rho|^2 >= G sigma_c^2 / (P_t ||h_c||^2)):
        SNR_c = P_t ||h_c||^2 |rho|^2 / sigma_c^2
        SNR_s = P_t ||h_r||^2 ||h_t||^2 / sigma_s^2
    Weak coupling:
        |h_t^H w| = sqrt(G sigma_c^2/||h_c||^2) |rho| ||h_t||
                    + sqrt(P_t - G sigma_c^2/||h_c||^2) ||h_t|| sqrt(1 - |rho|^2)
        SNR_s = ||h_r||^2 |h_t^H w|^2 / sigma_s^2, SNR_c = G

    An infeasible threshold clamps the second power share to zero.
    """
    ht, hc, nt2, nc2 = _prepare(h_t, h_c, p_t)
    nr2 = norm2(as_vector(h_r, "h_r"))
    rho_abs = min(abs(complex(np.vdot(hc, ht))) / math.sqrt(nc2 * nt2), 1.0)
    need = gamma0 * sigma_c2

    strong = p_t * rho_abs ** 2 * nc2 * (1.0 + FEASIBILITY_SLACK) >= need
    if strong or rho_abs >= 1.0:
        return RegimePrediction(
            strong=True,
            rho_abs=rho_abs,
            snr_s=p_t * nr2 * nt2 / sigma_s2,
            snr_c=p_t * nc2 * rho_abs ** 2 / sigma_c2,
        )

    p1 = min(need / nc2, p_t)
    p2 = max(p_t - p1, 0.0)
    nt = math.sqrt(nt2)
    gain = math.sqrt(p1) * rho_abs * nt + math.sqrt(p2) * nt * math.sqrt(1.0 - rho_abs ** 2)
    return RegimePrediction(
        strong=False,
        rho_abs=rho_abs,
        snr_s=nr2 * gain ** 2 / sigma_s2,
        snr_c=p1 * nc2 / sigma_c2,
    )
