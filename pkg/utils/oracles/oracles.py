#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Reference Evaluators
====================
Brute-force grids and independent evaluation paths used to certify the
closed forms and the optimizers. Nothing here is used on a solve path.

Authors: superguru, gazorper
License: GPL v3.0
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union

import numpy as np

from utils.channel import ChannelSet, PerElementTerms, PhaseConfig, Scenario, assemble_h
from utils.linalg import ComplexVector, EmptyInput, SeededRng, as_vector, norm2

Objective = Callable[[np.ndarray], float]


@dataclass(frozen=True)
class GridOptimum:
    """Best grid point found by an oracle."""

    snr_s: float
    point: tuple[float, ...]
    w: Optional[ComplexVector] = None


@dataclass(frozen=True)
class ElementGrid:
    """Exact SNRs of one RIS element over an angle grid."""

    mu: np.ndarray
    snr_s: np.ndarray
    snr_c: np.ndarray

    def feasible(self, gamma0: float, slack: float = 1e-9) -> np.ndarray:
        """Mask of grid angles meeting the communication threshold."""
        return self.snr_c >= gamma0 * (1.0 - slack)

    def best_feasible(self, gamma0: float) -> Optional[float]:
        """Largest feasible SNR_s on the grid, None when nothing is feasible."""
        mask = self.feasible(gamma0)
        if not np.any(mask):
            return None
        return float(np.max(self.snr_s[mask]))


def direct_channels(
    ch: ChannelSet, v: Union[PhaseConfig, np.ndarray]
) -> tuple[ComplexVector, ComplexVector, ComplexVector]:
    """
    Channels from the raw cascade, without the U matrices:

        h_t = alpha_t a_t + alpha_g G_t DIAG(v) b
        h_r = alpha_r a_r + alpha_g G_r DIAG(v) b
        h_c = h_BU + G_t DIAG(v) h_RU
    """
    vec = v.v if isinstance(v, PhaseConfig) else as_vector(v, "v")
    h_t = ch.alpha_t * ch.a_t + ch.alpha_g * (ch.g_t @ (vec * ch.b))
    h_r = ch.alpha_r * ch.a_r + ch.alpha_g * (ch.g_r @ (vec * ch.b))
    h_c = ch.h_bu + ch.g_t @ (vec * ch.h_ru)
    return h_t, h_r, h_c


def _span_basis(h_t: np.ndarray, h_c: np.ndarray) -> tuple[np.ndarray, Optional[np.ndarray]]:
    u1 = h_c / math.sqrt(norm2(h_c))
    remainder = h_t - np.vdot(u1, h_t) * u1
    rem_norm = math.sqrt(norm2(remainder))
    if rem_norm <= 1e-12 * math.sqrt(norm2(h_t)):
        return u1, None
    return u1, remainder / rem_norm


def beamformer_grid_oracle(
    h_t: np.ndarray,
    h_r: np.ndarray,
    h_c: np.ndarray,
    p_t: float,
    gamma0: float,
    sigma_c2: float,
    sigma_s2: float,
    n_amp: int = 1001,
    n_phase: int = 1000,
) -> Optional[GridOptimum]:
    """
    Maximize SNR_s over w = c1 e^{j phi} u1 + c2 u2 with c1^2 + c2^2 = P_t.

    The c1 grid runs from the constraint boundary sqrt(G sigma_c^2/||h_c||^2)
    up to sqrt(P_t), so every grid point is feasible and an active
    constraint sits exactly on the grid.

    Returns:
        GridOptimum with point (c1, phi), or None when infeasible
    """
    ht = as_vector(h_t, "h_t")
    hc = as_vector(h_c, "h_c")
    nr2 = norm2(as_vector(h_r, "h_r"))
    nc2 = norm2(hc)
    c1_min = math.sqrt(gamma0 * sigma_c2 / nc2)
    c1_max = math.sqrt(p_t)
    if c1_min > c1_max * (1.0 + 1e-9):
        return None
    c1_min = min(c1_min, c1_max)

    u1, u2 = _span_basis(ht, hc)
    c1 = np.linspace(c1_min, c1_max, n_amp)
    c2 = np.sqrt(np.maximum(p_t - c1 ** 2, 0.0))
    phi = np.linspace(0.0, 2.0 * np.pi, n_phase, endpoint=False)

    t1 = np.vdot(ht, u1)
    t2 = np.vdot(ht, u2) if u2 is not None else 0.0
    gain = c1[:, None] * np.exp(1j * phi)[None, :] * t1 + (c2 * t2)[:, None]
    snr = nr2 * np.abs(gain) ** 2 / sigma_s2
    i, k = np.unravel_index(int(np.argmax(snr)), snr.shape)
    w = c1[i] * np.exp(1j * phi[k]) * u1
    if u2 is not None:
        w = w + c2[i] * u2
    return GridOptimum(snr_s=float(snr[i, k]), point=(float(c1[i]), float(phi[k])), w=w)


def element_grid(terms: PerElementTerms, n: int, sigma_s2: float, sigma_c2: float) -> ElementGrid:
    """
    Exact SNR_s and SNR_c of element m on an n-point grid over [0, 2*pi),
    all other elements and w held fixed.
    """
    mu = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    z = np.exp(1j * mu)[:, None]
    h_t = terms.alpha_t * (terms.h_tilde_t[None, :] + z * terms.u_t_m[None, :])
    h_r = terms.alpha_r * (terms.h_tilde_r[None, :] + z * terms.u_r_m[None, :])
    h_c = terms.h_tilde_c[None, :] + z * terms.u_c_m[None, :]
    w = terms.w
    snr_s = np.sum(np.abs(h_r) ** 2, axis=1) * np.abs(np.conj(h_t) @ w) ** 2 / sigma_s2
    snr_c = np.abs(np.conj(h_c) @ w) ** 2 / sigma_c2
    return ElementGrid(mu=mu, snr_s=snr_s, snr_c=snr_c)


def _optimal_snr_s(h_t: np.ndarray, h_r: np.ndarray, h_c: np.ndarray, sc: Scenario) -> np.ndarray:
    """Row-wise optimal-beamformer SNR_s; -inf where the threshold is unreachable."""
    nt2 = np.sum(np.abs(h_t) ** 2, axis=1)
    nr2 = np.sum(np.abs(h_r) ** 2, axis=1)
    nc2 = np.sum(np.abs(h_c) ** 2, axis=1)
    cross = np.abs(np.sum(np.conj(h_c) * h_t, axis=1))
    rho = np.minimum(cross / np.sqrt(nc2 * nt2), 1.0)
    need = sc.gamma0 * sc.noise_c_w
    p_t = sc.tx_power_w

    strong = p_t * rho ** 2 * nc2 >= need
    p1 = np.minimum(need / nc2, p_t)
    p2 = np.maximum(p_t - p1, 0.0)
    nt = np.sqrt(nt2)
    weak_gain = np.sqrt(p1) * rho * nt + np.sqrt(p2) * nt * np.sqrt(np.maximum(1.0 - rho ** 2, 0.0))
    gain2 = np.where(strong, p_t * nt2, weak_gain ** 2)
    snr = nr2 * gain2 / sc.noise_s_w
    return np.where(need <= p_t * nc2 * (1.0 + 1e-9), snr, -np.inf)


def joint_phase_grid_oracle(ch: ChannelSet, sc: Scenario, n: int = 256) -> Optional[GridOptimum]:
    """
    Exhaustive (mu_1, mu_2) grid for a two-element RIS with the optimal
    beamformer at every grid point.

    Returns:
        GridOptimum with point (mu_1, mu_2), or None when nothing is feasible
    """
    if ch.m_ris != 2:
        raise ValueError(f"joint phase grid needs a 2-element RIS, got {ch.m_ris}")
    mu = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    m1, m2 = np.meshgrid(mu, mu, indexing='ij')
    vs = np.stack([np.exp(1j * m1.ravel()), np.exp(1j * m2.ravel())], axis=1)

    h_t = ch.alpha_t * (ch.a_t[None, :] + vs @ ch.u_t.T)
    h_r = ch.alpha_r * (ch.a_r[None, :] + vs @ ch.u_r.T)
    h_c = ch.h_bu[None, :] + vs @ ch.u_c.T
    snr = _optimal_snr_s(h_t, h_r, h_c, sc)
    best = int(np.argmax(snr))
    if not np.isfinite(snr[best]):
        return None
    return GridOptimum(snr_s=float(snr[best]), point=(float(m1.ravel()[best]), float(m2.ravel()[best])))


def _default_objective(ch: ChannelSet) -> Objective:
    def objective(v: np.ndarray) -> float:
        h_t, h_r, h_c = assemble_h(ch, v)
        return -norm2(h_r) * abs(np.vdot(h_t, h_c)) ** 2
    return objective


def finite_difference_gradient(
    ch: ChannelSet,
    v: Union[PhaseConfig, np.ndarray],
    step: float = 1e-6,
    objective: Optional[Objective] = None,
) -> ComplexVector:
    """
    Central-difference gradient over the 2M real coordinates of v.

    Returned in row-gradient form g_m = (df/dRe v_m - j df/dIm v_m) / 2,
    so that df = 2 Re{g . dv}.
    """
    f = objective if objective is not None else _default_objective(ch)
    base = np.array(v.v if isinstance(v, PhaseConfig) else as_vector(v, "v"), dtype=np.complex128)
    grad = np.zeros_like(base)
    for m in range(base.shape[0]):
        partials = []
        for direction in (1.0, 1j):
            plus = base.copy()
            minus = base.copy()
            plus[m] += step * direction
            minus[m] -= step * direction
            partials.append((f(plus) - f(minus)) / (2.0 * step))
        grad[m] = (partials[0] - 1j * partials[1]) / 2.0
    return grad


def bootstrap_mean_ci(
    samples: np.ndarray,
    confidence: float = 0.95,
    n_resamples: int = 2000,
    rng: Optional[SeededRng] = None,
) -> tuple[float, float]:
    """
    Percentile bootstrap confidence interval for the mean.

    Raises:
        EmptyInput: If samples is empty
    """
    data = np.asarray(samples, dtype=float).ravel()
    if data.size == 0:
        raise EmptyInput("cannot bootstrap an empty sample")
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must lie in (0, 1), got {confidence}")
    gen = (rng if rng is not None else SeededRng(0)).generator
    idx = gen.integers(0, data.size, size=(n_resamples, data.size))
    means = data[idx].mean(axis=1)
    tail = (1.0 - confidence) / 2.0
    lo, hi = np.quantile(means, [tail, 1.0 - tail])
    return float(lo), float(hi)
