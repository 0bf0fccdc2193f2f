#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Per-Element Phase Update
========================
Closed-form candidates for one RIS phase with every other element and the
beamformer held fixed.

For element m with v_m = e^{j mu}:

    ||h_r||^2 ~ K0 + 2 Re{e^{j mu} a0}
    |h_t^H w|^2 ~ K1 + 2 Re{e^{j mu} a1}
    |h_c^H w|^2 = c + 2 Re{e^{j mu} a_c}

(common |alpha|^2 factors dropped). Dropping the product of the two
oscillating terms gives

    g(mu) = K0 K1 + 2 Re{e^{j mu} (K1 a0 + K0 a1)}

whose extremes are available in closed form. The communication
constraint is the arc where cos(mu + angle(a_c)) >= C.

Authors: superguru, gazorper
License: GPL v3.0
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from utils.beamforming import comm_snr, sensing_snr
from utils.channel import ChannelSet, PerElementTerms, PhaseConfig, decompose_element
from utils.linalg import DegenerateObjective, as_vector, unit_phase

TWO_PI = 2.0 * math.pi
# Relative slack when checking SNR_c >= gamma0
CONSTRAINT_SLACK = 1e-9


class FeasibilityKind(Enum):
    """Shape of the feasible angle set of one element."""

    ALL = 'all'
    ARC = 'arc'
    EMPTY = 'empty'


@dataclass(frozen=True)
class Feasibility:
    """
    Feasible set of phase angles for one element.

    An ARC starts at lo and runs counter-clockwise for width radians
    (0 < width < 2*pi); hi = lo + width (mod 2*pi).
    """

    kind: FeasibilityKind
    lo: float = 0.0
    width: float = 0.0

    @property
    def hi(self) -> float:
        return (self.lo + self.width) % TWO_PI

    @property
    def endpoints(self) -> tuple[float, ...]:
        """Arc endpoints (empty unless kind is ARC)."""
        if self.kind is not FeasibilityKind.ARC:
            return ()
        return (self.lo, self.hi)

    def contains(self, mu: Union[float, np.ndarray], tol: float = 1e-12) -> Union[bool, np.ndarray]:
        """Whether angle(s) mu lie in the feasible set."""
        if self.kind is FeasibilityKind.ALL:
            return np.ones_like(mu, dtype=bool) if isinstance(mu, np.ndarray) else True
        if self.kind is FeasibilityKind.EMPTY:
            return np.zeros_like(mu, dtype=bool) if isinstance(mu, np.ndarray) else False
        offset = np.mod(np.asarray(mu) - self.lo + tol, TWO_PI)
        inside = offset <= self.width + 2.0 * tol
        return inside if isinstance(mu, np.ndarray) else bool(inside)


@dataclass(frozen=True)
class PhaseCandidates:
    """Candidate angles for one element (all in [0, 2*pi))."""

    mu_unconstrained: tuple[float, ...]
    mu_boundary: tuple[float, ...]
    mu_exact: tuple[float, ...]
    feasibility: Feasibility

    def all(self) -> tuple[float, ...]:
        return self.mu_unconstrained + self.mu_boundary + self.mu_exact


def per_element_objective(terms: PerElementTerms, mu: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    g(mu) = K0 K1 + 2 K1 |a0| cos(mu + nu0) + 2 K0 |a1| cos(mu + nu1).
    """
    z = np.exp(1j * np.asarray(mu, dtype=float))
    value = terms.k0 * terms.k1 + 2.0 * np.real(z * (terms.k1 * terms.a0 + terms.k0 * terms.a1))
    return value if isinstance(mu, np.ndarray) else float(value)


def stationary_angles(terms: PerElementTerms) -> tuple[float, float]:
    """
    Maximizer and minimizer of g.

    With R e^{j psi} = K1 a0 + K0 a1, g(mu) = K0 K1 + 2R cos(mu + psi), so
    mu_max = -psi and mu_min = pi - psi.

    Raises:
        DegenerateObjective: If R = 0 (g is constant)
    """
    phasor = terms.k1 * terms.a0 + terms.k0 * terms.a1
    if abs(phasor) == 0.0:
        raise DegenerateObjective(f"element {terms.m}: approximate objective is constant")
    psi = math.atan2(phasor.imag, phasor.real)
    return (-psi) % TWO_PI, (math.pi - psi) % TWO_PI


def feasibility_arc(terms: PerElementTerms, gamma0: float, sigma_c2: float) -> Feasibility:
    """
    Angles meeting |h_c^H w|^2 >= gamma0 sigma_c^2.

    With C = (gamma0 sigma_c^2 - c) / (2|a_c|): C <= -1 is ALL, C >= 1 is
    EMPTY (the single boundary point C = 1 is treated as empty) and
    otherwise the arc [-acos(C) - nu_c, acos(C) - nu_c].
    """
    need = gamma0 * sigma_c2
    mag = abs(terms.a_c)
    if mag == 0.0:
        if terms.c_const >= need * (1.0 - CONSTRAINT_SLACK):
            return Feasibility(FeasibilityKind.ALL)
        return Feasibility(FeasibilityKind.EMPTY)

    c = (need - terms.c_const) / (2.0 * mag)
    if c <= -1.0:
        return Feasibility(FeasibilityKind.ALL)
    if c >= 1.0:
        return Feasibility(FeasibilityKind.EMPTY)
    nu_c = math.atan2(terms.a_c.imag, terms.a_c.real)
    half = math.acos(c)
    return Feasibility(FeasibilityKind.ARC, lo=(-half - nu_c) % TWO_PI, width=2.0 * half)


def exact_stationary_angles(terms: PerElementTerms) -> tuple[float, ...]:
    """
    Stationary points of (K0 + 2Re{z a0})(K1 + 2Re{z a1}), z = e^{j mu}.

    The product is sum_k c_k z^k for |k| <= 2; its mu-derivative vanishes
    at the unit-circle roots of 2c2 z^4 + c1 z^3 - conj(c1) z - 2conj(c2).
    Angles of all roots are returned; callers score them exactly.
    """
    c2 = terms.a0 * terms.a1
    c1 = terms.k0 * terms.a1 + terms.k1 * terms.a0
    coeffs = np.array([2.0 * c2, c1, 0.0, -np.conj(c1), -2.0 * np.conj(c2)], dtype=np.complex128)
    if not np.any(coeffs):
        return ()
    roots = np.roots(coeffs)
    return tuple(float(a) for a in np.mod(np.angle(roots), TWO_PI))


def element_candidates(
    terms: PerElementTerms, gamma0: float, sigma_c2: float, exact: bool = True
) -> PhaseCandidates:
    """Collect the stationary, boundary and (optionally) exact candidates."""
    try:
        unconstrained = stationary_angles(terms)
    except DegenerateObjective:
        unconstrained = ()
    feasibility = feasibility_arc(terms, gamma0, sigma_c2)
    return PhaseCandidates(
        mu_unconstrained=unconstrained,
        mu_boundary=feasibility.endpoints,
        mu_exact=exact_stationary_angles(terms) if exact else (),
        feasibility=feasibility,
    )


def select_phase(
    terms: PerElementTerms,
    gamma0: float,
    sigma_c2: float,
    exact: bool = True,
) -> tuple[complex, float, float]:
    """
    Best feasible candidate by exact sensing gain.

    The current phase is always a candidate and is replaced only on
    strict improvement.

    Returns:
        (v_m, ||h_r||^2 |h_t^H w|^2, SNR_c) for the chosen phase
    """
    floor = gamma0 * (1.0 - CONSTRAINT_SLACK)

    def score(z: complex) -> tuple[float, float]:
        h_t, h_r, h_c = terms.reassemble(z)
        return sensing_snr(h_t, h_r, terms.w, 1.0), comm_snr(h_c, terms.w, sigma_c2)

    best_z = terms.v_m
    best_gain, best_snr_c = score(best_z)
    current_feasible = best_snr_c >= floor
    for mu in element_candidates(terms, gamma0, sigma_c2, exact).all():
        z = complex(math.cos(mu), math.sin(mu))
        gain, snr_c = score(z)
        if snr_c < floor:
            continue
        if gain > best_gain or not current_feasible:
            best_z, best_gain, best_snr_c = z, gain, snr_c
            current_feasible = True
    return best_z, best_gain, best_snr_c


def optimize_element(
    ch: ChannelSet,
    v: Union[PhaseConfig, np.ndarray],
    m: int,
    w: np.ndarray,
    gamma0: float,
    sigma_c2: float,
    exact: bool = True,
) -> complex:
    """
    Updated phase of element m.

    Feasible candidates from {mu_max, mu_min, arc endpoints, current, exact
    stationary points} are compared by exact SNR_s; an empty arc keeps the
    current phase.
    """
    terms = decompose_element(ch, v, m, w)
    v_m, _, _ = select_phase(terms, gamma0, sigma_c2, exact)
    return v_m


def restore_feasibility(ch: ChannelSet, v: Union[PhaseConfig, np.ndarray]) -> PhaseConfig:
    """
    One ascending sweep maximizing ||h_c||^2 element by element.

    Each v_m is aligned so that its cascaded path adds coherently to the
    rest of the communication channel: v_m = exp(-j angle(h~_c^H u_{c,m})).
    """
    vec = np.array(v.v if isinstance(v, PhaseConfig) else as_vector(v, "v"))
    h_c = ch.h_bu + ch.u_c @ vec
    for m in range(ch.m_ris):
        u_m = ch.u_c[:, m]
        rest = h_c - vec[m] * u_m
        coupling = complex(np.vdot(rest, u_m))
        if coupling != 0.0:
            vec[m] = unit_phase(coupling.conjugate())
        h_c = rest + vec[m] * u_m
    return PhaseConfig(vec)
