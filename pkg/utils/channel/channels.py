#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Channel Synthesis
=================
Builds the sensing and communication channels of an RIS-assisted ISAC
scene and evaluates them for a given RIS phase configuration.

Channel model (half-wavelength ULAs everywhere):

    h_t = alpha_t (a_t + U_t v)      U_t = G_t DIAG(b_tilde)
    h_r = alpha_r (a_r + U_r v)      U_r = G_r DIAG(b_bar)
    h_c = h_BU + U_c v               U_c = G_t DIAG(h_RU)

with b_tilde = (alpha_g/alpha_t) b and b_bar = (alpha_g/alpha_r) b, so the
cascaded target paths alpha_g G Phi b are reproduced exactly.

Authors: superguru, gazorper
License: GPL v3.0
"""

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from utils.linalg import (
    ComplexMatrix,
    ComplexVector,
    DegenerateGeometry,
    DimensionMismatch,
    IndexOutOfRange,
    SeededRng,
    STREAM_CHANNELS,
    as_vector,
)
from .scenario import Point, Scenario

MIN_SEPARATION_M = 0.1
UNIT_MODULUS_TOL = 1e-12


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=np.complex128)
    out.setflags(write=False)
    return out


def steering_vector(n: int, angle: float) -> ComplexVector:
    """
    Half-wavelength ULA steering vector.

    Entry k (0-indexed) is exp(j*pi*k*sin(angle)), so ||a||^2 = n.

    Args:
        n: Number of elements (>= 1)
        angle: Direction in radians relative to the array normal

    Returns:
        Complex vector of length n
    """
    if n < 1:
        raise ValueError(f"steering vector length must be >= 1, got {n}")
    k = np.arange(n)
    return np.exp(1j * np.pi * k * np.sin(angle))


def free_space_gain(distance: float, wavelength: float) -> float:
    """One-way free-space amplitude gain lambda / (4 pi d)."""
    return wavelength / (4.0 * math.pi * distance)


def path_coefficient(distance: float, wavelength: float) -> complex:
    """Free-space amplitude gain with the propagation phase exp(-j 2 pi d / lambda)."""
    phase = -2.0 * math.pi * ((distance / wavelength) % 1.0)
    return free_space_gain(distance, wavelength) * complex(math.cos(phase), math.sin(phase))


def array_angle(origin: Point, toward: Point, axis_deg: float) -> float:
    """
    Angle of a direction relative to a ULA's normal.

    The array lies along the unit axis at axis_deg; the angle is
    arcsin(<unit direction, axis>) in (-pi/2, pi/2].
    """
    dx = toward[0] - origin[0]
    dy = toward[1] - origin[1]
    dist = math.hypot(dx, dy)
    axis = math.radians(axis_deg)
    s = (dx * math.cos(axis) + dy * math.sin(axis)) / dist
    angle = math.asin(max(-1.0, min(1.0, s)))
    # -pi/2 and pi/2 give identical steering vectors
    if angle <= -math.pi / 2:
        angle = math.pi / 2
    return angle


@dataclass(frozen=True)
class PhaseConfig:
    """RIS phase vector v = diag(Phi); every entry has unit modulus."""

    v: ComplexVector

    def __post_init__(self):
        """Validate unit modulus and freeze the vector"""
        arr = as_vector(self.v, "v")
        deviation = float(np.max(np.abs(np.abs(arr) - 1.0)))
        if deviation >= UNIT_MODULUS_TOL:
            raise ValueError(f"RIS phases must have unit modulus (max deviation {deviation:.3e})")
        object.__setattr__(self, 'v', _frozen(arr))

    @classmethod
    def ones(cls, m: int) -> 'PhaseConfig':
        """All-zero phase shifts."""
        return cls(np.ones(m, dtype=np.complex128))

    @classmethod
    def from_angles(cls, angles: np.ndarray) -> 'PhaseConfig':
        """Build from phase angles in radians."""
        return cls(np.exp(1j * np.asarray(angles, dtype=float)))

    @classmethod
    def random(cls, m: int, rng: SeededRng) -> 'PhaseConfig':
        """Uniform random phases drawn from rng."""
        return cls(rng.uniform_phases(m))

    @property
    def m(self) -> int:
        """Number of RIS elements."""
        return int(self.v.shape[0])

    @property
    def angles(self) -> np.ndarray:
        """Phase angles in [0, 2*pi)."""
        return np.mod(np.angle(self.v), 2.0 * np.pi)

    def with_element(self, m: int, value: complex) -> 'PhaseConfig':
        """Return a copy with element m replaced by the projection of value."""
        if not 0 <= m < self.m:
            raise IndexOutOfRange(f"RIS element index {m} outside 0..{self.m - 1}")
        v = np.array(self.v)
        v[m] = project(np.array([value]))[0]
        return PhaseConfig(v)


def project(v: np.ndarray) -> ComplexVector:
    """
    Project onto the unit-modulus torus: v_m -> v_m / |v_m|.

    Zero entries map to 1.
    """
    arr = np.asarray(v, dtype=np.complex128)
    mag = np.abs(arr)
    out = np.ones_like(arr)
    nz = mag > 0.0
    out[nz] = arr[nz] / mag[nz]
    return out


@dataclass(frozen=True)
class ChannelSet:
    """All channel pieces of one scene realization plus the cascade matrices."""

    a_t: ComplexVector
    a_r: ComplexVector
    alpha_t: complex
    alpha_r: complex
    alpha_g: complex
    b: ComplexVector
    b_tilde: ComplexVector
    b_bar: ComplexVector
    g_t: ComplexMatrix
    g_r: ComplexMatrix
    h_bu: ComplexVector
    h_ru: ComplexVector
    u_t: ComplexMatrix
    u_r: ComplexMatrix
    u_c: ComplexMatrix

    def __post_init__(self):
        """Check dimensions and finiteness, then freeze arrays"""
        for name in ('a_t', 'a_r', 'b', 'b_tilde', 'b_bar', 'g_t', 'g_r', 'h_bu', 'h_ru', 'u_t', 'u_r', 'u_c'):
            arr = _frozen(getattr(self, name))
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"channel piece {name} contains non-finite entries")
            object.__setattr__(self, name, arr)
        for name in ('alpha_t', 'alpha_r', 'alpha_g'):
            object.__setattr__(self, name, complex(getattr(self, name)))

        n_t, n_r, m = self.a_t.shape[0], self.a_r.shape[0], self.b.shape[0]
        expected = {
            'b_tilde': (m,), 'b_bar': (m,), 'h_bu': (n_t,), 'h_ru': (m,),
            'g_t': (n_t, m), 'g_r': (n_r, m),
            'u_t': (n_t, m), 'u_r': (n_r, m), 'u_c': (n_t, m),
        }
        for name, shape in expected.items():
            actual = getattr(self, name).shape
            if actual != shape:
                raise DimensionMismatch(f"{name} has shape {actual}, expected {shape}")

    @property
    def n_tx(self) -> int:
        return int(self.a_t.shape[0])

    @property
    def n_rx(self) -> int:
        return int(self.a_r.shape[0])

    @property
    def m_ris(self) -> int:
        return int(self.b.shape[0])


@dataclass(frozen=True)
class PerElementTerms:
    """
    Decomposition of the channels around RIS element m.

    h_j = alpha_j (h_tilde_j + v_m u_{j,m}) for j in {t, r, c}, alpha_c = 1.
    """

    m: int
    v_m: complex
    w: ComplexVector
    alpha_t: complex
    alpha_r: complex
    h_tilde_t: ComplexVector
    h_tilde_r: ComplexVector
    h_tilde_c: ComplexVector
    u_t_m: ComplexVector
    u_r_m: ComplexVector
    u_c_m: ComplexVector
    k0: float
    k1: float
    a0: complex
    a1: complex
    a_c: complex
    c_const: float

    def reassemble(self, v_m: complex) -> tuple[ComplexVector, ComplexVector, ComplexVector]:
        """Channels (h_t, h_r, h_c) with element m set to v_m and all others fixed."""
        h_t = self.alpha_t * (self.h_tilde_t + v_m * self.u_t_m)
        h_r = self.alpha_r * (self.h_tilde_r + v_m * self.u_r_m)
        h_c = self.h_tilde_c + v_m * self.u_c_m
        return h_t, h_r, h_c


def _as_phase_vector(v: Union[PhaseConfig, np.ndarray], m: int) -> ComplexVector:
    arr = v.v if isinstance(v, PhaseConfig) else as_vector(v, "v")
    if arr.shape[0] != m:
        raise DimensionMismatch(f"phase vector has length {arr.shape[0]}, RIS has {m} elements")
    return arr


def build_channels(sc: Scenario, rng: Optional[SeededRng] = None) -> ChannelSet:
    """
    Synthesize all channels of a scenario.

    Deterministic in (scenario, rng seed): the fading draws come from the
    dedicated channel child stream of rng (SeededRng(sc.seed) when omitted).

    Args:
        sc: Scenario description
        rng: Parent random stream

    Returns:
        ChannelSet

    Raises:
        DegenerateGeometry: If any two scene nodes are closer than 0.1 m
    """
    for link, dist in sc.distances().items():
        if dist < MIN_SEPARATION_M:
            raise DegenerateGeometry(f"{link} distance {dist:.4f} m is below {MIN_SEPARATION_M} m")

    parent = rng if rng is not None else SeededRng(sc.seed)
    stream = parent.child(STREAM_CHANNELS)
    lam = sc.wavelength
    bs, ris, target, ue = sc.bs_pos, sc.ris_pos, sc.target_pos, sc.user_pos

    # Target angles and steering vectors
    theta = array_angle(bs, target, sc.bs_axis_deg)
    phi = array_angle(ris, target, sc.ris_axis_deg)
    a_t = steering_vector(sc.n_tx, theta)
    a_r = steering_vector(sc.n_rx, theta)
    b = steering_vector(sc.m_ris, phi)

    # Unit target reflection coefficient
    alpha_t = path_coefficient(math.dist(bs, target), lam)
    alpha_r = alpha_t
    alpha_g = path_coefficient(math.dist(ris, target), lam)
    b_tilde = (alpha_g / alpha_t) * b
    b_bar = (alpha_g / alpha_r) * b

    # Rank-one line-of-sight BS <-> RIS link
    d_br = math.dist(bs, ris)
    beta = path_coefficient(d_br, lam)
    bs_to_ris = array_angle(bs, ris, sc.bs_axis_deg)
    ris_to_bs = array_angle(ris, bs, sc.ris_axis_deg)
    ris_resp = steering_vector(sc.m_ris, ris_to_bs)
    g_t = beta * np.outer(steering_vector(sc.n_tx, bs_to_ris), ris_resp)
    g_r = beta * np.outer(steering_vector(sc.n_rx, bs_to_ris), ris_resp)

    # Rayleigh user links with distance path loss
    ref_gain = free_space_gain(1.0, lam)
    amp_bu = ref_gain * math.dist(bs, ue) ** (-sc.pathloss_exp_bu / 2.0)
    amp_ru = ref_gain * math.dist(ris, ue) ** (-sc.pathloss_exp_ru / 2.0)
    h_bu = amp_bu * stream.sample_cn01(sc.n_tx)
    h_ru = amp_ru * stream.sample_cn01(sc.m_ris)

    return ChannelSet(
        a_t=a_t,
        a_r=a_r,
        alpha_t=alpha_t,
        alpha_r=alpha_r,
        alpha_g=alpha_g,
        b=b,
        b_tilde=b_tilde,
        b_bar=b_bar,
        g_t=g_t,
        g_r=g_r,
        h_bu=h_bu,
        h_ru=h_ru,
        u_t=g_t * b_tilde[np.newaxis, :],
        u_r=g_r * b_bar[np.newaxis, :],
        u_c=g_t * h_ru[np.newaxis, :],
    )


def disconnect_ris(ch: ChannelSet) -> ChannelSet:
    """
    Copy of ch with every RIS-reflected path removed (the w/oRIS system).

    alpha_g, the RIS->UE channel and all cascade matrices become zero; the
    channels then no longer depend on v.
    """
    zeros_m = np.zeros(ch.m_ris, dtype=np.complex128)
    return ChannelSet(
        a_t=ch.a_t,
        a_r=ch.a_r,
        alpha_t=ch.alpha_t,
        alpha_r=ch.alpha_r,
        alpha_g=0.0,
        b=ch.b,
        b_tilde=zeros_m,
        b_bar=zeros_m,
        g_t=ch.g_t,
        g_r=ch.g_r,
        h_bu=ch.h_bu,
        h_ru=zeros_m,
        u_t=np.zeros_like(ch.u_t),
        u_r=np.zeros_like(ch.u_r),
        u_c=np.zeros_like(ch.u_c),
    )


def assemble_h(
    ch: ChannelSet, v: Union[PhaseConfig, np.ndarray]
) -> tuple[ComplexVector, ComplexVector, ComplexVector]:
    """
    Evaluate the channels for RIS phases v.

    Returns:
        (h_t, h_r, h_c)

    Raises:
        DimensionMismatch: If len(v) != M
    """
    vec = _as_phase_vector(v, ch.m_ris)
    h_t = ch.alpha_t * (ch.a_t + ch.u_t @ vec)
    h_r = ch.alpha_r * (ch.a_r + ch.u_r @ vec)
    h_c = ch.h_bu + ch.u_c @ vec
    return h_t, h_r, h_c


def decompose_element(
    ch: ChannelSet, v: Union[PhaseConfig, np.ndarray], m: int, w: np.ndarray
) -> PerElementTerms:
    """
    Split the channels into the part fixed by the other elements and the
    contribution of element m.

    Args:
        ch: Channel set
        v: Current RIS phases
        m: Element index, 0 <= m < M
        w: Current beamformer (length N_t)

    Returns:
        PerElementTerms with h_tilde_j, u_{j,m}, K_0, K_1, a_0, a_1, a_c and
        the constant communication term

    Raises:
        IndexOutOfRange: If m is outside 0..M-1
        DimensionMismatch: If v or w have the wrong length
    """
    vec = _as_phase_vector(v, ch.m_ris)
    if not 0 <= m < ch.m_ris:
        raise IndexOutOfRange(f"RIS element index {m} outside 0..{ch.m_ris - 1}")
    wv = as_vector(w, "w")
    if wv.shape[0] != ch.n_tx:
        raise DimensionMismatch(f"beamformer has length {wv.shape[0]}, expected {ch.n_tx}")

    v_m = complex(vec[m])
    u_t_m = ch.u_t[:, m]
    u_r_m = ch.u_r[:, m]
    u_c_m = ch.u_c[:, m]
    h_tilde_t = ch.a_t + ch.u_t @ vec - v_m * u_t_m
    h_tilde_r = ch.a_r + ch.u_r @ vec - v_m * u_r_m
    h_tilde_c = ch.h_bu + ch.u_c @ vec - v_m * u_c_m

    ht_w = np.vdot(h_tilde_t, wv)
    ut_w = np.vdot(u_t_m, wv)
    hc_w = np.vdot(h_tilde_c, wv)
    uc_w = np.vdot(u_c_m, wv)

    return PerElementTerms(
        m=m,
        v_m=v_m,
        w=wv,
        alpha_t=ch.alpha_t,
        alpha_r=ch.alpha_r,
        h_tilde_t=h_tilde_t,
        h_tilde_r=h_tilde_r,
        h_tilde_c=h_tilde_c,
        u_t_m=u_t_m,
        u_r_m=u_r_m,
        u_c_m=u_c_m,
        k0=float(np.real(np.vdot(h_tilde_r, h_tilde_r)) + np.real(np.vdot(u_r_m, u_r_m))),
        k1=float(abs(ht_w) ** 2 + abs(ut_w) ** 2),
        a0=complex(np.vdot(h_tilde_r, u_r_m)),
        a1=complex(ht_w * np.conj(ut_w)),
        a_c=complex(hc_w * np.conj(uc_w)),
        c_const=float(abs(hc_w) ** 2 + abs(uc_w) ** 2),
    )
