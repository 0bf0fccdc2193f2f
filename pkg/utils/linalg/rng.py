#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Seeded Random Streams
=====================
Platform-independent random number streams for reproducible simulations.

Every stream is a numpy Generator driven by the counter-based Philox
bit generator, so a seed yields the same samples on every platform and
numpy build. Parallel users never share a stream: they derive children
with child(stream_index), whose seed is a hash of (parent seed, index).

Authors: superguru, gazorper
License: GPL v3.0
"""

import numpy as np

from .kernel import ComplexVector

# Named child streams
STREAM_CHANNELS = 0
STREAM_PHASE_INIT = 1

_SEED_MASK = (1 << 64) - 1


class SeededRng:
    """
    Single-owner random stream with deterministic child derivation.
    """
    
    def __init__(self, seed: int):
        """
        Initialize the stream.
        
        Args:
            seed: Unsigned 64-bit seed (negative or larger values are masked)
        """
        self._seed = int(seed) & _SEED_MASK
        self._gen = np.random.Generator(np.random.Philox(self._seed))
    
    @property
    def seed(self) -> int:
        """Seed this stream was created from (read-only)."""
        return self._seed
    
    @property
    def generator(self) -> np.random.Generator:
        """Underlying numpy Generator."""
        return self._gen
    
    def child(self, stream: int) -> "SeededRng":
        """
        Derive an independent child stream.
        
        The child depends only on (seed, stream), never on how much of the
        parent stream has been consumed.
        
        Args:
            stream: Non-negative stream index
            
        Returns:
            New SeededRng
        """
        if stream < 0:
            raise ValueError(f"stream index must be non-negative, got {stream}")
        state = np.random.SeedSequence([self._seed, int(stream)]).generate_state(1, dtype=np.uint64)
        return SeededRng(int(state[0]))
    
    def sample_cn01(self, n: int) -> ComplexVector:
        """
        Draw n i.i.d. circularly-symmetric complex Gaussian samples.
        
        Unit variance per complex entry (1/2 per real component).
        """
        if n < 1:
            raise ValueError(f"sample count must be >= 1, got {n}")
        re = self._gen.standard_normal(n)
        im = self._gen.standard_normal(n)
        return (re + 1j * im) / np.sqrt(2.0)
    
    def uniform_phases(self, n: int) -> ComplexVector:
        """Draw n unit-modulus values exp(j*U[0, 2*pi))."""
        if n < 1:
            raise ValueError(f"sample count must be >= 1, got {n}")
        return np.exp(1j * self._gen.uniform(0.0, 2.0 * np.pi, n))
    
    def __repr__(self) -> str:
        return f"SeededRng(seed={self._seed})"


def sample_cn01(rng: SeededRng, n: int) -> ComplexVector:
    """Module-level form of SeededRng.sample_cn01."""
    return rng.sample_cn01(n)
