#!/usr/bin/env python3
# -*- coding: utf-8 -*-
# SPDX-License-Identifier: GPL-3.0-or-later

"""
Complex Linear Algebra Kernel
=============================
Dense complex vector/matrix helpers used by every other module.

Vectors and matrices are plain numpy arrays of dtype complex128. The
helpers below add the shape and finiteness checks the solvers rely on;
hot inner loops may use numpy operators directly once inputs have been
validated.

Authors: superguru, gazorper
License: GPL v3.0
"""

from typing import Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import DimensionMismatch

ComplexVector = NDArray[np.complex128]
ComplexMatrix = NDArray[np.complex128]
Scalar = Union[complex, float, int]


def as_vector(x: ArrayLike, name: str = "vector") -> ComplexVector:
    """
    Convert input to a validated 1-D complex vector.
    
    Args:
        x: Array-like input
        name: Name used in error messages
        
    Returns:
        complex128 array of shape (n,), n >= 1
        
    Raises:
        DimensionMismatch: If input is not 1-D or empty
        ValueError: If any entry is NaN or infinite
    """
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim != 1 or arr.size == 0:
        raise DimensionMismatch(f"{name} must be a non-empty 1-D vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def as_matrix(a: ArrayLike, name: str = "matrix") -> ComplexMatrix:
    """
    Convert input to a validated 2-D complex matrix.
    
    Args:
        a: Array-like input
        name: Name used in error messages
        
    Returns:
        complex128 array of shape (rows, cols), both >= 1
        
    Raises:
        DimensionMismatch: If input is not 2-D or has an empty axis
        ValueError: If any entry is NaN or infinite
    """
    arr = np.asarray(a, dtype=np.complex128)
    if arr.ndim != 2 or 0 in arr.shape:
        raise DimensionMismatch(f"{name} must be a non-empty 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_same_length(x: ComplexVector, y: ComplexVector) -> None:
    """Raise DimensionMismatch unless x and y have equal length."""
    if x.shape != y.shape:
        raise DimensionMismatch(f"vector lengths differ: {x.shape[0]} vs {y.shape[0]}")


def hermitian_inner(x: ArrayLike, y: ArrayLike) -> complex:
    """Return x^H y = sum(conj(x_i) * y_i)."""
    xv = as_vector(x, "x")
    yv = as_vector(y, "y")
    check_same_length(xv, yv)
    return complex(np.vdot(xv, yv))


def norm2(x: ArrayLike) -> float:
    """Return the squared Euclidean norm sum(|x_i|^2)."""
    xv = as_vector(x, "x")
    return float(np.real(np.vdot(xv, xv)))


def matvec(a: ArrayLike, x: ArrayLike) -> ComplexVector:
    """Return A x."""
    am = as_matrix(a, "A")
    xv = as_vector(x, "x")
    if am.shape[1] != xv.shape[0]:
        raise DimensionMismatch(f"matvec: A is {am.shape[0]}x{am.shape[1]}, x has length {xv.shape[0]}")
    return am @ xv


def matmul(a: ArrayLike, b: ArrayLike) -> ComplexMatrix:
    """Return A B."""
    am = as_matrix(a, "A")
    bm = as_matrix(b, "B")
    if am.shape[1] != bm.shape[0]:
        raise DimensionMismatch(
            f"matmul: A is {am.shape[0]}x{am.shape[1]}, B is {bm.shape[0]}x{bm.shape[1]}"
        )
    return am @ bm


def conj_transpose(a: ArrayLike) -> ComplexMatrix:
    """Return A^H."""
    return as_matrix(a, "A").conj().T.copy()


def scale(c: Scalar, x: ArrayLike) -> NDArray[np.complex128]:
    """Return c * x for a vector or matrix x."""
    arr = np.asarray(x, dtype=np.complex128)
    if arr.ndim == 1:
        arr = as_vector(arr, "x")
    else:
        arr = as_matrix(arr, "x")
    return complex(c) * arr


def add(x: ArrayLike, y: ArrayLike) -> NDArray[np.complex128]:
    """Return x + y for equally shaped vectors or matrices."""
    xa = np.asarray(x, dtype=np.complex128)
    ya = np.asarray(y, dtype=np.complex128)
    if xa.shape != ya.shape:
        raise DimensionMismatch(f"add: shapes differ: {xa.shape} vs {ya.shape}")
    if xa.ndim == 1:
        return as_vector(xa, "x") + as_vector(ya, "y")
    return as_matrix(xa, "x") + as_matrix(ya, "y")


def unit_phase(z: complex) -> complex:
    """Return z/|z|, with the convention phase(0) = 1."""
    mag = abs(z)
    if mag == 0.0:
        return 1.0 + 0.0j
    return complex(z) / mag
