"""Small dense real linear algebra for the vector autoregressive bounds.

Matrices are plain ``numpy.ndarray`` values.  Eigendecomposition is
restricted to symmetric input: robust non-symmetric eigensolvers are out
of scope, and every covered example has a symmetric coefficient matrix.
Asymmetric input raises rather than silently returning complex pairs.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ParameterError

__all__ = ["frobenius", "sym_eigen", "sym_sqrt", "inverse"]

_SYM_RTOL = 1e-12
_MAX_CONDITION = 1e12


def _as_square(m) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ParameterError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ParameterError("matrix entries must be finite")
    return a


def frobenius(m) -> float:
    """Frobenius norm sqrt(sum of squared entries)."""
    a = np.asarray(m, dtype=float)
    return float(math.sqrt(float((a * a).sum())))


def _check_symmetric(a: np.ndarray) -> None:
    scale = frobenius(a)
    if scale == 0.0:
        return
    if frobenius(a - a.T) > _SYM_RTOL * scale:
        raise ParameterError("matrix is not symmetric; only symmetric input is supported")


def sym_eigen(m):
    """Eigendecomposition of a symmetric matrix.

    Returns ``(eigenvalues, P)`` with eigenvalues sorted descending and P
    orthogonal, so that ``m = P @ diag(eigenvalues) @ P.T``.
    """
    a = _as_square(m)
    _check_symmetric(a)
    w, p = np.linalg.eigh(a)
    return w[::-1].copy(), p[:, ::-1].copy()


def sym_sqrt(m) -> np.ndarray:
    """Symmetric square root of a symmetric positive-definite matrix."""
    a = _as_square(m)
    w, p = sym_eigen(a)
    if w[-1] <= 0:
        raise ParameterError(f"matrix is not positive definite (min eigenvalue {w[-1]:.3e})")
    s = (p * np.sqrt(w)) @ p.T
    return (s + s.T) / 2


def inverse(m) -> np.ndarray:
    """Inverse of a well-conditioned square matrix."""
    a = _as_square(m)
    try:
        cond = np.linalg.cond(a)
    except np.linalg.LinAlgError as exc:
        raise ParameterError(f"matrix inversion failed: {exc}") from None
    if not np.isfinite(cond) or cond > _MAX_CONDITION:
        raise ParameterError(f"matrix is singular or ill-conditioned (condition {cond:.3e})")
    return np.linalg.inv(a)
