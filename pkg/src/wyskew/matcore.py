"""
Dense complex matrix primitives.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. Most
functions also accept stacks of matrices with shape ``(..., d, d)`` and
broadcast over the leading axes; this is what lets the uncertainty module
evaluate a million Bloch vectors with the same code path it uses for one.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, NotHermitian, NotPositiveSemidefinite

HERMITIAN_TOL = 1e-9
NEGATIVE_EIG_TOL = 1e-10

# Eigenvalues at or below this multiple of d * eps * lambda_max are rounding
# noise from eigh; their square roots would otherwise leak ~1e-8 into sqrt(rho).
_NOISE_FLOOR_FACTOR = 8.0

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class EigDecomposition(NamedTuple):
    """Eigenvalues in ascending order and eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a finite complex128 array with at least two dimensions."""
    m = np.asarray(a, dtype=complex)
    if m.ndim < 2:
        raise DimensionMismatch(f"{name} must be at least 2-dimensional, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def _check_square(a: np.ndarray, name: str = "matrix") -> None:
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DimensionMismatch(f"{name} must be square, got shape {a.shape}")


def _check_same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape[-2:] != b.shape[-2:]:
        raise DimensionMismatch(f"shape mismatch: {a.shape} vs {b.shape}")


def add(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _check_same_shape(a, b)
    return a + b


def sub(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _check_same_shape(a, b)
    return a - b


def scale(a, c: complex) -> np.ndarray:
    return complex(c) * as_matrix(a)


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[-1] != b.shape[-2]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    """Conjugate transpose of the last two axes."""
    return np.conj(np.swapaxes(np.asarray(a, dtype=complex), -1, -2))


def trace(a) -> complex | np.ndarray:
    t = np.trace(np.asarray(a, dtype=complex), axis1=-2, axis2=-1)
    return complex(t) if np.ndim(t) == 0 else t


def commutator(a, b) -> np.ndarray:
    """``ab - ba``."""
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    _check_square(a)
    _check_square(b)
    _check_same_shape(a, b)
    return a @ b - b @ a


def anticommutator(a, b) -> np.ndarray:
    """``ab + ba``."""
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    _check_square(a)
    _check_square(b)
    _check_same_shape(a, b)
    return a @ b + b @ a


def hs_inner(a, b) -> complex | np.ndarray:
    """Hilbert-Schmidt pairing ``tr(a^dagger b)``, conjugate-linear in ``a``."""
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    _check_same_shape(a, b)
    v = np.sum(np.conj(a) * b, axis=(-2, -1))
    return complex(v) if np.ndim(v) == 0 else v


def frobenius_norm(a) -> float | np.ndarray:
    a = np.asarray(a, dtype=complex)
    v = np.sqrt(np.sum(a.real**2 + a.imag**2, axis=(-2, -1)))
    return float(v) if np.ndim(v) == 0 else v


def hermitian_residual(a) -> float:
    """``||a - a^dagger||_F`` relative to ``max(1, ||a||_F)``; worst case over a stack."""
    a = np.asarray(a, dtype=complex)
    res = frobenius_norm(a - adjoint(a)) / np.maximum(1.0, frobenius_norm(a))
    return float(np.max(res))


def hermitian_eig(a) -> EigDecomposition:
    """
    Eigendecomposition of a Hermitian matrix (or stack of them).

    The input is symmetrized as ``(a + a^dagger) / 2`` first, so only the
    Hermitian part is decomposed.

    Raises
    ------
    NotHermitian
        If ``||a - a^dagger||_F > 1e-9 * max(1, ||a||_F)``.
    ConvergenceFailure
        If LAPACK's Hermitian eigensolver does not converge.
    """
    a = np.asarray(a, dtype=complex)
    _check_square(a)
    if hermitian_residual(a) > HERMITIAN_TOL:
        raise NotHermitian("matrix is not Hermitian within 1e-9")
    h = 0.5 * (a + adjoint(a))
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return EigDecomposition(w, v)


def psd_sqrt(a) -> np.ndarray:
    """
    Principal square root of a positive semidefinite matrix.

    Computed as ``V diag(sqrt(lambda)) V^dagger``. Eigenvalues in
    ``[-1e-10, 0)`` are clamped to zero, as are positive eigenvalues below
    the rounding floor ``8 d eps lambda_max``.

    Parameters
    ----------
    a : array_like, shape (..., d, d)
        Hermitian PSD matrix or stack of them.

    Returns
    -------
    numpy.ndarray
        Hermitian PSD matrix ``s`` with ``s @ s == a`` up to rounding.

    Raises
    ------
    NotPositiveSemidefinite
        If any eigenvalue is below ``-1e-10``.
    """
    w, v = hermitian_eig(a)
    if np.any(w < -NEGATIVE_EIG_TOL):
        raise NotPositiveSemidefinite(f"smallest eigenvalue {float(np.min(w)):.3e} < -1e-10")
    d = w.shape[-1]
    floor = _NOISE_FLOOR_FACTOR * d * np.finfo(float).eps * np.max(np.abs(w), axis=-1, keepdims=True)
    w = np.where(w <= floor, 0.0, w)
    root = np.sqrt(w)
    s = (v * root[..., None, :]) @ adjoint(v)
    return 0.5 * (s + adjoint(s))


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product, ``a``'s indices major."""
    return np.kron(as_matrix(a), as_matrix(b))


def is_unitary(u, tol: float = 1e-9) -> bool:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return frobenius_norm(adjoint(u) @ u - np.eye(u.shape[0])) <= tol
