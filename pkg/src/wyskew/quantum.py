"""
Quantum states and Kraus channels.

``DensityMatrix`` and ``KrausChannel`` are immutable, validated wrappers
around numpy arrays. The state caches its square root because every skew
information quantity needs it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import matcore
from .errors import (
    BlochVectorTooLong,
    DimensionMismatch,
    NotHermitian,
    NotTracePreserving,
    NotUnitary,
    NotUnitTrace,
    ParameterOutOfRange,
)
from .matcore import PAULI_X, PAULI_Y, PAULI_Z, adjoint

STATE_TOL = 1e-9
COMPLETENESS_TOL = 1e-8
UNITARY_TOL = 1e-9
BLOCH_TOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class DensityMatrix:
    """Validated quantum state with cached square root."""

    matrix: np.ndarray
    sqrt_matrix: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def purity(self) -> float:
        return float(np.real(np.sum(self.matrix * self.matrix.T)))

    def expect(self, op) -> complex:
        """``tr(op rho)``."""
        return complex(np.sum(np.asarray(op).T * self.matrix))

    def bloch_vector(self) -> np.ndarray:
        if self.dim != 2:
            raise DimensionMismatch("Bloch vector is only defined for qubits")
        return np.real([self.expect(PAULI_X), self.expect(PAULI_Y), self.expect(PAULI_Z)])


@dataclass(frozen=True)
class BlochVector:
    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.sqrt(self.x**2 + self.y**2 + self.z**2)
        if n > 1 + BLOCH_TOL:
            raise BlochVectorTooLong(f"|r| = {n!r} exceeds 1")

    @classmethod
    def from_polar(cls, radius: float, theta: float, phi: float) -> "BlochVector":
        """Spherical coordinates; ``theta`` is the polar angle from +z."""
        st = math.sin(theta)
        return cls(radius * st * math.cos(phi), radius * st * math.sin(phi), radius * math.cos(theta))

    @property
    def norm(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


@dataclass(frozen=True)
class KrausChannel:
    """
    Channel ``rho -> sum_i K_i rho K_i^dagger``.

    ``kraus_ops`` is a read-only array of shape ``(n, d, d)``; order is
    preserved because the summation-form bound pairs operators by index.
    """

    kraus_ops: np.ndarray
    name: str = "channel"

    def __post_init__(self):
        ops = np.asarray(self.kraus_ops, dtype=complex)
        if ops.ndim == 2:
            ops = ops[None]
        if ops.ndim != 3 or ops.shape[1] != ops.shape[2] or ops.shape[0] == 0:
            raise DimensionMismatch(f"Kraus operators must be a non-empty list of square matrices, got {ops.shape}")
        if not np.all(np.isfinite(ops)):
            raise ValueError("Kraus operators have non-finite entries")
        d = ops.shape[1]
        resid = matcore.frobenius_norm(np.sum(adjoint(ops) @ ops, axis=0) - np.eye(d))
        if resid > COMPLETENESS_TOL:
            raise NotTracePreserving(f"||sum K^dagger K - I||_F = {resid:.3e} > {COMPLETENESS_TOL:g}")
        object.__setattr__(self, "kraus_ops", _frozen(ops))

    @property
    def dim(self) -> int:
        return self.kraus_ops.shape[1]

    @property
    def n_ops(self) -> int:
        return self.kraus_ops.shape[0]

    def __len__(self) -> int:
        return self.n_ops

    def __iter__(self):
        return iter(self.kraus_ops)

    def unitality_residual(self) -> float:
        ops = self.kraus_ops
        return matcore.frobenius_norm(np.sum(ops @ adjoint(ops), axis=0) - np.eye(self.dim))

    @property
    def is_unital(self) -> bool:
        return self.unitality_residual() <= COMPLETENESS_TOL

    @property
    def is_unitary(self) -> bool:
        return self.n_ops == 1 and matcore.is_unitary(self.kraus_ops[0], UNITARY_TOL)

    def __call__(self, rho: "DensityMatrix") -> "DensityMatrix":
        return apply_channel(self, rho)


def _validate_state_matrix(m: np.ndarray, tol: float = STATE_TOL) -> np.ndarray:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"density matrix must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("density matrix has non-finite entries")
    if matcore.frobenius_norm(m - adjoint(m)) > tol:
        raise NotHermitian("density matrix is not Hermitian within 1e-9")
    tr = np.trace(m)
    if abs(tr - 1) > tol:
        raise NotUnitTrace(f"trace is {tr.real:.12g}, expected 1")
    return 0.5 * (m + adjoint(m))


def density_from_matrix(m) -> DensityMatrix:
    """
    Validate ``m`` as a density matrix and cache its square root.

    Raises ``NotHermitian``, ``NotUnitTrace`` or ``NotPositiveSemidefinite``.
    """
    m = _validate_state_matrix(np.asarray(m, dtype=complex))
    s = matcore.psd_sqrt(m)
    return DensityMatrix(_frozen(m), _frozen(s))


def _renormalized(m: np.ndarray) -> DensityMatrix:
    # Clamp tiny negative eigenvalues and trace drift left by float arithmetic.
    m = _validate_state_matrix(m)
    w, v = matcore.hermitian_eig(m)
    if np.min(w) < -matcore.NEGATIVE_EIG_TOL:
        # psd_sqrt raises the right error
        matcore.psd_sqrt(m)
    if np.min(w) < 0:
        w = np.clip(w, 0.0, None)
        m = (v * w) @ adjoint(v)
    m = m / np.trace(m).real
    return density_from_matrix(m)


def density_from_bloch(r) -> DensityMatrix:
    """
    Qubit state ``(I + r . sigma) / 2``.

    ``r`` may be a ``BlochVector`` or any 3-sequence. Lengths within 1e-12
    above one are rescaled onto the sphere.
    """
    if isinstance(r, BlochVector):
        vec = r.as_array()
    else:
        vec = np.asarray(r, dtype=float)
        if vec.shape != (3,):
            raise DimensionMismatch(f"Bloch vector must have 3 components, got shape {vec.shape}")
    n = float(np.linalg.norm(vec))
    if n > 1 + BLOCH_TOL:
        raise BlochVectorTooLong(f"|r| = {n!r} exceeds 1")
    if n > 1:
        vec = vec / n
    m = 0.5 * (np.eye(2) + vec[0] * PAULI_X + vec[1] * PAULI_Y + vec[2] * PAULI_Z)
    return density_from_matrix(m)


def bloch_states(vectors: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    Stacked qubit states and their square roots for an ``(N, 3)`` array.

    Returns ``(rho, sqrt_rho)`` each of shape ``(N, 2, 2)``; used by the
    batched bound evaluations.
    """
    vecs = np.asarray(vectors, dtype=float)
    norms = np.linalg.norm(vecs, axis=-1)
    if np.any(norms > 1 + BLOCH_TOL):
        raise BlochVectorTooLong(f"max |r| = {norms.max()!r} exceeds 1")
    vecs = vecs / np.maximum(norms, 1.0)[..., None]
    rho = 0.5 * (
        np.eye(2)
        + vecs[..., 0, None, None] * PAULI_X
        + vecs[..., 1, None, None] * PAULI_Y
        + vecs[..., 2, None, None] * PAULI_Z
    )
    return rho, matcore.psd_sqrt(rho)


def partial_trace_second(rho: DensityMatrix, d_a: int, d_b: int) -> DensityMatrix:
    """Trace out the second tensor factor of a ``(d_a d_b)``-dimensional state."""
    if rho.dim != d_a * d_b:
        raise DimensionMismatch(f"state of dimension {rho.dim} is not {d_a}x{d_b}")
    m = rho.matrix.reshape(d_a, d_b, d_a, d_b)
    return _renormalized(np.einsum("ajbj->ab", m))


def _check_q(q: float) -> float:
    q = float(q)
    if not 0.0 <= q < 1.0:
        raise ParameterOutOfRange(f"q = {q!r} is outside [0, 1)")
    return q


def amplitude_damping(q: float) -> KrausChannel:
    """``L1 = [[1, 0], [0, sqrt(1-q)]]``, ``L2 = [[0, sqrt(q)], [0, 0]]``."""
    q = _check_q(q)
    l1 = np.array([[1, 0], [0, math.sqrt(1 - q)]], dtype=complex)
    l2 = np.array([[0, math.sqrt(q)], [0, 0]], dtype=complex)
    return KrausChannel(np.stack([l1, l2]), name=f"amplitude_damping(q={q:g})")


def bit_flip(q: float) -> KrausChannel:
    """``K1 = sqrt(q) I``, ``K2 = sqrt(1-q) sigma_x``. Note ``q`` weights the identity."""
    q = _check_q(q)
    k1 = math.sqrt(q) * np.eye(2, dtype=complex)
    k2 = math.sqrt(1 - q) * PAULI_X
    return KrausChannel(np.stack([k1, k2]), name=f"bit_flip(q={q:g})")


def unitary_channel(u, name: str = "unitary") -> KrausChannel:
    u = np.asarray(u, dtype=complex)
    if not matcore.is_unitary(u, UNITARY_TOL):
        raise NotUnitary("matrix is not unitary within 1e-9")
    return KrausChannel(u[None], name=name)


def identity_channel(d: int) -> KrausChannel:
    return KrausChannel(np.eye(d, dtype=complex)[None], name=f"identity({d})")


def pauli_unitary_channels() -> tuple[KrausChannel, KrausChannel, KrausChannel]:
    return (
        unitary_channel(PAULI_X, name="sigma_x"),
        unitary_channel(PAULI_Y, name="sigma_y"),
        unitary_channel(PAULI_Z, name="sigma_z"),
    )


def mix_kraus(c: KrausChannel, u) -> KrausChannel:
    """
    Unitary remixing ``K'_i = sum_j u_ij K_j`` of a Kraus list.

    If ``u`` is larger than the number of operators, the list is padded
    with zero matrices first. The resulting channel acts identically.
    """
    u = np.asarray(u, dtype=complex)
    if not matcore.is_unitary(u, UNITARY_TOL):
        raise NotUnitary("mixing matrix is not unitary within 1e-9")
    n = u.shape[0]
    if n < c.n_ops:
        raise DimensionMismatch(f"mixing unitary is {n}x{n} but channel has {c.n_ops} Kraus operators")
    ops = c.kraus_ops
    if n > c.n_ops:
        ops = np.concatenate([ops, np.zeros((n - c.n_ops, c.dim, c.dim), dtype=complex)])
    return KrausChannel(np.einsum("ij,jab->iab", u, ops), name=f"mixed({c.name})")


def conjugate_channel(c: KrausChannel, u) -> KrausChannel:
    """Kraus operators ``u K_i u^dagger``: the channel seen in a rotated frame."""
    u = np.asarray(u, dtype=complex)
    if not matcore.is_unitary(u, UNITARY_TOL):
        raise NotUnitary("matrix is not unitary within 1e-9")
    if u.shape[0] != c.dim:
        raise DimensionMismatch(f"unitary is {u.shape[0]}-dimensional, channel is {c.dim}-dimensional")
    return KrausChannel(u @ c.kraus_ops @ adjoint(u), name=f"conj({c.name})")


def apply_channel(c: KrausChannel, rho: DensityMatrix) -> DensityMatrix:
    if c.dim != rho.dim:
        raise DimensionMismatch(f"channel dimension {c.dim} != state dimension {rho.dim}")
    ops = c.kraus_ops
    out = np.sum(ops @ rho.matrix @ adjoint(ops), axis=0)
    return _renormalized(out)


def extend_channel(c: KrausChannel, d_b: int) -> KrausChannel:
    """``Phi (x) id`` on a ``d * d_b`` composite system."""
    if d_b < 1:
        raise ParameterOutOfRange("d_b must be positive")
    eye = np.eye(d_b, dtype=complex)
    return KrausChannel(np.stack([np.kron(k, eye) for k in c.kraus_ops]), name=f"{c.name}(x)id{d_b}")


def check_same_dim(rho: DensityMatrix, *channels: KrausChannel) -> None:
    for c in channels:
        if c.dim != rho.dim:
            raise DimensionMismatch(f"channel '{c.name}' has dimension {c.dim}, state has {rho.dim}")


def channel_from_ops(ops: Sequence, name: str = "kraus") -> KrausChannel:
    return KrausChannel(np.stack([np.asarray(k, dtype=complex) for k in ops]), name=name)
