"""
Skew-information uncertainty quantities for quantum channels and the
product-, summation- and three-channel uncertainty relations.

For a state ``rho`` with square root ``s`` and a Kraus list ``{K_i}``:

    I = 1/2 sum ||[s, K_i]||_F^2            skew information
    J = 1/2 sum ||{s, K_i}||_F^2            dual (Jordan) quantity
    V = sum 1/2 tr((K^+K + KK^+) rho) - |tr(K rho)|^2
    C = V - I                               classical mixing part
    Q = sqrt(V^2 - (V - I)^2)               quantum uncertainty

The private ``_*`` kernels take raw arrays ``rho, s`` of shape
``(..., d, d)`` and Kraus stacks of shape ``(n, d, d)`` and broadcast over
the leading state axes. The public functions wrap them for a single
``DensityMatrix``; the ``*_batch`` functions expose the broadcasting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import matcore, quantum
from .errors import DimensionMismatch, InternalConsistencyError, NoFeasibleSample
from .matcore import adjoint
from .quantum import DensityMatrix, KrausChannel

CLAMP_TOL = 1e-12
BOUND_TOL = 1e-10
IDENTITY_TOL = 1e-10
CENTERED_FORM_TOL = 1e-9
PAULI_TAU = 64.0 / (3.0 * math.sqrt(3.0))


@dataclass(frozen=True)
class BoundCheck:
    """One instance of an inequality ``lhs >= rhs``."""

    lhs: float
    rhs: float
    tolerance: float = BOUND_TOL
    relation: str = ""

    @property
    def slack(self) -> float:
        return self.lhs - self.rhs

    @property
    def satisfied(self) -> bool:
        return self.slack >= -self.tolerance

    def __str__(self) -> str:
        status = "PASS" if self.satisfied else "FAIL"
        return f"{self.relation} lhs={self.lhs:.12g} rhs={self.rhs:.12g} slack={self.slack:.6e} {status}"


@dataclass(frozen=True)
class UncertaintyReport:
    skew_info: float
    dual_info: float
    variance: float
    classical: float
    quantum: float
    tilde_I: float
    tilde_J: float

    def invariant_residuals(self) -> dict[str, float]:
        """Signed residuals of the identities and the I <= Q <= 2V - I sandwich."""
        i, v, q = self.skew_info, self.variance, self.quantum
        return {
            "C = V - I": abs(self.classical - (v - i)),
            "tilde_I = I": abs(self.tilde_I - i),
            "tilde_J = 2V - I": abs(self.tilde_J - (2 * v - i)),
            "Q = sqrt(tilde_I tilde_J)": abs(q - math.sqrt(max(self.tilde_I * self.tilde_J, 0.0))),
            "I <= Q": max(i - q, 0.0),
            "Q <= 2V - I": max(q - (2 * v - i), 0.0),
        }

    def check_invariants(self, tol: float = IDENTITY_TOL) -> dict[str, bool]:
        return {name: r <= tol for name, r in self.invariant_residuals().items()}


@dataclass(frozen=True)
class TauEstimate:
    """Smallest observed ratio, rescaled to the tight-Pauli normalization."""

    tau: float
    min_ratio: float
    argmin_state: np.ndarray
    feasible_samples: int
    total_samples: int

    def __float__(self) -> float:
        return self.tau


# ---------------------------------------------------------------------------
# array kernels


def _clamp(x, name: str):
    """Zero out float noise in ``[-1e-12, 0)``; anything more negative is a bug."""
    x = np.asarray(x, dtype=float)
    if np.any(x < -CLAMP_TOL):
        raise InternalConsistencyError(f"{name} = {float(np.min(x)):.3e} is negative beyond float noise")
    x = np.where(x < 0, 0.0, x)
    return float(x) if x.ndim == 0 else x


def _ops(op) -> np.ndarray:
    ops = np.asarray(op, dtype=complex)
    return ops[None] if ops.ndim == 2 else ops


def _expect(rho: np.ndarray, ops: np.ndarray) -> np.ndarray:
    """``tr(K_i rho)`` with shape ``(..., n)``."""
    return np.trace(ops @ rho[..., None, :, :], axis1=-2, axis2=-1)


def _sq_norm(a: np.ndarray) -> np.ndarray:
    return np.sum(a.real**2 + a.imag**2, axis=(-2, -1))


def _commutators(s: np.ndarray, ops: np.ndarray) -> np.ndarray:
    s_ = s[..., None, :, :]
    return s_ @ ops - ops @ s_


def _anticommutators(s: np.ndarray, ops: np.ndarray) -> np.ndarray:
    s_ = s[..., None, :, :]
    return s_ @ ops + ops @ s_


def _skew_terms(s, ops) -> np.ndarray:
    return 0.5 * _sq_norm(_commutators(s, ops))


def _dual_terms(s, ops) -> np.ndarray:
    return 0.5 * _sq_norm(_anticommutators(s, ops))


def _variance_terms(rho, ops) -> np.ndarray:
    sym = adjoint(ops) @ ops + ops @ adjoint(ops)
    sym_mean = 0.5 * np.real(_expect(rho, sym))
    mean = _expect(rho, ops)
    return _clamp(sym_mean - (mean.real**2 + mean.imag**2), "variance")


def _centered(rho, ops) -> np.ndarray:
    d = ops.shape[-1]
    return ops - _expect(rho, ops)[..., None, None] * np.eye(d)


def _core(rho, s, ops) -> tuple[np.ndarray, np.ndarray]:
    """``(I, V)`` summed over the Kraus list."""
    i = _clamp(np.sum(_skew_terms(s, ops), axis=-1), "skew information")
    v = _clamp(np.sum(_variance_terms(rho, ops), axis=-1), "variance")
    return i, v


def _quantum_from(i, v):
    # V^2 - (V - I)^2 written as I (2V - I): same value, no cancellation when I << V.
    return np.sqrt(_clamp(i * (2 * v - i), "Q radicand"))


def _quantum(rho, s, ops):
    i, v = _core(rho, s, ops)
    return _quantum_from(i, v)


def _lb1_rhs(rho, l_ops, k_ops):
    """``1/4 sum_ij |tr([L_i, K_j^+] rho)|^2``."""
    kd = np.conj(k_ops)
    # tr(L_i K_j^+ rho) and tr(K_j^+ L_i rho)
    a = np.einsum("...iab,...jcb,...ca->...ij", l_ops, kd, rho)
    b = np.einsum("...jba,...ibc,...ca->...ij", kd, l_ops, rho)
    c = a - b
    return 0.25 * np.sum(c.real**2 + c.imag**2, axis=(-2, -1))


def _pad_pair(l_ops, k_ops):
    n = max(l_ops.shape[-3], k_ops.shape[-3])

    def pad(ops):
        extra = n - ops.shape[-3]
        if extra == 0:
            return ops
        zeros = np.zeros(ops.shape[:-3] + (extra,) + ops.shape[-2:], dtype=complex)
        return np.concatenate([ops, zeros], axis=-3)

    return pad(l_ops), pad(k_ops)


def _hs_pairs(a, b):
    return np.sum(np.conj(a) * b, axis=(-2, -1))


def _lb2_closed(rho, s, l_ops, k_ops):
    l_ops, k_ops = _pad_pair(l_ops, k_ops)
    comm = _hs_pairs(_commutators(s, l_ops), _commutators(s, k_ops))
    jordan = _hs_pairs(_anticommutators(s, l_ops), _anticommutators(s, k_ops))
    l_dag_mean = np.conj(_expect(rho, l_ops))
    corr = jordan - 4 * l_dag_mean * _expect(rho, k_ops)
    # sum_ij |a_i b_j| factorizes as (sum_i |a_i|)(sum_j |b_j|)
    return 0.5 * np.sum(np.abs(comm), axis=-1) * np.sum(np.abs(corr), axis=-1)


def _lb2_centered(rho, s, l_ops, k_ops):
    l_ops, k_ops = _pad_pair(l_ops, k_ops)
    lc, kc = _centered(rho, l_ops), _centered(rho, k_ops)
    comm = _hs_pairs(_commutators(s, lc), _commutators(s, kc))
    jordan = _hs_pairs(_anticommutators(s, lc), _anticommutators(s, kc))
    return 0.5 * np.sum(np.abs(comm), axis=-1) * np.sum(np.abs(jordan), axis=-1)


def _triple_sums(rho, l_ops, k_ops, m_ops):
    """The three pairwise double sums ``sum |tr([., .^+] rho)|^2`` (without the 1/4)."""
    return (
        4 * _lb1_rhs(rho, l_ops, k_ops),
        4 * _lb1_rhs(rho, l_ops, m_ops),
        4 * _lb1_rhs(rho, m_ops, k_ops),
    )


# ---------------------------------------------------------------------------
# operator-level quantities


def _op_args(rho: DensityMatrix, k) -> np.ndarray:
    ops = _ops(k)
    if ops.shape[-1] != rho.dim or ops.shape[-2] != rho.dim:
        raise DimensionMismatch(f"operator shape {ops.shape[-2:]} does not match state dimension {rho.dim}")
    return ops


def skew_info_op(rho: DensityMatrix, k) -> float:
    """Wigner-Yanase skew information ``1/2 ||[sqrt(rho), k]||_F^2``."""
    return float(_skew_terms(rho.sqrt_matrix, _op_args(rho, k))[0])


def dual_info_op(rho: DensityMatrix, k) -> float:
    """``1/2 ||{sqrt(rho), k}||_F^2``."""
    return float(_dual_terms(rho.sqrt_matrix, _op_args(rho, k))[0])


def variance_op(rho: DensityMatrix, k) -> float:
    """Symmetrized variance ``1/2 tr((k^+k + kk^+) rho) - |tr(k rho)|^2``."""
    return float(_variance_terms(rho.matrix, _op_args(rho, k))[0])


# ---------------------------------------------------------------------------
# channel-level quantities


def skew_info_channel(rho: DensityMatrix, c: KrausChannel) -> float:
    quantum.check_same_dim(rho, c)
    return _clamp(np.sum(_skew_terms(rho.sqrt_matrix, c.kraus_ops)), "skew information")


def dual_info_channel(rho: DensityMatrix, c: KrausChannel) -> float:
    quantum.check_same_dim(rho, c)
    return float(np.sum(_dual_terms(rho.sqrt_matrix, c.kraus_ops)))


def variance_channel(rho: DensityMatrix, c: KrausChannel) -> float:
    """Sum of operator variances; independent of the Kraus representation."""
    quantum.check_same_dim(rho, c)
    return _clamp(np.sum(_variance_terms(rho.matrix, c.kraus_ops)), "variance")


def classical_uncertainty(rho: DensityMatrix, c: KrausChannel) -> float:
    """``V - I``. Vanishes on pure states."""
    quantum.check_same_dim(rho, c)
    i, v = _core(rho.matrix, rho.sqrt_matrix, c.kraus_ops)
    return _clamp(v - i, "classical uncertainty")


def quantum_uncertainty(rho: DensityMatrix, c: KrausChannel) -> float:
    """
    ``Q = sqrt(V^2 - (V - I)^2)``.

    Satisfies ``I <= Q <= 2V - I`` and ``Q^2 = tilde_I * tilde_J``.
    """
    quantum.check_same_dim(rho, c)
    return float(_quantum(rho.matrix, rho.sqrt_matrix, c.kraus_ops))


def centered_kraus(rho: DensityMatrix, c: KrausChannel) -> np.ndarray:
    """``K_i - tr(K_i rho) I`` for every Kraus operator, shape ``(n, d, d)``."""
    quantum.check_same_dim(rho, c)
    return _centered(rho.matrix, c.kraus_ops)


def tilde_I(rho: DensityMatrix, c: KrausChannel) -> float:
    kc = centered_kraus(rho, c)
    return float(np.sum(_skew_terms(rho.sqrt_matrix, kc)))


def tilde_J(rho: DensityMatrix, c: KrausChannel) -> float:
    kc = centered_kraus(rho, c)
    return float(np.sum(_dual_terms(rho.sqrt_matrix, kc)))


def report(rho: DensityMatrix, c: KrausChannel) -> UncertaintyReport:
    quantum.check_same_dim(rho, c)
    r, s, ops = rho.matrix, rho.sqrt_matrix, c.kraus_ops
    i, v = _core(r, s, ops)
    kc = _centered(r, ops)
    return UncertaintyReport(
        skew_info=i,
        dual_info=float(np.sum(_dual_terms(s, ops))),
        variance=v,
        classical=_clamp(v - i, "classical uncertainty"),
        quantum=float(_quantum_from(i, v)),
        tilde_I=float(np.sum(_skew_terms(s, kc))),
        tilde_J=float(np.sum(_dual_terms(s, kc))),
    )


# ---------------------------------------------------------------------------
# uncertainty relations


def product_bound_rhs(rho: DensityMatrix, psi: KrausChannel, phi: KrausChannel) -> float:
    quantum.check_same_dim(rho, psi, phi)
    return float(_lb1_rhs(rho.matrix, psi.kraus_ops, phi.kraus_ops))


def lb_product(rho: DensityMatrix, psi: KrausChannel, phi: KrausChannel) -> BoundCheck:
    """
    Product-form relation ``Q(Psi) Q(Phi) >= 1/4 sum_ij |tr([L_i, K_j^+] rho)|^2``.

    The double sum runs over both full Kraus lists, which may differ in length.
    """
    quantum.check_same_dim(rho, psi, phi)
    r, s = rho.matrix, rho.sqrt_matrix
    lhs = _quantum(r, s, psi.kraus_ops) * _quantum(r, s, phi.kraus_ops)
    rhs = _lb1_rhs(r, psi.kraus_ops, phi.kraus_ops)
    return BoundCheck(float(lhs), float(rhs), relation="product")


def sum_bound_rhs(rho: DensityMatrix, psi: KrausChannel, phi: KrausChannel) -> tuple[float, float]:
    """Closed-form and centered-form right-hand sides of the summation relation."""
    quantum.check_same_dim(rho, psi, phi)
    r, s = rho.matrix, rho.sqrt_matrix
    return (
        float(_lb2_closed(r, s, psi.kraus_ops, phi.kraus_ops)),
        float(_lb2_centered(r, s, psi.kraus_ops, phi.kraus_ops)),
    )


def lb_sum(rho: DensityMatrix, psi: KrausChannel, phi: KrausChannel) -> BoundCheck:
    """
    Summation-form relation ``Q(Psi)^2 + Q(Phi)^2 >= LB2``.

    ``LB2`` pairs ``L_i`` with ``K_i`` by position, so its value depends on
    the Kraus lists as supplied; the shorter list is padded with zeros.
    The bound is evaluated both in closed form (with the ``-4 <L^+><K>``
    correction) and from centered operators, and the two must agree.

    Raises
    ------
    InternalConsistencyError
        If the two forms differ by more than 1e-9.
    """
    quantum.check_same_dim(rho, psi, phi)
    r, s = rho.matrix, rho.sqrt_matrix
    closed = float(_lb2_closed(r, s, psi.kraus_ops, phi.kraus_ops))
    centered = float(_lb2_centered(r, s, psi.kraus_ops, phi.kraus_ops))
    if abs(closed - centered) > CENTERED_FORM_TOL:
        raise InternalConsistencyError(f"summation bound: closed form {closed!r} != centered form {centered!r}")
    lhs = _quantum(r, s, psi.kraus_ops) ** 2 + _quantum(r, s, phi.kraus_ops) ** 2
    return BoundCheck(float(lhs), closed, relation="sum")


def lb_triple(
    rho: DensityMatrix, psi: KrausChannel, phi: KrausChannel, gamma: KrausChannel, tau: float = 1.0
) -> BoundCheck:
    """
    Three-channel relation ``Q(Psi) Q(Phi) Q(Gamma) >= tau/8 sqrt(S_LK S_LM S_MK)``.

    ``S_AB = sum_ij |tr([A_i, B_j^+] rho)|^2``. With ``tau = 1`` this is the
    geometric mean of three product-form relations and always holds.
    Larger ``tau`` is a conjecture to be tested, and note that the tight
    Pauli constant from :func:`pauli_tight_bound` lives in a normalization
    eight times smaller (see :func:`estimate_tau`).
    """
    quantum.check_same_dim(rho, psi, phi, gamma)
    if tau <= 0:
        raise ValueError("tau must be positive")
    r, s = rho.matrix, rho.sqrt_matrix
    lhs = _quantum(r, s, psi.kraus_ops) * _quantum(r, s, phi.kraus_ops) * _quantum(r, s, gamma.kraus_ops)
    s_lk, s_lm, s_mk = _triple_sums(r, psi.kraus_ops, phi.kraus_ops, gamma.kraus_ops)
    rhs = tau / 8.0 * math.sqrt(float(s_lk * s_lm * s_mk))
    return BoundCheck(float(lhs), rhs, relation=f"triple(tau={tau:g})")


_PAULI_OPS = np.stack([matcore.PAULI_X, matcore.PAULI_Y, matcore.PAULI_Z])[:, None]


def pauli_bound_batch(rho: np.ndarray, sqrt_rho: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """
    ``(lhs, rhs)`` of the tight Pauli relation for a stack of qubit states.

    ``lhs = Q(sigma_x) Q(sigma_y) Q(sigma_z)`` and
    ``rhs = tau/8 |<sigma_x><sigma_y><sigma_z>|`` with ``tau = 64/(3 sqrt 3)``.
    """
    lhs = np.ones(rho.shape[:-2])
    means = np.ones(rho.shape[:-2])
    for ops in _PAULI_OPS:
        lhs = lhs * _quantum(rho, sqrt_rho, ops)
        means = means * np.real(_expect(rho, ops)[..., 0])
    return lhs, PAULI_TAU / 8.0 * np.abs(means)


def pauli_tight_bound(rho: DensityMatrix) -> BoundCheck:
    """Tight three-Pauli relation; equality on the diagonal pure states ``|r_i| = 1/sqrt(3)``."""
    if rho.dim != 2:
        raise DimensionMismatch(f"the Pauli relation needs a qubit state, got dimension {rho.dim}")
    lhs, rhs = pauli_bound_batch(rho.matrix, rho.sqrt_matrix)
    return BoundCheck(float(lhs), float(rhs), relation="pauli")


def pauli_tight_bound_grid(vectors, chunk: int = 100_000) -> tuple[np.ndarray, np.ndarray]:
    """Batched :func:`pauli_tight_bound` over an ``(N, 3)`` array of Bloch vectors."""
    vectors = np.asarray(vectors, dtype=float)
    lhs = np.empty(len(vectors))
    rhs = np.empty(len(vectors))
    for start in range(0, len(vectors), chunk):
        sl = slice(start, start + chunk)
        r, s = quantum.bloch_states(vectors[sl])
        lhs[sl], rhs[sl] = pauli_bound_batch(r, s)
    return lhs, rhs


def bloch_grid(points: int) -> np.ndarray:
    """
    Roughly ``points`` Bloch vectors: radial shells times a polar/azimuthal grid.

    Shells are evenly spaced in ``(0, 1]`` and include the pure-state sphere;
    angles are uniform in spherical coordinates, endpoints included.
    """
    if points < 1:
        raise ValueError("points must be positive")
    n_r = max(1, round(points ** (1 / 3) / 2))
    n_ang = max(2, math.isqrt(max(points // n_r, 1)))
    n_theta = max(2, n_ang // 2 + 1)
    n_phi = max(2, points // (n_r * n_theta))
    radii = np.linspace(1.0 / n_r, 1.0, n_r)
    theta = np.linspace(0.0, math.pi, n_theta)
    phi = np.linspace(0.0, 2 * math.pi, n_phi)
    rr, tt, pp = np.meshgrid(radii, theta, phi, indexing="ij")
    st = np.sin(tt)
    return np.stack([rr * st * np.cos(pp), rr * st * np.sin(pp), rr * np.cos(tt)], axis=-1).reshape(-1, 3)


def triple_ratio_batch(rho, sqrt_rho, psi: KrausChannel, phi: KrausChannel, gamma: KrausChannel):
    """``(lhs, rhs at tau=1)`` of the three-channel relation for a stack of states."""
    lhs = (
        _quantum(rho, sqrt_rho, psi.kraus_ops)
        * _quantum(rho, sqrt_rho, phi.kraus_ops)
        * _quantum(rho, sqrt_rho, gamma.kraus_ops)
    )
    s_lk, s_lm, s_mk = _triple_sums(rho, psi.kraus_ops, phi.kraus_ops, gamma.kraus_ops)
    return lhs, np.sqrt(s_lk * s_lm * s_mk) / 8.0


def estimate_tau(
    psi: KrausChannel,
    phi: KrausChannel,
    gamma: KrausChannel,
    points: int = 100_000,
    seed: int = 0,
    chunk: int = 50_000,
) -> TauEstimate:
    """
    Numerical tightening constant for a channel triple.

    Minimizes ``lhs / rhs(tau=1)`` over sampled states with ``rhs > 1e-12``
    and returns eight times the minimum, the normalization in which the
    three Pauli unitaries give ``64/(3 sqrt 3)``. Qubit channels are scanned
    on :func:`bloch_grid`; higher dimensions use ``points`` Ginibre states
    drawn from ``seed``. Being a minimum over a subset of states, the
    estimate approaches the true constant from above.

    Raises
    ------
    NoFeasibleSample
        If the right-hand side vanishes on every sampled state.
    """
    if not psi.dim == phi.dim == gamma.dim:
        raise DimensionMismatch("channels must share one dimension")
    d = psi.dim
    if d == 2:
        vectors = bloch_grid(points)
        batches = (
            (vectors[i : i + chunk], *quantum.bloch_states(vectors[i : i + chunk]))
            for i in range(0, len(vectors), chunk)
        )
        total = len(vectors)
    else:
        from . import sampling

        rng = sampling.make_rng(seed)
        total = points

        def ginibre_batches():
            for i in range(0, points, chunk):
                m = min(chunk, points - i)
                g = rng.standard_normal((m, d, d)) + 1j * rng.standard_normal((m, d, d))
                r = g @ adjoint(g)
                r = r / np.trace(r, axis1=-2, axis2=-1).real[:, None, None]
                yield r, r, matcore.psd_sqrt(r)

        batches = ginibre_batches()

    best, best_state, feasible = math.inf, None, 0
    for labels, r, s in batches:
        lhs, rhs = triple_ratio_batch(r, s, psi, phi, gamma)
        mask = rhs > CLAMP_TOL
        feasible += int(np.count_nonzero(mask))
        if not np.any(mask):
            continue
        ratio = np.where(mask, lhs / np.where(mask, rhs, 1.0), np.inf)
        k = int(np.argmin(ratio))
        if ratio[k] < best:
            best, best_state = float(ratio[k]), np.array(labels[k])
    if feasible == 0:
        raise NoFeasibleSample("denominator identically zero on every sampled state")
    return TauEstimate(8.0 * best, best, best_state, feasible, total)
