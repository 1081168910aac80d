"""
Random states, unitaries and channels, and batch property campaigns.

Randomness comes from numpy's PCG64. A campaign with base seed ``s`` runs
trial ``i`` on its own generator seeded with the 64-bit word
``SeedSequence(s, spawn_key=(i,)).generate_state(1, uint64)[0]``. That word
is what gets recorded for each violation, and ``run_trial`` replays it
bit for bit without rerunning the campaign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import quantum, uncertainty as unc
from .errors import InternalConsistencyError, ParameterOutOfRange, UnknownProperty
from .matcore import PAULI_X, PAULI_Y, PAULI_Z, adjoint
from .quantum import DensityMatrix, KrausChannel

DEFAULT_TOL = 1e-10


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


def trial_seed(seed: int, trial: int) -> int:
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(trial),))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else make_rng(seed)


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_density(d: int, rank: int | None = None, seed=0) -> DensityMatrix:
    """``G G^+ / tr(G G^+)`` with ``G`` a ``d x rank`` complex Gaussian matrix."""
    rank = d if rank is None else rank
    if d < 1 or not 1 <= rank <= d:
        raise ParameterOutOfRange(f"need 1 <= rank <= d, got d={d}, rank={rank}")
    g = _ginibre(_rng(seed), d, rank)
    m = g @ adjoint(g)
    return quantum.density_from_matrix(m / np.trace(m).real)


def _haar_isometry(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    q, r = np.linalg.qr(_ginibre(rng, rows, cols))
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_unitary(n: int, seed=0) -> np.ndarray:
    """Haar unitary: QR of a Ginibre matrix with the phases of ``diag(R)`` absorbed."""
    if n < 1:
        raise ParameterOutOfRange("n must be positive")
    return _haar_isometry(_rng(seed), n, n)


def random_channel(d: int, n: int, seed=0) -> KrausChannel:
    """Slice a Haar ``(n d) x d`` isometry into ``n`` Kraus blocks."""
    if d < 1 or n < 1:
        raise ParameterOutOfRange("d and n must be positive")
    iso = _haar_isometry(_rng(seed), n * d, d)
    return KrausChannel(iso.reshape(n, d, d), name=f"random({d},{n})")


def random_unital_channel(d: int, n: int, seed=0) -> KrausChannel:
    """Convex mixture ``sum_i p_i U_i . U_i^+`` of ``n`` Haar unitaries."""
    rng = _rng(seed)
    p = rng.dirichlet(np.ones(n))
    ops = np.stack([math.sqrt(pi) * random_unitary(d, rng) for pi in p])
    return KrausChannel(ops, name=f"random_unital({d},{n})")


def random_bloch(rng: np.random.Generator) -> np.ndarray:
    """Uniform in the unit ball."""
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v) * rng.uniform() ** (1 / 3)


@dataclass(frozen=True)
class SampleConfig:
    dimension: int = 2
    kraus_count: int = 2
    rank: int | None = None
    trials: int = 1000
    seed: int = 0

    def __post_init__(self):
        if self.dimension < 1 or self.kraus_count < 1 or self.trials < 1:
            raise ParameterOutOfRange("dimension, kraus_count and trials must be positive")
        if self.rank is not None and not 1 <= self.rank <= self.dimension:
            raise ParameterOutOfRange("rank must satisfy 1 <= rank <= dimension")
        if not 0 <= self.seed < 2**64:
            raise ParameterOutOfRange("seed must be a 64-bit unsigned integer")

    @property
    def state_rank(self) -> int:
        return self.dimension if self.rank is None else self.rank


@dataclass
class CampaignReport:
    property: str
    trials: int
    tolerance: float
    violations: list[tuple[int, float]] = field(default_factory=list)
    worst_slack: float = math.inf

    @property
    def passed(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        return (
            f"property={self.property} trials={self.trials} violations={len(self.violations)} "
            f"worst_slack={self.worst_slack:.6e}"
        )


# ---------------------------------------------------------------------------
# properties: each takes (rng, cfg) and returns a slack, violated when < -tol


def _state(rng, cfg: SampleConfig, rank: int | None = None) -> DensityMatrix:
    return random_density(cfg.dimension, rank or cfg.state_rank, rng)


def _channel(rng, cfg: SampleConfig) -> KrausChannel:
    return random_channel(cfg.dimension, cfg.kraus_count, rng)


def _mixture(rng, cfg):
    r1, r2 = _state(rng, cfg), _state(rng, cfg)
    lam = rng.uniform()
    mix = quantum.density_from_matrix(lam * r1.matrix + (1 - lam) * r2.matrix)
    return r1, r2, mix, lam


def _prop_nonnegativity(rng, cfg):
    rep = unc.report(_state(rng, cfg), _channel(rng, cfg))
    return min(rep.skew_info, rep.dual_info, rep.variance, rep.classical, rep.quantum)


def _prop_convexity_i(rng, cfg):
    c = _channel(rng, cfg)
    r1, r2, mix, lam = _mixture(rng, cfg)
    f = unc.skew_info_channel
    return lam * f(r1, c) + (1 - lam) * f(r2, c) - f(mix, c)


def _concavity(func):
    def prop(rng, cfg):
        c = _channel(rng, cfg)
        r1, r2, mix, lam = _mixture(rng, cfg)
        return func(mix, c) - (lam * func(r1, c) + (1 - lam) * func(r2, c))

    return prop


def _prop_unitary_covariance(rng, cfg):
    rho, c = _state(rng, cfg), _channel(rng, cfg)
    u = random_unitary(cfg.dimension, rng)
    rotated = quantum.density_from_matrix(u @ rho.matrix @ adjoint(u))
    return -abs(unc.skew_info_channel(rotated, quantum.conjugate_channel(c, u)) - unc.skew_info_channel(rho, c))


def _prop_tensor_equality(rng, cfg):
    rho_a, c = _state(rng, cfg), _channel(rng, cfg)
    d_b = 2
    rho_b = random_density(d_b, d_b, rng)
    joint = quantum.density_from_matrix(np.kron(rho_a.matrix, rho_b.matrix))
    return -abs(unc.skew_info_channel(joint, quantum.extend_channel(c, d_b)) - unc.skew_info_channel(rho_a, c))


def _prop_partial_trace(rng, cfg):
    c = _channel(rng, cfg)
    d_b = 2
    joint = random_density(cfg.dimension * d_b, cfg.state_rank, rng)
    rho_a = quantum.partial_trace_second(joint, cfg.dimension, d_b)
    return unc.skew_info_channel(joint, quantum.extend_channel(c, d_b)) - unc.skew_info_channel(rho_a, c)


def _unital_pair(rng, cfg):
    rho = _state(rng, cfg)
    c = random_unital_channel(cfg.dimension, cfg.kraus_count, rng)
    return unc.skew_info_channel(rho, c), unc.dual_info_channel(rho, c)


def _prop_unital_complementarity(rng, cfg):
    i, j = _unital_pair(rng, cfg)
    return -abs(i + j - 2.0)


def _prop_unital_bounds(rng, cfg):
    i, j = _unital_pair(rng, cfg)
    return min(i, 1.0 - i, j - 1.0, 2.0 - j)


def _prop_sandwich(rng, cfg):
    rep = unc.report(_state(rng, cfg), _channel(rng, cfg))
    i, v, q = rep.skew_info, rep.variance, rep.quantum
    return min(q - i, 2 * v - i - q)


def _prop_kraus_invariance(rng, cfg):
    rho, c = _state(rng, cfg), _channel(rng, cfg)
    pad = int(rng.integers(0, 2))
    u = random_unitary(c.n_ops + pad, rng)
    a, b = unc.report(rho, c), unc.report(rho, quantum.mix_kraus(c, u))
    fields = ("skew_info", "dual_info", "variance", "classical", "quantum")
    return -max(abs(getattr(a, f) - getattr(b, f)) for f in fields)


def _second_channel(rng, cfg):
    n = int(rng.integers(1, cfg.kraus_count + 1))
    return random_channel(cfg.dimension, n, rng)


def _prop_theorem1(rng, cfg):
    rho = _state(rng, cfg)
    return unc.lb_product(rho, _channel(rng, cfg), _second_channel(rng, cfg)).slack


def _prop_theorem2(rng, cfg):
    rho = _state(rng, cfg)
    return unc.lb_sum(rho, _channel(rng, cfg), _second_channel(rng, cfg)).slack


def _prop_triple(rng, cfg):
    rho = _state(rng, cfg)
    return unc.lb_triple(rho, _channel(rng, cfg), _second_channel(rng, cfg), _second_channel(rng, cfg)).slack


def _prop_pauli_tight(rng, cfg):
    return unc.pauli_tight_bound(quantum.density_from_bloch(random_bloch(rng))).slack


def _prop_identities(rng, cfg):
    rho, c = _state(rng, cfg), _channel(rng, cfg)
    rep = unc.report(rho, c)
    closed, centered = unc.sum_bound_rhs(rho, c, _second_channel(rng, cfg))
    return -max(
        abs(rep.tilde_I - rep.skew_info),
        abs(rep.tilde_J - (2 * rep.variance - rep.skew_info)),
        abs(rep.quantum**2 - rep.tilde_I * rep.tilde_J),
        abs(closed - centered),
    )


def qubit_skew_closed_form(r: np.ndarray, n: np.ndarray) -> float:
    """Skew information of ``n . sigma`` in ``(I + r . sigma)/2`` for unit ``n``."""
    r2 = float(np.dot(r, r))
    if r2 == 0.0:
        return 0.0
    return (1.0 - math.sqrt(max(1.0 - r2, 0.0))) * (r2 - float(np.dot(r, n)) ** 2) / r2


def _prop_qubit_closed_form(rng, cfg):
    r = random_bloch(rng)
    n = rng.standard_normal(3)
    n /= np.linalg.norm(n)
    op = n[0] * PAULI_X + n[1] * PAULI_Y + n[2] * PAULI_Z
    rho = quantum.density_from_bloch(r)
    return -abs(unc.skew_info_op(rho, op) - qubit_skew_closed_form(r, n))


def _prop_pure_collapse(rng, cfg):
    rep = unc.report(_state(rng, cfg, rank=1), _channel(rng, cfg))
    return -max(abs(rep.classical), abs(rep.quantum - rep.variance), abs(rep.quantum - rep.skew_info))


PROPERTIES: dict[str, Callable[[np.random.Generator, SampleConfig], float]] = {
    "nonnegativity": _prop_nonnegativity,
    "convexity-I": _prop_convexity_i,
    "concavity-V": _concavity(unc.variance_channel),
    "concavity-C": _concavity(unc.classical_uncertainty),
    "unitary-covariance": _prop_unitary_covariance,
    "tensor-equality": _prop_tensor_equality,
    "partial-trace": _prop_partial_trace,
    "unital-complementarity": _prop_unital_complementarity,
    "unital-bounds": _prop_unital_bounds,
    "sandwich": _prop_sandwich,
    "kraus-invariance": _prop_kraus_invariance,
    "theorem1": _prop_theorem1,
    "theorem2": _prop_theorem2,
    "triple": _prop_triple,
    "pauli-tight": _prop_pauli_tight,
    "identities": _prop_identities,
    "qubit-closed-form": _prop_qubit_closed_form,
    "pure-collapse": _prop_pure_collapse,
}


def _lookup(name: str):
    try:
        return PROPERTIES[name]
    except KeyError:
        raise UnknownProperty(f"unknown property '{name}'; choose from {', '.join(PROPERTIES)}") from None


def run_trial(name: str, cfg: SampleConfig, seed: int) -> float:
    """Evaluate one instance of ``name`` from a per-trial seed; used for replay."""
    prop = _lookup(name)
    try:
        return float(prop(make_rng(seed), cfg))
    except InternalConsistencyError:
        return -math.inf


def run_campaign(name: str, cfg: SampleConfig, tolerance: float = DEFAULT_TOL) -> CampaignReport:
    _lookup(name)
    rep = CampaignReport(property=name, trials=cfg.trials, tolerance=tolerance)
    for i in range(cfg.trials):
        s = trial_seed(cfg.seed, i)
        slack = run_trial(name, cfg, s)
        rep.worst_slack = min(rep.worst_slack, slack)
        if slack < -tolerance:
            rep.violations.append((s, slack))
    return rep
