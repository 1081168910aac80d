"""Wigner-Yanase skew-information uncertainty for quantum channels."""

from .errors import (
    BlochVectorTooLong,
    ConvergenceFailure,
    DimensionMismatch,
    InternalConsistencyError,
    NoFeasibleSample,
    NotHermitian,
    NotPositiveSemidefinite,
    NotTracePreserving,
    NotUnitary,
    NotUnitTrace,
    ParameterOutOfRange,
    UnknownProperty,
    ValidationError,
    WYSkewError,
)
from .matcore import (
    EigDecomposition,
    anticommutator,
    commutator,
    frobenius_norm,
    hermitian_eig,
    hs_inner,
    psd_sqrt,
    tensor_product,
)
from .quantum import (
    BlochVector,
    DensityMatrix,
    KrausChannel,
    amplitude_damping,
    apply_channel,
    bit_flip,
    conjugate_channel,
    density_from_bloch,
    density_from_matrix,
    extend_channel,
    identity_channel,
    mix_kraus,
    partial_trace_second,
    pauli_unitary_channels,
    unitary_channel,
)
from .sampling import (
    CampaignReport,
    SampleConfig,
    random_channel,
    random_density,
    random_unital_channel,
    random_unitary,
    run_campaign,
    run_trial,
)
from .uncertainty import (
    PAULI_TAU,
    BoundCheck,
    TauEstimate,
    UncertaintyReport,
    centered_kraus,
    classical_uncertainty,
    dual_info_channel,
    dual_info_op,
    estimate_tau,
    lb_product,
    lb_sum,
    lb_triple,
    pauli_tight_bound,
    quantum_uncertainty,
    report,
    skew_info_channel,
    skew_info_op,
    tilde_I,
    tilde_J,
    variance_channel,
    variance_op,
)

__version__ = "0.1.0"
