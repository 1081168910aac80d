# Three channels and the tight Pauli constant
# ============================================
#
# Multiplying the three pairwise product relations gives a three-channel
# bound. For the Pauli unitaries the product Q(x) Q(y) Q(z) is bounded by
# tau/8 |<x><y><z>| with tau = 64 / (3 sqrt 3), and equality is reached on the
# pure states whose Bloch components all have magnitude 1/sqrt(3).
#
# Run with:  python demos/03_pauli_tight_bound_and_tau.py

import math

import numpy as np

import wyskew as wy
from wyskew.uncertainty import bloch_grid, pauli_tight_bound_grid

x, y, z = wy.pauli_unitary_channels()

diag = wy.density_from_bloch(np.ones(3) / math.sqrt(3))
print(wy.pauli_tight_bound(diag))
print("8/27 =", 8 / 27)

# On the axis the right-hand side vanishes, and so does Q along that axis.
print(wy.pauli_tight_bound(wy.density_from_bloch([1, 0, 0])))

# The geometric-mean bound (tau = 1) is never tight for the Paulis:
print(wy.lb_triple(diag, x, y, z))

# A million Bloch vectors, evaluated as stacked 2x2 arrays.
vectors = bloch_grid(1_000_000)
lhs, rhs = pauli_tight_bound_grid(vectors)
print(f"\n{len(vectors)} states, worst slack {np.min(lhs - rhs):.3e}")

# Numerical recovery of the constant: minimize lhs / rhs(tau=1) over states.
est = wy.estimate_tau(x, y, z, points=100_000)
print(f"tau estimate {est.tau:.6f} (exact {wy.PAULI_TAU:.6f}), minimizer {np.round(est.argmin_state, 4)}")

# Any other triple also has a constant; for random qubit channels it is
# typically far from tight.
rand = [wy.random_channel(2, 2, seed=s) for s in range(3)]
print(f"random triple: tau estimate {wy.estimate_tau(*rand, points=20_000).tau:.4f}")
