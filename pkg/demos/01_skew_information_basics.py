# Skew information, variance and quantum uncertainty of a channel
# ================================================================
#
# Run with:  python demos/01_skew_information_basics.py

import math

import numpy as np

import wyskew as wy

# A qubit state is built from its Bloch vector. This is the mixed state used
# throughout the sweeps: |r| = 1/sqrt(2), azimuth theta = pi/4.
theta = math.pi / 4
rho = wy.density_from_bloch([0.5 * math.cos(theta), 0.5 * math.sin(theta), 0.5])
print("rho =\n", np.round(rho.matrix, 4))
print("sqrt(rho) is cached on the state:\n", np.round(rho.sqrt_matrix, 4))
print("eigenvalues:", np.linalg.eigvalsh(rho.matrix))

# Channels carry their Kraus list in the printed order.
ad = wy.amplitude_damping(0.5)
bf = wy.bit_flip(0.5)
print("\namplitude damping Kraus operators:\n", np.round(ad.kraus_ops, 4))
print("bit flip unital?", bf.is_unital, "| amplitude damping unital?", ad.is_unital)

# One call gives every scalar: skew information I, its Jordan dual J,
# variance V, classical part C = V - I, quantum uncertainty Q, and the
# centered-operator versions tilde_I and tilde_J.
for channel in (ad, bf):
    rep = wy.report(rho, channel)
    print(f"\n{channel.name}")
    for field in ("skew_info", "dual_info", "variance", "classical", "quantum", "tilde_I", "tilde_J"):
        print(f"  {field:10s} {getattr(rep, field):.12f}")
    print("  identities hold:", all(rep.check_invariants().values()))

# For a unital channel the symmetric and asymmetric parts are complementary.
i, j = wy.skew_info_channel(rho, bf), wy.dual_info_channel(rho, bf)
print(f"\nbit flip: I + J = {i + j:.15f}")

# None of these depend on which Kraus decomposition we use.
u = wy.random_unitary(3, seed=1)  # 3x3: the 2-operator list gets a zero operator appended
remixed = wy.mix_kraus(ad, u)
print("\nKraus operators after remixing:", remixed.n_ops)
print("V before / after:", wy.variance_channel(rho, ad), wy.variance_channel(rho, remixed))
print("Q before / after:", wy.quantum_uncertainty(rho, ad), wy.quantum_uncertainty(rho, remixed))

# Pure states have no classical mixing: C vanishes and Q = V = I.
pure = wy.density_from_bloch([0.0, 0.6, 0.8])
rep = wy.report(pure, ad)
print(f"\npure state: C = {rep.classical:.2e}, Q = {rep.quantum:.12f}, V = {rep.variance:.12f}, I = {rep.skew_info:.12f}")
