# Product and summation uncertainty relations along the two standard sweeps
# =========================================================================
#
# Sweep 1: azimuth theta of r = (cos t / 2, sin t / 2, 1/2) at q = 0.5.
# Sweep 2: channel parameter q at theta = pi/4.
# Both compare amplitude damping against bit flip.
#
# Run with:  python demos/02_uncertainty_relations_sweeps.py
# The same tables come out of the CLI:
#   wyskew scan --input demos/problems/fig2_theta.json --param theta \
#       --start 0 --stop 6.283185307179586 --points 181 --output theta.csv

import math

import numpy as np

import wyskew as wy


def state(theta):
    return wy.density_from_bloch([0.5 * math.cos(theta), 0.5 * math.sin(theta), 0.5])


def row(rho, psi, phi):
    q1, q2 = wy.quantum_uncertainty(rho, psi), wy.quantum_uncertainty(rho, phi)
    return q1 * q2, q1**2 + q2**2, wy.lb_product(rho, psi, phi).rhs, wy.lb_sum(rho, psi, phi).rhs


print("theta sweep, q = 0.5")
print(f"{'theta':>8} {'Q1 Q2':>12} {'LB1':>12} {'Q1^2+Q2^2':>12} {'LB2':>12}")
ad, bf = wy.amplitude_damping(0.5), wy.bit_flip(0.5)
for theta in np.linspace(0, 2 * math.pi, 9):
    prod, tot, lb1, lb2 = row(state(theta), ad, bf)
    print(f"{theta:8.4f} {prod:12.8f} {lb1:12.8f} {tot:12.8f} {lb2:12.8f}")

print("\nq sweep, theta = pi/4")
rho = state(math.pi / 4)
for q in np.linspace(0, 0.99, 9):
    prod, tot, lb1, lb2 = row(rho, wy.amplitude_damping(q), wy.bit_flip(q))
    print(f"{q:8.4f} {prod:12.8f} {lb1:12.8f} {tot:12.8f} {lb2:12.8f}")

# The summation bound pairs L_i with K_i by position, so it is a property of
# the Kraus lists, not only of the channels. Remixing one list changes LB2
# while Q1^2 + Q2^2 stays put, and the bound still holds.
had = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
check_a = wy.lb_sum(rho, ad, bf)
check_b = wy.lb_sum(rho, wy.mix_kraus(ad, had), bf)
print(f"\nLB2 as printed: {check_a.rhs:.10f}   after remixing: {check_b.rhs:.10f}   lhs: {check_a.lhs:.10f}")
