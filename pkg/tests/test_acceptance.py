"""
Exit criteria. Each test prints one PASS/FAIL line; run with

    pytest tests/test_acceptance.py -s

Random campaigns spread their trials over d in {2, 3, 4}, Kraus counts
1..4, and full-rank plus pure states.
"""

import itertools
import math
import time

import numpy as np
import pytest

from wyskew import cli
from wyskew import quantum as qm
from wyskew import sampling as sm
from wyskew import uncertainty as unc

TOL = 1e-10
TAU = 64 / (3 * math.sqrt(3))


def report_line(n, ok, detail):
    print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}")


def campaign(name, total, seed, dims=(2, 3, 4), counts=(1, 2, 3, 4), ranks=("full", 1)):
    configs = list(itertools.product(dims, counts, ranks))
    per = math.ceil(total / len(configs))
    trials, worst, violations = 0, math.inf, []
    for k, (d, n, rank) in enumerate(configs):
        cfg = sm.SampleConfig(
            dimension=d, kraus_count=n, rank=None if rank == "full" else rank, trials=per, seed=seed * 1000 + k
        )
        rep = sm.run_campaign(name, cfg, tolerance=TOL)
        trials += rep.trials
        worst = min(worst, rep.worst_slack)
        violations += rep.violations
    return trials, worst, violations


def test_criterion_1_pauli_tight_bound():
    t0 = time.perf_counter()
    rho = qm.density_from_bloch(np.ones(3) / math.sqrt(3))
    check = unc.pauli_tight_bound(rho)
    r = rho.bloch_vector()
    rhs_closed = 8 / (3 * math.sqrt(3)) * abs(np.prod(r))
    point_ok = (
        abs(check.lhs - 8 / 27) <= 1e-12
        and abs(rhs_closed - 8 / 27) <= 1e-12
        and abs(check.rhs - rhs_closed) <= 1e-12
        and abs(check.lhs - check.rhs) <= 1e-12
    )
    grid = unc.bloch_grid(1_000_000)
    lhs, rhs = unc.pauli_tight_bound_grid(grid)
    worst = float(np.min(lhs - rhs))
    elapsed = time.perf_counter() - t0
    ok = point_ok and len(grid) >= 990_000 and worst >= -TOL and elapsed <= 60
    report_line(
        1, ok,
        f"|lhs-rhs| at (1,1,1)/sqrt3 = {abs(check.lhs - check.rhs):.2e}; "
        f"{len(grid)} grid states, worst slack {worst:.2e}; {elapsed:.1f}s",
    )
    assert ok


def test_criterion_2_tau_recovery(tmp_path, capsys):
    problem = tmp_path / "pauli.json"
    problem.write_text(
        '{"state": {"kind": "bloch", "r": [0, 0, 0]},'
        ' "channels": [{"kind": "pauli", "axis": "x"}, {"kind": "pauli", "axis": "y"}, {"kind": "pauli", "axis": "z"}]}'
    )
    t0 = time.perf_counter()
    code = cli.main(["tau", "--input", str(problem), "--grid", "100000"])
    elapsed = time.perf_counter() - t0
    out = capsys.readouterr().out
    value = float(out.split("tau_estimate = ")[1].split()[0])
    rel = abs(value - TAU) / TAU
    ok = code == 0 and rel <= 0.01 and elapsed <= 120
    with capsys.disabled():
        report_line(2, ok, f"tau estimate {value:.6f} vs 64/(3 sqrt3) = {TAU:.6f}, rel err {rel:.2e}; {elapsed:.1f}s")
    assert ok


def test_criterion_3_theorems(tmp_path):
    t0 = time.perf_counter()
    n1, w1, v1 = campaign("theorem1", 10_000, seed=31)
    n2, w2, v2 = campaign("theorem2", 10_000, seed=32)

    ad, bf = qm.amplitude_damping(0.5), qm.bit_flip(0.5)
    sweep_worst = math.inf
    for theta in np.linspace(0, 2 * math.pi, 181):
        rho = qm.density_from_bloch([0.5 * math.cos(theta), 0.5 * math.sin(theta), 0.5])
        sweep_worst = min(sweep_worst, unc.lb_product(rho, ad, bf).slack, unc.lb_sum(rho, ad, bf).slack)
    rho = qm.density_from_bloch([0.5 * math.cos(math.pi / 4), 0.5 * math.sin(math.pi / 4), 0.5])
    for q in np.linspace(0, 0.99, 100):
        a, b = qm.amplitude_damping(q), qm.bit_flip(q)
        sweep_worst = min(sweep_worst, unc.lb_product(rho, a, b).slack, unc.lb_sum(rho, a, b).slack)
    elapsed = time.perf_counter() - t0
    ok = not v1 and not v2 and min(w1, w2, sweep_worst) >= -TOL and elapsed <= 120
    report_line(
        3, ok,
        f"theorem1 {n1} trials worst {w1:.2e}; theorem2 {n2} trials worst {w2:.2e}; "
        f"Fig. 2 sweeps (181 theta + 100 q) worst {sweep_worst:.2e}; {elapsed:.1f}s",
    )
    assert ok


def test_criterion_4_unital_complementarity():
    n1, w1, v1 = campaign("unital-complementarity", 10_000, seed=41)
    n2, w2, v2 = campaign("unital-bounds", 10_000, seed=42)
    ok = not v1 and not v2
    report_line(4, ok, f"|I+J-2| worst {-w1:.2e} over {n1}; 0<=I<=1<=J<=2 worst slack {w2:.2e} over {n2}")
    assert ok


def test_criterion_5_kraus_invariance():
    n, w, v = campaign("kraus-invariance", 10_000, seed=51)
    ok = not v
    report_line(5, ok, f"max change of I,J,V,C,Q under remixing {-w:.2e} over {n} trials")
    assert ok


PROPERTY_SET = [
    "nonnegativity",
    "convexity-I",
    "concavity-V",
    "concavity-C",
    "unitary-covariance",
    "tensor-equality",
    "partial-trace",
]


def test_criterion_6_properties():
    parts, ok = [], True
    for k, name in enumerate(PROPERTY_SET):
        n, w, v = campaign(name, 10_000, seed=60 + k)
        ok &= not v
        parts.append(f"{name} {n}/{len(v)}viol worst {w:.1e}")
    report_line(6, ok, "; ".join(parts))
    assert ok


def test_criterion_7_internal_identities():
    n, w, v = campaign("identities", 10_000, seed=71)
    ok = not v
    report_line(7, ok, f"max residual of tilde_I=I, tilde_J=2V-I, Q^2=tilde_I tilde_J, LB2 forms {-w:.2e} over {n}")
    assert ok


def test_criterion_8_qubit_closed_form():
    rep = sm.run_campaign("qubit-closed-form", sm.SampleConfig(trials=10_000, seed=81), tolerance=TOL)
    ok = rep.passed
    report_line(8, ok, f"max |eig path - closed form| {-rep.worst_slack:.2e} over {rep.trials} (r, n) pairs")
    assert ok


def test_criterion_9_pure_state_collapse():
    n, w, v = campaign("pure-collapse", 1_000, seed=91, ranks=(1,))
    ok = not v
    report_line(9, ok, f"max of |C|, |Q-V|, |Q-I| {-w:.2e} over {n} pure states")
    assert ok
