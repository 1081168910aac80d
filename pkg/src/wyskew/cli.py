"""
Command-line interface.

    wyskew info   --input PROBLEM.json
    wyskew verify --input PROBLEM.json --relation {product,sum,triple,pauli} [--tau F]
    wyskew scan   --input PROBLEM.json --param {theta,q} --start F --stop F --points N
                  [--fixed F] --output OUT.csv
    wyskew sample PROPERTY --dim N --kraus N --trials N --seed U64 [--rank N]
    wyskew tau    --input PROBLEM.json [--grid N] [--seed U64]

Exit codes: 0 success, 1 internal invariant failure, 2 parse, 3 validation,
4 arity, 5 dimension, 6 sweep not applicable, 7 unknown property,
8 degenerate denominator. A relation that does not hold also exits 1.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from typing import Any

import numpy as np

from . import quantum, sampling, uncertainty as unc
from .errors import DimensionMismatch, NoFeasibleSample, UnknownProperty, ValidationError, WYSkewError
from .matcore import PAULI_X, PAULI_Y, PAULI_Z

FORMAT_VERSION = 1

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_ARITY = 4
EXIT_DIMENSION = 5
EXIT_SWEEP = 6
EXIT_PROPERTY = 7
EXIT_DEGENERATE = 8

ARITY = {"product": 2, "sum": 2, "triple": 3, "pauli": 0}
CAPTION_Q = 0.5
CAPTION_THETA = math.pi / 4
_PAULIS = {"x": PAULI_X, "y": PAULI_Y, "z": PAULI_Z}


class CLIError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class ParseError(CLIError):
    def __init__(self, path: str, message: str):
        super().__init__(EXIT_PARSE, f"parse error at {path}: {message}")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


# ---------------------------------------------------------------------------
# problem files


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _real(x, path: str) -> float:
    if not _is_number(x):
        raise ParseError(path, f"expected a number, got {json.dumps(x)}")
    return float(x)


def _complex(x, path: str) -> complex:
    if not (isinstance(x, list) and len(x) == 2 and all(_is_number(v) for v in x)):
        raise ParseError(path, f"complex entries are [re, im] pairs, got {json.dumps(x)}")
    return complex(x[0], x[1])


def _matrix(x, path: str) -> np.ndarray:
    if not isinstance(x, list) or not x:
        raise ParseError(path, "expected a non-empty list of rows")
    rows = []
    for i, row in enumerate(x):
        if not isinstance(row, list) or not row:
            raise ParseError(f"{path}[{i}]", "expected a non-empty row of [re, im] pairs")
        rows.append([_complex(v, f"{path}[{i}][{j}]") for j, v in enumerate(row)])
    if len({len(r) for r in rows}) != 1:
        raise ParseError(path, "rows have different lengths")
    return np.array(rows, dtype=complex)


def _field(obj: dict, key: str, path: str):
    if not isinstance(obj, dict):
        raise ParseError(path, "expected an object")
    if key not in obj:
        raise ParseError(f"{path}.{key}", "missing field")
    return obj[key]


def _validated(path: str, build):
    try:
        return build()
    except (ValidationError, DimensionMismatch, ValueError) as exc:
        raise CLIError(EXIT_VALIDATION, f"validation error at {path}: {exc}") from None


@dataclass
class Problem:
    state_spec: dict
    channel_specs: list[dict]
    state: quantum.DensityMatrix
    channels: list[quantum.KrausChannel]


def parse_state(spec: Any, path: str = "state") -> quantum.DensityMatrix:
    kind = _field(spec, "kind", path)
    if kind == "bloch":
        r = _field(spec, "r", path)
        if not isinstance(r, list) or len(r) != 3:
            raise ParseError(f"{path}.r", "expected [r_x, r_y, r_z]")
        vec = [_real(v, f"{path}.r[{i}]") for i, v in enumerate(r)]
        return _validated(f"{path}.r", lambda: quantum.density_from_bloch(vec))
    if kind == "matrix":
        m = _matrix(_field(spec, "data", path), f"{path}.data")
        return _validated(f"{path}.data", lambda: quantum.density_from_matrix(m))
    raise ParseError(f"{path}.kind", f"unknown state kind {json.dumps(kind)}")


def parse_channel(spec: Any, path: str, q_override: float | None = None) -> quantum.KrausChannel:
    kind = _field(spec, "kind", path)
    if kind in ("amplitude_damping", "bit_flip"):
        q = _real(_field(spec, "q", path), f"{path}.q") if q_override is None else q_override
        ctor = quantum.amplitude_damping if kind == "amplitude_damping" else quantum.bit_flip
        return _validated(f"{path}.q", lambda: ctor(q))
    if kind == "unitary":
        u = _matrix(_field(spec, "matrix", path), f"{path}.matrix")
        return _validated(f"{path}.matrix", lambda: quantum.unitary_channel(u, name=spec.get("name", "unitary")))
    if kind == "kraus":
        ops = _field(spec, "ops", path)
        if not isinstance(ops, list) or not ops:
            raise ParseError(f"{path}.ops", "expected a non-empty list of matrices")
        mats = [_matrix(m, f"{path}.ops[{i}]") for i, m in enumerate(ops)]
        if len({m.shape for m in mats}) != 1:
            raise CLIError(EXIT_VALIDATION, f"validation error at {path}.ops: operators differ in shape")
        return _validated(f"{path}.ops", lambda: quantum.channel_from_ops(mats, name=spec.get("name", "kraus")))
    if kind == "pauli":
        axis = _field(spec, "axis", path)
        if axis not in _PAULIS:
            raise ParseError(f"{path}.axis", f"expected \"x\", \"y\" or \"z\", got {json.dumps(axis)}")
        return quantum.unitary_channel(_PAULIS[axis], name=f"sigma_{axis}")
    raise ParseError(f"{path}.kind", f"unknown channel kind {json.dumps(kind)}")


def load_problem(path: str) -> Problem:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise CLIError(EXIT_PARSE, f"parse error at {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CLIError(EXIT_PARSE, f"parse error at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    state_spec = _field(doc, "state", "$")
    specs = _field(doc, "channels", "$")
    if not isinstance(specs, list):
        raise ParseError("channels", "expected a list")
    state = parse_state(state_spec)
    channels = [parse_channel(c, f"channels[{i}]") for i, c in enumerate(specs)]
    for i, c in enumerate(channels):
        if c.dim != state.dim:
            raise CLIError(
                EXIT_VALIDATION,
                f"validation error at channels[{i}]: dimension {c.dim} does not match state dimension {state.dim}",
            )
    return Problem(state_spec, specs, state, channels)


def _require_arity(problem: Problem, n: int, what: str) -> None:
    if len(problem.channels) != n:
        raise CLIError(EXIT_ARITY, f"arity error at channels: {what} needs {n} channels, file has {len(problem.channels)}")


# ---------------------------------------------------------------------------
# commands


def cmd_info(args) -> int:
    problem = load_problem(args.input)
    print(f"wyskew-format {FORMAT_VERSION}")
    ok = True
    for i, c in enumerate(problem.channels):
        rep = unc.report(problem.state, c)
        print(f"channel[{i}] {c.name}")
        for label, value in (
            ("I", rep.skew_info),
            ("J", rep.dual_info),
            ("V", rep.variance),
            ("C", rep.classical),
            ("Q", rep.quantum),
            ("tilde_I", rep.tilde_I),
            ("tilde_J", rep.tilde_J),
        ):
            print(f"  {label} = {_fmt(value)}")
        for name, resid in rep.invariant_residuals().items():
            good = resid <= unc.IDENTITY_TOL
            ok &= good
            print(f"  {'PASS' if good else 'FAIL'} {name} (residual {resid:.3e})")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    problem = load_problem(args.input)
    rel = args.relation
    rho = problem.state
    if rel == "pauli":
        if rho.dim != 2:
            raise CLIError(EXIT_DIMENSION, f"dimension error at state: pauli relation needs d=2, got d={rho.dim}")
        check = unc.pauli_tight_bound(rho)
    else:
        _require_arity(problem, ARITY[rel], rel)
        chans = problem.channels
        if rel == "product":
            check = unc.lb_product(rho, *chans)
        elif rel == "sum":
            check = unc.lb_sum(rho, *chans)
        else:
            check = unc.lb_triple(rho, *chans, tau=args.tau)
    print(f"wyskew-format {FORMAT_VERSION}")
    print(check)
    return EXIT_OK if check.satisfied else EXIT_FAIL


def _has_q(spec: dict) -> bool:
    return spec.get("kind") in ("amplitude_damping", "bit_flip")


def _bloch_with_azimuth(state_spec: dict, theta: float, path: str = "state") -> quantum.DensityMatrix:
    # Rotate the file's Bloch vector about z: keeps |r_perp| and r_z, sets the azimuth.
    r = [_real(v, f"{path}.r[{i}]") for i, v in enumerate(state_spec["r"])]
    perp = math.hypot(r[0], r[1])
    vec = [perp * math.cos(theta), perp * math.sin(theta), r[2]]
    return _validated(f"{path}.r", lambda: quantum.density_from_bloch(vec))


def scan_rows(problem: Problem, param: str, grid: np.ndarray, fixed: float | None) -> list[list[float]]:
    """Rows ``[param, Q1, Q2, Q1 Q2, Q1^2 + Q2^2, LB1, LB2]`` for a two-channel sweep."""
    _require_arity(problem, 2, "scan")
    specs = problem.channel_specs
    is_bloch = problem.state_spec.get("kind") == "bloch"
    if param == "theta":
        if not is_bloch:
            raise CLIError(EXIT_SWEEP, "sweep error at state.kind: theta sweep needs a Bloch state")
        q = CAPTION_Q if fixed is None else fixed
        chans = [parse_channel(s, f"channels[{i}]", q if _has_q(s) else None) for i, s in enumerate(specs)]
    else:
        if not any(_has_q(s) for s in specs):
            raise CLIError(EXIT_SWEEP, "sweep error at channels: no channel has a q parameter")
        if is_bloch:
            base_state = _bloch_with_azimuth(problem.state_spec, CAPTION_THETA if fixed is None else fixed)
        elif fixed is not None:
            raise CLIError(EXIT_SWEEP, "sweep error at state.kind: --fixed theta needs a Bloch state")
        else:
            base_state = problem.state

    rows = []
    for x in grid:
        x = float(x)
        if param == "theta":
            rho = _bloch_with_azimuth(problem.state_spec, x)
        else:
            rho = base_state
            chans = [parse_channel(s, f"channels[{i}]", x if _has_q(s) else None) for i, s in enumerate(specs)]
        psi, phi = chans
        q1 = unc.quantum_uncertainty(rho, psi)
        q2 = unc.quantum_uncertainty(rho, phi)
        lb1 = unc.lb_product(rho, psi, phi).rhs
        lb2 = unc.lb_sum(rho, psi, phi).rhs
        rows.append([x, q1, q2, q1 * q2, q1 * q1 + q2 * q2, lb1, lb2])
    return rows


def cmd_scan(args) -> int:
    if not args.start < args.stop:
        raise CLIError(EXIT_PARSE, "parse error at --start/--stop: start must be below stop")
    if args.points < 2:
        raise CLIError(EXIT_PARSE, "parse error at --points: need at least 2 points")
    problem = load_problem(args.input)
    grid = np.linspace(args.start, args.stop, args.points)
    rows = scan_rows(problem, args.param, grid, args.fixed)
    with open(args.output, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["param", "Q1", "Q2", "product", "sum", "LB1", "LB2"])
        for row in rows:
            w.writerow([_fmt(v) for v in row])
    print(f"wrote {len(rows)} rows to {args.output}")
    return EXIT_OK


def cmd_sample(args) -> int:
    if args.property not in sampling.PROPERTIES:
        raise CLIError(EXIT_PROPERTY, f"unknown property '{args.property}'; choose from {', '.join(sampling.PROPERTIES)}")
    try:
        cfg = sampling.SampleConfig(
            dimension=args.dim, kraus_count=args.kraus, rank=args.rank, trials=args.trials, seed=args.seed
        )
    except ValidationError as exc:
        raise CLIError(EXIT_VALIDATION, f"validation error at sample config: {exc}") from None
    rep = sampling.run_campaign(args.property, cfg)
    print(f"wyskew-format {FORMAT_VERSION}")
    print(rep)
    for seed, slack in rep.violations:
        print(f"violation seed={seed} slack={slack:.6e}")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_tau(args) -> int:
    problem = load_problem(args.input)
    _require_arity(problem, 3, "tau")
    try:
        est = unc.estimate_tau(*problem.channels, points=args.grid, seed=args.seed)
    except NoFeasibleSample:
        raise CLIError(EXIT_DEGENERATE, "degenerate error at channels: denominator identically zero") from None
    print(f"wyskew-format {FORMAT_VERSION}")
    print(f"tau_estimate = {_fmt(est.tau)}")
    print(f"min_ratio = {_fmt(est.min_ratio)}")
    print(f"feasible_samples = {est.feasible_samples} of {est.total_samples}")
    if problem.state.dim == 2:
        print("argmin_state = bloch [" + ", ".join(_fmt(v) for v in est.argmin_state) + "]")
    else:
        eig = np.linalg.eigvalsh(est.argmin_state)
        print("argmin_state = eigenvalues [" + ", ".join(_fmt(v) for v in eig) + "]")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="wyskew", description=__doc__.split("\n\n")[0].strip())
    sub = p.add_subparsers(dest="command", required=True)

    info = sub.add_parser("info", help="uncertainty report per channel")
    info.add_argument("--input", required=True)
    info.set_defaults(func=cmd_info)

    verify = sub.add_parser("verify", help="check one uncertainty relation")
    verify.add_argument("--input", required=True)
    verify.add_argument("--relation", required=True, choices=list(ARITY))
    verify.add_argument("--tau", type=float, default=1.0)
    verify.set_defaults(func=cmd_verify)

    scan = sub.add_parser("scan", help="write a theta or q sweep as CSV")
    scan.add_argument("--input", required=True)
    scan.add_argument("--param", required=True, choices=["theta", "q"])
    scan.add_argument("--start", type=float, required=True)
    scan.add_argument("--stop", type=float, required=True)
    scan.add_argument("--points", type=int, required=True)
    scan.add_argument("--fixed", type=float, default=None)
    scan.add_argument("--output", required=True)
    scan.set_defaults(func=cmd_scan)

    sample = sub.add_parser("sample", help="run a random property campaign")
    sample.add_argument("property")
    sample.add_argument("--dim", type=int, default=2)
    sample.add_argument("--kraus", type=int, default=2)
    sample.add_argument("--rank", type=int, default=None)
    sample.add_argument("--trials", type=int, default=1000)
    sample.add_argument("--seed", type=int, default=0)
    sample.set_defaults(func=cmd_sample)

    tau = sub.add_parser("tau", help="estimate the three-channel tightening constant")
    tau.add_argument("--input", required=True)
    tau.add_argument("--grid", type=int, default=100_000)
    tau.add_argument("--seed", type=int, default=0)
    tau.set_defaults(func=cmd_tau)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CLIError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except UnknownProperty as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_PROPERTY
    except DimensionMismatch as exc:
        print(f"dimension error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except WYSkewError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
