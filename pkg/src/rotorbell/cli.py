"""Command-line surface.

Subcommands: ``spectrum`` (orientation eigenvalues), ``scan`` (violation
curves as CSV), ``witness`` (evaluate a state against the local bound),
``simulate`` (measurement-protocol statistics), ``validate`` (oracle suite).

stdout carries data only (CSV or JSON); summaries and diagnostics go to
stderr.  Exit codes: 0 success, 1 failed validation check, 2 invalid flags,
3 eigensolver non-convergence, 4 malformed state file, 5 dimension mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .angular import RotorBasis, cos_theta_element_oracle, cos_theta_matrix
from .bell import lhv_bruteforce_bound, thresholds
from .linalg import DimensionMismatch, HermitianOperator, NonConvergence, hermitian_eig
from .scan import BellKind, BipartiteState, optimal_state, refine_max, scan_curve, witness_evaluate
from .sim import estimate_b2

MAX_JMAX = 64
MAX_GRID = 10**6

EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NONCONVERGENCE = 3
EXIT_BAD_STATE_FILE = 4
EXIT_DIMENSION_MISMATCH = 5


class StateFileError(ValueError):
    """State file is unreadable, malformed, or not normalizable."""


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    jmax: int = 1
    m: int = 0
    kind: BellKind | None = None
    grid: int = 1000
    time: float = 0.0
    shots: int = 100_000
    seed: int = 0
    state_source: str = "optimal"
    out: str | None = None
    matrices: int = 500
    inject_fault: bool = False


def _fmt(x: float) -> str:
    # fixed 12 decimal places; snap sub-rounding residues so zeros print clean
    v = float(x)
    if abs(v) < 5e-13:
        v = 0.0
    return f"{v:.12f}"


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _read_state_file(path: str, basis: RotorBasis) -> BipartiteState:
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise StateFileError(f"cannot read state file {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise StateFileError("state file must hold a JSON object")
    try:
        jmax = int(payload["jmax"])
        m = int(payload["m"])
        pairs = payload["amplitudes"]
        amps = np.array([complex(float(re), float(im)) for re, im in pairs])
    except (KeyError, TypeError, ValueError) as exc:
        raise StateFileError(f"malformed state file: {exc}") from exc
    if (jmax, m) != (basis.jmax, basis.m) or amps.shape[0] != basis.pair_dim:
        raise DimensionMismatch(
            f"state file is for jmax={jmax}, m={m} with {amps.shape[0]} amplitudes; "
            f"expected jmax={basis.jmax}, m={basis.m} with {basis.pair_dim}"
        )
    if np.linalg.norm(amps) < 1e-6:
        raise StateFileError("state vector norm below 1e-6")
    return BipartiteState.normalized(amps)


def _state_to_pairs(state: BipartiteState) -> list[list[float]]:
    return [[float(a.real), float(a.imag)] for a in state.amplitudes]


def _resolve_state(config: RunConfig, basis: RotorBasis, kind: BellKind) -> BipartiteState:
    if config.state_source == "optimal":
        return optimal_state(basis, kind, config.time)
    return _read_state_file(config.state_source, basis)


def cmd_spectrum(config: RunConfig) -> int:
    basis = RotorBasis(config.jmax, config.m)
    spec = hermitian_eig(cos_theta_matrix(basis))
    lines = ["eigenvalue"] + [_fmt(lam) for lam in spec.eigenvalues]
    _emit("\n".join(lines) + "\n", config.out)
    print(f"lambda_max={_fmt(spec.lambda_max)}", file=sys.stderr)
    return 0


def cmd_scan(config: RunConfig) -> int:
    basis = RotorBasis(config.jmax, config.m)
    curve = scan_curve(basis, config.kind, config.grid)
    lines = ["t,max_eigenvalue,threshold,violates"]
    for s in curve.samples:
        lines.append(f"{_fmt(s.t)},{_fmt(s.max_eigenvalue)},{_fmt(s.threshold)},{int(s.violates)}")
    _emit("\n".join(lines) + "\n", config.out)
    peak = curve.global_max()
    t_star, refined = refine_max(basis, config.kind, peak.t, 2.0 / config.grid)
    rel = refined / peak.threshold - 1.0
    print(
        f"global_max={_fmt(refined)} t_star={_fmt(t_star)} "
        f"threshold={_fmt(peak.threshold)} relative_violation={_fmt(rel)}",
        file=sys.stderr,
    )
    return 0


def cmd_witness(config: RunConfig) -> int:
    basis = RotorBasis(config.jmax, config.m)
    state = _resolve_state(config, basis, config.kind)
    report = witness_evaluate(basis, config.kind, state, config.time)
    payload = {
        "value": report.value,
        "threshold": report.threshold,
        "verdict": report.verdict.value,
        "optimal_state": _state_to_pairs(state) if config.state_source == "optimal" else None,
    }
    _emit(json.dumps(payload, indent=2) + "\n", config.out)
    return 0


def cmd_simulate(config: RunConfig) -> int:
    basis = RotorBasis(config.jmax, config.m)
    state = _resolve_state(config, basis, BellKind.B2)
    estimate = estimate_b2(basis, state, config.time, config.shots, config.seed)
    payload = {
        "value": estimate.value,
        "std_error": estimate.std_error,
        "shots_per_setting": estimate.shots_per_setting,
        "times": [list(pair) for pair in estimate.times],
        "seed": config.seed,
    }
    _emit(json.dumps(payload, indent=2) + "\n", config.out)
    return 0


def cmd_validate(config: RunConfig) -> int:
    checks: list[tuple[str, str, bool]] = []

    worst = 0.0
    for m in range(-2, 3):
        for j in range(abs(m), config.jmax + 1):
            for jp in range(abs(m), config.jmax + 1):
                expected = 0.0
                if abs(j - jp) == 1:
                    lo = min(j, jp)
                    expected = np.sqrt(((lo + 1) ** 2 - m * m) / ((2 * lo + 1) * (2 * lo + 3)))
                if config.inject_fault and (j, jp, m) == (0, 1, 0):
                    expected += 1e-6
                worst = max(worst, abs(cos_theta_element_oracle(j, jp, m) - expected))
    checks.append(("recursion_vs_quadrature", f"{worst:.3e}", worst <= 1e-10))

    lhv = lhv_bruteforce_bound()
    checks.append(("lhv_bound", f"{lhv:.6f}", lhv == 2.0))

    rng = np.random.default_rng(20240917)
    worst_resid = 0.0
    for k in range(config.matrices):
        dim = 2 + k % 39
        raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        h = HermitianOperator(0.5 * (raw + raw.conj().T))
        spec = hermitian_eig(h)
        recon = (spec.eigenvectors * spec.eigenvalues) @ spec.eigenvectors.conj().T
        resid = np.linalg.norm(h.matrix - recon) / np.linalg.norm(h.matrix)
        worst_resid = max(worst_resid, resid)
    checks.append(("eig_reconstruction", f"{worst_resid:.3e}", worst_resid <= 1e-9))

    lines = [f"{name}: {value} {'PASS' if ok else 'FAIL'}" for name, value, ok in checks]
    _emit("\n".join(lines) + "\n", config.out)
    return 0 if all(ok for _, _, ok in checks) else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotorbell",
        description="Bell-type inequality tests from the orientation of two free rotors.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_basis_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--jmax", type=int, required=True, help="angular momentum cutoff")
        p.add_argument("--m", type=int, default=0, help="fixed magnetic quantum number")
        p.add_argument("--out", type=str, default=None, help="write output to PATH")

    p = sub.add_parser("spectrum", help="orientation eigenvalues as CSV")
    add_basis_flags(p)

    p = sub.add_parser("scan", help="violation curve over one period as CSV")
    add_basis_flags(p)
    p.add_argument("--kind", choices=["b1", "b2"], required=True)
    p.add_argument("--grid", type=int, default=1000, help="grid points over [0, 1)")

    p = sub.add_parser("witness", help="evaluate a state against the local bound")
    add_basis_flags(p)
    p.add_argument("--kind", choices=["b1", "b2"], required=True)
    p.add_argument("--time", type=float, required=True)
    p.add_argument("--state", type=str, default="optimal", help="state file or 'optimal'")

    p = sub.add_parser("simulate", help="sample the measurement protocol")
    add_basis_flags(p)
    p.add_argument("--time", type=float, required=True)
    p.add_argument("--shots", type=int, default=100_000, help="shots per setting")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--state", type=str, default="optimal", help="state file or 'optimal'")

    p = sub.add_parser("validate", help="run the oracle suite")
    p.add_argument("--jmax", type=int, default=5, help="extend the quadrature battery to j <= jmax")
    p.add_argument("--matrices", type=int, default=500, help="random eigensolver instances")
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    return parser


def _config_from_args(parser: argparse.ArgumentParser, args: argparse.Namespace) -> RunConfig:
    jmax = getattr(args, "jmax", 1)
    if not 1 <= jmax <= MAX_JMAX:
        parser.error(f"--jmax must be in [1, {MAX_JMAX}], got {jmax}")
    m = getattr(args, "m", 0)
    if abs(m) > jmax:
        parser.error(f"--m must satisfy |m| <= jmax, got m={m}, jmax={jmax}")
    grid = getattr(args, "grid", 1000)
    if not 2 <= grid <= MAX_GRID:
        parser.error(f"--grid must be in [2, {MAX_GRID}], got {grid}")
    shots = getattr(args, "shots", 100_000)
    if args.subcommand == "simulate" and shots < 2:
        parser.error(f"--shots must be >= 2 for error bars, got {shots}")
    matrices = getattr(args, "matrices", 500)
    if args.subcommand == "validate" and matrices < 1:
        parser.error(f"--matrices must be >= 1, got {matrices}")
    kind = getattr(args, "kind", None)
    return RunConfig(
        subcommand=args.subcommand,
        jmax=jmax,
        m=m,
        kind=BellKind(kind) if kind else None,
        grid=grid,
        time=getattr(args, "time", 0.0),
        shots=shots,
        seed=getattr(args, "seed", 0),
        state_source=getattr(args, "state", "optimal"),
        out=getattr(args, "out", None),
        matrices=matrices,
        inject_fault=getattr(args, "inject_fault", False),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = _config_from_args(parser, args)
    handler = {
        "spectrum": cmd_spectrum,
        "scan": cmd_scan,
        "witness": cmd_witness,
        "simulate": cmd_simulate,
        "validate": cmd_validate,
    }[config.subcommand]
    try:
        return handler(config)
    except NonConvergence as exc:
        print(f"error: eigensolver failed to converge: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except StateFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_STATE_FILE
    except DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
