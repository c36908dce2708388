"""Command-line front end: construction, audits, transforms, and tomography.

Subcommands write one machine-readable artifact each (JSON by default,
CSV where it makes sense) and keep the human-readable summary on stdout.
Exit codes: 0 success, 1 the audit contradicts the expected parity
dichotomy, 2 usage error.
"""

import argparse
import sys

import numpy as np

from . import fano, serialize, tomography, wigner
from .lattice import DEFAULT_AUDIT_BOUND, sl2_complete, sl2_order
from .operators import (
    DEFAULT_TOL,
    basis_state_density,
    maximally_mixed,
    momentum_state_density,
    random_density_matrix,
)

USAGE_ERROR = 2
TOLERANCE_FAILURE = 1
CONTRADICTION = 1


class CliError(Exception):
    pass


def parse_state(spec, n, seed):
    """State specs: 'mixed', 'basis:q', 'momentum:p', 'random'."""
    if spec == "mixed":
        return maximally_mixed(n)
    if spec == "random":
        return random_density_matrix(n, np.random.default_rng([int(seed), tomography.STATE_STREAM_KEY]))
    if spec.startswith("basis:"):
        return basis_state_density(_state_index(spec, n), n)
    if spec.startswith("momentum:"):
        return momentum_state_density(_state_index(spec, n), n)
    raise CliError(f"unknown state spec {spec!r}; use mixed, random, basis:q or momentum:p")


def _state_index(spec, n):
    try:
        idx = int(spec.split(":", 1)[1])
    except ValueError:
        raise CliError(f"state spec {spec!r} needs an integer index") from None
    if not 0 <= idx < n:
        raise CliError(f"state index {idx} out of range [0, {n})")
    return idx


def _require_odd(n):
    if n % 2 == 0:
        raise CliError(
            f"N = {n} is even: no operator set satisfies the marginal, hermiticity "
            "and line-covariance conditions simultaneously, so there is nothing to transform"
        )


def _solution_set(n):
    coeffs = fano.coefficients_odd(n)
    return coeffs, fano.assemble(coeffs)


def cmd_fano(args):
    n = args.n
    coeffs = fano.coefficients_candidate(n)
    fset = fano.assemble(coeffs)
    entries = []
    for s in range(n):
        for t in range(n):
            for a in range(n):
                for b in range(n):
                    v = coeffs.table[s, t, a, b]
                    entries.append({"s": s, "t": t, "n": a, "m": b,
                                    "re": v.real, "im": v.imag})
    operators = []
    for q in range(n):
        for p in range(n):
            entry = {"q": q, "p": p}
            entry.update(serialize.complex_matrix_dict(fset.operators[q, p]))
            operators.append(entry)
    doc = {
        "n": n,
        "candidate": n % 2 == 0,
        "phase_convention": fano.PHASE_CONVENTION,
        "coefficients": entries,
        "operators": operators,
    }
    serialize.write_atomic(args.out, serialize.dumps_json(doc))
    tag = "candidate (even N)" if n % 2 == 0 else "solution"
    print(f"wrote {len(entries)} coefficients and {n * n} operators ({tag}) to {args.out}")
    return 0


def cmd_check(args):
    n = args.n
    report = fano.full_report(n, tol=args.tolerance, audit_bound=args.audit_bound)
    matches = fano.matches_parity_prediction(report)
    witness = fano.infeasibility_witness(report)
    doc = report.to_json_dict()
    doc["parity"] = "odd" if n % 2 else "even"
    doc["expected"] = "all_pass" if n % 2 else "infeasible"
    doc["matches_prediction"] = matches
    doc["group_order"] = sl2_order(n)
    doc["lifts_per_element"] = 2
    doc["infeasibility_witness"] = (
        None if witness is None else {"check": witness.name, **witness.to_json_dict()}
    )
    serialize.write_atomic(args.out, serialize.dumps_json(doc))
    for name, c in report.checks.items():
        print(f"{'PASS' if c.passed else 'FAIL'} {name:30s} max_violation={c.max_violation:.3e}")
    if matches:
        verdict = "all conditions hold" if n % 2 else f"infeasibility witnessed by {witness.name}"
        print(f"outcome matches the odd/even dichotomy: {verdict}")
        return 0
    print("outcome CONTRADICTS the expected odd/even dichotomy")
    return CONTRADICTION


def cmd_wigner(args):
    n = args.n
    _require_odd(n)
    rho = parse_state(args.state, n, args.seed)
    _, fset = _solution_set(n)
    grid = wigner.wigner_from_density(rho, fset)
    marg_q = grid.values.real.sum(axis=1)  # position marginal, sums over p
    marg_p = grid.values.real.sum(axis=0)  # momentum marginal, sums over q
    if args.format == "json":
        doc = grid.to_json_dict(tol=args.tolerance)
        doc["state"] = args.state
        doc["seed"] = args.seed
        doc["position_marginal"] = [float(x) for x in marg_q]
        doc["momentum_marginal"] = [float(x) for x in marg_p]
        serialize.write_atomic(args.out, serialize.dumps_json(doc))
    else:
        serialize.write_atomic(args.out, serialize.grid_csv(grid.values.real))
        if grid.max_imag() > args.tolerance:
            serialize.write_atomic(_companion(args.out, "imag"), serialize.grid_csv(grid.values.imag))
        serialize.write_atomic(_companion(args.out, "marginal_q"), serialize.marginal_csv(marg_q))
        serialize.write_atomic(_companion(args.out, "marginal_p"), serialize.marginal_csv(marg_p))
    print(f"wigner grid for state {args.state}: sum={grid.total().real:.12f} -> {args.out}")
    if abs(grid.total().real - 1.0) > args.tolerance or grid.max_imag() > args.tolerance:
        print("tolerance violation: grid not normalized/real", file=sys.stderr)
        return TOLERANCE_FAILURE
    return 0


def _companion(out, tag):
    stem, dot, ext = out.rpartition(".")
    if not dot:
        return f"{out}_{tag}"
    return f"{stem}_{tag}.{ext}"


def cmd_marginal(args):
    n = args.n
    _require_odd(n)
    try:
        g = sl2_complete(args.kappa, args.lam)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    rho = parse_state(args.state, n, args.seed)
    _, fset = _solution_set(n)
    grid = wigner.wigner_from_density(rho, fset)
    marg = wigner.marginal_along_line(grid, g)
    worst = None
    for p0 in range(n):
        rep = wigner.line_projector_check(fset, g, p0, tol=args.tolerance)
        if worst is None or rep.max_violation > worst.max_violation:
            worst = rep
    if args.format == "json":
        doc = marg.to_json_dict()
        doc = {"n": n, **doc, "state": args.state, "seed": args.seed,
               "projector_check": worst.to_json_dict()}
        serialize.write_atomic(args.out, serialize.dumps_json(doc))
    else:
        serialize.write_atomic(args.out, serialize.marginal_csv(marg.weights))
    status = "ok" if worst.passed else "FAILED"
    print(f"marginal along ({args.kappa},{args.lam}): projector check {status}, "
          f"weights sum {marg.weights.sum():.12f} -> {args.out}")
    return 0 if worst.passed else TOLERANCE_FAILURE


def cmd_tomo(args):
    n = args.n
    if n % 2 == 0 or not tomography.is_prime(n):
        raise CliError(f"tomography requires an odd prime N, got {n}")
    rho_true = random_density_matrix(n, np.random.default_rng([int(args.seed), tomography.STATE_STREAM_KEY]))
    _, fset = _solution_set(n)
    dataset = tomography.simulate_marginals(rho_true, fset, shots=args.shots, seed=args.seed)
    result = tomography.reconstruct_density(dataset, fset, rho_true=rho_true)
    doc = {
        "n": n,
        "shots": args.shots,
        "seed": args.seed,
        "fidelity_error": result.fidelity_error,
        "dataset": dataset.to_json_dict(),
        "wigner": result.wigner.to_json_dict(tol=args.tolerance),
        "rho_true": serialize.complex_matrix_dict(rho_true),
        "rho_reconstructed": serialize.complex_matrix_dict(result.rho),
    }
    serialize.write_atomic(args.out, serialize.dumps_json(doc))
    print(f"tomography n={n} shots={args.shots}: fidelity_error={result.fidelity_error:.3e} -> {args.out}")
    if args.shots == 0 and result.fidelity_error > args.tolerance:
        print("tolerance violation: exact reconstruction did not recover the state", file=sys.stderr)
        return TOLERANCE_FAILURE
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="latwig",
        description="Discrete Wigner functions on the N x N lattice: "
                    "construction, condition audits, transforms, and tomography.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_default, with_format=False):
        p.add_argument("--n", type=int, required=True, help="lattice dimension N")
        p.add_argument("--tolerance", type=float, default=DEFAULT_TOL)
        p.add_argument("--out", default=out_default, help="output artifact path")
        if with_format:
            p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("fano", help="write the coefficient table and operators")
    common(p, "fano.json")
    p.set_defaults(func=cmd_fano)

    p = sub.add_parser("check", help="audit all condition families")
    common(p, "check.json")
    p.add_argument("--audit-bound", type=int, default=DEFAULT_AUDIT_BOUND)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("wigner", help="Wigner grid of a state (odd N)")
    common(p, "wigner.json", with_format=True)
    p.add_argument("--state", default="mixed")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("marginal", help="tilted-line marginal of a state (odd N)")
    common(p, "marginal.json", with_format=True)
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--state", default="mixed")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_marginal)

    p = sub.add_parser("tomo", help="simulate and invert line marginals (odd prime N)")
    common(p, "tomo.json")
    p.add_argument("--shots", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_tomo)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n < 1:
        parser.exit(USAGE_ERROR, "error: --n must be a positive integer\n")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
