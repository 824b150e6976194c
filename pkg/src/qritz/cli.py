"""Command-line surface.

Subcommands:
    solve      full dense solve, print pairs nearest a target
    project    project onto a basis file, print Ritz/refined diagnostics
    study      perturbation sweep, verdict lines + CSV
    example31  golden checks of the built-in showcase problem

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 I/O failure.
Options fall back to ``QRITZ_<NAME>`` environment variables (flags beat the
environment, the environment beats built-in defaults).  All output is
deterministic for fixed inputs and seeds.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import builtin, mmio, study
from .errors import IoFailure, NotOrthonormal, QritzError
from .kernels import orthonormalize, orthonormality_defect
from .pencil import QuadraticPencil
from .projection import BASIS_TOL
from .solver import solve_full
from .study import format_float
from .theory import full_diagnostics

#: Reference eigenpairs are computed by full solve only up to this dimension.
FULL_SOLVE_LIMIT = 50

USAGE_EXIT = 1
NUMERICAL_EXIT = 2
IO_EXIT = 3

DEFAULT_EPS_LIST = "1e-2,1e-3,1e-4,1e-5,1e-6,1e-7,1e-8,1e-9,1e-10,1e-11,1e-12"


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; this CLI reserves 2 for
    # numerical failures.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _env(name: str, fallback):
    return os.environ.get(f"QRITZ_{name}", fallback)


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def _parse_eps_list(text: str) -> list[float]:
    try:
        values = [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a float list: {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("epsilon list is empty")
    return values


def fmt_complex(z: complex) -> str:
    return f"{z.real:.16e}{z.imag:+.16e}j"


def _load_pencil(m_path, d_path, k_path) -> QuadraticPencil:
    return QuadraticPencil(
        mmio.read_matrix_market(m_path),
        mmio.read_matrix_market(d_path),
        mmio.read_matrix_market(k_path),
    )


def _cmd_solve(args) -> int:
    p = _load_pencil(args.M, args.D, args.K)
    pairs = solve_full(p)
    order = sorted(
        range(len(pairs)),
        key=lambda i: (abs(pairs[i].value - args.target), pairs[i].residual_norm, i),
    )
    count = min(args.count, len(pairs))
    print(
        f"solve: n={p.n} eigenvalues={len(pairs)} "
        f"target={fmt_complex(args.target)} count={count}"
    )
    for rank, i in enumerate(order[:count], start=1):
        ep = pairs[i]
        print(f"pair {rank}: lambda={fmt_complex(ep.value)} residual={format_float(ep.residual_norm)}")
        for k, entry in enumerate(ep.vector):
            print(f"  x[{k}] = {fmt_complex(entry)}")
    return 0


def _cmd_project(args) -> int:
    p = _load_pencil(args.M, args.D, args.K)
    Q = mmio.read_matrix_market(args.subspace)
    defect = orthonormality_defect(Q)
    if defect > BASIS_TOL:
        if not args.orthonormalize:
            raise NotOrthonormal(
                f"subspace file is not orthonormal (defect {defect:.3e}); "
                "rerun with --orthonormalize to fix it in place"
            )
        Q = orthonormalize(Q)
    if p.n <= FULL_SOLVE_LIMIT:
        rep = full_diagnostics(p, Q, args.target)
        print(f"project: n={p.n} m={Q.shape[1]} target={fmt_complex(args.target)}")
        print(f"reference lambda   = {fmt_complex(rep.ref_value)}")
        print(f"sin_theta1         = {format_float(rep.sin_theta1)}")
        print(f"ritz value         = {_opt_complex(rep.ritz_value)}")
        print(f"ritz value error   = {_opt_float(rep.ritz_value_error)}")
        print(f"ritz angle         = {_opt_float(rep.ritz_angle)}")
        print(f"ritz residual      = {_opt_float(rep.ritz_residual)}")
        print(f"clustered          = {rep.clustered}")
        if args.refined:
            print(f"refined angle      = {_opt_float(rep.refined_angle)}")
            print(f"refined residual   = {_opt_float(rep.refined_residual)}")
        print(f"sep projected      = {_opt_float(rep.sep_projected)}")
        print(f"sep full           = {_opt_float(rep.sep_full)}")
        print(f"elsner bound       = {_opt_float(rep.elsner_bound)}")
        print(f"ritz vector bound  = {_opt_float(rep.ritz_vector_bound)}")
        print(f"refined vec bound  = {_opt_float(rep.refined_vector_bound)}")
        return 0
    # Too large for a trustworthy reference pair: report projection-level
    # quantities only.
    from .projection import project, ritz_pairs, select_ritz
    from .refined import refined_ritz

    pp = project(p, Q)
    sel = select_ritz(ritz_pairs(pp, p), args.target)
    print(f"project: n={p.n} m={Q.shape[1]} target={fmt_complex(args.target)} (no reference)")
    print(f"ritz value         = {fmt_complex(sel.value)}")
    print(f"ritz residual      = {format_float(sel.residual_norm)}")
    print(f"clustered          = {sel.clustered}")
    if args.refined:
        rr = refined_ritz(p, Q, sel.value)
        print(f"refined residual   = {format_float(rr.residual_norm)}")
        print(f"sigma_min          = {format_float(rr.sigma_min)}")
    return 0


def _opt_float(x) -> str:
    return "n/a" if x is None else format_float(float(x))


def _opt_complex(z) -> str:
    return "n/a" if z is None else fmt_complex(z)


def _cmd_study(args) -> int:
    if args.builtin is not None:
        if args.builtin != builtin.BUILTIN_NAME:
            print(f"study: unknown builtin {args.builtin!r}", file=sys.stderr)
            return USAGE_EXIT
        case = study.builtin_case()
        label = args.builtin
    else:
        if not (args.M and args.D and args.K):
            print("study: need either --builtin or three matrix files", file=sys.stderr)
            return USAGE_EXIT
        p = _load_pencil(args.M, args.D, args.K)
        case = study.case_from_pencil(p, args.target, args.dim)
        label = "files"
    rows, verdicts = study.run_study(case, args.eps_list, args.seed)
    print(
        f"study: case={label} reference={fmt_complex(case.ref_value)} "
        f"m={case.companions.shape[1] + 1} seed={args.seed}"
    )
    for row, v in zip(rows, verdicts):
        print(
            f"eps={format_float(row.epsilon)} sin_theta={format_float(row.sin_theta)} "
            f"ritz_angle={format_float(row.ritz_angle)} "
            f"refined_angle={format_float(row.refined_angle)} {v}"
        )
    study.write_study_csv(rows, args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_example31(args) -> int:
    checks = builtin.golden_checks()
    failures = 0
    for ck in checks:
        status = "PASS" if ck.passed else "FAIL"
        failures += 0 if ck.passed else 1
        print(
            f"{status} {ck.name}: measured={format_float(ck.measured)} "
            f"threshold={format_float(ck.threshold)}"
        )
    if failures:
        print(f"{failures} of {len(checks)} checks failed")
        return NUMERICAL_EXIT
    print(f"all {len(checks)} checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qritz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ps = sub.add_parser("solve", help="full dense solve of a quadratic eigenproblem")
    ps.add_argument("M", help="Matrix Market file for the mass matrix")
    ps.add_argument("D", help="Matrix Market file for the damping matrix")
    ps.add_argument("K", help="Matrix Market file for the stiffness matrix")
    ps.add_argument("--target", type=_parse_complex, default=_parse_complex(_env("TARGET", "0")))
    ps.add_argument("--count", type=int, default=int(_env("COUNT", "1")))
    ps.set_defaults(fn=_cmd_solve)

    pp = sub.add_parser("project", help="Rayleigh-Ritz projection diagnostics")
    pp.add_argument("M")
    pp.add_argument("D")
    pp.add_argument("K")
    pp.add_argument("--subspace", required=True, help="Matrix Market file for the basis")
    pp.add_argument("--target", type=_parse_complex, default=_parse_complex(_env("TARGET", "0")))
    pp.add_argument("--refined", action="store_true", help="include refined extraction")
    pp.add_argument(
        "--orthonormalize",
        action="store_true",
        help="orthonormalize the basis file instead of rejecting it",
    )
    pp.set_defaults(fn=_cmd_project)

    pt = sub.add_parser("study", help="perturbation sweep with per-epsilon verdicts")
    pt.add_argument("M", nargs="?")
    pt.add_argument("D", nargs="?")
    pt.add_argument("K", nargs="?")
    pt.add_argument("--builtin", default=_env("BUILTIN", None), help="named built-in problem")
    pt.add_argument(
        "--eps-list",
        type=_parse_eps_list,
        default=_parse_eps_list(_env("EPS_LIST", DEFAULT_EPS_LIST)),
    )
    pt.add_argument("--seed", type=int, default=int(_env("SEED", "1")))
    pt.add_argument("--out", default=_env("OUT", "study.csv"))
    pt.add_argument("--target", type=_parse_complex, default=_parse_complex(_env("TARGET", "0")))
    pt.add_argument("--dim", type=int, default=int(_env("DIM", "2")), help="subspace dimension")
    pt.set_defaults(fn=_cmd_study)

    pe = sub.add_parser("example31", help="golden checks of the built-in problem")
    pe.set_defaults(fn=_cmd_example31)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except IoFailure as exc:
        print(f"qritz: i/o failure: {exc}", file=sys.stderr)
        return IO_EXIT
    except OSError as exc:
        print(f"qritz: i/o failure: {exc}", file=sys.stderr)
        return IO_EXIT
    except QritzError as exc:
        print(f"qritz: {type(exc).__name__}: {exc}", file=sys.stderr)
        return NUMERICAL_EXIT
    except ValueError as exc:
        print(f"qritz: invalid input: {exc}", file=sys.stderr)
        return NUMERICAL_EXIT


if __name__ == "__main__":
    sys.exit(main())
