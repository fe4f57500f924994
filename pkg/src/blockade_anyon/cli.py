"""Command-line front end: each verification or experiment as one reproducible run.

Exit codes: 0 success, 1 usage error, 2 a checked claim failed numerically,
3 capacity or convergence limits.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
import time

import numpy as np

from .basis import SECTOR_CODES, fib, parse_sector
from .errors import (
    ArgumentError,
    CapacityError,
    ConvergenceError,
    DictionaryError,
    DomainError,
    StructureError,
)
from .hamiltonians import golden_hamiltonian
from .leakage import NoiseConfig, leakage_experiment, leakage_scaling
from .operators import SparseOperator, dumps_coo, op_flip, op_number, op_zhat
from .projectors import pair_vacuum_projector, total_charge_projector, window_charge_projector
from .reporting import RunManifest, leakage_table, spectrum_table, write_report
from .spectra import eigensystem, verify_direct_sum, verify_mirror
from .topo import dictionary_report, is_topologically_symmetric, support_window, symmetric_operator_count

__all__ = ["main", "parse_op", "build_parser", "THREADS_ENV"]

EXIT_OK, EXIT_USAGE, EXIT_FAILED, EXIT_CAPACITY = 0, 1, 2, 3
THREADS_ENV = "BLOCKADE_ANYON_THREADS"
BROKEN_Z_STRENGTH = 0.3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; 2 is reserved for failed claims here
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def parse_op(sector, text: str) -> SparseOperator:
    """Build an operator from ``n:i``, ``zhat:i``, ``flipx:i``, ``pairproj:i``, ``window:a:b:c`` or ``charge``."""
    parts = text.strip().split(":")
    kind, args = parts[0].lower(), parts[1:]
    try:
        if kind == "charge" and not args:
            return total_charge_projector(sector)
        if kind == "window" and len(args) == 3:
            return window_charge_projector(sector, int(args[0]), int(args[1]), args[2])
        if len(args) == 1:
            i = int(args[0])
            build = {"n": op_number, "zhat": op_zhat, "flipx": op_flip, "pairproj": pair_vacuum_projector}
            if kind in build:
                if not 1 <= i <= sector.n_sites:
                    raise ArgumentError(f"site {i} is not interior (1..{sector.n_sites})")
                op = build[kind](sector, i)
                return op if op.label else op.relabel(f"{kind}:{i}")
    except ValueError as exc:
        if isinstance(exc, ArgumentError):
            raise
        raise ArgumentError(f"bad operator {text!r}: {exc}") from exc
    raise ArgumentError(f"bad operator {text!r}; use n:i, zhat:i, flipx:i, pairproj:i, window:a:b:c or charge")


def _couplings(args, N: int) -> np.ndarray:
    if args.couplings and args.random_couplings:
        raise ArgumentError("--couplings and --random-couplings are exclusive")
    if args.couplings:
        J = np.array([float(x) for x in args.couplings.split(",")])
        if J.size != N - 1:
            raise ArgumentError(f"need {N - 1} couplings for N={N}, got {J.size}")
        return J
    if args.random_couplings:
        return np.random.default_rng(args.seed).uniform(0.5, 1.5, N - 1)
    return np.ones(N - 1)


def _broken_builder(sector, couplings):
    H = golden_hamiltonian(sector, couplings)
    if sector.n_sites < 2:
        raise ArgumentError("--broken needs N >= 3 so that site 2 is interior")
    return (H + op_zhat(sector, 2) * BROKEN_Z_STRENGTH).relabel("golden+0.3*zhat:2")


# -- subcommands -----------------------------------------------------------------------
# Each returns (payload, passed, tolerances, stdout_text).


def _sector(args):
    return parse_sector(args.n, args.sector)


def cmd_enumerate(args):
    s = _sector(args)
    rows = [(k, s.bitstring(int(c)), int(c)) for k, c in enumerate(s.states)]
    payload = {"sector": s.to_json(), "table": {"header": ["index", "bitstring", "code"], "rows": rows}}
    text = "\n".join(r[1] for r in rows) if args.list else str(s.dim)
    return payload, None, {}, text


def cmd_dimension(args):
    s = _sector(args)
    k = s.N - 1 + s.z0.offset + s.zN.offset
    payload = {"sector": s.to_json(), "dimension": s.dim, "fibonacci_index": k, "formula": fib(k)}
    return payload, s.dim == fib(k), {}, str(s.dim)


def cmd_build_op(args):
    s = _sector(args)
    op = parse_op(s, args.op)
    payload = {
        "operator": op.label,
        "sector": s.to_json(),
        "nnz": op.nnz,
        "hermitian": op.hermitian,
        "table": {"header": ["row", "col", "value"],
                  "rows": list(zip(*[x.tolist() for x in _coo(op)]))},
    }
    summary = {"operator": op.label, "dim": op.dim, "nnz": op.nnz, "hermitian": op.hermitian}
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, "operator.coo"), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(dumps_coo(op))
    return payload, None, {}, json.dumps(summary, sort_keys=True)


def _coo(op):
    m = op.matrix.tocoo()
    return m.row, m.col, m.data


def cmd_dictionary(args):
    s = _sector(args)
    tol = args.tol if args.tol is not None else 1e-9
    try:
        rep = dictionary_report(s, args.site, args.kind, tol)
    except DictionaryError as exc:
        payload = {"sector": s.to_json(), "site": args.site, "kind": args.kind, "residual": exc.residual}
        return payload, False, {"residual": tol}, f"dictionary identity failed: residual {exc.residual:.3e}"
    payload = rep.to_json()
    text = json.dumps({"kind": rep.kind, "residual": rep.residual, "coefficients": rep.coefficients,
                       "is_symmetric": rep.symmetry.is_symmetric}, sort_keys=True)
    return payload, True, {"residual": tol}, text


def cmd_verify_topo(args):
    s = _sector(args)
    tol = args.tol if args.tol is not None else 1e-10
    rep = is_topologically_symmetric(parse_op(s, args.op), tol)
    text = json.dumps({"operator": rep.operator, "is_symmetric": rep.is_symmetric,
                       "commutator_norm": rep.commutator_norm}, sort_keys=True)
    # the report itself is the deliverable; a non-symmetric operator is not a failure
    return rep.to_json(), None, {"commutator": tol}, text


def cmd_count_ops(args):
    rep = symmetric_operator_count(args.n)
    text = json.dumps({"n_op": rep["n_op"], "total": rep["total"], "verified": rep["verified"]}, sort_keys=True)
    return rep, bool(rep["verified"]), {"rank_rtol": rep["rank_rtol"]}, text


def cmd_support(args):
    s = _sector(args)
    tol = args.tol if args.tol is not None else 1e-10
    rep = support_window(parse_op(s, args.op), tol)
    window = "full" if rep.is_full else rep.window
    text = json.dumps({"operator": rep.operator, "window": window,
                       "context_independent": rep.context_independent}, sort_keys=True)
    return rep.to_json(), None, {"matrix_element": tol}, text


def cmd_spectrum(args):
    s = _sector(args)
    if args.op:
        op = parse_op(s, args.op)
        J = None
    else:
        J = _couplings(args, s.N)
        op = golden_hamiltonian(s, J)
    result = eigensystem(op, k=args.k)
    payload = {
        "sector": s.to_json(),
        "operator": op.label,
        "couplings": None if J is None else J,
        "complete": result.complete,
        "residuals": result.residuals,
        "table": spectrum_table(result.eigenvalues),
    }
    text = "\n".join(repr(float(w)) for w in result.eigenvalues)
    return payload, None, {"hermitian": 1e-10, "lanczos_residual": 1e-8}, text


def cmd_verify_sectors(args):
    J = _couplings(args, args.n)
    tol = args.tol if args.tol is not None else 1e-9
    builder = _broken_builder if args.broken else None
    ds = verify_direct_sum(args.n, J, tol, builder)
    mi = verify_mirror(args.n, J, tol, builder, args.mode)
    passed = ds.passed and mi.passed
    payload = {"couplings": J, "broken": args.broken, "direct_sum": ds.to_json(), "mirror": mi.to_json()}
    text = json.dumps({
        "direct_sum": {"passed": ds.passed, "worst_residual": ds.worst_residual},
        "mirror": {m: {"passed": r["passed"], "worst_residual": r["worst_residual"]}
                   for m, r in mi.details["modes"].items()},
        "passed": passed,
    }, sort_keys=True)
    return payload, passed, {"eigenvalue": tol}, text


def cmd_leakage(args):
    J = _couplings(args, args.n)
    times = np.linspace(0.0, args.t_max, args.n_times)
    if args.scaling:
        eps = [float(x) for x in args.scaling.split(",")]
        slope, means = leakage_scaling(args.n, J, eps, args.seed, args.channel, times)
        ok = 1.8 <= slope <= 2.2
        payload = {"couplings": J, "eps": eps, "mean_leakage": means, "exponent": slope,
                   "expected_range": [1.8, 2.2], "channel": args.channel,
                   "table": {"header": ["eps", "mean_leakage"], "rows": list(zip(eps, means.tolist()))}}
        return payload, ok, {"exponent_range": [1.8, 2.2]}, json.dumps({"exponent": slope, "passed": ok})
    noise = NoiseConfig(args.eps_x, args.eps_z, args.seed)
    trace = leakage_experiment(args.n, J, noise, times, args.which)
    payload = trace.to_json()
    payload.pop("times")
    payload.pop("charge_expectation")
    payload.pop("norm_drift")
    payload["table"] = leakage_table(trace)
    text = json.dumps({"max_leakage": trace.max_leakage, "mean_leakage": trace.mean_leakage,
                       "max_norm_drift": float(trace.norm_drift.max())}, sort_keys=True)
    return payload, None, {"norm_drift": 1e-9}, text


COMMANDS = {
    "enumerate": (cmd_enumerate, "list the basis of one boundary sector"),
    "dimension": (cmd_dimension, "sector dimension"),
    "build-op": (cmd_build_op, "build an operator and export it as COO"),
    "dictionary": (cmd_dictionary, "Rydberg operator in anyonic terms"),
    "verify-topo": (cmd_verify_topo, "commutator with the total-charge projector"),
    "count-ops": (cmd_count_ops, "count topologically symmetric operators"),
    "support": (cmd_support, "smallest window of sites an operator acts on"),
    "spectrum": (cmd_spectrum, "exact spectrum of the golden chain or an operator"),
    "verify-sectors": (cmd_verify_sectors, "direct-sum and mirror spectral identities"),
    "leakage": (cmd_leakage, "charge leakage of the topological q-bit under noise"),
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="number of anyons N (sites 1..N-1)")
    common.add_argument("--sector", choices=SECTOR_CODES, default="tt", help="boundary labels z0 zN")
    common.add_argument("--seed", type=int, default=42, help="master seed for every random draw")
    common.add_argument("--tol", type=float, default=None, help="override the check tolerance")
    common.add_argument("--out", default=None, help="directory for the manifest and artifacts")
    common.add_argument("--format", choices=("json", "csv"), default="json", dest="fmt")

    couplings = _Parser(add_help=False)
    couplings.add_argument("--couplings", default=None, help="comma-separated J_1..J_{N-1}")
    couplings.add_argument("--random-couplings", action="store_true", help="draw J_i ~ U[0.5, 1.5] from --seed")

    parser = _Parser(prog="blockade-anyon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = {}
    for name, (_, help_text) in COMMANDS.items():
        parents = [common, couplings] if name in ("spectrum", "verify-sectors", "leakage") else [common]
        p[name] = sub.add_parser(name, parents=parents, help=help_text)
    p["enumerate"].add_argument("--list", action="store_true", help="print bitstrings instead of the count")
    for name in ("build-op", "verify-topo", "support"):
        p[name].add_argument("--op", required=True)
    p["spectrum"].add_argument("--op", default=None, help="diagonalize this operator instead of the chain")
    p["spectrum"].add_argument("--k", type=int, default=6, help="eigenpairs in iterative mode")
    p["dictionary"].add_argument("--site", type=int, required=True)
    p["dictionary"].add_argument("--kind", choices=("SigmaX", "SigmaZ"), default="SigmaX")
    p["verify-sectors"].add_argument("--broken", action="store_true",
                                     help=f"add {BROKEN_Z_STRENGTH}*zhat_2, which breaks the symmetry")
    p["verify-sectors"].add_argument("--mode", choices=("mirrored", "identical"), default="mirrored")
    lk = p["leakage"]
    lk.add_argument("--eps-x", type=float, default=0.0)
    lk.add_argument("--eps-z", type=float, default=0.0)
    lk.add_argument("--t-max", type=float, default=100.0)
    lk.add_argument("--n-times", type=int, default=201)
    lk.add_argument("--which", choices=("1", "t"), default="1", help="initial total charge")
    lk.add_argument("--scaling", default=None, help="comma-separated eps values; fit the leakage exponent")
    lk.add_argument("--channel", choices=("x", "z", "xz"), default="z", help="noise channel for --scaling")
    return parser


def _thread_limit():
    raw = os.environ.get(THREADS_ENV)
    if not raw:
        return contextlib.nullcontext()
    try:
        n = int(raw)
    except ValueError:
        raise ArgumentError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ArgumentError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    from threadpoolctl import threadpool_limits

    return threadpool_limits(limits=n)


def _parameters(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("command",)}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    func = COMMANDS[args.command][0]
    start = time.perf_counter()
    try:
        with _thread_limit():
            payload, passed, tols, text = func(args)
    except (CapacityError, ConvergenceError) as exc:
        residual = getattr(exc, "residuals", None)
        print(f"capacity: {exc}", file=stderr)
        if residual is not None:
            print(f"residuals: {np.asarray(residual).tolist()}", file=stderr)
        return EXIT_CAPACITY
    except StructureError as exc:
        print(f"verification failed: {exc}", file=stderr)
        return EXIT_FAILED
    except (ArgumentError, DomainError) as exc:
        print(f"usage: {exc}", file=stderr)
        return EXIT_USAGE
    elapsed = time.perf_counter() - start
    summary = json.loads(text) if text.startswith("{") else {}
    manifest = RunManifest(args.command, _parameters(args), args.seed, tols, passed, summary,
                           wall_clock=elapsed)
    if args.out:
        try:
            write_report(manifest, payload, args.fmt, args.out)
        except OSError as exc:
            print(f"io: {exc}", file=stderr)
            return EXIT_USAGE
    print(text, file=stdout)
    return EXIT_FAILED if passed is False else EXIT_OK


def _entry() -> None:  # console script
    sys.exit(main())


if __name__ == "__main__":
    _entry()

