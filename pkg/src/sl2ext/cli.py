"""Command-line interface.

Every subcommand prints one JSON envelope on stdout (``trace --format dot``
prints graphviz text instead). Exit status: 0 success, 1 a verification
check failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .ext import ExtEngine, ExtQuery, top_degree
from .hilbert import generator_ledger, hilbert
from .oracles import orbit_linked
from .trace import trace
from .verify import FAIL, run_checks
from .weights import is_prime, p_decompose, same_block

GL2_NOTE = "GL2 dimension equals the SL2 dimension (restriction GL2 -> SL2 is an isomorphism for these coefficients)"
EXTRAPOLATION_NOTE = "formula extrapolation: q != 2p^(r-1), identification with Ext(k, gl2) only proven at the top degree"


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid prime {text!r}")
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"{value} is negative")
    return value


def _positive(text: str) -> int:
    value = _nonneg(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _prime_list(text: str) -> list[int]:
    primes = [_prime(part.strip()) for part in text.split(",") if part.strip()]
    if not primes:
        raise argparse.ArgumentTypeError("empty prime list")
    return primes


def _emit(command: str, parameters: dict, result, notes: list[str] | None = None) -> None:
    envelope = {
        "command": command,
        "parameters": parameters,
        "result": result,
        "version": __version__,
        "notes": notes or [],
    }
    sys.stdout.write(json.dumps(envelope, sort_keys=True, indent=2, ensure_ascii=False) + "\n")


def cmd_ext(args, engine: ExtEngine) -> int:
    top = top_degree(args.r, args.p)
    q = top if args.q is None else args.q
    params = {"p": args.p, "r": args.r, "q": q}
    decomposition = engine.decompose_ext_k_nabla2(q, args.r, args.p)
    result = {"dim": sum(d for _, d in decomposition)}
    if q == top:
        result["decomposition"] = [[n, d] for n, d in decomposition]
        notes = [GL2_NOTE]
    else:
        notes = [EXTRAPOLATION_NOTE]
    _emit("ext", params, result, notes)
    return 0


def cmd_ext_dn(args, engine: ExtEngine) -> int:
    dim = engine.ext_delta_nabla2(args.m, args.n, args.s, args.p)
    _emit("ext-dn", {"p": args.p, "n": args.n, "m": args.m, "s": args.s}, {"dim": dim})
    return 0


def cmd_trace(args, engine: ExtEngine) -> int:
    dag = trace(ExtQuery(args.m, args.n, args.s, args.p), prune=args.prune)
    if args.format == "dot":
        sys.stdout.write(dag.to_dot())
    else:
        params = {"p": args.p, "n": args.n, "m": args.m, "s": args.s, "prune": args.prune}
        _emit("trace", params, dag.to_json())
    return 0


def cmd_blocks(args, engine: ExtEngine) -> int:
    p, lam, mu = args.p, args.lam, args.mu
    result = {
        "same_block": same_block(lam, mu, p),
        "lambda_split": list(p_decompose(lam, p)),
        "mu_split": list(p_decompose(mu, p)),
    }
    notes = ["the closed-form condition is necessary for block membership"]
    if args.oracle is not None:
        try:
            result["orbit_linked"] = orbit_linked(lam, mu, p, args.oracle)
        except ValueError as exc:
            raise _UsageError(str(exc))
        result["orbit_bound"] = args.oracle
    _emit("blocks", {"p": p, "lambda": lam, "mu": mu, "oracle": args.oracle}, result, notes)
    return 0


def cmd_verify(args, engine: ExtEngine) -> int:
    results = run_checks(args.primes, args.r_max, engine)
    for res in results:
        sys.stderr.write(res.line() + "\n")
    failed = [res for res in results if res.status == FAIL]
    summary = {
        "passed": sum(res.status == "pass" for res in results),
        "failed": len(failed),
        "skipped": sum(res.status == "skip" for res in results),
        "checks": [res.as_dict() for res in results],
    }
    _emit("verify", {"primes": sorted(set(args.primes)), "r_max": args.r_max}, summary)
    return 1 if failed else 0


def cmd_hilbert(args, engine: ExtEngine) -> int:
    ledger = [{"index": e.index, "degree": e.degree, "dim": e.dim} for e in generator_ledger(args.r, args.p)]
    result = {"ledger": ledger, "coefficients": hilbert(args.r, args.p, args.max_degree)}
    notes = ["series of the generator algebra only (growth upper-bound witness)"]
    _emit("hilbert", {"p": args.p, "r": args.r, "max_degree": args.max_degree}, result, notes)
    return 0


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sl2ext", description="Exact Ext dimensions for SL2 in characteristic p.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ext", help="dim Ext^q(k, gl2^(r)), q defaulting to 2p^(r-1)")
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--q", type=_nonneg)
    p.set_defaults(func=cmd_ext)

    p = sub.add_parser("ext-dn", help="dim Ext^m(Delta(n), nabla(2)^(s))")
    for flag in ("--n", "--m", "--s"):
        p.add_argument(flag, type=_nonneg, required=True)
    p.add_argument("--p", type=_prime, required=True)
    p.set_defaults(func=cmd_ext_dn)

    p = sub.add_parser("trace", help="recursion DAG of one Ext query")
    for flag in ("--n", "--m", "--s"):
        p.add_argument(flag, type=_nonneg, required=True)
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--prune", action="store_true", help="drop zero-dimensional nodes")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("blocks", help="block test for two weights")
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--lambda", dest="lam", type=_nonneg, required=True)
    p.add_argument("--mu", type=_nonneg, required=True)
    p.add_argument("--oracle", type=_nonneg, metavar="B", help="also run the dot-orbit oracle with cutoff B")
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("verify", help="run the verification grid")
    p.add_argument("--primes", type=_prime_list, required=True, help="comma-separated primes")
    p.add_argument("--r-max", dest="r_max", type=_positive, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hilbert", help="Hilbert series of the generator algebra")
    p.add_argument("--p", type=_prime, required=True)
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--max-degree", dest="max_degree", type=_nonneg, required=True)
    p.set_defaults(func=cmd_hilbert)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, ExtEngine())
    except _UsageError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
