"""Command-line interface.

Exit codes: 0 success, 1 validation failure, 2 inconclusive verdict,
3 usage error.
"""

import argparse
import json
import sys

import numpy as np

from . import __version__
from .bases import (
    NotOrthonormal,
    NotQubitFirstFactor,
    StructureViolation,
    UnentangledBasis,
    basis_family,
    decompose_qubit_basis,
    is_product_basis,
    mixed_unentangled_basis,
    qubit_block_basis,
    random_partition,
    random_product_basis,
    reversed_structure_basis,
)
from .frames import BornOracle, QubitFrameFn, counterexample_oracle, product_frame_oracle, verify_frame
from .reconstruct import NotBornRepresentable, hermitian_fit_residual, reconstruct
from .serialize import RNG_NAME, dumps, load_artifact, to_jsonable
from .subspaces import (
    EntangledSubspaceCert,
    entangled_verdict,
    max_entangled_dim,
    product_overlap_search,
    random_subspace,
    vandermonde_subspace,
)
from .tensor_core import Subspace, check_dims, random_hermitian

OK, FAIL, INCONCLUSIVE, USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _int_list(s):
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _float_list(s):
    try:
        return [float(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {s!r}")


def _read(args):
    if not args.inp:
        raise UsageError("--in FILE is required")
    with open(args.inp) as fh:
        return load_artifact(json.load(fh))


def _need_dims(args):
    if not args.dims:
        raise UsageError("--dims is required")
    return tuple(args.dims)


def cmd_gen_basis(args):
    kind = args.kind
    if kind == "qubit-block":
        if args.partition:
            n = sum(args.partition)
        else:
            dims = _need_dims(args)
            if len(dims) != 2 or dims[0] != 2:
                raise UsageError("qubit-block needs --partition or --dims 2,n")
            n = dims[1]
        part = args.partition or random_partition(n, np.random.default_rng(args.seed))
        basis = qubit_block_basis(n, part, args.seed, same_bc=args.same_bc)
    else:
        gen = {"product": random_product_basis, "mixed": mixed_unentangled_basis,
               "reversed": reversed_structure_basis}[kind]
        basis = gen(_need_dims(args), args.seed)
    return OK, basis, f"{kind} basis on dims {basis.dims}: {len(basis)} members"


def cmd_check_basis(args):
    basis = _read(args)
    if not isinstance(basis, UnentangledBasis):
        raise UsageError("input is not a basis")
    rep = basis.report(args.tol)
    out = {"type": "basis_check", **rep.to_dict(), "tol": args.tol, "dims": list(basis.dims),
           "is_product_basis": is_product_basis(basis)}
    return (OK if rep.passed else FAIL), out, f"orthonormal basis: {rep.passed} (max deviation {rep.max_deviation:.3g})"


def cmd_decompose(args):
    basis = _read(args)
    if not isinstance(basis, UnentangledBasis):
        raise UsageError("input is not a basis")
    try:
        dec = decompose_qubit_basis(basis, tol=args.tol)
    except (NotOrthonormal, NotQubitFirstFactor, StructureViolation) as exc:
        return FAIL, {"type": "error", "error": type(exc).__name__, "message": str(exc)}, f"{type(exc).__name__}: {exc}"
    return OK, dec, f"partition {dec.partition}"


def _builtin_oracle(args):
    name = args.oracle
    if name == "counterexample":
        dims = tuple(args.dims or (3, 3))
        return counterexample_oracle(dims, args.weight if args.weight else float(np.prod(dims)), seed=args.oracle_seed)
    if name == "qubit-product":
        dims = tuple(args.dims or (2, 3))
        if dims[0] != 2:
            raise UsageError("qubit-product oracle needs a qubit first factor")
        h = BornOracle(np.eye(int(np.prod(dims[1:]))), dims[1:])
        return product_frame_oracle(QubitFrameFn(1.0, ("cubic_z", 0.3)), h)
    if name == "born":
        dims = check_dims(_need_dims(args))
        T = random_hermitian(int(np.prod(dims)), np.random.default_rng(args.oracle_seed or 0), psd=True)
        return BornOracle(T, dims)
    raise UsageError(f"unknown built-in oracle {name!r}")


def _oracle(args):
    return _read(args) if args.inp else _builtin_oracle(args)


def cmd_frame_verify(args):
    oracle = _oracle(args)
    family = basis_family(args.family, oracle.dims)
    rep = verify_frame(oracle, family, M=args.samples, tol=args.tol, seed=args.seed)
    out = {"type": "frame_report", "family": args.family, **rep.to_dict()}
    text = (f"{args.family} bases: {len(rep.sums)} valid, max |sum - {rep.weight:g}| = {rep.max_deviation:.3g}"
            f" -> {'pass' if rep.passed else 'fail'}")
    return (OK if rep.passed else FAIL), out, text


def cmd_reconstruct(args):
    oracle = _oracle(args)
    try:
        rec = reconstruct(oracle, tol=args.tol)
    except NotBornRepresentable as exc:
        return FAIL, {"type": "error", "error": "NotBornRepresentable", "message": str(exc)}, str(exc)
    out = {"type": "reconstruction", **rec.to_dict()}
    return OK, out, f"reconstructed operator, asymmetry {rec.asymmetry:.3g}, probe condition {rec.probe_condition:.3g}"


def cmd_residual(args):
    oracle = _oracle(args)
    r = hermitian_fit_residual(oracle, M=args.samples, seed=args.seed)
    out = {"type": "residual", "residual": r, "M": args.samples, "seed": args.seed}
    return OK, out, f"Hermitian fit RMS residual {r:.6g} over {args.samples} samples"


def cmd_counterexample(args):
    dims = tuple(args.dims or (3, 3))
    w = args.weight if args.weight else float(np.prod(dims))
    oracle = counterexample_oracle(dims, w, seed=args.oracle_seed)
    prod = verify_frame(oracle, basis_family("product", dims), M=args.samples, tol=args.tol, seed=args.seed)
    rev = verify_frame(oracle, basis_family("reversed", dims), M=args.samples, tol=args.tol, seed=args.seed)
    resid = hermitian_fit_residual(oracle, M=args.residual_samples, seed=args.seed)
    witness = reversed_structure_basis(dims, rev.worst_seed)
    confirmed = prod.passed and resid > 1e-3 and rev.max_deviation > 0.01
    out = {
        "type": "counterexample",
        "oracle": oracle.descriptor(),
        "product_bases": {"samples": len(prod.sums), "max_deviation": prod.max_deviation, "passed": prod.passed},
        "residual": resid,
        "reversed_bases": {"samples": len(rev.sums), "max_deviation": rev.max_deviation},
        "witness": {"seed": rev.worst_seed, "sum": float(sum(oracle(p) for p in witness.members)),
                    "basis": witness},
        "confirmed": confirmed,
    }
    text = (f"product-basis max deviation {prod.max_deviation:.3g}; residual {resid:.4g}; "
            f"reversed-basis max deviation {rev.max_deviation:.4g} (seed {rev.worst_seed})")
    return (OK if confirmed else FAIL), out, text


def cmd_entangled_dim(args):
    dims = check_dims(_need_dims(args))
    k = max_entangled_dim(dims)
    return OK, {"type": "entangled_dim", "dims": list(dims), "max_entangled_dim": k}, str(k)


def cmd_entangled_subspace(args):
    dims = check_dims(_need_dims(args))
    if args.method == "vandermonde":
        cert = vandermonde_subspace(dims, args.points)
    else:
        k = args.dim if args.dim is not None else max_entangled_dim(dims)
        cert = EntangledSubspaceCert(dims, random_subspace(int(np.prod(dims)), k, args.seed),
                                     {"method": "random", "seed": args.seed, "dim": k}, {"kind": "none"})
    return OK, cert, f"{cert.construction['method']} subspace of dimension {cert.subspace.dim} in dims {dims}"


def cmd_find_product(args):
    obj = _read(args)
    if isinstance(obj, EntangledSubspaceCert):
        dims, S = obj.dims, obj.subspace
    elif isinstance(obj, Subspace):
        dims, S = _need_dims(args), obj
    else:
        raise UsageError("input is not a subspace")
    rep = product_overlap_search(S, dims, restarts=args.restarts, seed=args.seed)
    verdict = entangled_verdict(obj if args.policy == "auto" else S, dims, policy=args.policy,
                                restarts=args.restarts, seed=args.seed)
    out = {"type": "product_search", "search": rep.to_dict(), **verdict.to_dict()}
    code = INCONCLUSIVE if verdict.kind == "inconclusive" else OK
    return code, out, f"{verdict.kind}; best overlap {rep.best_overlap:.9f}"


def cmd_demo_theorem3(args):
    dims = (2, 3)
    g = QubitFrameFn(1.0, ("cubic_z", 0.3))
    oracle = product_frame_oracle(g, BornOracle(np.eye(3), (3,)))
    rep = verify_frame(oracle, basis_family("qubit-block", dims), M=args.samples, tol=args.tol, seed=args.seed)
    resid = hermitian_fit_residual(oracle, M=args.residual_samples, seed=args.seed)
    ok = rep.passed and resid > 1e-3
    out = {"type": "qubit_product_demo", "oracle": oracle.descriptor(), "weight": oracle.declared_weight,
           "qubit_block_bases": {"samples": len(rep.sums), "max_deviation": rep.max_deviation,
                                 "passed": rep.passed},
           "residual": resid, "non_born_frame_function": ok}
    text = (f"sums over {len(rep.sums)} qubit-block bases: max |sum - 3| = {rep.max_deviation:.3g}; "
            f"Hermitian fit residual {resid:.4g}")
    return (OK if ok else FAIL), out, text


COMMANDS = {
    "gen-basis": cmd_gen_basis,
    "check-basis": cmd_check_basis,
    "decompose": cmd_decompose,
    "frame-verify": cmd_frame_verify,
    "reconstruct": cmd_reconstruct,
    "residual": cmd_residual,
    "counterexample": cmd_counterexample,
    "entangled-dim": cmd_entangled_dim,
    "entangled-subspace": cmd_entangled_subspace,
    "find-product": cmd_find_product,
    "demo-theorem3": cmd_demo_theorem3,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dims", type=_int_list)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--restarts", type=int, default=100)
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--partition", type=_int_list)
    common.add_argument("--in", dest="inp")
    common.add_argument("--out")
    common.add_argument("--format", choices=["json", "text"])

    parser = _Parser(prog="ugleason", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    p = sub.add_parser("gen-basis", parents=[common], help="generate a seeded unentangled basis")
    p.add_argument("--kind", choices=["product", "mixed", "reversed", "qubit-block"], default="product")
    p.add_argument("--same-bc", action="store_true", help="qubit-block: use c_ij = b_ij")
    sub.add_parser("check-basis", parents=[common], help="validate a basis file")
    sub.add_parser("decompose", parents=[common], help="block decomposition of a qubit unentangled basis")
    for name, hlp in [("frame-verify", "sum an oracle over sampled bases"),
                      ("reconstruct", "recover the operator of a Born oracle"),
                      ("residual", "Hermitian least-squares residual of an oracle")]:
        p = sub.add_parser(name, parents=[common], help=hlp)
        p.add_argument("--oracle", choices=["born", "qubit-product", "counterexample"], default="qubit-product")
        p.add_argument("--oracle-seed", type=int)
        p.add_argument("--weight", type=float)
        if name == "frame-verify":
            p.add_argument("--family", choices=["product", "mixed", "reversed", "qubit-block"], default="mixed")
    p = sub.add_parser("counterexample", parents=[common], help="product-basis frame function that is not Born")
    p.add_argument("--weight", type=float)
    p.add_argument("--oracle-seed", type=int)
    p.add_argument("--residual-samples", type=int, default=2000)
    sub.add_parser("entangled-dim", parents=[common], help="maximal entangled subspace dimension")
    p = sub.add_parser("entangled-subspace", parents=[common], help="construct a subspace")
    p.add_argument("--method", choices=["vandermonde", "random"], default="vandermonde")
    p.add_argument("--points", type=_float_list)
    p.add_argument("--dim", type=int)
    p = sub.add_parser("find-product", parents=[common], help="search a subspace for product vectors")
    p.add_argument("--policy", choices=["auto", "search"], default="auto")
    p = sub.add_parser("demo-theorem3", parents=[common], help="non-Born unentangled frame function on (2,3)")
    p.add_argument("--residual-samples", type=int, default=2000)
    return parser


DEFAULT_TOL = {"check-basis": 1e-10, "decompose": 1e-10, "reconstruct": 1e-8}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        return USAGE
    if args.tol is None:
        args.tol = DEFAULT_TOL.get(args.command, 1e-9)
    fmt = args.format or ("text" if args.command == "entangled-dim" else "json")
    try:
        code, payload, text = COMMANDS[args.command](args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"ugleason {args.command}: error: {exc}", file=sys.stderr)
        return USAGE
    if fmt == "json":
        payload = dict(to_jsonable(payload), meta={"command": args.command, "seed": args.seed,
                                                   "rng": RNG_NAME, "version": __version__})
        body = dumps(payload)
    else:
        body = text + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)
    return code


if __name__ == "__main__":
    sys.exit(main())
