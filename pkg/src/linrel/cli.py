"""
Command-line entry point.

    linrel laws  [--seed N] [--trials N] [--max-dim N] [--format text|json] [--out PATH] [--timing]
    linrel demo  {example1,example2} [--seed N] [--max-n N] [--format text|json|csv] [--out PATH]
    linrel rel   {adjoint,closure,inverse,row,column,block} --in FILE [--in FILE] [--out PATH]

Exit status: 0 success, 1 mathematical or shape error, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import laws
from . import relation as rel
from . import rowcol as rc
from . import subspace as sp
from . import truncation as tr

EXIT_OK, EXIT_MATH, EXIT_USAGE = 0, 1, 2

DEMO_SEED = 7
EXAMPLE2_N = (4, 8, 16, 32, 64)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--format", dest="out_format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", dest="out_path", type=Path)
    common.add_argument("--rank-tol", type=_positive_float, default=None)
    common.add_argument("--angle-tol", type=_positive_float, default=None)

    parser = _Parser(prog="linrel", description="Calculus of linear relations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("laws", parents=[common], help="run the law suite")
    p.add_argument("--trials", type=_positive_int, default=200)
    p.add_argument("--max-dim", type=int, default=6, choices=range(0, laws.MAX_DIM + 1), metavar="N")
    p.add_argument("--timing", action="store_true", help="record wall-clock time per report")

    p = sub.add_parser("demo", parents=[common], help="run a worked example")
    p.add_argument("which", choices=("example1", "example2"))
    p.add_argument("--max-n", type=_positive_int, default=None)
    p.add_argument("--max-dim", type=int, default=6, choices=range(1, laws.MAX_DIM + 1), metavar="N")

    p = sub.add_parser("rel", parents=[common], help="compute with relations stored as JSON")
    p.add_argument("op", choices=("adjoint", "closure", "inverse", "row", "column", "block"))
    p.add_argument("--in", dest="inputs", type=Path, action="append", required=True)
    return parser


def _emit(text: str, out_path: Path | None):
    if out_path is None:
        sys.stdout.write(text)
    else:
        out_path.write_text(text)


def cmd_laws(args) -> int:
    if args.out_format == "csv":
        raise UsageError("laws supports --format text or json")
    template = laws.InstanceSpec(seed=args.seed, min_dim=min(1, args.max_dim), max_dim=args.max_dim)
    result = laws.run_suite(template, args.trials)
    if args.out_format == "json":
        _emit(result.to_json(timing=args.timing) + "\n", args.out_path)
        if args.out_path is None:
            return EXIT_OK if result.ok else EXIT_MATH
    lines = []
    for law, s in result.summary.items():
        status = "PASS" if s.failures == 0 else "FAIL"
        line = f"{status} {law.value:<26} trials={s.trials} failures={s.failures} worst_residual={s.worst_residual:.3e}"
        if s.failing_seeds:
            line += " seeds=" + ",".join(map(str, s.failing_seeds[:10]))
        lines.append(line)
    passed = sum(s.failures == 0 for s in result.summary.values())
    lines.append(f"{passed}/{len(result.summary)} laws passed")
    text = "\n".join(lines) + "\n"
    if args.out_format == "text":
        _emit(text, args.out_path)
    else:
        sys.stdout.write(text)
    return EXIT_OK if result.ok else EXIT_MATH


def _demo_example1(args) -> int:
    seed = args.seed if args.seed_given else DEMO_SEED
    spec = laws.InstanceSpec(seed=seed, max_dim=args.max_dim, kind=laws.Kind.PRODUCT_FORM)
    inst = laws.generate_instance(spec)
    chain = rc.example1_chain(inst["C1"], inst["M"], inst["N"])
    names = ("[C1; M x N]*", "[C1*  N^⊥ x M^⊥]", "[C1*  N^⊥ x {0}]", "[C1; H x N]*")
    if args.out_format == "json":
        payload = {
            "seed": seed,
            "dims": {"dom C1": rel.parts(inst["C1"]).dom.rank, "M": inst["M"].rank,
                     "N": inst["N"].rank, "H": inst["C1"].dom_dim, "K2": inst["N"].ambient_dim},
            "members": [{"name": n, "dim": m.dim} for n, m in zip(names, chain.members)],
            "residuals": chain.residuals.tolist(),
            "equal": chain.all_equal,
        }
        _emit(json.dumps(payload, indent=2) + "\n", args.out_path)
    else:
        C1 = inst["C1"]
        lines = [
            f"seed={seed} H=R^{C1.dom_dim} K1=R^{C1.codom_dim} K2=R^{inst['N'].ambient_dim}",
            f"dim dom C1={rel.parts(C1).dom.rank} dim M={inst['M'].rank} dim N={inst['N'].rank}",
        ]
        for i, (n, m) in enumerate(zip(names, chain.members), 1):
            lines.append(f"({i}) {n:<18} dim={m.dim}")
        for i in range(4):
            for j in range(i + 1, 4):
                lines.append(f"gap({i + 1},{j + 1}) = {chain.residuals[i, j]:.3e}")
        verdict = "EQUAL" if chain.all_equal else "DIFFER"
        lines.append(f"CHAIN {verdict} residual={chain.residual:.3e}")
        _emit("\n".join(lines) + "\n", args.out_path)
    return EXIT_OK if chain.all_equal else EXIT_MATH


def _demo_example2(args) -> int:
    n_list = list(EXAMPLE2_N)
    if args.max_n is not None:
        n_list = [n for n in n_list if n <= args.max_n]
        while n_list and n_list[-1] * 2 <= args.max_n:
            n_list.append(n_list[-1] * 2)
        if not n_list:
            n_list = [args.max_n]
    report = tr.example2_experiment(n_list)
    text = {"csv": report.to_csv, "json": lambda: report.to_json() + "\n", "text": report.to_text}
    _emit(text[args.out_format](), args.out_path)
    return EXIT_OK


def cmd_demo(args) -> int:
    if args.which == "example1":
        return _demo_example1(args)
    return _demo_example2(args)


def _load_json(path: Path):
    try:
        return json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _load_relation(path: Path) -> rel.LinearRelation:
    data = _load_json(path)
    try:
        return rel.relation_from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, sp.DimensionMismatchError):
            raise
        raise UsageError(f"{path} is not a relation: {exc}") from exc


def cmd_rel(args) -> int:
    op, inputs = args.op, args.inputs
    arity = {"row": 2, "column": 2}.get(op, 1)
    if len(inputs) != arity:
        raise UsageError(f"rel {op} takes {arity} --in file(s), got {len(inputs)}")
    if op == "block":
        data = _load_json(inputs[0])
        try:
            blocks = rc.block_from_dict(data)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, sp.DimensionMismatchError):
                raise
            raise UsageError(f"{inputs[0]} is not a block file: {exc}") from exc
        result = rc.block_relation(*blocks).relation
    else:
        operands = [_load_relation(p) for p in inputs]
        fn = {
            "adjoint": rel.adjoint,
            "closure": rel.closure,
            "inverse": rel.inverse,
            "row": rc.row,
            "column": rc.column,
        }[op]
        result = fn(*operands)
    p = rel.parts(result)
    summary = (f"{op}: R^{result.dom_dim} -> R^{result.codom_dim} dim={result.dim} "
               f"dom={p.dom.rank} ran={p.ran.rank} ker={p.ker.rank} mul={p.mul.rank}\n")
    payload = json.dumps(rel.relation_to_dict(result)) + "\n"
    if args.out_path is None:
        sys.stdout.write(summary + payload)
    else:
        args.out_path.write_text(payload)
        sys.stdout.write(summary)
    return EXIT_OK


COMMANDS = {"laws": cmd_laws, "demo": cmd_demo, "rel": cmd_rel}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.seed_given = any(a == "--seed" or a.startswith("--seed=") for a in argv)
    try:
        with sp.tolerance(args.rank_tol, args.angle_tol):
            return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"linrel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (sp.DimensionMismatchError, rc.PreconditionError) as exc:
        print(f"linrel: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())
