"""Command-line front end.

    sep-partitions verify MKR_14 k=3 r=1 -N 6
    sep-partitions verify THM1 k=3 --n-max 10
    sep-partitions list okr:3,3 6
    sep-partitions basis kr m=3 k=3 r=1
    sep-partitions decompose abk:1,2,3 8,7,5,2
    sep-partitions map okk2kp 3 "9~,7,6,6,5,3~,3,1,1"

Exit codes: 0 all reports pass, 1 some report fails, 2 usage error,
3 capacity exceeded, 4 input not in the class.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import basis as _basis
from .bijection import kpartition_to_okk, okk_to_kpartition
from .errors import CapacityError, NotAMemberError
from .identities import DEFAULT_N_MAX, DEFAULT_ORDER, cmd_verify, optional_params
from .partitions import (
    ABK,
    MKR,
    Overpartition,
    enumerate_class,
    parse_class,
    parse_partition,
)
from .report import IDENTITIES, SCHEMA

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY, EXIT_NOT_MEMBER = 0, 1, 2, 3, 4

# parameter sets exercised by ``verify all``
BATCH = [
    ("ABK_11", {"a": 1, "b": 2, "k": 3}),
    ("ABK_11", {"a": 1, "b": 4, "k": 5}),
    ("ABK_11", {"a": 2, "b": 3, "k": 5}),
    ("ABK_11", {"a": 3, "b": 5, "k": 7}),
    ("OKR_12", {"k": 1, "r": 1}),
    ("OKR_12", {"k": 3, "r": 1}),
    ("OKR_12", {"k": 3, "r": 3}),
    ("OKR_12", {"k": 4, "r": 2}),
    ("MKR_14", {"k": 2, "r": 1}),
    ("MKR_14", {"k": 3, "r": 1}),
    ("MKR_14", {"k": 3, "r": 3}),
    ("MKR_14", {"k": 4, "r": 2}),
    ("OKK_31", {"k": 3}),
    ("KPART_32", {"k": 3}),
    ("THM1", {"k": 3}),
    ("REC_ABK", {"a": 1, "b": 2, "k": 3}),
    ("REC_KR", {"k": 3, "r": 1}),
    ("GF_BASIS_47", {"k": 3, "r": 1}),
]


class UsageError(Exception):
    pass


def _parse_kv(tokens: list[str]) -> dict[str, int]:
    out = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep:
            raise UsageError(f"expected key=value, got {tok!r}")
        try:
            out[key.strip()] = int(value)
        except ValueError:
            raise UsageError(f"parameter {key} needs an integer, got {value!r}") from None
    return out


def _emit_json(obj) -> None:
    print(json.dumps(obj, separators=(",", ":")))


def _parts_json(p: Overpartition) -> list:
    return p.to_json()["parts"]


def _run_verify(args) -> int:
    params = _parse_kv(args.params)
    order = args.order
    if "N" in params:
        if order is not None and order != params["N"]:
            raise UsageError("conflicting N= and --order")
        order = params.pop("N")
    run_all = args.identity.lower() == "all"
    if run_all:
        if params:
            raise UsageError("'verify all' takes no identity parameters")
        jobs = [(ident, dict(p)) for ident, p in BATCH]
    else:
        ident = args.identity.upper()
        if ident not in IDENTITIES:
            raise UsageError(f"unknown identity {ident!r}; choose from {', '.join(IDENTITIES)} or all")
        jobs = [(ident, params)]
    status = EXIT_OK
    for ident, p in jobs:
        accepted = optional_params(ident)
        if args.capacity is not None and "capacity" in accepted:
            p["capacity"] = args.capacity
        if args.n_max is not None and "n_max" in accepted:
            p["n_max"] = args.n_max
        report = cmd_verify(ident, p, order)
        if args.format == "json":
            _emit_json(report.to_json(timing=args.timing))
        else:
            print(report.to_text(timing=args.timing))
        if not report.passed:
            status = EXIT_FAIL
    return status


def _run_list(args) -> int:
    spec = parse_class(args.cls)
    if args.n < 0:
        raise UsageError("weight must be nonnegative")
    members = enumerate_class(args.n, spec, args.capacity)
    for p in members:
        if args.format == "json":
            _emit_json(p.to_json())
        else:
            print(p)
    return EXIT_OK


def _run_basis(args) -> int:
    params = _parse_kv(args.params)
    kind = args.kind.lower()
    try:
        if kind == "abk":
            m, a, b, k = (params.pop(x) for x in ("m", "a", "b", "k"))
            if params:
                raise UsageError(f"unexpected parameters: {', '.join(params)}")
            elements = [Overpartition.plain(x)
                        for x in _basis.gen_basis_abk(m, a, b, k, capacity=args.capacity)]
        elif kind == "kr":
            m, k, r = (params.pop(x) for x in ("m", "k", "r"))
            if params:
                raise UsageError(f"unexpected parameters: {', '.join(params)}")
            elements = _basis.gen_basis_kr(m, k, r, capacity=args.capacity)
        else:
            raise UsageError(f"basis kind must be abk or kr, got {args.kind!r}")
    except KeyError as exc:
        raise UsageError(f"missing parameter {exc.args[0]}") from None
    for p in elements:
        if args.format == "json":
            _emit_json(p.to_json())
        else:
            print(p)
    return EXIT_OK


def _run_decompose(args) -> int:
    spec = parse_class(args.cls)
    if not isinstance(spec, (ABK, MKR)):
        raise UsageError("decompose supports abk and mkr classes")
    p = parse_partition(args.partition)
    dec = _basis.decompose(p, spec)
    if args.format == "json":
        _emit_json({"schema": SCHEMA, "class": str(spec), "partition": _parts_json(p),
                    "lambda": _parts_json(dec.basis), "mu": list(dec.mu)})
    else:
        print(f"lambda={dec.basis}")
        print("mu=" + (",".join(str(d) for d in dec.mu) if dec.mu else "()"))
    return EXIT_OK


def _run_map(args) -> int:
    p = parse_partition(args.partition)
    if args.direction == "okk2kp":
        img = okk_to_kpartition(p, args.k)
    else:
        img = kpartition_to_okk(p, args.k)
    if args.format == "json":
        _emit_json({"schema": SCHEMA, "direction": args.direction, "k": args.k,
                    "source": _parts_json(p), "image": _parts_json(img)})
    else:
        print(img)
    return EXIT_OK


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--capacity", type=_positive, default=None,
                        help="member-count limit (default: $SEP_PARTITIONS_CAPACITY or 10^7)")

    parser = argparse.ArgumentParser(
        prog="sep-partitions",
        description="Verify, enumerate and decompose separable partition classes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check a generating-function identity")
    p.add_argument("identity", help=f"one of {', '.join(IDENTITIES)}, or 'all'")
    p.add_argument("params", nargs="*", help="key=value integer parameters, e.g. k=3 r=1")
    p.add_argument("-N", "--order", type=_nonneg, default=None,
                   help=f"truncation order (default {DEFAULT_ORDER})")
    p.add_argument("--n-max", type=_nonneg, default=None,
                   help=f"largest weight for THM1 (default {DEFAULT_N_MAX})")
    p.add_argument("--timing", action="store_true", help="include elapsed time (not byte-stable)")
    p.set_defaults(func=_run_verify)

    p = sub.add_parser("list", parents=[common], help="enumerate a class at one weight")
    p.add_argument("cls", metavar="class", help="abk:a,b,k | okr:k,r | kpart:k | mkr:k,r")
    p.add_argument("n", type=int)
    p.set_defaults(func=_run_list)

    p = sub.add_parser("basis", parents=[common], help="dump a basis with m parts")
    p.add_argument("kind", choices=("abk", "kr"))
    p.add_argument("params", nargs="*", help="abk: m= a= b= k=; kr: m= k= r=")
    p.set_defaults(func=_run_basis)

    p = sub.add_parser("decompose", parents=[common], help="split a member into basis + multiples of k")
    p.add_argument("cls", metavar="class")
    p.add_argument("partition", help='tilde notation, e.g. "2,2,1~,1"')
    p.set_defaults(func=_run_decompose)

    p = sub.add_parser("map", parents=[common], help="apply the (k,k)-overpartition / k-partition bijection")
    p.add_argument("direction", choices=("okk2kp", "kp2okk"))
    p.add_argument("k", type=_positive)
    p.add_argument("partition")
    p.set_defaults(func=_run_map)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except NotAMemberError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_MEMBER
    except (UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
