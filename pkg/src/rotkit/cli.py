"""Command-line interface: ``rotkit {encode,distance,construct,verify}``.

Machine output goes to stdout (JSON unless ``--format text``), diagnostics
to stderr.  Exit codes: 0 success, 1 failed verification, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import verify
from .encodings import (
    permutation_to_tree,
    skew_tree_to_string,
    string_to_skew_tree,
    tree_to_permutation,
)
from .errors import NotSkew, RotkitError
from .oracle import TreeFilter, bfs_distance
from .polynomials import (
    find_duplicate_polynomial_trees,
    parse_polynomial,
    poly_rotation_distance,
    skew_polynomial_to_tree,
    tree_to_polynomial,
)
from .rank_paths import gadget_height, gadget_rank, reduce_rank_by_one
from .skew import binary_skew_rotation, nearest_skew, skew_distance, to_right_comb
from .tree import Tree, height, is_skew, parse_tree, rank, serialize_tree

ENCODINGS = ("tree", "perm", "string", "poly")
METHODS = ("skew", "oracle", "oracle-skew", "oracle-rank", "oracle-height", "poly")


def _parse_perm(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise RotkitError(f"{text!r} is not a list of integers") from None


def decode(text: str, kind: str) -> Tree:
    text = text.strip()
    if kind == "tree":
        return parse_tree(text)
    if kind == "perm":
        return permutation_to_tree(_parse_perm(text))
    if kind == "string":
        return string_to_skew_tree(text)
    return skew_polynomial_to_tree(parse_polynomial(text))


def encode(t: Tree, kind: str, fmt: str) -> str:
    if kind == "tree":
        value = serialize_tree(t)
    elif kind == "perm":
        perm = tree_to_permutation(t)
        value = list(perm) if fmt == "json" else " ".join(map(str, perm))
    elif kind == "string":
        value = skew_tree_to_string(t)
    else:
        p = tree_to_polynomial(t)
        value = json.loads(p.to_json()) if fmt == "json" else str(p)
    return json.dumps(value) if fmt == "json" else value


def _path_json(path) -> list[dict]:
    return [step.to_json() for step in path]


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload))
        return
    for key, value in payload.items():
        if key == "path":
            value = " ".join(f"{s['node']}{s['dir']}" for s in value) or "-"
        elif isinstance(value, list):
            value = " ".join(map(str, value))
        print(f"{key}: {value}")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_encode(args: argparse.Namespace) -> int:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            inputs = [line for line in fh.read().splitlines() if line.strip()]
    elif args.value is not None:
        inputs = [args.value]
    else:
        raise RotkitError("give a value or --file")
    for text in inputs:
        print(encode(decode(text, args.source), args.to, args.format))
    return 0


def _default_source(method: str) -> str:
    return {"skew": "string", "poly": "poly"}.get(method, "tree")


def cmd_distance(args: argparse.Namespace) -> int:
    source = args.source or _default_source(args.method)
    t1, t2 = decode(args.t1, source), decode(args.t2, source)
    method = args.method
    if method == "skew":
        d, path = skew_distance(t1, t2)
    elif method == "poly":
        if not (is_skew(t1) and is_skew(t2)):
            raise NotSkew("poly method needs skew trees")
        d = poly_rotation_distance(tree_to_polynomial(t1), tree_to_polynomial(t2))
        _, path = binary_skew_rotation(skew_tree_to_string(t1), skew_tree_to_string(t2))
    else:
        if method == "oracle":
            flt = TreeFilter.none()
        elif method == "oracle-skew":
            flt = TreeFilter.skew_only()
        elif method == "oracle-rank":
            flt = TreeFilter.rank_at_most(args.bound if args.bound is not None
                                          else max(rank(t1), rank(t2)))
        else:
            flt = TreeFilter.height_at_most(args.bound if args.bound is not None
                                            else max(height(t1), height(t2)))
        d, path = bfs_distance(t1, t2, flt)
    payload: dict = {"distance": d}
    if args.emit_path:
        payload["path"] = _path_json(path)
    _emit(payload, args.format)
    return 0


def cmd_reduce_rank(args: argparse.Namespace) -> int:
    t = parse_tree(args.tree)
    out, path = reduce_rank_by_one(t)
    _emit({"tree": serialize_tree(out), "rank": rank(out), "path": _path_json(path)}, args.format)
    return 0


def cmd_gadget(args: argparse.Namespace) -> int:
    t = parse_tree(args.tree)
    out = gadget_rank(t) if args.kind == "rank" else gadget_height(t)
    bound = rank(out) if args.kind == "rank" else height(out)
    _emit({"tree": serialize_tree(out), "bound": bound}, args.format)
    return 0


def cmd_nearest_skew(args: argparse.Namespace) -> int:
    d, witness, path = nearest_skew(parse_tree(args.tree))
    _emit({"distance": d, "witness": serialize_tree(witness), "path": _path_json(path)}, args.format)
    return 0


def cmd_to_right_comb(args: argparse.Namespace) -> int:
    d, path = to_right_comb(parse_tree(args.tree))
    _emit({"distance": d, "path": _path_json(path)}, args.format)
    return 0


def cmd_duplicate_poly(args: argparse.Namespace) -> int:
    if args.n < 4:
        raise RotkitError("trees sharing a polynomial exist only for n >= 4")
    t1, t2 = find_duplicate_polynomial_trees(args.n)
    _emit({"trees": [serialize_tree(t1), serialize_tree(t2)],
           "polynomial": str(tree_to_polynomial(t1))}, args.format)
    return 0


CONSTRUCTIONS: dict[str, Callable[[argparse.Namespace], int]] = {
    "reduce-rank": cmd_reduce_rank,
    "gadget": cmd_gadget,
    "nearest-skew": cmd_nearest_skew,
    "to-right-comb": cmd_to_right_comb,
    "duplicate-poly": cmd_duplicate_poly,
}


def cmd_construct(args: argparse.Namespace) -> int:
    return CONSTRUCTIONS[args.construction](args)


def cmd_verify(args: argparse.Namespace) -> int:
    results = verify.run_checks(args.suite, args.max_n)
    for r in results:
        print(r.line())
    failed = sum(r.status == "fail" for r in results)
    passed = sum(r.status == "pass" for r in results)
    print(f"{passed} passed, {failed} failed, {len(results) - passed - failed} skipped")
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _add_format(p: argparse.ArgumentParser, default: str = "json") -> None:
    p.add_argument("--format", choices=("json", "text"), default=default)


def _add_constructions(sub) -> None:
    for name in CONSTRUCTIONS:
        p = sub.add_parser(name)
        if name == "duplicate-poly":
            p.add_argument("--n", type=int, required=True)
        else:
            p.add_argument("tree")
        if name == "gadget":
            p.add_argument("--kind", choices=("rank", "height"), required=True)
        _add_format(p)
        p.set_defaults(func=cmd_construct, construction=name)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rotkit", description="Rotation distance toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="convert between trees and their encodings")
    p.add_argument("value", nargs="?")
    p.add_argument("-f", "--file", help="read one input per line")
    p.add_argument("--from", dest="source", choices=ENCODINGS, default="tree")
    p.add_argument("--to", choices=ENCODINGS, required=True)
    _add_format(p, "text")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("distance", help="rotation distance between two trees")
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--from", dest="source", choices=ENCODINGS,
                   help="input encoding (default: string for skew, poly for poly, else tree)")
    p.add_argument("--emit-path", action="store_true")
    p.add_argument("--bound", type=int, help="rank or height bound for the filtered oracles")
    p.add_argument("t1")
    p.add_argument("t2")
    _add_format(p)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("construct", help="constructive paths and gadgets")
    _add_constructions(p.add_subparsers(dest="construction", required=True))
    # the same constructions are reachable without the ``construct`` prefix
    _add_constructions(sub)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    p.add_argument("--max-n", type=_positive, default=6)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RotkitError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
