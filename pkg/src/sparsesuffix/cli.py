"""Command-line front end.

Exit codes: 0 ok, 1 invalid input, 2 I/O error, 3 internal invariant violation
(including a verify mismatch).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

import numpy as np

from . import oracle
from .batched_lcp import batch_lcp
from .bench import rows_to_csv, run_cell
from .errors import InputError, InvariantError
from .fingerprint import new_context
from .sst import build_tree, to_dot, to_json, tree_shape, validate_tree
from .suffix_sort import sort_suffixes
from .text import Text

EXIT_OK, EXIT_INPUT, EXIT_IO, EXIT_INVARIANT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # usage errors count as invalid input
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _int_list(arg: str) -> list[int]:
    return [int(x) for x in arg.replace(",", " ").split()]


def read_positions(arg: str, zero_based: bool = False) -> list[int]:
    """Positions from a file (one per line, or comma separated) or an inline list."""
    if os.path.exists(arg):
        with open(arg, "r", encoding="ascii") as fh:
            lines = fh.read().splitlines()
        where = "line"
    else:
        lines = [arg]
        where = "argument"
    out = []
    for lineno, line in enumerate(lines, 1):
        for tok in line.replace(",", " ").split():
            try:
                out.append(int(tok) + (1 if zero_based else 0))
            except ValueError:
                raise InputError(f"{where} {lineno}: not an integer: {tok!r}") from None
    return out


def read_pairs(path: str, zero_based: bool = False) -> list[tuple[int, int]]:
    shift = 1 if zero_based else 0
    pairs = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != 2:
                raise InputError(f"line {lineno}: expected 'i j', got {line.strip()!r}")
            try:
                pairs.append((int(parts[0]) + shift, int(parts[1]) + shift))
            except ValueError:
                raise InputError(f"line {lineno}: not an integer pair: {line.strip()!r}") from None
    return pairs


def _check_positions(text: Text, positions: Sequence[int], zero_based: bool) -> None:
    shift = 1 if zero_based else 0
    lo, hi = 1 - shift, text.n - shift
    seen = set()
    for k, q in enumerate(positions, 1):
        if not 1 <= q <= text.n:
            raise InputError(f"position {q - shift} out of range [{lo},{hi}] (entry {k})")
        if q in seen:
            raise InputError(f"duplicate position {q - shift} (entry {k})")
        seen.add(q)


def _context(text: Text, args: argparse.Namespace):
    if getattr(args, "debug_prime", None):
        return new_context(256, max(1, text.n), seed=args.seed, reps=1, primes=(args.debug_prime,))
    return new_context(256, max(1, text.n), seed=args.seed, reps=args.reps)


def _emit(args: argparse.Namespace, payload: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _load(args: argparse.Namespace) -> tuple[Text, list[int]]:
    text = Text.from_file(args.text)
    positions = read_positions(args.positions, args.zero_based) if args.positions else []
    _check_positions(text, positions, args.zero_based)
    return text, positions


def _format_sa(ssa, fmt: str, zero_based: bool) -> str:
    shift = 1 if zero_based else 0
    sa = [q - shift for q in ssa.sa]
    lcp = ["-"] + [str(v) for v in ssa.adj_lcp] if sa else []
    if fmt == "json":
        return json.dumps({"n": ssa.n, "sa": sa, "adj_lcp": ssa.adj_lcp}) + "\n"
    if fmt == "csv":
        rows = ["position,lcp"] + [f"{q},{'' if v == '-' else v}" for q, v in zip(sa, lcp)]
        return "\n".join(rows) + "\n"
    return "".join(f"{q} {v}\n" for q, v in zip(sa, lcp))


def cmd_build_sa(args: argparse.Namespace) -> int:
    text, positions = _load(args)
    ssa = sort_suffixes(text, positions, _context(text, args), args.alpha, args.seed, verify=args.verify)
    _emit(args, _format_sa(ssa, args.format or "text", args.zero_based))
    return EXIT_OK


def cmd_build_tree(args: argparse.Namespace) -> int:
    text, positions = _load(args)
    ssa = sort_suffixes(text, positions, _context(text, args), args.alpha, args.seed, verify=args.verify)
    tree = build_tree(text, ssa)
    if args.verify:
        problems = validate_tree(tree, text, ssa)
        if problems:
            raise InvariantError(problems[0])
    fmt = args.format or "json"
    if fmt == "dot":
        _emit(args, to_dot(tree, args.zero_based))
    elif fmt == "json":
        _emit(args, to_json(tree, args.zero_based) + "\n")
    else:
        raise InputError(f"build-tree supports json or dot, not {fmt}")
    return EXIT_OK


def cmd_lcp(args: argparse.Namespace) -> int:
    if not args.pairs:
        raise InputError("lcp needs --pairs")
    text = Text.from_file(args.text)
    pairs = read_pairs(args.pairs, args.zero_based)
    for k, (i, j) in enumerate(pairs, 1):
        for q in (i, j):
            if not 1 <= q <= text.n:
                raise InputError(f"line {k}: position out of range [1,{text.n}]")
    res = batch_lcp(text, pairs, _context(text, args), args.alpha, verify=args.verify)
    _emit(args, "".join(f"{v}\n" for v in res))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    text, positions = _load(args)
    pairs = read_pairs(args.pairs, args.zero_based) if args.pairs else []
    try:
        oracle.guard(text.n, max(len(positions), len(pairs)), args.force)
    except oracle.OracleRefused as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_INPUT
    ctx = _context(text, args)
    report: list[str] = []
    if pairs:
        got = batch_lcp(text, pairs, ctx, args.alpha).tolist()
        raw = text.tobytes()
        for (i, j), v in zip(pairs, got):
            want = oracle.naive_lcp(raw, i, j)
            if v != want:
                report.append(f"lcp({i},{j}): got {v}, oracle {want}")
                break
    ssa = sort_suffixes(text, positions, ctx, args.alpha, args.seed)
    ref = oracle.naive_sort(text, positions, force=True)
    if ssa.sa != ref.sa:
        k = next(t for t, (a, b) in enumerate(zip(ssa.sa, ref.sa)) if a != b)
        report.append(f"sa[{k}]: got {ssa.sa[k]}, oracle {ref.sa[k]}")
    elif ssa.adj_lcp != ref.adj_lcp:
        k = next(t for t, (a, b) in enumerate(zip(ssa.adj_lcp, ref.adj_lcp)) if a != b)
        report.append(f"adj_lcp[{k}]: got {ssa.adj_lcp[k]}, oracle {ref.adj_lcp[k]}")
    else:
        tree = build_tree(text, ssa)
        problems = validate_tree(tree, text, ssa)
        if problems:
            report.append(f"tree: {problems[0]}")
        elif tree_shape(tree) != tree_shape(oracle.naive_tree(text, positions, force=True)):
            report.append("tree: shape differs from naive insertion")
    if report:
        print("divergence: " + report[0], file=sys.stdout)
        return EXIT_INVARIANT
    print(f"ok: {len(pairs)} lcp pairs, {len(positions)} suffixes agree with the oracle")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    rows = []
    for n in _int_list(args.n):
        for b in _int_list(args.b):
            for alpha in _int_list(args.alpha_grid):
                rows.append(run_cell(n, min(b, n), alpha, seed=args.seed, reps=args.reps, sigma=args.sigma))
    _emit(args, rows_to_csv(rows, timing=not args.no_timing))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sparsesuffix", description="Sparse suffix arrays and trees in O(b) words.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def shared(p: argparse.ArgumentParser, text_required: bool = True) -> None:
        p.add_argument("--text", required=text_required, help="text file (raw bytes)")
        p.add_argument("--positions", help="positions file or inline list like '1,3,5'")
        p.add_argument("--pairs", help="file with one 'i j' pair per line")
        p.add_argument("--alpha", type=int, default=2, help="search arity (>= 2)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--reps", type=int, default=2, help="independent fingerprint primes")
        p.add_argument("--format", choices=("text", "csv", "json", "dot"))
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--zero-based", action="store_true", help="0-based positions on input and output")
        p.add_argument("--verify", action="store_true", help="cheap self-checks on the result")
        p.add_argument("--debug-prime", type=int, help=argparse.SUPPRESS)

    p = sub.add_parser("build-sa", help="sparse suffix array with adjacent LCPs")
    shared(p)
    p.set_defaults(func=cmd_build_sa)
    p = sub.add_parser("build-tree", help="sparse suffix tree as JSON or DOT")
    shared(p)
    p.set_defaults(func=cmd_build_tree)
    p = sub.add_parser("lcp", help="batched LCP queries")
    shared(p)
    p.set_defaults(func=cmd_lcp)
    p = sub.add_parser("verify", help="compare against brute force")
    shared(p)
    p.add_argument("--force", action="store_true", help="ignore the oracle size guard")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="CSV benchmark over an (n, b, alpha) grid")
    p.add_argument("--n", default="65536,131072", help="text lengths")
    p.add_argument("--b", default="1024", help="suffix counts")
    p.add_argument("--alpha", dest="alpha_grid", default="2", help="arities")
    p.add_argument("--sigma", type=int, default=4, help="alphabet of the random texts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reps", type=int, default=2)
    p.add_argument("--out")
    p.add_argument("--no-timing", action="store_true", help="omit wall_ms (byte-stable output)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "alpha", 2) < 2:
        print("error: --alpha must be >= 2", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "reps", 1) < 1:
        print("error: --reps must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
