"""Brute-force reference implementations.

Nothing here touches fingerprints, the batched engine, or the stack-based
tree builder; agreement with the fast path is therefore real evidence.
"""

from __future__ import annotations

from typing import Sequence

from .errors import InputError
from .sst import SparseSuffixTree, SstNode
from .suffix_sort import SparseSuffixArray
from .text import Text, TextLike, as_text

ORACLE_LIMIT = 10**8


class OracleRefused(InputError):
    """The requested brute-force work exceeds :data:`ORACLE_LIMIT`."""


def guard(n: int, b: int, force: bool = False) -> None:
    if not force and n * b > ORACLE_LIMIT:
        raise OracleRefused(f"oracle refused: n*b = {n * b} exceeds {ORACLE_LIMIT}")


def _raw(text: TextLike) -> bytes:
    return as_text(text).tobytes()


def _check(raw: bytes, positions: Sequence[int]) -> None:
    n = len(raw)
    seen = set()
    for q in positions:
        if not 1 <= q <= n:
            raise InputError(f"position {q} out of range [1,{n}]")
        if q in seen:
            raise InputError(f"duplicate position {q}")
        seen.add(q)


def naive_lcp(text: TextLike, i: int, j: int) -> int:
    """Symbol-by-symbol LCP of the 1-based suffixes ``T_i`` and ``T_j``."""
    raw = _raw(text) if not isinstance(text, bytes) else text
    n = len(raw)
    for q in (i, j):
        if not 1 <= q <= n:
            raise InputError(f"position {q} out of range [1,{n}]")
    k = 0
    while i + k <= n and j + k <= n and raw[i + k - 1] == raw[j + k - 1]:
        k += 1
    return k


def naive_sort(text: TextLike, positions: Sequence[int], force: bool = False) -> SparseSuffixArray:
    raw = _raw(text)
    positions = [int(q) for q in positions]
    _check(raw, positions)
    guard(len(raw), len(positions), force)
    # bytes ordering puts a proper prefix first, matching the terminator convention
    sa = sorted(positions, key=lambda q: raw[q - 1 :])
    adj = [naive_lcp(raw, sa[t], sa[t + 1]) for t in range(len(sa) - 1)]
    return SparseSuffixArray(sa=sa, adj_lcp=adj, n=len(raw))


class _TrieNode:
    __slots__ = ("label", "kids", "leaf", "depth")

    def __init__(self, label: tuple[int, ...], depth: int, leaf: int | None = None):
        self.label = label  # symbols, -1 is the terminator
        self.kids: dict[int, _TrieNode] = {}
        self.leaf = leaf
        self.depth = depth


def naive_tree(text: TextLike, positions: Sequence[int], force: bool = False) -> SparseSuffixTree:
    """Insert each suffix (plus terminator) from the root, splitting edges as needed."""
    text = as_text(text)
    raw = text.tobytes()
    positions = [int(q) for q in positions]
    _check(raw, positions)
    guard(len(raw), len(positions), force)
    n = len(raw)
    root = _TrieNode((), 0)
    for q in positions:
        s = tuple(raw[q - 1 :]) + (-1,)
        node, k = root, 0
        while True:
            child = node.kids.get(s[k])
            if child is None:
                node.kids[s[k]] = _TrieNode(s[k:], len(s), leaf=q)
                break
            lab = child.label
            d = 0
            while d < len(lab) and lab[d] == s[k + d]:
                d += 1
            if d == len(lab):
                node, k = child, k + d
                continue
            mid = _TrieNode(lab[:d], node.depth + d)
            child.label = lab[d:]
            mid.kids[child.label[0]] = child
            node.kids[s[k]] = mid
            mid.kids[s[k + d]] = _TrieNode(s[k + d :], len(s), leaf=q)
            break

    def convert(tn: _TrieNode, parent_depth: int) -> SstNode:
        if tn.leaf is not None:
            q = tn.leaf
            start = q + parent_depth
            node = SstNode(length=tn.depth, leaf_pos=q, start=start, end=n, terminal=True)
        else:
            # any leaf below spells the edge; pick the first one found
            below = tn
            while below.leaf is None:
                below = next(iter(below.kids.values()))
            start = below.leaf + parent_depth
            node = SstNode(length=tn.depth, start=start, end=start + len(tn.label) - 1)
        for key in sorted(tn.kids):
            node.children.append(convert(tn.kids[key], tn.depth))
        return node

    tree_root = SstNode(length=0)
    for key in sorted(root.kids):
        tree_root.children.append(convert(root.kids[key], 0))
    return SparseSuffixTree(root=tree_root, b=len(positions), text=text)
