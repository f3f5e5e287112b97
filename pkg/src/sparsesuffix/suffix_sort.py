"""Sparse suffix array by level-synchronous randomized quicksort.

All pivot comparisons of one recursion level, across every open segment, go
into a single batched LCP call. The order lives in one array that is
partitioned in place, and open segments are kept as ``(start, stop)`` bounds
on a worklist, so the working space stays ``O(b)`` words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .batched_lcp import batch_lcp
from .errors import InputError
from .fingerprint import FingerprintContext
from .memory import charge, held, release
from .text import Text, TextLike, as_text


@dataclass
class SparseSuffixArray:
    """Chosen positions in suffix order plus LCPs of neighbouring entries."""

    sa: list[int]
    adj_lcp: list[int]
    n: int
    levels: int = field(default=0, compare=False)
    max_rounds: int = field(default=0, compare=False)

    def __len__(self) -> int:
        return len(self.sa)


@dataclass
class PartitionLevel:
    """Open segments of one recursion level: ``(start, stop, pivot_index)``."""

    segments: list[tuple[int, int, int]]

    @property
    def comparisons(self) -> int:
        return sum(stop - start - 1 for start, stop, _ in self.segments)


def compare_after_lcp(text: TextLike, i: int, j: int, lcp: int) -> int:
    """Order of ``T_i`` and ``T_j`` given their LCP: -1 if ``T_i`` is smaller, else 1.

    A suffix that ends inside the common prefix is the smaller one.
    """
    text = as_text(text)
    if i == j:
        raise InputError("compare_after_lcp needs distinct positions")
    n = text.n
    if i + lcp > n:
        return -1
    if j + lcp > n:
        return 1
    return -1 if text.data[i + lcp - 1] < text.data[j + lcp - 1] else 1


def _smaller_mask(text: Text, i: np.ndarray, j: np.ndarray, lcp: np.ndarray) -> np.ndarray:
    n = text.n
    ai = i + lcp
    aj = j + lcp
    out = ai > n
    both = ~out & (aj <= n)
    out[both] = text.data[ai[both] - 1] < text.data[aj[both] - 1]
    return out


def validate_positions(text: Text, positions: Sequence[int]) -> np.ndarray:
    arr = np.asarray(list(positions), dtype=np.int64)
    if arr.size:
        bad = np.flatnonzero((arr < 1) | (arr > text.n))
        if bad.size:
            raise InputError(f"position {arr[bad[0]]} out of range [1,{text.n}]")
        uniq, counts = np.unique(arr, return_counts=True)
        if (counts > 1).any():
            raise InputError(f"duplicate position {uniq[counts > 1][0]}")
    return arr


def sort_suffixes(
    text: TextLike,
    positions: Sequence[int],
    ctx: FingerprintContext,
    alpha: int = 2,
    seed: int = 0,
    *,
    verify: bool = False,
    debug: bool = False,
) -> SparseSuffixArray:
    """Sort the suffixes starting at ``positions`` and attach adjacent LCPs.

    Pivots are drawn uniformly per segment from a generator seeded by
    ``seed``; members of each segment keep their relative order inside the
    two partitions, so a fixed seed and context give a fixed result.
    """
    text = as_text(text)
    order = validate_positions(text, positions).copy()
    b = order.shape[0]
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0x5017,)))
    charge(b)
    levels = 0
    max_rounds = 0
    try:
        open_segments = [(0, b)] if b > 1 else []
        while open_segments:
            level = PartitionLevel(
                [(s, e, int(rng.integers(s, e))) for s, e in open_segments]
            )
            levels += 1
            members = []
            pivots = []
            for s, e, piv in level.segments:
                idx = np.concatenate([np.arange(s, piv), np.arange(piv + 1, e)])
                members.append(idx)
                pivots.append(np.full(idx.shape[0], piv, dtype=np.int64))
            member_idx = np.concatenate(members)
            pivot_idx = np.concatenate(pivots)
            words = 3 * len(level.segments) + 2 * member_idx.shape[0]
            with held(words):
                x = order[member_idx]
                y = order[pivot_idx]
                res = batch_lcp(text, np.stack([x, y], axis=1), ctx, alpha, verify=verify, debug=debug)
                max_rounds = max(max_rounds, res.rounds)
                smaller = _smaller_mask(text, x, y, res.values)

                next_segments = []
                cursor = 0
                for s, e, piv in level.segments:
                    k = e - s - 1
                    seg_x = x[cursor : cursor + k]
                    seg_small = smaller[cursor : cursor + k]
                    cursor += k
                    pivot_pos = order[piv]
                    lo = seg_x[seg_small]
                    hi = seg_x[~seg_small]
                    order[s : s + lo.shape[0]] = lo
                    order[s + lo.shape[0]] = pivot_pos
                    order[s + lo.shape[0] + 1 : e] = hi
                    if lo.shape[0] > 1:
                        next_segments.append((s, s + lo.shape[0]))
                    if hi.shape[0] > 1:
                        next_segments.append((s + lo.shape[0] + 1, e))
            open_segments = next_segments

        if b > 1:
            with held(2 * (b - 1)):
                adj = batch_lcp(
                    text, np.stack([order[:-1], order[1:]], axis=1), ctx, alpha, verify=verify, debug=debug
                )
            max_rounds = max(max_rounds, adj.rounds)
            adj_lcp = adj.tolist()
        else:
            adj_lcp = []
    finally:
        release(b)
    return SparseSuffixArray(
        sa=order.tolist(), adj_lcp=adj_lcp, n=text.n, levels=levels, max_rounds=max_rounds
    )
