"""Batched longest-common-prefix queries in O(alpha * b) auxiliary words.

Every query pair keeps a current offset into both suffixes and an
uncertainty window ``W``: the true LCP lies in ``[offset, offset + W]``.
A round picks the step ``m = ceil(W / alpha)``, probes the prefixes of length
``m, 2m, .., (alpha-1)m`` of both current suffixes with fingerprints, advances
each pair by the longest probe that matched, and shrinks the window to ``m``.
All fingerprints a round needs come from a single left-to-right scan of the
text that records prefix fingerprints at the requested positions only.

Once ``W <= ceil(n / b)`` the residual LCPs are found by direct comparison,
which costs ``O(n)`` in total over the ``b`` pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterator, Sequence

import numpy as np

from . import _kernels
from .errors import InputError, InvariantError
from .fingerprint import FingerprintContext
from .memory import charge, held, release
from .text import Text, TextLike, as_text

# words per tracked pair: origin, i0, j0, i, j, resolved
TRACKER_WORDS = 6

__all__ = [
    "PairTracker",
    "PositionSet",
    "LcpBatchResult",
    "start_tracker",
    "run_round",
    "finalize_small",
    "batch_lcp",
    "initial_window",
    "round_bound",
]


def initial_window(n: int) -> int:
    """Smallest power of two that is >= n."""
    return 1 << max(0, (n - 1).bit_length())


def round_bound(b: int, alpha: int) -> int:
    """Upper bound on rounds: ``ceil(log2 b / log2 alpha) + 1`` (0 for b <= 1)."""
    if b <= 1:
        return 1
    return math.ceil(math.log2(b) / math.log2(alpha) - 1e-12) + 1


@dataclass
class PairTracker:
    """Struct-of-arrays view of the evolving pair set.

    ``i``/``j`` are current 1-based positions, ``i0``/``j0`` the originals,
    ``resolved`` holds the exact LCP once known and -1 before that.
    """

    origin: np.ndarray
    i0: np.ndarray
    j0: np.ndarray
    i: np.ndarray
    j: np.ndarray
    resolved: np.ndarray
    window: int
    threshold: int
    round: int = 0

    def __len__(self) -> int:
        return int(self.origin.shape[0])

    @property
    def active(self) -> np.ndarray:
        return np.flatnonzero(self.resolved < 0)

    @property
    def offset(self) -> np.ndarray:
        return self.i - self.i0

    @property
    def words(self) -> int:
        return TRACKER_WORDS * len(self)


class PositionSet:
    """Text positions whose prefix fingerprints a round needs.

    Requests are deduplicated into sorted ``keys``; ``slot_of`` maps every
    request back to its key, so pairs asking for the same position share one
    entry. ``fps[r, k]`` receives ``FP[1, keys[k]]`` under repetition ``r``.
    """

    __slots__ = ("keys", "slot_of", "fps")

    def __init__(self, requests: np.ndarray) -> None:
        self.keys, self.slot_of = np.unique(requests, return_inverse=True)
        self.fps: np.ndarray | None = None

    @property
    def words(self) -> int:
        reps = 0 if self.fps is None else self.fps.shape[0]
        return int(self.keys.shape[0] * (1 + reps) + self.slot_of.shape[0])

    def fill(self, text: Text, ctx: FingerprintContext) -> None:
        primes = np.asarray(ctx.primes, dtype=np.int64)
        self.fps = _kernels.scan_prefix_fps(text.data, self.keys, primes, ctx.base)


@dataclass
class LcpBatchResult:
    values: np.ndarray
    rounds: int = 0
    peak_pairs: int = 0

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def __iter__(self) -> Iterator[int]:
        return iter(self.values.tolist())

    def __getitem__(self, k: int) -> int:
        return int(self.values[k])

    def tolist(self) -> list[int]:
        return self.values.tolist()


def _as_pair_arrays(text: Text, pairs) -> tuple[np.ndarray, np.ndarray]:
    arr = np.asarray(pairs, dtype=np.int64)
    if arr.size == 0:
        return np.zeros(0, np.int64), np.zeros(0, np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InputError("pairs must be a sequence of (i, j)")
    bad = (arr < 1) | (arr > text.n)
    if bad.any():
        row, col = np.argwhere(bad)[0]
        raise InputError(f"position {arr[row, col]} out of range [1,{text.n}] (pair {row + 1})")
    return arr[:, 0].copy(), arr[:, 1].copy()


def start_tracker(text: TextLike, pairs: Sequence[tuple[int, int]] | np.ndarray) -> PairTracker:
    """Set up round 0: window ``2**ceil(log2 n)``, threshold ``ceil(n / b)``.

    Pairs with ``i == j`` are resolved immediately to ``n - i + 1``.
    """
    text = as_text(text)
    i, j = _as_pair_arrays(text, pairs)
    b = i.shape[0]
    n = text.n
    resolved = np.full(b, -1, dtype=np.int64)
    same = i == j
    resolved[same] = n - i[same] + 1
    return PairTracker(
        origin=np.arange(b, dtype=np.int64),
        i0=i.copy(),
        j0=j.copy(),
        i=i,
        j=j,
        resolved=resolved,
        window=initial_window(n) if n else 0,
        threshold=max(1, -(-n // max(b, 1))),
    )


def run_round(
    text: TextLike,
    tracker: PairTracker,
    ctx: FingerprintContext,
    alpha: int = 2,
    *,
    truth: np.ndarray | None = None,
) -> PairTracker:
    """One alpha-ary search round over all unresolved pairs.

    Probe lengths are ``t * m`` for ``t = 1 .. alpha-1``, clamped to the
    window and to the shorter remaining suffix. Each pair advances by its
    longest matching probe (all shorter probes must match as well); a pair
    whose clamped probe reaches the end of a suffix is resolved outright.

    Args:
        truth: exact LCPs per origin; when given, the sandwich bound and the
            shift identity ``LCP(i+d, j+d) + d == LCP(i, j)`` are asserted
            after the round.
    """
    text = as_text(text)
    if alpha < 2:
        raise InputError("alpha must be >= 2")
    if tracker.window <= tracker.threshold:
        raise InputError("window already at final-phase threshold")
    n = text.n
    window = tracker.window
    step = -(-window // alpha)
    act = tracker.active
    if act.size == 0:
        return replace(tracker, window=step, round=tracker.round + 1)

    I = tracker.i[act]
    J = tracker.j[act]
    rem = n + 1 - np.maximum(I, J)
    probes = np.minimum(step * np.arange(1, alpha, dtype=np.int64), window)
    lens = np.minimum(probes[None, :], rem[:, None])
    width = lens.shape[1]

    a_start = I - 1
    b_start = J - 1
    a_end = a_start[:, None] + lens
    b_end = b_start[:, None] + lens
    pset = PositionSet(np.concatenate([a_start, b_start, a_end.ravel(), b_end.ravel()]))
    cnt = act.size
    slot_a_start = pset.slot_of[:cnt]
    slot_b_start = pset.slot_of[cnt : 2 * cnt]
    slot_a_end = pset.slot_of[2 * cnt : 2 * cnt + cnt * width]
    slot_b_end = pset.slot_of[2 * cnt + cnt * width :]

    primes = np.asarray(ctx.primes, dtype=np.int64)
    with held(pset.words + ctx.reps * pset.keys.shape[0]):
        pset.fill(text, ctx)
        matched = _kernels.count_matching_probes(
            pset.fps,
            slot_a_start,
            slot_b_start,
            slot_a_end.reshape(cnt, width),
            slot_b_end.reshape(cnt, width),
            lens,
            ctx.pow_table,
            primes,
        )

    rows = np.arange(cnt)
    advance = np.where(matched > 0, lens[rows, np.maximum(matched - 1, 0)], 0)
    done = (matched > 0) & (advance == rem)

    new_i = tracker.i.copy()
    new_j = tracker.j.copy()
    new_res = tracker.resolved.copy()
    new_i[act] += advance
    new_j[act] += advance
    fin = act[done]
    new_res[fin] = new_i[fin] - tracker.i0[fin]

    out = replace(
        tracker, i=new_i, j=new_j, resolved=new_res, window=step, round=tracker.round + 1
    )
    if truth is not None:
        _check_bounds(text, out, truth)
    return out


def _check_bounds(text: Text, tracker: PairTracker, truth: np.ndarray) -> None:
    from .oracle import naive_lcp

    raw = text.tobytes()
    off = tracker.offset
    for k in range(len(tracker)):
        lcp = int(truth[tracker.origin[k]])
        if tracker.resolved[k] >= 0:
            if tracker.resolved[k] != lcp:
                raise InvariantError(
                    f"pair {k}: resolved {tracker.resolved[k]} but LCP is {lcp}"
                )
            continue
        d = int(off[k])
        if tracker.j[k] - tracker.j0[k] != d:
            raise InvariantError(f"pair {k}: unequal advances")
        if not d <= lcp <= d + tracker.window:
            raise InvariantError(
                f"round {tracker.round}, pair {k}: {d} <= {lcp} <= {d + tracker.window} fails"
            )
        shifted = naive_lcp(raw, int(tracker.i[k]), int(tracker.j[k]))
        if shifted + d != lcp:
            raise InvariantError(f"pair {k}: LCP(i+{d}, j+{d}) + {d} != LCP(i, j)")


def finalize_small(text: TextLike, tracker: PairTracker) -> LcpBatchResult:
    """Resolve the remaining pairs by scanning at most ``window`` symbols each."""
    text = as_text(text)
    act = tracker.active
    values = tracker.resolved.copy()
    if act.size:
        I = tracker.i[act]
        J = tracker.j[act]
        rem = text.n + 1 - np.maximum(I, J)
        limit = np.minimum(rem, tracker.window)
        r = _kernels.residual_matches(text.data, I, J, limit)
        values[act] = I + r - tracker.i0[act]
    out = np.empty_like(values)
    out[tracker.origin] = values
    return LcpBatchResult(values=out, rounds=tracker.round)


def _verify_boundaries(text: Text, i: np.ndarray, j: np.ndarray, lcp: np.ndarray) -> None:
    # the reported LCP must stop at a mismatch or at a suffix end
    n = text.n
    ai = i + lcp
    aj = j + lcp
    inside = (ai <= n) & (aj <= n)
    if inside.any():
        si = text.data[ai[inside] - 1]
        sj = text.data[aj[inside] - 1]
        if (si == sj).any():
            k = np.flatnonzero(inside)[np.flatnonzero(si == sj)[0]]
            raise InvariantError(
                f"LCP({i[k]},{j[k]}) = {lcp[k]} is followed by equal symbols"
            )


def batch_lcp(
    text: TextLike,
    pairs: Sequence[tuple[int, int]] | np.ndarray,
    ctx: FingerprintContext,
    alpha: int = 2,
    *,
    verify: bool = False,
    debug: bool = False,
) -> LcpBatchResult:
    """Exact (with high probability) LCP of every pair of 1-based suffixes.

    Args:
        text: the text.
        pairs: ``(i, j)`` positions in ``[1, n]``.
        ctx: fingerprint context; its alphabet must cover the text symbols.
        alpha: search arity; auxiliary space grows as ``alpha * b``, the
            number of rounds as ``log b / log alpha``.
        verify: check that every answer ends at a mismatch or a suffix end.
        debug: compute the answers by brute force first and assert the
            per-round bounds against them.

    Returns:
        An :class:`LcpBatchResult` in input order, with the round count.
    """
    text = as_text(text)
    if alpha < 2:
        raise InputError("alpha must be >= 2")
    tracker = start_tracker(text, pairs)
    b = len(tracker)
    if b == 0:
        return LcpBatchResult(values=np.zeros(0, dtype=np.int64))
    truth = None
    if debug:
        from .oracle import naive_lcp

        raw = text.tobytes()
        truth = np.array(
            [naive_lcp(raw, int(x), int(y)) for x, y in zip(tracker.i0, tracker.j0)],
            dtype=np.int64,
        )
    charge(tracker.words)
    try:
        while tracker.window > tracker.threshold:
            tracker = run_round(text, tracker, ctx, alpha, truth=truth)
        result = finalize_small(text, tracker)
    finally:
        release(tracker.words)
    result.peak_pairs = b
    if verify:
        _verify_boundaries(text, tracker.i0, tracker.j0, result.values)
    if truth is not None and not np.array_equal(truth, result.values):
        k = int(np.flatnonzero(truth != result.values)[0])
        raise InvariantError(f"pair {k}: batch LCP {result.values[k]} != {truth[k]}")
    return result
