"""Grid benchmark: build the sparse suffix tree on random inputs and measure it."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import asdict, dataclass

import numpy as np

from .fingerprint import new_context
from .memory import track_aux_words
from .sst import build_tree
from .suffix_sort import sort_suffixes
from .text import Text

CSV_FIELDS = ("n", "b", "alpha", "rounds", "wall_ms", "peak_aux_words")


@dataclass
class BenchRow:
    n: int
    b: int
    alpha: int
    rounds: int
    wall_ms: float
    peak_aux_words: int


def random_instance(n: int, b: int, seed: int, sigma: int = 4) -> tuple[Text, np.ndarray]:
    rng = np.random.default_rng(seed)
    text = Text(rng.integers(0, sigma, size=n, dtype=np.uint8))
    positions = rng.choice(n, size=b, replace=False).astype(np.int64) + 1
    return text, positions


def run_cell(n: int, b: int, alpha: int, seed: int = 0, reps: int = 2, sigma: int = 4) -> BenchRow:
    """One sort + tree build; ``rounds`` is the largest round count of any batched call."""
    text, positions = random_instance(n, b, seed, sigma)
    ctx = new_context(256, n, seed=seed, reps=reps)
    with track_aux_words() as meter:
        t0 = time.perf_counter()
        ssa = sort_suffixes(text, positions, ctx, alpha=alpha, seed=seed)
        build_tree(text, ssa)
        wall = time.perf_counter() - t0
    return BenchRow(n, b, alpha, ssa.max_rounds, round(wall * 1000, 3), meter.peak)


def rows_to_csv(rows: list[BenchRow], timing: bool = True) -> str:
    fields = [f for f in CSV_FIELDS if timing or f != "wall_ms"]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow(asdict(row))
    return buf.getvalue()
