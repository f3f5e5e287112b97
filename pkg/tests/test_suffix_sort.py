import numpy as np
import pytest

from sparsesuffix import InputError, compare_after_lcp, new_context, sort_suffixes
from sparsesuffix.memory import track_aux_words
from sparsesuffix.oracle import naive_sort
from wordgen import adversarial_texts, random_text


def test_banana_examples(ctx6):
    ssa = sort_suffixes(b"banana", [1, 3, 5], ctx6)
    assert (ssa.sa, ssa.adj_lcp) == ([1, 5, 3], [0, 2])
    assert sort_suffixes(b"banana", range(1, 7), ctx6).sa == [6, 4, 2, 1, 5, 3]


def test_singleton_and_empty(ctx6):
    ssa = sort_suffixes(b"banana", [4], ctx6)
    assert (ssa.sa, ssa.adj_lcp, ssa.levels) == ([4], [], 0)
    assert sort_suffixes(b"banana", [], ctx6).sa == []


@pytest.mark.parametrize(
    "i,j,lcp,want",
    [(4, 2, 3, -1), (1, 3, 0, -1), (2, 4, 3, 1), (6, 4, 1, -1), (3, 5, 2, 1)],
)
def test_compare_after_lcp(i, j, lcp, want):
    assert compare_after_lcp(b"banana", i, j, lcp) == want


def test_compare_rejects_equal_positions():
    with pytest.raises(InputError):
        compare_after_lcp(b"banana", 2, 2, 5)


@pytest.mark.parametrize("positions,msg", [([1, 1], "duplicate position 1"), ([0], "out of range"), ([7], r"position 7 out of range \[1,6\]")])
def test_bad_positions(ctx6, positions, msg):
    with pytest.raises(InputError, match=msg):
        sort_suffixes(b"banana", positions, ctx6)


@pytest.mark.parametrize("alpha", [2, 4, 16])
def test_random_against_oracle(alpha):
    rng = np.random.default_rng(alpha)
    for trial in range(20):
        n = int(rng.integers(1, 600))
        text = random_text(rng, n, int(rng.choice([2, 4, 26, 256])))
        b = int(rng.integers(1, min(n, 80) + 1))
        positions = rng.choice(n, size=b, replace=False) + 1
        ssa = sort_suffixes(text, positions, new_context(256, n, seed=trial), alpha, seed=trial)
        ref = naive_sort(text, positions)
        assert ssa.sa == ref.sa
        assert ssa.adj_lcp == ref.adj_lcp
        assert sorted(ssa.sa) == sorted(positions.tolist())


@pytest.mark.parametrize("name", ["a^n", "(ab)^n/2", "fibonacci", "thue-morse"])
def test_adversarial_all_suffixes(name):
    text = adversarial_texts(200)[name]
    ctx = new_context(256, 200, seed=1)
    ssa = sort_suffixes(text, range(1, 201), ctx, 2, seed=1, debug=True)
    assert ssa.sa == naive_sort(text, range(1, 201)).sa


def test_a_power_n_sorts_short_first():
    ctx = new_context(256, 4)
    assert sort_suffixes(b"aaaa", [1, 2, 3, 4], ctx).sa == [4, 3, 2, 1]


def test_deterministic():
    rng = np.random.default_rng(8)
    text = random_text(rng, 3000, 4)
    positions = rng.choice(3000, 200, replace=False) + 1
    ctx = new_context(256, 3000, seed=2)
    a = sort_suffixes(text, positions, ctx, 2, seed=5)
    b = sort_suffixes(text, positions, new_context(256, 3000, seed=2), 2, seed=5)
    assert (a.sa, a.adj_lcp, a.levels) == (b.sa, b.adj_lcp, b.levels)


def test_level_count_sanity():
    rng = np.random.default_rng(0)
    text = random_text(rng, 4096, 4)
    ctx = new_context(256, 4096)
    worst = 0
    for seed in range(30):
        positions = rng.choice(4096, 256, replace=False) + 1
        worst = max(worst, sort_suffixes(text, positions, ctx, 2, seed=seed).levels)
    assert worst <= 4 * 8


def test_memory_released_and_linear_in_b():
    rng = np.random.default_rng(0)
    text = random_text(rng, 1 << 14, 4)
    peaks = []
    for b in (64, 128, 256):
        positions = rng.choice(1 << 14, b, replace=False) + 1
        with track_aux_words() as meter:
            sort_suffixes(text, positions, new_context(256, 1 << 14), 2)
        assert meter.current == 0
        peaks.append(meter.peak)
    assert peaks[2] < 2.5 * peaks[1] < 6.25 * peaks[0]
