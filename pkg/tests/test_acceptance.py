"""Exit criteria, each at its stated tolerance; one PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -s``.
"""

import math
import statistics

import numpy as np
import pytest

from sparsesuffix import batch_lcp, build_tree, new_context, sort_suffixes, validate_tree
from sparsesuffix.bench import random_instance, run_cell
from sparsesuffix.cli import main
from sparsesuffix.errors import InvariantError
from sparsesuffix.oracle import naive_lcp, naive_sort, naive_tree
from sparsesuffix.sst import tree_shape
from wordgen import adversarial_texts, random_text

SEEDS = range(100)
LENGTHS = (64, 512, 4096)
ALPHABETS = (2, 4, 26, 256)
ALPHAS = (2, 4, 16)

# every bench row produced in this module, for the round-count criterion
BENCH_ROWS = []


def test_lcp_oracle_equivalence(report):
    mismatches = checked = 0
    for seed in SEEDS:
        for n in LENGTHS:
            b = min(256, n // 2)
            for sigma in ALPHABETS:
                rng = np.random.default_rng([seed, n, sigma])
                text = random_text(rng, n, sigma)
                pairs = rng.integers(1, n + 1, size=(b, 2))
                want = [naive_lcp(text, int(i), int(j)) for i, j in pairs]
                ctx = new_context(256, n, seed=seed, reps=2)
                for alpha in ALPHAS:
                    got = batch_lcp(text, pairs, ctx, alpha).tolist()
                    mismatches += sum(g != w for g, w in zip(got, want))
                    checked += b
    ok = report("LCP oracle equivalence", mismatches == 0, f"{mismatches} mismatches over {checked} pairs")
    assert ok


def test_sort_oracle_equivalence(report):
    mismatches = runs = 0
    for seed in SEEDS:
        for n in LENGTHS:
            b = min(256, n // 2)
            texts = {
                f"sigma={s}": random_text(np.random.default_rng([seed, n, s, 1]), n, s) for s in ALPHABETS
            }
            if seed < 5:
                texts.update(adversarial_texts(n))
            for name, text in texts.items():
                rng = np.random.default_rng([seed, n, len(name)])
                positions = rng.choice(n, size=b, replace=False) + 1
                ref = naive_sort(text, positions)
                ctx = new_context(256, n, seed=seed, reps=2)
                for alpha in ALPHAS:
                    got = sort_suffixes(text, positions, ctx, alpha, seed=seed)
                    runs += 1
                    mismatches += (got.sa != ref.sa) or (got.adj_lcp != ref.adj_lcp)
    ok = report("sort oracle equivalence (incl. adversarial words)", mismatches == 0, f"{mismatches} mismatching runs of {runs}")
    assert ok


def test_tree_oracle_equivalence(report):
    bad = runs = 0
    for seed in SEEDS:
        rng = np.random.default_rng([seed, 7])
        n = int(rng.integers(1, 513))
        sigma = int(rng.choice(ALPHABETS))
        text = random_text(rng, n, sigma) if seed % 10 else adversarial_texts(n)["fibonacci"]
        b = int(rng.integers(1, min(n, 64) + 1))
        positions = rng.choice(n, size=b, replace=False) + 1
        ssa = sort_suffixes(text, positions, new_context(256, n, seed=seed), 2, seed=seed)
        tree = build_tree(text, ssa)
        runs += 1
        if validate_tree(tree, text, ssa) or tree_shape(tree) != tree_shape(naive_tree(text, positions)):
            bad += 1
    ok = report("tree oracle equivalence + validate_tree", bad == 0, f"{bad} bad trees of {runs}")
    assert ok


def test_space_claim(report):
    b = 1024
    peaks = {}
    for n in (1 << 16, 1 << 18, 1 << 20):
        for alpha in (2, 16):
            row = run_cell(n, b, alpha, seed=1)
            BENCH_ROWS.append(row)
            peaks[n, alpha] = row.peak_aux_words
    at2 = [peaks[n, 2] for n in (1 << 16, 1 << 18, 1 << 20)]
    spread = (max(at2) - min(at2)) / min(at2)
    ratios = [peaks[n, 16] / peaks[n, 2] for n in (1 << 16, 1 << 18, 1 << 20)]
    ok_n = report("space: peak words flat in n (alpha=2, b=1024)", spread < 0.05, f"peaks {at2}, spread {spread:.2%} < 5%")
    ok_a = report(
        "space: alpha=16 within (1x, 16x] of alpha=2",
        all(1 < r <= 16 for r in ratios),
        "ratios " + ", ".join(f"{r:.2f}" for r in ratios),
    )
    assert ok_n and ok_a


def test_time_scaling(report):
    b = 1024
    medians = {}
    for n in (1 << 20, 1 << 21, 1 << 22):
        runs = []
        for _ in range(5):
            row = run_cell(n, b, 2, seed=3)
            BENCH_ROWS.append(row)
            runs.append(row.wall_ms)
        medians[n] = statistics.median(runs)
    growth = [medians[1 << 21] / medians[1 << 20], medians[1 << 22] / medians[1 << 21]]
    ok = report(
        "time scaling: build-tree growth per doubling of n <= 2.5",
        all(g <= 2.5 for g in growth),
        f"median ms {[round(medians[k]) for k in sorted(medians)]}, growth {[round(g, 2) for g in growth]}",
    )
    assert ok


def test_round_count(report):
    for alpha in (2, 3, 4, 8, 16):
        for b in (2, 17, 256, 1024):
            BENCH_ROWS.append(run_cell(1 << 16, b, alpha, seed=b))
    BENCH_ROWS.append(run_cell(1 << 16, 1, 2, seed=0))
    violations = []
    for row in BENCH_ROWS:
        if row.b <= 1:
            limit = 0
        else:
            limit = math.ceil(math.log2(row.b) / math.log2(row.alpha) - 1e-12) + 1
        if row.rounds > limit:
            violations.append((row.n, row.b, row.alpha, row.rounds, limit))
    ok = report("round count <= ceil(log2 b / log2 alpha) + 1", not violations, f"{len(BENCH_ROWS)} bench runs, violations {violations}")
    assert ok


def test_round_invariants(report):
    failures = []
    runs = 0
    for seed in range(30):
        for n in (64, 512):
            for sigma in ALPHABETS:
                rng = np.random.default_rng([seed, n, sigma, 2])
                text = random_text(rng, n, sigma)
                ctx = new_context(256, n, seed=seed)
                for alpha in ALPHAS:
                    try:
                        batch_lcp(text, rng.integers(1, n + 1, size=(n // 2, 2)), ctx, alpha, debug=True)
                        positions = rng.choice(n, size=min(64, n // 2), replace=False) + 1
                        sort_suffixes(text, positions, ctx, alpha, seed=seed, debug=True)
                    except InvariantError as exc:
                        failures.append(str(exc))
                    runs += 1
    for name, text in adversarial_texts(512).items():
        for alpha in ALPHAS:
            try:
                sort_suffixes(text, range(1, 513, 3), new_context(256, 512), alpha, debug=True)
            except InvariantError as exc:
                failures.append(f"{name}: {exc}")
            runs += 1
    ok = report("round invariants: shift identity and sandwich bound every round", not failures, f"{runs} debug runs, failures {failures[:3]}")
    assert ok


def test_determinism(report, tmp_path, capsys):
    text, positions = random_instance(5000, 300, seed=9)
    (tmp_path / "t.bin").write_bytes(text.tobytes())
    (tmp_path / "pos.txt").write_text("\n".join(map(str, positions.tolist())) + "\n")
    pairs = np.random.default_rng(9).integers(1, 5001, size=(200, 2))
    (tmp_path / "pairs.txt").write_text("".join(f"{i} {j}\n" for i, j in pairs))
    common = ["--text", str(tmp_path / "t.bin"), "--positions", str(tmp_path / "pos.txt"), "--seed", "4"]
    commands = {
        "build-sa": ["build-sa", *common],
        "build-sa-csv": ["build-sa", *common, "--format", "csv", "--alpha", "4"],
        "build-tree": ["build-tree", *common],
        "build-tree-dot": ["build-tree", *common, "--format", "dot", "--alpha", "16"],
        "lcp": ["lcp", *common, "--pairs", str(tmp_path / "pairs.txt")],
        "verify": ["verify", *common, "--pairs", str(tmp_path / "pairs.txt")],
        "bench": ["bench", "--n", "8192,16384", "--b", "128", "--alpha", "2,16", "--no-timing"],
    }
    differing = []
    for name, argv in commands.items():
        outputs = []
        for k in range(2):
            code = main(argv + ["--out", str(tmp_path / f"{name}.{k}")] if name != "verify" else argv)
            if name == "verify":
                outputs.append(capsys.readouterr().out.encode())
            else:
                outputs.append((tmp_path / f"{name}.{k}").read_bytes())
            assert code == 0
        if outputs[0] != outputs[1] or not outputs[0]:
            differing.append(name)
    ok = report("determinism: repeated commands are byte-identical", not differing, f"{len(commands)} commands, differing {differing}")
    assert ok
