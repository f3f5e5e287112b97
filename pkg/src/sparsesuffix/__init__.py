"""Sparse suffix arrays and trees for chosen text positions in O(b) words.

The core is a batched LCP engine driven by Karp-Rabin fingerprints; sorting
and tree construction only ever talk to the text through it.
"""

from .batched_lcp import LcpBatchResult, PairTracker, batch_lcp, finalize_small, run_round, start_tracker
from .errors import InputError, InvariantError
from .fingerprint import FingerprintContext, Fp, new_context, pow_mod, prefix_extend, substring_fp
from .memory import AuxMeter, track_aux_words
from .sst import SparseSuffixTree, SstNode, build_tree, validate_tree
from .suffix_sort import SparseSuffixArray, compare_after_lcp, sort_suffixes
from .text import Text, as_text

__version__ = "0.1.0"


def sparse_suffix_array(text, positions, *, alpha=2, seed=0, reps=2, verify=False):
    """Sorted suffixes plus adjacent LCPs, with a fingerprint context derived from ``seed``."""
    text = as_text(text)
    ctx = new_context(256, max(1, text.n), seed=seed, reps=reps)
    return sort_suffixes(text, positions, ctx, alpha=alpha, seed=seed, verify=verify)


def sparse_suffix_tree(text, positions, *, alpha=2, seed=0, reps=2, verify=False):
    text = as_text(text)
    return build_tree(text, sparse_suffix_array(text, positions, alpha=alpha, seed=seed, reps=reps, verify=verify))


__all__ = [
    "AuxMeter",
    "FingerprintContext",
    "Fp",
    "InputError",
    "InvariantError",
    "LcpBatchResult",
    "PairTracker",
    "SparseSuffixArray",
    "SparseSuffixTree",
    "SstNode",
    "Text",
    "as_text",
    "batch_lcp",
    "build_tree",
    "compare_after_lcp",
    "finalize_small",
    "new_context",
    "pow_mod",
    "prefix_extend",
    "run_round",
    "sort_suffixes",
    "sparse_suffix_array",
    "sparse_suffix_tree",
    "start_tracker",
    "substring_fp",
    "track_aux_words",
    "validate_tree",
]
