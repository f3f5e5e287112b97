"""Compiled inner loops for the batched LCP rounds.

Moduli are bounded by :func:`sparsesuffix.fingerprint.prime_cap` (at most
``2**54``), which keeps ``fp * base + symbol`` below ``2**63``.
"""

import numba
import numpy as np


@numba.njit(cache=True)
def mulmod(a, b, p):
    """``a * b mod p`` for ``0 <= a, b < p <= 2**54``.

    The quotient is estimated in double precision (off by at most a few
    units), the remainder is formed with wrapping unsigned 64-bit products,
    and a short correction loop finishes the job.
    """
    q = np.int64(np.float64(a) * np.float64(b) / np.float64(p))
    r = np.int64(np.uint64(a) * np.uint64(b) - np.uint64(q) * np.uint64(p))
    while r < 0:
        r += p
    while r >= p:
        r -= p
    return r


@numba.njit(cache=True)
def pow_from_table(table, e, p):
    """``base**e mod p`` from ``table[k] = base**(2**k) mod p``."""
    r = 1 % p
    k = 0
    while e:
        if e & 1:
            r = mulmod(r, table[k], p)
        e >>= 1
        k += 1
    return r


@numba.njit(cache=True)
def scan_prefix_fps(data, keys, primes, base):
    """Prefix fingerprints ``FP[1, l]`` for every ``l`` in sorted, unique ``keys``.

    One left-to-right pass over ``data``; stops after the largest key.
    Returns an array of shape ``(reps, len(keys))``.
    """
    reps = primes.shape[0]
    nkeys = keys.shape[0]
    out = np.zeros((reps, nkeys), np.int64)
    fp = np.zeros(reps, np.int64)
    k = 0
    while k < nkeys and keys[k] == 0:
        k += 1
    n = data.shape[0]
    pos = 0
    while k < nkeys and pos < n:
        c = data[pos]
        for r in range(reps):
            fp[r] = (fp[r] * base + c) % primes[r]
        pos += 1
        while k < nkeys and keys[k] == pos:
            for r in range(reps):
                out[r, k] = fp[r]
            k += 1
    return out


@numba.njit(cache=True)
def count_matching_probes(prefix_fps, a_start, b_start, a_end, b_end, lens, pow_table, primes):
    """Per pair, the number of leading probes whose two windows agree under every prime.

    Row ``k`` describes one pair: ``a_start[k]``/``b_start[k]`` are the columns of
    ``FP[1, i-1]``/``FP[1, j-1]`` and ``a_end[k, t]``/``b_end[k, t]`` those of
    ``FP[1, i-1+lens[k, t]]``/``FP[1, j-1+lens[k, t]]``. Counting stops at the
    first disagreeing probe.
    """
    reps = primes.shape[0]
    cnt, width = lens.shape
    out = np.zeros(cnt, np.int64)
    for k in range(cnt):
        t = 0
        while t < width:
            L = lens[k, t]
            same = True
            for r in range(reps):
                p = primes[r]
                pw = pow_from_table(pow_table[r], L, p)
                va = prefix_fps[r, a_end[k, t]] - mulmod(prefix_fps[r, a_start[k]], pw, p)
                vb = prefix_fps[r, b_end[k, t]] - mulmod(prefix_fps[r, b_start[k]], pw, p)
                if va < 0:
                    va += p
                if vb < 0:
                    vb += p
                if va != vb:
                    same = False
                    break
            if not same:
                break
            t += 1
        out[k] = t
    return out


@numba.njit(cache=True)
def residual_matches(data, left, right, limit):
    """Count matching symbols from 1-based ``left[t]``/``right[t]``, at most ``limit[t]``."""
    m = left.shape[0]
    out = np.zeros(m, np.int64)
    for t in range(m):
        a = left[t] - 1
        b = right[t] - 1
        c = 0
        lim = limit[t]
        while c < lim and data[a + c] == data[b + c]:
            c += 1
        out[t] = c
    return out
