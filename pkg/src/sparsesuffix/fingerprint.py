"""Karp-Rabin fingerprints of text substrings.

``FP[1, l]`` denotes the fingerprint of the length-``l`` prefix of the text,
``sum(t_k * base**(l - k) for k in 1..l) mod p``. The fingerprint of
``t_{a+1} .. t_b`` follows from two prefix fingerprints and one power of the
base, so a left-to-right scan that records prefix fingerprints at a handful
of positions is enough to compare arbitrary windows.

Several independent primes (repetitions) can be carried at once; two
substrings are declared equal only if they agree under every prime.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .primes import is_probable_prime, random_prime

DEFAULT_SIGMA = 256
DEFAULT_REPS = 2
PRIME_FLOOR = 1 << 30

__all__ = [
    "Fp",
    "FingerprintContext",
    "new_context",
    "prime_cap",
    "prefix_extend",
    "substring_fp",
    "pow_mod",
    "fingerprint_of",
]


def prime_cap(sigma: int) -> int:
    """Largest admissible modulus for alphabet size ``sigma``.

    The scan kernel computes ``fp * sigma + symbol`` and the window kernel
    multiplies in base-256 limbs, both in signed 64-bit integers.
    """
    return min(1 << 54, (1 << 62) // sigma)


@dataclass(frozen=True)
class Fp:
    """A fingerprint value under repetition ``rep`` of its context."""

    value: int
    rep: int = 0


@dataclass(frozen=True, eq=False)
class FingerprintContext:
    primes: tuple[int, ...]
    base: int
    n: int
    seed: int
    pow_cache: tuple[dict[int, int], ...] = field(repr=False)
    # pow_table[r, k] = base**(2**k) mod primes[r], read by the compiled kernels
    pow_table: np.ndarray = field(repr=False, default=None)

    @property
    def p(self) -> int:
        return self.primes[0]

    @property
    def reps(self) -> int:
        return len(self.primes)

    def same_as(self, other: "FingerprintContext") -> bool:
        return (self.primes, self.base, self.n, self.seed) == (
            other.primes,
            other.base,
            other.n,
            other.seed,
        )


def new_context(
    sigma: int = DEFAULT_SIGMA,
    n: int = 1,
    seed: int = 0,
    reps: int = DEFAULT_REPS,
    *,
    primes: tuple[int, ...] | None = None,
) -> FingerprintContext:
    """Build a fingerprint context for texts of length ``n`` over ``sigma`` symbols.

    Each repetition draws a prime uniformly from ``[q, 2q)`` with
    ``q = max(sigma, n)**2`` raised to at least ``2**30``. When that range
    would pass :func:`prime_cap`, primes are drawn just below the cap and one
    extra repetition is added.

    Args:
        sigma: alphabet size; symbols are ``0 .. sigma-1``.
        n: text length.
        seed: RNG seed; identical arguments give identical contexts.
        reps: number of independent primes.
        primes: explicit moduli, bypassing the random draw. Meant for tests
            and for deliberately weak debug contexts.
    """
    if sigma < 2:
        raise InputError("sigma must be >= 2")
    if n < 1:
        raise InputError("n must be >= 1")
    if reps < 1:
        raise InputError("reps must be >= 1")
    if primes is not None:
        primes = tuple(int(p) for p in primes)
        if not primes or any(not is_probable_prime(p) for p in primes):
            raise InputError(f"explicit moduli must be primes: {primes}")
        if any(p > prime_cap(sigma) for p in primes):
            raise InputError("explicit modulus exceeds the 64-bit kernel cap")
    else:
        rng = random.Random(f"fingerprint:{seed}:{n}:{sigma}:{reps}")
        lo = max(max(sigma, n) ** 2, PRIME_FLOOR)
        hi = 2 * lo
        cap = prime_cap(sigma)
        if hi > cap:
            lo, hi = cap // 2, cap
            reps += 1
        chosen: list[int] = []
        for _ in range(reps):
            chosen.append(random_prime(lo, hi, rng, exclude=frozenset(chosen)))
        primes = tuple(chosen)
    table = np.empty((len(primes), 64), dtype=np.int64)
    for r, p in enumerate(primes):
        v = sigma % p
        for k in range(64):
            table[r, k] = v
            v = v * v % p
    table.flags.writeable = False
    return FingerprintContext(
        primes=primes,
        base=sigma,
        n=n,
        seed=seed,
        pow_cache=tuple({0: 1, 1: sigma % p} for p in primes),
        pow_table=table,
    )


def pow_mod(ctx: FingerprintContext, e: int, rep: int = 0) -> int:
    """``base**e mod p`` for repetition ``rep``, memoised on the context."""
    if e < 0:
        raise InputError("exponent must be >= 0")
    cache = ctx.pow_cache[rep]
    v = cache.get(e)
    if v is None:
        v = pow(ctx.base, e, ctx.primes[rep])
        cache[e] = v
    return v


def prefix_extend(fp: Fp, symbol: int, ctx: FingerprintContext) -> Fp:
    """Extend a prefix fingerprint by one symbol: ``(fp * base + symbol) mod p``."""
    if not 0 <= symbol < ctx.base:
        raise InputError(f"symbol {symbol} outside alphabet [0,{ctx.base})")
    p = ctx.primes[fp.rep]
    return Fp((fp.value * ctx.base + symbol) % p, fp.rep)


def substring_fp(fp_a: Fp, fp_b: Fp, a: int, b: int, ctx: FingerprintContext) -> Fp:
    """Fingerprint of ``t_{a+1} .. t_b`` from ``FP[1, a]`` and ``FP[1, b]``.

    The empty window (``a == b``) has fingerprint 0.
    """
    if a > b:
        raise InputError(f"window start {a} after end {b}")
    if a < 0:
        raise InputError("window start must be >= 0")
    if fp_a.rep != fp_b.rep:
        raise InputError("fingerprints belong to different repetitions")
    rep = fp_a.rep
    p = ctx.primes[rep]
    return Fp((fp_b.value - fp_a.value * pow_mod(ctx, b - a, rep)) % p, rep)


def fingerprint_of(symbols, ctx: FingerprintContext, rep: int = 0) -> Fp:
    """Fold a whole symbol sequence with :func:`prefix_extend`."""
    fp = Fp(0, rep)
    for s in symbols:
        fp = prefix_extend(fp, int(s), ctx)
    return fp
