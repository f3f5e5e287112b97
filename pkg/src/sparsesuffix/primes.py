"""Miller-Rabin primality testing and random prime selection."""

from __future__ import annotations

import random

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_probable_prime(n: int, rounds: int = 40, rng: random.Random | None = None) -> bool:
    """Miller-Rabin test with ``rounds`` random witnesses.

    Composite inputs are reported prime with probability at most ``4**-rounds``.
    Witnesses come from ``rng`` (a fixed-seed generator by default) so the
    answer is reproducible.
    """
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    if rng is None:
        rng = random.Random(n)
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(lo: int, hi: int, rng: random.Random, exclude: frozenset[int] = frozenset()) -> int:
    """Draw a prime uniformly from ``[lo, hi)`` by rejection sampling.

    Bertrand's postulate guarantees a prime whenever ``hi >= 2 * lo``.
    """
    if hi <= lo:
        raise ValueError(f"empty prime range [{lo}, {hi})")
    while True:
        c = rng.randrange(lo, hi)
        if c not in exclude and is_probable_prime(c):
            return c
