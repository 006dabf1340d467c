"""Small sieve helpers shared by the stream builders and the prime-floor counts."""

from __future__ import annotations

import math

import numpy as np


def prime_sieve(limit: int) -> np.ndarray:
    """All primes ``<= limit`` as an int64 array."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def primes_in_interval(lo: float, hi: float) -> np.ndarray:
    """Primes p with ``lo <= p <= hi`` (real endpoints, closed interval)."""
    top = math.floor(hi)
    ps = prime_sieve(top)
    return ps[ps >= lo]


def count_primes_in_interval(lo: float, hi: float) -> int:
    return int(primes_in_interval(lo, hi).size)


def prime_divisors(n: int) -> list[int]:
    out = []
    m = abs(n)
    p = 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out.append(m)
    return out


def is_squarefree(n: int) -> bool:
    m = abs(n)
    p = 2
    while p * p <= m:
        if m % (p * p) == 0:
            return False
        if m % p == 0:
            m //= p
        p += 1 if p == 2 else 2
    return True


def squarefree_mask(limit: int) -> np.ndarray:
    """Boolean mask ``mask[n]`` true iff n is square-free (index 0 is False)."""
    mask = np.ones(limit + 1, dtype=bool)
    mask[0] = False
    for p in prime_sieve(math.isqrt(limit)):
        mask[p * p :: p * p] = False
    return mask


def coprime_mask(limit: int, primes) -> np.ndarray:
    """``mask[n]`` true iff n is coprime to every prime in ``primes``."""
    mask = np.ones(limit + 1, dtype=bool)
    mask[0] = False
    for p in primes:
        mask[int(p) :: int(p)] = False
    return mask
