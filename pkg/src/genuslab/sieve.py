"""Numpy sieves: primes, smallest prime factors, squarefree masks, segments."""

from __future__ import annotations

from math import isqrt

import numpy as np


def primes_up_to(n: int) -> np.ndarray:
    """Primes p <= n as int64."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    is_p[4::2] = False
    for p in range(3, isqrt(n) + 1, 2):
        if is_p[p]:
            is_p[p * p :: 2 * p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def spf_table(n: int) -> np.ndarray:
    """spf[k] = least prime factor of k (spf[1] = 1, spf[0] = 0)."""
    spf = np.zeros(n + 1, dtype=np.int32)
    if n >= 1:
        spf[1] = 1
    for p in range(2, isqrt(n) + 1):
        if spf[p] == 0:
            s = spf[p * p :: p]
            s[s == 0] = p
    rest = np.flatnonzero(spf == 0)
    spf[rest[rest >= 2]] = rest[rest >= 2]
    return spf


def squarefree_mask(n: int) -> np.ndarray:
    sq = np.ones(n + 1, dtype=bool)
    sq[0] = False
    for p in primes_up_to(isqrt(n)).tolist():
        sq[p * p :: p * p] = False
    return sq


def segment(lo: int, hi: int, base_primes: np.ndarray | None = None):
    """(is_prime, squarefree) masks for the integers in [lo, hi)."""
    lo = max(lo, 0)
    n = hi - lo
    if n <= 0:
        return np.zeros(0, dtype=bool), np.zeros(0, dtype=bool)
    if base_primes is None:
        base_primes = primes_up_to(isqrt(max(hi - 1, 0)) + 1)
    is_p = np.ones(n, dtype=bool)
    sq = np.ones(n, dtype=bool)
    for p in base_primes.tolist():
        if p * p >= hi:
            break
        start = max(p * p, ((lo + p - 1) // p) * p)
        is_p[start - lo :: p] = False
        p2 = p * p
        start2 = ((lo + p2 - 1) // p2) * p2
        sq[start2 - lo :: p2] = False
    for k in range(lo, min(hi, 2)):
        is_p[k - lo] = False
        if k == 0:
            sq[0] = False
    return is_p, sq


def factor_with_spf(n: int, spf: np.ndarray) -> list[int]:
    """Distinct prime factors of n (n <= len(spf) - 1), ascending."""
    out = []
    while n > 1:
        p = int(spf[n])
        out.append(p)
        while n % p == 0:
            n //= p
    return out
