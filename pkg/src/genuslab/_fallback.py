"""Pure-Python / numpy versions of the compiled kernels.

Same signatures and results as ``genuslab._kernels``; selected when the
extension is not built or when ``GENUSLAB_PURE=1``.
"""

from math import gcd, isqrt

import numpy as np


def _xrange(a, b, c, y, N, absd):
    """Closed interval of x with f(x, y) <= N, or None."""
    if N < 0:
        return None
    disc = 4 * a * N - absd * y * y
    if disc < 0:
        return None
    s = isqrt(disc)
    f = lambda x: a * x * x + b * x * y + c * y * y
    lo = (-b * y - s) // (2 * a)
    hi = (-b * y + s) // (2 * a) + 1
    while f(lo) > N:
        lo += 1
    while f(lo - 1) <= N:
        lo -= 1
    while hi >= lo and f(hi) > N:
        hi -= 1
    while f(hi + 1) <= N:
        hi += 1
    return (lo, hi) if hi >= lo else None


def fill_represented(a, b, c, lo, hi, primitive, out):
    """Set out[n - lo] = 1 for every n in [lo, hi) with n = f(x, y), (x, y) != 0."""
    a, b, c, lo, hi = int(a), int(b), int(c), int(lo), int(hi)
    absd = 4 * a * c - b * b
    if hi <= lo or hi <= 1:
        return
    lo_eff = max(lo, 1)
    ymax = isqrt(4 * a * (hi - 1) // absd) + 1
    for y in range(ymax + 1):
        outer = _xrange(a, b, c, y, hi - 1, absd)
        if outer is None:
            continue
        x1, x2 = outer
        if y == 0:
            x1 = max(x1, 1)
        inner = _xrange(a, b, c, y, lo_eff - 1, absd)
        if inner is None:
            pieces = [(x1, x2)]
        else:
            pieces = [(x1, min(inner[0] - 1, x2)), (max(inner[1] + 1, x1), x2)]
        for s, e in pieces:
            if e < s:
                continue
            x = np.arange(s, e + 1, dtype=np.int64)
            if primitive:
                x = x[np.gcd(x, y) == 1]
            v = a * x * x + b * x * y + c * y * y
            out[v - lo] = 1


def sqrt_mod_prime(n, p):
    """Tonelli-Shanks for odd prime p; -1 if n is a non-residue."""
    n %= p
    if n == 0:
        return 0
    if pow(n, (p - 1) // 2, p) != 1:
        return -1
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, cc, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        bb = pow(cc, 1 << (m - i - 1), p)
        m, cc = i, bb * bb % p
        t, r = t * cc % p, r * bb % p
    return r


def _reduce(a, b, c):
    while True:
        if b > a or b <= -a:
            k = (a - b) // (2 * a)
            c = a * k * k + b * k + c
            b = b + 2 * a * k
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return a, b, c


def _prime_form(D, p):
    dpar = D & 1
    if p == 2:
        for k in range(4):
            if (k * k - D) % 8 == 0 and (k & 1) == dpar:
                if gcd(gcd(2, k), (k * k - D) // 8) == 1:
                    return (0 if D % 4 == 0 else 1), k
        return -1, -1
    r = D % p
    if r == 0:
        status, bb = 0, 0
    else:
        bb = sqrt_mod_prime(r, p)
        if bb < 0:
            return -1, -1
        status = 1
    if (bb & 1) != dpar:
        bb = p - bb
    if gcd(gcd(p, bb), (bb * bb - D) // (4 * p)) != 1:
        return -1, -1
    return status, bb


def prime_forms(D, primes):
    """Reduced form (a, b, c) of a prime form of norm p for each p, plus status."""
    D = int(D)
    n = len(primes)
    A = np.zeros(n, dtype=np.int64)
    B = np.zeros(n, dtype=np.int64)
    C = np.zeros(n, dtype=np.int64)
    S = np.full(n, -1, dtype=np.int8)
    for i, p in enumerate(np.asarray(primes).tolist()):
        status, bb = _prime_form(D, p)
        S[i] = status
        if status >= 0:
            A[i], B[i], C[i] = _reduce(p, bb, (bb * bb - D) // (4 * p))
    return A, B, C, S


def residue_sieve_count(Y, moduli, residues):
    """Count 1 <= n < Y with n mod moduli[j] != residues[j] for all j."""
    Y = int(Y)
    if Y <= 1:
        return 0
    marks = np.zeros(Y, dtype=bool)
    for ell, r in zip(np.asarray(moduli).tolist(), np.asarray(residues).tolist()):
        r %= ell
        marks[(r if r >= 1 else ell)::ell] = True
    return int(Y - 1 - np.count_nonzero(marks[1:]))
