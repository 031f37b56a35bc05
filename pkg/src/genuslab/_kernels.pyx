# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops. Semantics mirror ``_fallback`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

ctypedef long long i64


cdef inline i64 _isqrt(i64 n) noexcept nogil:
    cdef i64 r
    if n < 0:
        return -1
    r = <i64>sqrt(<double>n)
    while r > 0 and r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


cdef inline i64 _fdiv(i64 a, i64 b) noexcept nogil:
    # floor division, b > 0
    cdef i64 q = a / b
    if (a % b != 0) and (a < 0):
        q -= 1
    return q


cdef inline i64 _gcd(i64 a, i64 b) noexcept nogil:
    cdef i64 t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline i64 _fval(i64 a, i64 b, i64 c, i64 x, i64 y) noexcept nogil:
    return a * x * x + b * x * y + c * y * y


cdef inline bint _xrange(i64 a, i64 b, i64 c, i64 y, i64 N, i64 absd,
                         i64 *lo, i64 *hi) noexcept nogil:
    """Integer x with f(x, y) <= N, as a closed interval. False if empty."""
    cdef i64 disc, s, l, h
    if N < 0:
        return False
    disc = 4 * a * N - absd * y * y
    if disc < 0:
        return False
    s = _isqrt(disc)
    l = _fdiv(-b * y - s, 2 * a)
    h = _fdiv(-b * y + s, 2 * a) + 1
    while _fval(a, b, c, l, y) > N:
        l += 1
    while _fval(a, b, c, l - 1, y) <= N:
        l -= 1
    while h >= l and _fval(a, b, c, h, y) > N:
        h -= 1
    while _fval(a, b, c, h + 1, y) <= N:
        h += 1
    if h < l:
        return False
    lo[0] = l
    hi[0] = h
    return True


def fill_represented(i64 a, i64 b, i64 c, i64 lo, i64 hi, bint primitive,
                     cnp.uint8_t[::1] out):
    """Set out[n - lo] = 1 for every n in [lo, hi) with n = f(x, y), (x, y) != 0."""
    cdef i64 absd = 4 * a * c - b * b
    cdef i64 y, ymax, x, x1, x2, x3, x4, v, lo_eff, e1, s2
    cdef bint has_inner
    if hi <= lo or hi <= 1:
        return
    lo_eff = lo if lo >= 1 else 1
    ymax = _isqrt((4 * a * (hi - 1)) // absd) + 1
    with nogil:
        y = 0
        while y <= ymax:
            if _xrange(a, b, c, y, hi - 1, absd, &x1, &x2):
                if y == 0 and x1 < 1:
                    x1 = 1
                has_inner = _xrange(a, b, c, y, lo_eff - 1, absd, &x3, &x4)
                if has_inner:
                    e1 = x3 - 1 if x3 - 1 < x2 else x2
                    s2 = x4 + 1 if x4 + 1 > x1 else x1
                else:
                    e1 = x2
                    s2 = x2 + 1
                x = x1
                while x <= e1:
                    if (not primitive) or _gcd(x, y) == 1:
                        v = _fval(a, b, c, x, y)
                        out[v - lo] = 1
                    x += 1
                x = s2
                while x <= x2:
                    if (not primitive) or _gcd(x, y) == 1:
                        v = _fval(a, b, c, x, y)
                        out[v - lo] = 1
                    x += 1
            y += 1


cdef inline i64 _mulmod(i64 a, i64 b, i64 m) noexcept nogil:
    return (a * b) % m


cdef i64 _powmod(i64 b, i64 e, i64 m) noexcept nogil:
    cdef i64 r = 1
    b %= m
    if b < 0:
        b += m
    while e > 0:
        if e & 1:
            r = _mulmod(r, b, m)
        b = _mulmod(b, b, m)
        e >>= 1
    return r


cdef i64 _sqrt_mod_prime(i64 n, i64 p) noexcept nogil:
    """Tonelli-Shanks; n a nonzero QR mod odd p. Returns -1 for a non-residue."""
    cdef i64 q, s, z, m, cc, t, r, i, t2, bb, j
    n %= p
    if n < 0:
        n += p
    if n == 0:
        return 0
    if _powmod(n, (p - 1) // 2, p) != 1:
        return -1
    if p % 4 == 3:
        return _powmod(n, (p + 1) // 4, p)
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while _powmod(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m = s
    cc = _powmod(z, q, p)
    t = _powmod(n, q, p)
    r = _powmod(n, (q + 1) // 2, p)
    while t != 1:
        i = 0
        t2 = t
        while t2 != 1:
            t2 = _mulmod(t2, t2, p)
            i += 1
        bb = cc
        j = 0
        while j < m - i - 1:
            bb = _mulmod(bb, bb, p)
            j += 1
        m = i
        cc = _mulmod(bb, bb, p)
        t = _mulmod(t, cc, p)
        r = _mulmod(r, bb, p)
    return r


cdef inline void _reduce(i64 *a, i64 *b, i64 *c) noexcept nogil:
    cdef i64 k, t
    while True:
        if b[0] > a[0] or b[0] <= -a[0]:
            k = _fdiv(a[0] - b[0], 2 * a[0])
            c[0] = a[0] * k * k + b[0] * k + c[0]
            b[0] = b[0] + 2 * a[0] * k
        if a[0] > c[0]:
            t = a[0]
            a[0] = c[0]
            c[0] = t
            b[0] = -b[0]
            continue
        if a[0] == c[0] and b[0] < 0:
            b[0] = -b[0]
        return


def prime_forms(i64 D, cnp.int64_t[::1] primes):
    """Reduced form (a, b, c) of a prime form of norm p for each p.

    status: 1 split, 0 ramified with a primitive prime form, -1 no class
    (inert, or ramified with only imprimitive candidates).
    """
    cdef Py_ssize_t n = primes.shape[0], i
    a_out = np.zeros(n, dtype=np.int64)
    b_out = np.zeros(n, dtype=np.int64)
    c_out = np.zeros(n, dtype=np.int64)
    st_out = np.full(n, -1, dtype=np.int8)
    cdef cnp.int64_t[::1] A = a_out
    cdef cnp.int64_t[::1] B = b_out
    cdef cnp.int64_t[::1] C = c_out
    cdef cnp.int8_t[::1] S = st_out
    cdef i64 p, r, bb, cc, aa, num, dpar, k
    cdef int status
    dpar = D & 1
    with nogil:
        for i in range(n):
            p = primes[i]
            status = -1
            bb = -1
            if p == 2:
                k = 0
                while k < 4:
                    if ((k * k - D) % 8 + 8) % 8 == 0 and (k & 1) == dpar:
                        num = (k * k - D) // 8
                        if _gcd(_gcd(2, k), num) == 1:
                            bb = k
                            break
                    k += 1
                if bb >= 0:
                    status = 0 if (D % 4 == 0) else 1
            else:
                r = D % p
                if r < 0:
                    r += p
                if r == 0:
                    bb = 0
                    status = 0
                else:
                    bb = _sqrt_mod_prime(r, p)
                    if bb >= 0:
                        status = 1
                if bb >= 0:
                    if (bb & 1) != dpar:
                        bb = p - bb
                    num = (bb * bb - D) // (4 * p)
                    if _gcd(_gcd(p, bb), num) != 1:
                        status = -1
            if status >= 0:
                aa = p
                cc = (bb * bb - D) // (4 * p)
                _reduce(&aa, &bb, &cc)
                A[i] = aa
                B[i] = bb
                C[i] = cc
            S[i] = status
    return a_out, b_out, c_out, st_out


def residue_sieve_count(i64 Y, cnp.int64_t[::1] moduli, cnp.int64_t[::1] residues):
    """Count 1 <= n < Y with n mod moduli[j] != residues[j] for all j."""
    cdef Py_ssize_t m = moduli.shape[0], j
    cdef i64 ell, r, n, count = 0
    if Y <= 1:
        return 0
    marks = np.zeros(Y, dtype=np.uint8)
    cdef cnp.uint8_t[::1] mk = marks
    with nogil:
        for j in range(m):
            ell = moduli[j]
            r = residues[j] % ell
            n = r if r >= 1 else ell
            while n < Y:
                mk[n] = 1
                n += ell
        for n in range(1, Y):
            if mk[n] == 0:
                count += 1
    return count
