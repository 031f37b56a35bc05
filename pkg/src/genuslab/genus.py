"""Genus theory and the local criteria / constants of the half-dimensional sieve.

Two conventions meet here. The class-group side uses the discriminant
``D < 0``. The local criteria are stated for forms ``A x^2 + 2B xy + C y^2``
with ``D_pos = 4(AC - B^2) > 0`` the negated discriminant; there ``D_2``
denotes the odd part of the *signed* discriminant, ``-D_pos / 2^theta_2``
(see ``TABLE1_READING``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import digamma
from sympy import factorint, totient
from sympy.functions.combinatorial.numbers import legendre_symbol

from .grouptheory import subset_sums
from .qforms import (
    ClassGroup,
    QuadForm,
    coprime_representative,
    kronecker,
    prime_to_class,
    primes_to_classes,
    represented_mask,
)
from .sieve import factor_with_spf, primes_up_to

# ---------------------------------------------------------------------------
# genera


@dataclass(frozen=True)
class GenusPartition:
    genus_of: tuple[int, ...]  # class index -> genus id
    genera: tuple[tuple[int, ...], ...]  # genus id -> class indices

    @property
    def g(self) -> int:
        return len(self.genera)

    def genus_of_class(self, i: int) -> tuple[int, ...]:
        return self.genera[self.genus_of[i]]


def genus_partition(G: ClassGroup) -> GenusPartition:
    """Cosets of C^2, numbered in order of their smallest class index."""
    sq = sorted(G.squares)
    label = [-1] * G.h
    genera = []
    for i in range(G.h):
        if label[i] >= 0:
            continue
        coset = sorted({int(G.compose(i, s)) for s in sq})
        for j in coset:
            label[j] = len(genera)
        genera.append(tuple(coset))
    return GenusPartition(tuple(label), tuple(genera))


def _represented_value(f: QuadForm, m: int) -> int:
    """Smallest-box value f(x, y) coprime to m."""
    r = 1
    while True:
        for x in range(-r, r + 1):
            for y in range(0, r + 1):
                v = f(x, y)
                if v > 0 and gcd(v, m) == 1:
                    return v
        r += 1


def character_names(D: int) -> list[str]:
    """Assigned genus characters of discriminant D < 0."""
    odd = sorted(p for p in factorint(-D) if p != 2)
    names = [f"chi_{p}" for p in odd]
    if D % 4 == 0:
        n = -D // 4
        extra = {3: [], 7: [], 1: ["delta"], 5: ["delta"], 2: ["delta*eps"], 6: ["eps"], 4: ["delta"], 0: ["delta", "eps"]}
        names += extra[n % 8] if n % 4 != 3 else []
    return names


def genus_characters(f, D: int | None = None) -> tuple[int, ...]:
    """Values of the assigned characters at a value of f coprime to 2D."""
    f = f if isinstance(f, QuadForm) else QuadForm(*f)
    D = f.discriminant if D is None else D
    r = _represented_value(f, 2 * D)
    out = []
    for name in character_names(D):
        if name.startswith("chi_"):
            out.append(int(legendre_symbol(r % int(name[4:]), int(name[4:]))))
        else:
            delta = 1 if r % 4 == 1 else -1
            eps = 1 if r % 8 in (1, 7) else -1
            out.append({"delta": delta, "eps": eps, "delta*eps": delta * eps}[name])
    return tuple(out)


# ---------------------------------------------------------------------------
# classes representing a squarefree integer


def _representing_codes(G: ClassGroup, split_classes, ramified_classes):
    A = G.abstract
    codes = G.codes
    base = np.int64(0)
    for c in split_classes:
        base = A.sub(base, codes[c])
    for c in ramified_classes:
        base = A.add(base, codes[c])
    doubled = [int(A.mul(codes[c], 2)) for c in split_classes]
    s = subset_sums(doubled, A, multiset=True)
    return A.add(s.elements(), int(base))


def _assemble(G, primes, cls_of) -> frozenset:
    split, ram = [], []
    for p in primes:
        chi = kronecker(G.D, p)
        if chi == -1:
            return frozenset()
        c = cls_of(p)
        if c is None:
            return frozenset()
        (ram if chi == 0 else split).append(c)
    out = _representing_codes(G, split, ram)
    return frozenset(int(i) for i in G.class_of_code[out])


def classes_representing(n: int, G: ClassGroup) -> frozenset:
    """Classes whose forms represent the squarefree n.

    This is (prod C_j^-1) * s({C_j^2}) with one C_j per prime p_j | n. The
    doubled classes enter as a multiset: when C_i^2 = C_j^2 both still
    contribute. Ramified primes contribute their ambiguous class. Empty if
    some p | n is inert or has no primitive prime form.
    """
    n = int(n)
    if n < 1:
        raise ValueError("n must be positive")
    fac = factorint(n)
    if any(e > 1 for e in fac.values()):
        raise ValueError(f"{n} is not squarefree")

    def cls_of(p):
        try:
            return prime_to_class(p, G)[0]
        except ValueError:
            return None

    return _assemble(G, sorted(fac), cls_of)


class RepresentingClasses:
    """Batch version of classes_representing for n <= limit."""

    def __init__(self, G: ClassGroup, limit: int, spf: np.ndarray | None = None):
        from .sieve import spf_table

        self.G = G
        self.spf = spf if spf is not None else spf_table(limit)
        primes = primes_up_to(limit)
        cls, st = primes_to_classes(primes, G)
        self._cls = dict(zip(primes.tolist(), np.where(st >= 0, cls, -1).tolist()))

    def __call__(self, n: int) -> frozenset:
        primes = factor_with_spf(int(n), self.spf)
        return _assemble(self.G, primes, lambda p: None if self._cls[p] < 0 else self._cls[p])


# ---------------------------------------------------------------------------
# local criteria for even-middle forms

# Resolved by calibrate_table1 against the brute-force genus oracle.
TABLE1_READING = {"d2_sign": -1, "row4": "union"}
ROW4_READINGS = ("union", "A_if_D2_neg1", "A_if_D2_pos1")


@dataclass(frozen=True)
class AppendixDiscriminant:
    D_pos: int
    theta: dict  # p -> exponent in D_pos
    A: int  # first coefficient of an equivalent form, coprime to 2 D_pos
    D2: int  # signed odd part per the reading
    k_minus_D: int  # squarefree kernel of -D_pos

    @property
    def theta2(self) -> int:
        return self.theta.get(2, 0)

    @property
    def odd_primes(self) -> list[int]:
        return sorted(p for p in self.theta if p != 2)


def _squarefree_kernel(n: int) -> int:
    sign = -1 if n < 0 else 1
    k = 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            k *= p
    return sign * k


def appendix_discriminant(f, reading=None) -> AppendixDiscriminant:
    reading = TABLE1_READING if reading is None else reading
    f = f if isinstance(f, QuadForm) else QuadForm(*f)
    if f.b % 2:
        raise ValueError("the local criteria need an even middle coefficient (A x^2 + 2B xy + C y^2)")
    D_pos = -f.discriminant
    if D_pos <= 0:
        raise ValueError("form must be positive definite")
    theta = dict(factorint(D_pos))
    A = coprime_representative(f, 2 * D_pos).a
    odd = D_pos >> theta.get(2, 0)
    return AppendixDiscriminant(D_pos, theta, A, reading["d2_sign"] * odd, _squarefree_kernel(-D_pos))


def _two_adic_row(eps2: int, theta2: int, A: int, D2: int, Dsig: int, row4: str):
    """(case, kappa, tau, L2) for the 2-adic part; L2 empty means never represented."""
    if theta2 == 0:
        if eps2 == 0:
            return 3, 1, 1, [0] if Dsig % 4 == 3 else []
        return 8, 1, 1, [0] if Dsig % 8 == 7 else []
    if theta2 == 1:
        raise ValueError("theta_2 = 1 cannot occur for a form discriminant")
    if eps2 == 0:
        if theta2 == 2:
            if row4 == "union":
                L2 = {A % 4, (-A * D2) % 4}
            elif row4 == "A_if_D2_neg1":
                L2 = {A % 4} if D2 % 4 == 3 else {(-A * D2) % 4}
            else:
                L2 = {A % 4} if D2 % 4 == 1 else {(-A * D2) % 4}
            return 4, len(L2), 4, sorted(L2)
        if theta2 == 3:
            return 5, 2, 8, sorted({A % 8, (A * (1 - 2 * D2)) % 8})
        if theta2 == 4:
            return 6, 1, 4, [A % 4]
        return 7, 1, 8, [A % 8]
    if theta2 == 2:
        if D2 % 4 != 3:
            return 9, 1, 4, []
        return 9, 1, 4, [(A * (1 - D2) // 2) % 4]
    if theta2 == 3:
        return 10, 2, 8, sorted({(-A * D2) % 8, (A * (2 - D2)) % 8})
    # no row for eps2 = 1, theta2 >= 4
    return None, 0, 1, []


def _check_m(m: int, D_pos: int):
    if m < 1:
        raise ValueError("m must be positive")
    if gcd(m, D_pos) > 2:
        raise ValueError(f"gcd(m, D_pos) = {gcd(m, D_pos)} > 2")
    if any(e > 1 for e in factorint(m).values()):
        raise ValueError(f"{m} is not squarefree")


def genus_represents_local(m: int, f, reading=None, _ad: AppendixDiscriminant | None = None) -> bool:
    """Is the squarefree m represented by the genus of f (local criteria)?"""
    reading = TABLE1_READING if reading is None else reading
    ad = appendix_discriminant(f, reading) if _ad is None else _ad
    _check_m(m, ad.D_pos)
    eps2 = 1 if m % 2 == 0 else 0
    n = m >> eps2
    for p in ad.odd_primes:
        if legendre_symbol(n % p, p) != legendre_symbol((ad.A << eps2) % p, p):
            return False
    for p in factorint(n):
        if kronecker(-ad.D_pos, p) != 1:
            return False
    _, _, tau, L2 = _two_adic_row(eps2, ad.theta2, ad.A, ad.D2, -ad.D_pos if reading["d2_sign"] < 0 else ad.D_pos, reading["row4"])
    return (n % tau) in L2


def genus_oracle(f, limit: int) -> np.ndarray:
    """mask[m] for 0 <= m <= limit: some form in the genus of f represents m."""
    f = f if isinstance(f, QuadForm) else QuadForm(*f)
    G = ClassGroup(f.discriminant)
    part = genus_partition(G)
    mask = np.zeros(limit + 1, dtype=bool)
    for i in part.genus_of_class(G.class_of(f)):
        mask[1:] |= represented_mask(G.forms[i], 1, limit + 1)
    return mask


def admissible_m(D_pos: int, limit: int) -> np.ndarray:
    """Squarefree m <= limit with gcd(m, D_pos) <= 2."""
    from .sieve import squarefree_mask

    m = np.arange(limit + 1)
    ok = squarefree_mask(limit) & (np.gcd(m, D_pos) <= 2)
    return np.flatnonzero(ok)


def calibration_forms() -> list[QuadForm]:
    """Forms that separate the candidate Table 1 readings.

    x^2+3y^2 and x^2+7y^2 are needed to tell the row (4) pairings apart.
    """
    return [QuadForm(*t) for t in [(1, 0, 1), (1, 0, 2), (2, 2, 3), (1, 0, 3), (1, 0, 7), (1, 0, 5), (2, 2, 5), (3, 2, 3), (1, 0, 6), (2, 0, 3)]]


def calibrate_table1(forms=None, limit: int = 2000) -> dict:
    """Mismatch counts of every candidate reading against the genus oracle."""
    forms = calibration_forms() if forms is None else forms
    results = {}
    oracles = [(f, genus_oracle(f, limit)) for f in forms]
    for sign in (-1, 1):
        for row4 in ROW4_READINGS:
            reading = {"d2_sign": sign, "row4": row4}
            bad = 0
            for f, orc in oracles:
                ad = appendix_discriminant(f, reading)
                for m in admissible_m(ad.D_pos, limit).tolist():
                    if genus_represents_local(m, f, reading, _ad=ad) != bool(orc[m]):
                        bad += 1
            results[(sign, row4)] = bad
    return results


@dataclass
class LocalConditions:
    case: int | None
    kappa: int
    tau: int
    A: int
    delta: int
    shift: int
    Q: int
    L2: list[int]
    L_prime: dict[int, list[int]]
    L_dprime: dict[int, list[int]]
    L: list[int]
    k_minus_D: int
    kronecker_ok: bool

    def in_P(self, p: int) -> bool:
        return kronecker(self.k_minus_D, p) == 1

    def admits(self, m: int) -> bool:
        """Lemma-style predicate: n = L (Q), prime factors of n in P, row conditions."""
        n = m >> (1 if self.delta == 2 else 0)
        if (m % 2 == 0) != (self.delta == 2):
            return False
        if not (n % self.Q) in set(self.L):
            return False
        return all(self.in_P(p) for p in factorint(n))


def build_L_set(f, delta: int = 1, a: int = 0, reading=None) -> LocalConditions:
    """Q, the residue set L mod Q, and P for m = delta * n."""
    reading = TABLE1_READING if reading is None else reading
    ad = appendix_discriminant(f, reading)
    eps2 = {1: 0, 2: 1}[delta]
    case, kappa, tau, L2 = _two_adic_row(eps2, ad.theta2, ad.A, ad.D2, -ad.D_pos, reading["row4"])
    odd_D2 = ad.odd_primes
    Lp, Lpp = {}, {}
    for p in odd_D2:
        t = legendre_symbol((ad.A << eps2) % p, p)
        Dp = ad.D_pos // p ** ad.theta[p]
        t2 = legendre_symbol((-(ad.A << eps2) * _squarefree_kernel(-Dp)) % p, p) if (_squarefree_kernel(-Dp) % p) else 0
        Lp[p] = [l for l in range(1, p) if legendre_symbol(l, p) == t]
        Lpp[p] = [l for l in range(1, p) if legendre_symbol(l, p) == t2]
    Q = tau * math.prod(odd_D2)
    L = []
    for cand in range(1, Q):
        if (cand % tau) not in L2:
            continue
        if all(cand % p in Lp[p] for p in odd_D2):
            L.append(cand)
    ok = all(kronecker(ad.k_minus_D, l) == 1 for l in L)
    return LocalConditions(case, kappa, tau, ad.A, delta, a, Q, L2, Lp, Lpp, L, ad.k_minus_D, ok)


# ---------------------------------------------------------------------------
# sieve constants


def phi_E(N: int, E: int) -> int:
    """phi(N E) / phi(E) (an integer)."""
    return int(totient(N * E)) // int(totient(E))


def _chi_on_primes(k: int, primes: np.ndarray) -> np.ndarray:
    """(k|p) for primes p, via periodicity of the Jacobi symbol mod 4|k|."""
    period = 4 * abs(k)
    table = np.array([kronecker(k, r) if r % 2 else 0 for r in range(period)], dtype=np.int64)
    out = table[primes % period]
    out[primes == 2] = kronecker(k, 2)
    return out


@dataclass
class C0Result:
    value: float  # accelerated evaluation
    value_half: float  # accelerated, truncated at T/2
    delta: float  # value - value_half
    log_value: float
    truncation: int
    tail_bound: float  # sum of 1/p^2 over T/2 < p <= T
    direct: float = math.nan  # plain truncated product over p <= T
    L1: float = math.nan  # L(1, psi) used by the accelerated form


def _psi_L1(k: int) -> float:
    """L(1, psi) for psi(n) = (k|n) on odd n, 0 on even n (a character mod 4|k|).

    Uses L(1, psi) = -(1/q) sum_{a=1}^{q} psi(a) digamma(a/q), valid for a
    non-principal character.
    """
    q = 4 * abs(k)
    a = np.arange(1, q + 1)
    psi = np.array([kronecker(k, int(r)) if r % 2 else 0 for r in a], dtype=np.float64)
    if psi.sum() != 0:
        raise ValueError("psi is principal; L(1, psi) diverges")
    return float(-np.sum(psi * digamma(a / q)) / q)


def _log_C0(D_pos: int, a: int, primes: np.ndarray, chi: np.ndarray) -> float:
    """Plain truncated product over the given primes."""
    Da = D_pos * a if a else D_pos
    bad = set(factorint(Da)) if Da > 1 else set()
    if 2 not in bad and kronecker(_squarefree_kernel(-D_pos), 2) == -1:
        raise ValueError("2 would lie in the inert set; the product diverges")
    divides_Da = np.isin(primes, np.array(sorted(bad), dtype=np.int64))
    divides_a = np.array([a != 0 and a % p == 0 for p in primes.tolist()]) if a else np.zeros(len(primes), bool)
    divides_D = D_pos % primes == 0
    inert = (~divides_D) & (chi == -1)
    pf = primes.astype(np.float64)
    terms = []
    sel = inert & ~divides_a
    terms.append(np.log1p(-1.0 / (pf[sel] - 1.0) ** 2))
    free = ~divides_Da
    terms.append(-0.5 * chi[free] * np.log1p(-1.0 / pf[free]))
    bad_terms = [-0.5 * math.log1p(-1.0 / p) for p in sorted(bad)]
    return math.fsum([-np.euler_gamma / 2] + bad_terms + np.concatenate(terms).tolist())


def _log_C0_accelerated(D_pos: int, a: int, primes: np.ndarray, chi: np.ndarray, L1: float) -> float:
    """Same constant with the conditionally convergent part summed exactly.

    For odd p not dividing Da, -chi(p)/2 log(1 - 1/p) equals
    -1/2 log(1 - psi(p)/p) plus 1/2 log(1 - 1/p^2) when chi(p) = -1. The
    first pieces sum to 1/2 log L(1, psi) minus the Euler factors at odd
    p | Da; only absolutely convergent sums are truncated.
    """
    k = _squarefree_kernel(-D_pos)
    Da = D_pos * a if a else D_pos
    bad = set(factorint(Da)) if Da > 1 else set()
    if 2 not in bad and kronecker(k, 2) == -1:
        raise ValueError("2 would lie in the inert set; the product diverges")
    out = [-np.euler_gamma / 2, 0.5 * math.log(L1)]
    out += [-0.5 * math.log1p(-1.0 / p) for p in sorted(bad)]
    for p in sorted(bad):
        if p != 2:
            out.append(0.5 * math.log1p(-kronecker(k, p) / p))
    if 2 not in bad:  # psi(2) = 0, so p = 2 enters directly
        out.append(-0.5 * kronecker(k, 2) * math.log(0.5))
    pf = primes.astype(np.float64)
    divides_a = np.array([a != 0 and a % p == 0 for p in primes.tolist()]) if a else np.zeros(len(primes), bool)
    inert = (D_pos % primes != 0) & (chi == -1)
    out += np.log1p(-1.0 / (pf[inert & ~divides_a] - 1.0) ** 2).tolist()
    free = ~np.isin(primes, np.array(sorted(bad), dtype=np.int64)) & (primes != 2) & (chi == -1)
    out += (0.5 * np.log1p(-1.0 / pf[free] ** 2)).tolist()
    return math.fsum(out)


def C0_constant(D_pos: int, a: int = 1, T: int = 10**6) -> C0Result:
    """C_0 = e^{-gamma/2} prod (inert, p not dividing a) (1 - 1/(p-1)^2)
    prod (p | Da) (1 - 1/p)^{-1/2} prod (p not dividing Da) (1 - 1/p)^{-(k(-D)|p)/2}.

    Inert set: p not dividing D with (k(-D)|p) = -1. ``value`` uses the
    accelerated form (L(1, psi) in closed form, the rest truncated at T);
    ``direct`` is the plain product over p <= T. ``value_half`` repeats the
    accelerated evaluation at T/2.
    """
    if T < 1000:
        raise ValueError("truncation must be >= 1000")
    if D_pos <= 0:
        raise ValueError("D_pos must be positive")
    k = _squarefree_kernel(-D_pos)
    primes = primes_up_to(T)
    chi = _chi_on_primes(k, primes)
    L1 = _psi_L1(k)
    lv = _log_C0_accelerated(D_pos, a, primes, chi, L1)
    half = primes <= T // 2
    lh = _log_C0_accelerated(D_pos, a, primes[half], chi[half], L1)
    direct = math.exp(_log_C0(D_pos, a, primes, chi))
    tail = float(np.sum(1.0 / primes[primes > T // 2].astype(np.float64) ** 2))
    return C0Result(math.exp(lv), math.exp(lh), math.exp(lv) - math.exp(lh), lv, T, tail, direct, L1)


def theta_F(s):
    """2 log(sqrt s + sqrt(s-1)) - 8 s^2 sqrt(2(s-1)/s) log(2s-1)."""
    s = np.asarray(s, dtype=np.float64)
    return 2 * np.log(np.sqrt(s) + np.sqrt(s - 1)) - 8 * s * s * np.sqrt(2 * (s - 1) / s) * np.log(2 * s - 1)


@dataclass(frozen=True)
class ThetaResult:
    theta: float
    s_star: float
    theta_golden: float
    s_golden: float

    @property
    def agreement(self) -> float:
        return abs(self.theta - self.theta_golden)


def theta_constant(tol: float = 1e-8) -> ThetaResult:
    """sup of theta_F over (1, 4/3), by grid refinement and by golden section."""
    lo, hi = 1.0, 4.0 / 3.0
    n = 10_001
    while True:
        s = np.linspace(lo, hi, n)
        s = s[(s > 1.0) & (s < 4.0 / 3.0)]
        i = int(np.argmax(theta_F(s)))
        step = s[1] - s[0]
        if step <= tol:
            s_grid = float(s[i])
            break
        lo, hi = max(1.0, s[i] - step), min(4.0 / 3.0, s[i] + step)
        n = 101
    # golden section on the bracket found by a coarse scan
    coarse = np.linspace(1.0, 4.0 / 3.0, 401)[1:-1]
    j = int(np.argmax(theta_F(coarse)))
    res = minimize_scalar(
        lambda t: -float(theta_F(t)),
        bracket=(coarse[max(j - 1, 0)], coarse[j], coarse[min(j + 1, len(coarse) - 1)]),
        method="golden",
        tol=1e-12,
    )
    return ThetaResult(float(theta_F(s_grid)), s_grid, float(-res.fun), float(res.x))


@dataclass
class HalfDimRow:
    z: int
    prime_sum: float
    residual: float


def half_dim_check(D_pos: int, zs, delta: int = 1, f=None) -> list[HalfDimRow]:
    """|sum_{p <= z, p inert} log p / phi_E(p) - log(z)/2| along a ladder of z.

    E = Q delta with Q from the local conditions of f (the principal form
    x^2 + (D_pos/4) y^2 by default).
    """
    f = QuadForm(1, 0, D_pos // 4) if f is None else f
    E = build_L_set(f, delta).Q * delta
    zs = sorted(int(z) for z in zs)
    primes = primes_up_to(max(zs))
    chi = _chi_on_primes(_squarefree_kernel(-D_pos), primes)
    inert = (D_pos % primes != 0) & (chi == -1)
    pf = primes.astype(np.float64)
    phiE = np.where(E % primes == 0, pf, pf - 1.0)
    terms = np.where(inert, np.log(pf) / phiE, 0.0)
    rows = []
    for z in zs:
        s = math.fsum(terms[primes <= z].tolist())
        rows.append(HalfDimRow(z, s, abs(s - 0.5 * math.log(z))))
    return rows


@dataclass
class OmegaResult:
    value: float
    truncated: float
    difference: float
    bound: float | None
    terms: list = field(default_factory=list)
    c: float = 1.0


def omega_D(f, a: int, X: float | None = None, c: float = 1.0) -> OmegaResult:
    """c * sum over delta in {1, 2} (2 | D delta) and L with (delta L + a, Q delta) = 1 of 1/phi(Q delta).

    The truncated variant keeps only Q delta <= (log X)^15.
    """
    f = f if isinstance(f, QuadForm) else QuadForm(*f)
    D_pos = -f.discriminant
    total, trunc, terms = [], [], []
    cutoff = math.log(X) ** 15 if X else math.inf
    for delta in (1, 2):
        if (D_pos * delta) % 2:
            continue
        lc = build_L_set(f, delta, a)
        E = lc.Q * delta
        w = 1.0 / int(totient(E))
        for L in lc.L:
            if gcd(delta * L + a, E) == 1:
                terms.append((delta, L, E))
                total.append(w)
                if E <= cutoff:
                    trunc.append(w)
    v, t = c * math.fsum(total), c * math.fsum(trunc)
    return OmegaResult(v, t, abs(v - t), 1 / math.log(X) ** 6 if X else None, terms, c)


@dataclass
class SieveConstants:
    D_pos: int
    a: int
    C0: C0Result
    theta: ThetaResult
    omega: OmegaResult
    residuals: list[HalfDimRow]

    def to_dict(self) -> dict:
        return {
            "D": -self.D_pos,
            "a": self.a,
            "C0": self.C0.value,
            "C0_half_truncation": self.C0.value_half,
            "C0_delta": self.C0.delta,
            "C0_direct_product": self.C0.direct,
            "L1_psi": self.C0.L1,
            "truncation": self.C0.truncation,
            "theta": self.theta.theta,
            "theta_argmax": self.theta.s_star,
            "theta_golden": self.theta.theta_golden,
            "omega_D": self.omega.value,
            "omega_D_c": self.omega.c,
            "omega_D_c_is_placeholder": True,
            "residual_table": [[r.z, r.prime_sum, r.residual] for r in self.residuals],
        }


def sieve_constants(D_pos: int, a: int = 1, T: int = 10**6, zs=(10, 100, 10**3, 10**4, 10**5, 10**6)) -> SieveConstants:
    f = QuadForm(1, 0, D_pos // 4)
    if D_pos % 4:
        raise ValueError("D_pos must be divisible by 4 (even-middle principal form)")
    return SieveConstants(D_pos, a, C0_constant(D_pos, a, T), theta_constant(), omega_D(f, a), half_dim_check(D_pos, zs))
