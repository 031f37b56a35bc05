"""Positive definite binary quadratic forms and their class groups.

Forms are ``(a, b, c)`` meaning ``a x^2 + b x y + c y^2`` with discriminant
``D = b^2 - 4ac < 0``. Reduced forms satisfy ``|b| <= a <= c`` with
``b >= 0`` when ``|b| = a`` or ``a = c``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, isqrt

import numpy as np
from sympy import Matrix, factorint, isprime
from sympy.functions.combinatorial.numbers import kronecker_symbol
from sympy.matrices.normalforms import smith_normal_decomp

from . import kernels
from .grouptheory import ElementSet, FiniteAbelianGroup, subgroups_up_to_index as _abstract_subgroups


@dataclass(frozen=True)
class Discriminant:
    """D = fundamental * conductor**2, D < 0."""

    value: int
    fundamental: int
    conductor: int

    @classmethod
    def of(cls, D: int) -> "Discriminant":
        D = int(D)
        if D >= 0:
            raise ValueError(f"discriminant must be negative, got {D}")
        if D % 4 not in (0, 1):
            raise ValueError(f"discriminant must be 0 or 1 mod 4, got {D}")
        f0 = 1
        for p, e in factorint(-D).items():
            f0 *= p ** (e // 2)
        core = D // (f0 * f0)
        if core % 4 == 1:
            return cls(D, core, f0)
        # core is 2 or 3 mod 4, so f0 is even
        return cls(D, 4 * core, f0 // 2)

    @property
    def is_fundamental(self) -> bool:
        return self.conductor == 1

    def __int__(self) -> int:
        return self.value


def as_discriminant(D) -> Discriminant:
    return D if isinstance(D, Discriminant) else Discriminant.of(D)


@dataclass(frozen=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x, y):
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    @property
    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    @property
    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.discriminant < 0

    @property
    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        return b >= 0 or (abs(b) != a and a != c)

    def transform(self, x: int, y: int, u: int, v: int) -> "QuadForm":
        """f(x X + u Y, y X + v Y); proper equivalence when x v - u y = 1."""
        a, b, c = self.a, self.b, self.c
        return QuadForm(
            a * x * x + b * x * y + c * y * y,
            2 * a * x * u + b * (x * v + y * u) + 2 * c * y * v,
            a * u * u + b * u * v + c * v * v,
        )

    def inverse(self) -> "QuadForm":
        return reduce(QuadForm(self.a, -self.b, self.c))

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


# Reduced forms are QuadForm instances passing is_reduced.
ReducedForm = QuadForm


def reduce(f) -> QuadForm:
    """Gauss reduction to the canonical representative of the proper class."""
    f = f if isinstance(f, QuadForm) else QuadForm(*f)
    if not f.is_positive_definite:
        raise ValueError(f"form {f} is not positive definite")
    if not f.is_primitive:
        raise ValueError(f"form {f} is not primitive")
    a, b, c = f.a, f.b, f.c
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
        return QuadForm(a, b, c)


def _sort_key(f: QuadForm):
    return (f.a, abs(f.b), -f.b)


def reduced_forms(D: int) -> list[QuadForm]:
    """All primitive reduced forms of discriminant D, in canonical order."""
    D = as_discriminant(D).value
    out = []
    for a in range(1, isqrt(-D // 3) + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            out.append(QuadForm(a, b, c))
    out.sort(key=_sort_key)
    return out


def _egcd(a: int, b: int):
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def coprime_representative(f: QuadForm, m: int) -> QuadForm:
    """A form properly equivalent to f whose first coefficient is coprime to m.

    Scans primitive vectors (x, y) in growing boxes; a primitive form
    represents values prime to any m, so this terminates quickly.
    """
    if gcd(f.a, m) == 1:
        return f
    r = 1
    while True:
        for x in range(-r, r + 1):
            for y in (range(-r, r + 1) if abs(x) == r else (-r, r)):
                if gcd(x, y) != 1:
                    continue
                if gcd(f(x, y), m) == 1:
                    _, s, t = _egcd(x, y)
                    # x*s + y*t = 1  ->  matrix [[x, -t], [y, s]]
                    return f.transform(x, y, -t, s)
        r += 1


def compose_forms(f1: QuadForm, f2: QuadForm) -> QuadForm:
    """Dirichlet composition; the result is reduced."""
    D = f1.discriminant
    if f2.discriminant != D:
        raise ValueError("forms have different discriminants")
    g2 = coprime_representative(f2, f1.a)
    a1, b1, a2, b2 = f1.a, f1.b, g2.a, g2.b
    t = ((b2 - b1) // 2) * pow(a1, -1, a2) % a2 if a2 > 1 else 0
    B = b1 + 2 * a1 * t
    A = a1 * a2
    C = (B * B - D) // (4 * A)
    return reduce(QuadForm(A, B, C))


def kronecker(D: int, n: int) -> int:
    return int(kronecker_symbol(int(D), int(n)))


def chi_D(p: int, D) -> int:
    """Kronecker symbol (D|p) for a prime p."""
    if not isprime(int(p)):
        raise ValueError(f"{p} is not prime")
    return kronecker(int(D), int(p))


class ClassGroup:
    """Form class group of a negative discriminant.

    Classes are indexed by position in ``forms`` (canonical order). The group
    structure is carried by an isomorphism onto ``abstract``, a
    FiniteAbelianGroup with invariant factors d_1 | d_2 | ...; ``codes[i]``
    is the mixed-radix index of class i there.
    """

    def __init__(self, D):
        self.discriminant = as_discriminant(D)
        self.D = self.discriminant.value
        self.forms: list[QuadForm] = reduced_forms(self.D)
        self.h = len(self.forms)
        self.index: dict[tuple, int] = {tuple(f): i for i, f in enumerate(self.forms)}
        self.identity = 0
        self._build_structure()

    def _build_structure(self):
        h = self.h
        # polycyclic presentation: relative orders and relations
        pc_gens: list[int] = []
        rel_rows: list[list[int]] = []
        coords: dict[int, list[int]] = {0: []}
        for g in range(h):
            if g in coords:
                continue
            power = self.forms[g]
            r = 1
            while self.index[tuple(power)] not in coords:
                power = compose_forms(power, self.forms[g])
                r += 1
            word = coords[self.index[tuple(power)]]
            n = len(pc_gens)
            rel_rows.append([-w for w in word] + [0] * (n - len(word)) + [r])
            pc_gens.append(g)
            old = list(coords.items())
            step = self.forms[g]
            cur = [(i, self.forms[i]) for i, _ in old]
            for j in range(1, r):
                nxt = []
                for (i, cv), (k, f) in zip(old, cur):
                    prod = compose_forms(f, step)
                    idx = self.index[tuple(prod)]
                    coords[idx] = cv + [0] * (n - len(cv)) + [j]
                    nxt.append((idx, prod))
                cur = nxt
        n = len(pc_gens)
        if n == 0:
            self.invariants = []
            self._V = np.zeros((0, 0), dtype=np.int64)
            vecs = np.zeros((h, 0), dtype=np.int64)
        else:
            R = Matrix([row + [0] * (n - len(row)) for row in rel_rows])
            S, _, V = smith_normal_decomp(R)
            diag = [abs(int(S[i, i])) for i in range(n)]
            keep = [i for i, d in enumerate(diag) if d > 1]
            self.invariants = [diag[i] for i in keep]
            Vn = np.array(V.tolist(), dtype=object)
            X = np.array([coords[i] + [0] * (n - len(coords[i])) for i in range(h)], dtype=object)
            Y = X.dot(Vn)
            vecs = np.array(
                [[int(Y[i, j]) % diag[j] for j in keep] for i in range(h)], dtype=np.int64
            ).reshape(h, len(keep))
        self.abstract = FiniteAbelianGroup(self.invariants or [1])
        if self.invariants:
            codes = np.ravel_multi_index(tuple(vecs.T), self.abstract.orders)
        else:
            codes = np.zeros(h, dtype=np.int64)
        self.codes = np.asarray(codes, dtype=np.int64)
        self.class_of_code = np.empty(h, dtype=np.int64)
        self.class_of_code[self.codes] = np.arange(h)
        if len(set(self.codes.tolist())) != h:
            raise RuntimeError("class group structure computation is inconsistent")
        neg = self.abstract.neg(self.codes)
        self.inverse = self.class_of_code[neg]
        self.ambiguous = frozenset(int(i) for i in np.flatnonzero(self.inverse == np.arange(h)))
        self.genera_count = 2 ** sum(1 for d in self.invariants if d % 2 == 0)
        self.cyclic_decomposition = []
        for j, d in enumerate(self.invariants):
            e = [0] * len(self.invariants)
            e[j] = 1
            code = int(np.ravel_multi_index(tuple(e), self.abstract.orders))
            self.cyclic_decomposition.append((int(self.class_of_code[code]), d))

    # group law -------------------------------------------------------
    def compose(self, x, y):
        """Class index of x*y (vectorized over numpy arrays)."""
        return self.class_of_code[self.abstract.add(self.codes[x], self.codes[y])]

    def power(self, x: int, k: int) -> int:
        return int(self.class_of_code[self.abstract.mul(self.codes[x], k)])

    def square(self, x):
        return self.compose(x, x)

    @cached_property
    def cayley(self) -> np.ndarray:
        if self.h > 8192:
            raise MemoryError("Cayley table too large; use compose()")
        idx = np.arange(self.h)
        return self.compose(idx[:, None], idx[None, :])

    def form(self, i: int) -> QuadForm:
        return self.forms[i]

    def class_of(self, f) -> int:
        return self.index[tuple(reduce(f))]

    def element_set(self, classes) -> ElementSet:
        return ElementSet.from_elements(self.abstract, self.codes[np.asarray(list(classes), dtype=np.int64)])

    def classes_in(self, s: ElementSet) -> list[int]:
        return sorted(int(i) for i in self.class_of_code[s.elements()])

    @property
    def squares(self) -> frozenset:
        return frozenset(int(i) for i in np.unique(self.square(np.arange(self.h))))

    def squares_group(self):
        """The subgroup C^2 as its own FiniteAbelianGroup, with the embedding.

        Returns (G2, code2) where code2[i] is the G2-code of class i if i is a
        square and -1 otherwise.
        """
        d = self.invariants
        orders = [di // gcd(2, di) for di in d]
        G2 = FiniteAbelianGroup(orders or [1])
        code2 = np.full(self.h, -1, dtype=np.int64)
        if not d:
            code2[0] = 0
            return G2, code2
        vec = np.array(np.unravel_index(self.codes, d)).T
        sq = np.array(sorted(self.squares))
        v = vec[sq]
        ev = np.array([di % 2 == 0 for di in d])
        w = np.where(ev, v // 2, v)
        code2[sq] = np.ravel_multi_index(tuple(w.T), G2.orders)
        return G2, code2

    # serialization -----------------------------------------------------
    def to_dict(self, with_cayley: bool = False) -> dict:
        out = {
            "D": self.D,
            "fundamental": self.discriminant.fundamental,
            "conductor": self.discriminant.conductor,
            "h": self.h,
            "g": self.genera_count,
            "invariants": list(self.invariants),
            "cyclic_decomposition": [[str(self.forms[i]), d] for i, d in self.cyclic_decomposition],
            "forms": [[f.a, f.b, f.c] for f in self.forms],
            "ambiguous": sorted(self.ambiguous),
        }
        if with_cayley:
            out["cayley"] = self.cayley.tolist()
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(**kw))


def enumerate_class_group(D) -> ClassGroup:
    return ClassGroup(D)


def compose(x: int, y: int, G: ClassGroup) -> int:
    if not (0 <= x < G.h and 0 <= y < G.h):
        raise IndexError("class index out of range")
    return int(G.compose(x, y))


def primes_to_classes(primes, G: ClassGroup):
    """Batch prime -> class assignment.

    Returns (cls, status): status 1 split, 0 ramified (cls is the ambiguous
    prime class), -1 no class (cls = -1).
    """
    primes = np.ascontiguousarray(primes, dtype=np.int64)
    if len(primes) and primes.max() >= 2**31:
        raise ValueError("primes must be < 2^31")
    A, B, C, S = kernels.prime_forms(G.D, primes)
    cls = np.full(len(primes), -1, dtype=np.int64)
    for i in np.flatnonzero(S >= 0):
        cls[i] = G.index[(int(A[i]), int(B[i]), int(C[i]))]
    return cls, S


def prime_to_class(p: int, G: ClassGroup) -> tuple[int, int]:
    """The classes {C, C^-1} of forms representing the prime p.

    For a ramified p the unique ambiguous class is returned twice.
    """
    if not isprime(int(p)):
        raise ValueError(f"{p} is not prime")
    cls, st = primes_to_classes([p], G)
    if st[0] < 0:
        raise ValueError(f"no class of discriminant {G.D} represents {p}")
    c = int(cls[0])
    return c, int(G.inverse[c])


def subgroups_up_to_index(G, B: int, limit: int = 100_000) -> list[ElementSet]:
    """Subgroups of index <= B. For a ClassGroup the sets live on G.abstract."""
    if isinstance(G, ClassGroup):
        G = G.abstract
    return _abstract_subgroups(G, B, limit=limit)


def represented_mask(f, lo: int, hi: int, primitive: bool = False) -> np.ndarray:
    """Boolean mask over [lo, hi): n = f(x, y) for some (x, y) != (0, 0).

    With ``primitive`` only coprime (x, y) count.
    """
    f = f if isinstance(f, QuadForm) else QuadForm(*f)
    if not f.is_positive_definite:
        raise ValueError(f"form {f} is not positive definite")
    out = np.zeros(max(hi - lo, 0), dtype=np.uint8)
    kernels.fill_represented(f.a, f.b, f.c, lo, hi, bool(primitive), out)
    return out.view(bool)


def kronecker_table(D: int, N: int) -> np.ndarray:
    """chi_D(n) for 0 <= n < N as int8, using periodicity mod |D|.

    D must be a discriminant (0 or 1 mod 4).
    """
    D = as_discriminant(D).value
    m = -D
    period = np.array([kronecker(D, r) for r in range(m)], dtype=np.int8)
    reps = -(-N // m)
    return np.tile(period, reps)[:N]
