"""Finite abelian groups, subset sums and the greedy growth algorithm.

Elements of ``Z/d_1 x ... x Z/d_r`` are addressed by their mixed-radix index
(numpy ravel order), so a subset is a boolean vector of length ``h'``.
Translation is ``np.roll`` on the reshaped vector; correlations and
convolutions go through the multidimensional FFT and are rounded to exact
integers.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property, reduce as _reduce

import numpy as np

log = logging.getLogger(__name__)


class FiniteAbelianGroup:
    """Z/d_1 x ... x Z/d_r with elements as mixed-radix indices."""

    def __init__(self, orders):
        orders = tuple(int(d) for d in orders) or (1,)
        if any(d < 1 for d in orders):
            raise ValueError(f"cyclic orders must be positive, got {orders}")
        self.orders = orders
        self.size = int(np.prod(orders, dtype=np.int64))
        self._mod = np.array(orders, dtype=np.int64)
        self.exponent = _reduce(math.lcm, orders, 1)

    def __repr__(self):
        return "FiniteAbelianGroup(" + " x ".join(f"Z/{d}" for d in self.orders) + ")"

    def __eq__(self, other):
        return isinstance(other, FiniteAbelianGroup) and self.orders == other.orders

    def __hash__(self):
        return hash(self.orders)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def is_cyclic(self) -> bool:
        # orders need not be invariant factors, so test pairwise coprimality
        ds = [d for d in self.orders if d > 1]
        return all(math.gcd(ds[i], ds[j]) == 1 for i in range(len(ds)) for j in range(i))

    def coords(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        return np.stack(np.unravel_index(x, self.orders), axis=-1)

    def index(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64) % self._mod
        return np.ravel_multi_index(tuple(np.moveaxis(v, -1, 0)), self.orders)

    def add(self, x, y):
        return self.index(self.coords(x) + self.coords(y))

    def sub(self, x, y):
        return self.index(self.coords(x) - self.coords(y))

    def neg(self, x):
        return self.index(-self.coords(x))

    def mul(self, x, k: int):
        return self.index(self.coords(x) * int(k))

    def order(self, x) -> np.ndarray:
        c = self.coords(x)
        per = self._mod // np.gcd(c, self._mod)
        return np.lcm.reduce(per, axis=-1)

    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    def shape_mask(self, mask: np.ndarray) -> np.ndarray:
        return mask.reshape(self.orders)

    def roll(self, mask: np.ndarray, x) -> np.ndarray:
        """Indicator of mask + x."""
        shift = tuple(int(s) for s in self.coords(int(x)))
        return np.roll(mask.reshape(self.orders), shift, axis=tuple(range(self.rank))).ravel()

    def generated(self, gens) -> "ElementSet":
        """The subgroup generated by gens."""
        S = np.zeros(self.size, dtype=bool)
        S[0] = True
        for g in np.unique(np.asarray(list(gens), dtype=np.int64)):
            if S[g]:
                continue
            acc = S.copy()
            cur = S
            for _ in range(int(self.order(g)) - 1):
                cur = self.roll(cur, g)
                acc |= cur
            S = acc
        return ElementSet(self, S)

    def pairing(self, x, y) -> np.ndarray:
        """<x, y> = sum x_i y_i / d_i in (1/L)Z/Z, returned as an integer mod L."""
        L = self.exponent
        w = L // self._mod
        return (self.coords(x) * self.coords(y) * w).sum(axis=-1) % L


class ElementSet:
    """Dense indicator vector over a FiniteAbelianGroup."""

    __slots__ = ("group", "mask", "_card")

    def __init__(self, group: FiniteAbelianGroup, mask):
        mask = np.asarray(mask, dtype=bool).ravel()
        if mask.shape[0] != group.size:
            raise ValueError("mask length does not match group size")
        self.group = group
        self.mask = mask
        self._card = None

    @classmethod
    def from_elements(cls, group, elems) -> "ElementSet":
        m = np.zeros(group.size, dtype=bool)
        m[np.asarray(list(elems) if not isinstance(elems, np.ndarray) else elems, dtype=np.int64)] = True
        return cls(group, m)

    @classmethod
    def zero(cls, group) -> "ElementSet":
        return cls.from_elements(group, [0])

    @classmethod
    def full(cls, group) -> "ElementSet":
        return cls(group, np.ones(group.size, dtype=bool))

    def __len__(self) -> int:
        if self._card is None:
            self._card = int(np.count_nonzero(self.mask))
        return self._card

    @property
    def density(self) -> float:
        return len(self) / self.group.size

    def __contains__(self, x) -> bool:
        return bool(self.mask[int(x)])

    def __iter__(self):
        return iter(self.elements().tolist())

    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def translate(self, x) -> "ElementSet":
        return ElementSet(self.group, self.group.roll(self.mask, x))

    def negate(self) -> "ElementSet":
        return ElementSet.from_elements(self.group, self.group.neg(self.elements()))

    def __or__(self, other):
        return ElementSet(self.group, self.mask | other.mask)

    def __and__(self, other):
        return ElementSet(self.group, self.mask & other.mask)

    def __sub__(self, other):
        return ElementSet(self.group, self.mask & ~other.mask)

    def __eq__(self, other):
        return isinstance(other, ElementSet) and self.group == other.group and bool(
            np.array_equal(self.mask, other.mask)
        )

    def __le__(self, other):
        return not np.any(self.mask & ~other.mask)

    def __hash__(self):
        return hash((self.group, self.mask.tobytes()))

    def is_full(self) -> bool:
        return len(self) == self.group.size

    def is_subgroup(self) -> bool:
        return bool(self.mask[0]) and len(sym1(self)) == len(self)

    def __repr__(self):
        el = self.elements()
        body = ", ".join(map(str, el[:12].tolist())) + (", ..." if len(el) > 12 else "")
        return f"ElementSet({{{body}}}, |S|={len(el)}, h'={self.group.size})"


def _as_set(A, G) -> ElementSet:
    if isinstance(A, ElementSet):
        return A
    return ElementSet.from_elements(G, A)


def _as_list(A) -> list[int]:
    if isinstance(A, ElementSet):
        return A.elements().tolist()
    return sorted({int(a) for a in A})


# ---------------------------------------------------------------------------
# FFT helpers (exact after rounding: all values are integer counts)


def _fft(mask_or_vals, G) -> np.ndarray:
    return np.fft.rfftn(np.asarray(mask_or_vals, dtype=np.float64).reshape(G.orders))


def _ifft(F, G) -> np.ndarray:
    return np.fft.irfftn(F, s=G.orders, axes=tuple(range(len(G.orders)))).ravel()


def correlation(S: ElementSet) -> np.ndarray:
    """c[x] = |S & (S + x)| for every x."""
    G = S.group
    F = _fft(S.mask, G)
    return np.rint(_ifft(F * np.conj(F), G)).astype(np.int64)


def convolution(U: ElementSet, V: ElementSet) -> np.ndarray:
    """r[x] = #{(u, v) in U x V : u + v = x}."""
    G = U.group
    return np.rint(_ifft(_fft(U.mask, G) * _fft(V.mask, G), G)).astype(np.int64)


def growth_sizes(S: ElementSet, method: str = "fft") -> np.ndarray:
    """|S u (S + x)| for every x.

    ``fft`` uses the exact-rounded correlation; ``direct`` recomputes each
    union by index arithmetic (slow, used for independent re-checks).
    """
    G = S.group
    n = len(S)
    if method == "fft":
        return 2 * n - correlation(S)
    el = S.elements()
    out = np.empty(G.size, dtype=np.int64)
    for x in range(G.size):
        shifted = G.add(el, x)
        out[x] = 2 * n - int(np.count_nonzero(S.mask[shifted]))
    return out


# ---------------------------------------------------------------------------
# subset sums and the greedy algorithm


def subset_sums(A, G: FiniteAbelianGroup, multiset: bool = False) -> ElementSet:
    """{sum of T : T subset of A}, empty sum included.

    A is a set (duplicates collapse) unless ``multiset`` is true, in which
    case each listed entry is a separate summand.
    """
    items = [int(a) for a in A] if multiset else _as_list(A)
    S = np.zeros(G.size, dtype=bool)
    S[0] = True
    for x in items:
        if S.all():
            break
        S = S | G.roll(S, x)
    return ElementSet(G, S)


@dataclass
class GreedyTranscript:
    group: FiniteAbelianGroup
    chosen: list[int]
    sizes: list[int]  # |s(x_1..x_j)| for j = 0..k
    densities: list[float]  # delta_j, j = 0..k (delta_0 = 1/h')

    @property
    def k(self) -> int:
        return len(self.chosen)

    def omega(self, j: int, eps: float) -> ElementSet:
        return omega_set(self.chosen[:j], self.group, eps)

    def to_dict(self) -> dict:
        return {"chosen": self.chosen, "sizes": self.sizes, "densities": self.densities}


def greedy_grow(A, G: FiniteAbelianGroup, stop: float = 1.0, max_steps: int | None = None) -> GreedyTranscript:
    """Pick x_{j+1} in A maximizing |s(x_1..x_j, x)|, lowest index on ties.

    Stops once the density reaches ``stop`` or A is used up.
    """
    cand = _as_list(A)
    if not cand:
        raise ValueError("A must be non-empty")
    h = G.size
    S = ElementSet.zero(G)
    chosen, sizes, dens = [], [1], [1 / h]
    remaining = np.array(cand, dtype=np.int64)
    while remaining.size and dens[-1] < stop and (max_steps is None or len(chosen) < max_steps):
        g = growth_sizes(S)[remaining]
        i = int(np.argmax(g))
        x = int(remaining[i])
        remaining = np.delete(remaining, i)
        S = S | S.translate(x)
        chosen.append(x)
        sizes.append(len(S))
        dens.append(len(S) / h)
    return GreedyTranscript(G, chosen, sizes, dens)


def _omega_from_growth(growth, n, h, rule, eps, eps1):
    if rule == "doubling":
        return growth < (2 - eps) * n
    if rule == "dense":
        delta = n / h
        return growth < (1 - (1 - delta) ** 1.5) * h
    if rule == "increment":
        return growth < (1 - eps1) * n + eps1 * h
    raise ValueError(f"unknown omega rule {rule!r}")


def _density_rule(delta: float) -> str:
    return "doubling" if delta <= 0.5 else "dense"


def omega_set(xs, G: FiniteAbelianGroup, eps: float, method: str = "fft") -> ElementSet:
    """Elements x whose addition fails to grow s(x_1..x_j) enough.

    delta <= 1/2: |s(.., x)| < (2 - eps) delta h'; delta > 1/2:
    |s(.., x)| < (1 - (1 - delta)^{3/2}) h'.
    """
    S = subset_sums(xs, G)
    n, h = len(S), G.size
    mask = _omega_from_growth(growth_sizes(S, method), n, h, _density_rule(n / h), eps, None)
    return ElementSet(G, mask)


# ---------------------------------------------------------------------------
# Theorem 1 classifier

EPS0 = 0.5


class Alternative(enum.Enum):
    SUMS_ALL = "SUMS_ALL"
    SUBGROUP = "SUBGROUP"
    SMALL_OMEGA = "SMALL_OMEGA"


def default_params(eps: float) -> dict:
    """Parameter schedule: kappa1 = eps^2, kappa and eps1 clipped at 2^-30."""
    floor = 2.0**-30
    kappa = max(2.0 ** (-100.0 / eps), floor)
    eps1 = max(min(1e-3 * eps**3, kappa), floor)
    return {"kappa1": eps * eps, "kappa": kappa, "eps1": eps1}


def c_eps_default(eps: float) -> int:
    return math.ceil(20 / eps**2)


def k_bound(h: int, eps: float, c_loglog: float, c_eps: float) -> float:
    return (1 + eps) * math.log2(h) + c_loglog * math.log(math.log(h)) + c_eps


@dataclass
class Theorem1Report:
    alternative: Alternative
    A: list[int]
    group: FiniteAbelianGroup
    eps: float
    params: dict
    c_eps: float
    c_loglog: float
    subgroup: ElementSet | None = None
    index: int | None = None
    exceptional: list[int] = field(default_factory=list)
    chosen: list[int] = field(default_factory=list)
    omega: ElementSet | None = None
    omega_rule: str | None = None
    densities: list[float] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.chosen)

    def verify(self) -> tuple[bool, list[str]]:
        """Re-check the witness by routes independent of the classifier."""
        G, h, eps = self.group, self.group.size, self.eps
        problems = []
        if self.alternative is Alternative.SUMS_ALL:
            S = {0}
            for a in self.A:
                cur = np.fromiter(S, dtype=np.int64)
                S |= set(G.add(cur, a).tolist())
            if len(S) != h:
                problems.append(f"s(A) has {len(S)} elements, not {h}")
        elif self.alternative is Alternative.SUBGROUP:
            H = self.subgroup
            el = H.elements()
            if not H.mask[0]:
                problems.append("0 not in H")
            for x in el:
                if not H.mask[G.sub(el, int(x))].all():
                    problems.append("H not closed under subtraction")
                    break
            if len(el) == h:
                problems.append("H is not proper")
            index = h // len(el)
            if index * len(el) != h or index != self.index:
                problems.append("index mismatch")
            if not index < 2 / eps:
                problems.append(f"index {index} >= 2/eps")
            out = sorted(a for a in self.A if not H.mask[a])
            if out != sorted(self.exceptional):
                problems.append("exceptional set mismatch")
            if not len(out) <= self.c_eps:
                problems.append(f"|A minus H| = {len(out)} > c(eps) = {self.c_eps}")
        else:
            S = subset_sums(self.chosen, G)
            n = len(S)
            g = growth_sizes(S, method="direct")
            mask = _omega_from_growth(g, n, h, self.omega_rule, eps, self.params["eps1"])
            mask[np.asarray(self.chosen, dtype=np.int64)] = True
            if not np.array_equal(mask, self.omega.mask):
                problems.append("Omega is not reproduced from x_1..x_k")
            if not all(mask[a] for a in self.A):
                problems.append("A not contained in Omega")
            if not len(self.omega) <= eps * h + self.k:
                problems.append(f"|Omega| = {len(self.omega)} > eps h' + k")
            kb = k_bound(h, eps, self.c_loglog, self.c_eps)
            if not self.k < kb:
                problems.append(f"k = {self.k} >= bound {kb:.3f}")
        return (not problems), problems

    def to_dict(self) -> dict:
        out = {
            "alternative": self.alternative.value,
            "group": list(self.group.orders),
            "h": self.group.size,
            "A": self.A,
            "eps": self.eps,
            "params": self.params,
            "c_eps": self.c_eps,
            "c_loglog": self.c_loglog,
        }
        if self.alternative is Alternative.SUBGROUP:
            out.update(index=self.index, subgroup_size=len(self.subgroup), exceptional=self.exceptional)
        if self.alternative is Alternative.SMALL_OMEGA:
            out.update(
                chosen=self.chosen,
                k=self.k,
                omega_size=len(self.omega),
                omega_rule=self.omega_rule,
                densities=self.densities,
            )
        return out


def _prime_index_subgroups(G: FiniteAbelianGroup, pmax: float):
    """Characters y of prime order p < pmax, one per kernel.

    Yields an array of codes; kernels {x : <x, y> = 0} are the maximal
    subgroups of index p.
    """
    h = G.size
    ps = [p for p in range(2, int(math.ceil(pmax))) if p < pmax and h % p == 0 and _is_prime(p)]
    out = []
    for p in ps:
        el = G.elements()
        ys = el[G.order(el) == p]
        if ys.size == 0:
            continue
        multiples = np.stack([G.mul(ys, k) for k in range(1, p)])
        canon = ys[multiples.min(axis=0) == ys]
        out.extend((p, int(y)) for y in canon)
    return out


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, math.isqrt(n) + 1))


def best_maximal_subgroup(A, G: FiniteAbelianGroup, pmax: float):
    """Maximal subgroup of prime index < pmax missing the fewest elements of A.

    Ties go to the smaller index, then the smaller character code. Returns
    (count, p, mask) or None when G has no such subgroup.
    """
    chars = _prime_index_subgroups(G, pmax)
    if not chars:
        return None
    A = np.asarray(_as_list(A), dtype=np.int64)
    L = G.exponent
    w = (L // G._mod).astype(np.float64)
    Y = G.coords(np.array([y for _, y in chars])).astype(np.float64) * w
    if A.size:
        P = np.mod(G.coords(A).astype(np.float64) @ Y.T, L)
        counts = np.count_nonzero(P != 0, axis=0)
    else:
        counts = np.zeros(len(chars), dtype=np.int64)
    order = sorted(range(len(chars)), key=lambda i: (int(counts[i]), chars[i][0], chars[i][1]))
    i = order[0]
    p, y = chars[i]
    mask = G.pairing(G.elements(), y) == 0
    return int(counts[i]), p, mask


def classify_theorem1(
    A,
    G: FiniteAbelianGroup,
    eps: float = 0.1,
    *,
    eps1: float | None = None,
    c_eps: float | None = None,
    c_loglog: float = 3.0,
) -> Theorem1Report:
    """Decide which alternative holds for A in G and build its witness.

    Order: s(A) = G; then A contained in a maximal subgroup of prime index
    < 2/eps (SUBGROUP with no exceptions); otherwise grow greedily (doubling/dense thresholds while
    delta <= eps^2, then the eps1-increment threshold) until every remaining
    element of A lies in Omega. A small Omega gives SMALL_OMEGA; otherwise
    the maximal subgroups of prime index < 2/eps are scanned for SUBGROUP.
    """
    h = G.size
    if not 0 < eps < EPS0:
        raise ValueError(f"eps must lie in (0, {EPS0})")
    if h < 2:
        raise ValueError("group must have at least 2 elements")
    params = default_params(eps)
    if eps1 is not None:
        params["eps1"] = float(eps1)
    c_eps = c_eps_default(eps) if c_eps is None else c_eps
    Al = _as_list(A)
    base = dict(A=Al, group=G, eps=eps, params=params, c_eps=c_eps, c_loglog=c_loglog)

    if subset_sums(Al, G).is_full():
        return Theorem1Report(Alternative.SUMS_ALL, **base)

    # A inside a proper subgroup of small index forces s(A) != G
    best = best_maximal_subgroup(Al, G, 2 / eps)
    if best is not None and best[0] == 0:
        return Theorem1Report(Alternative.SUBGROUP, subgroup=ElementSet(G, best[2]), index=best[1], exceptional=[], **base)

    S = ElementSet.zero(G)
    chosen: list[int] = []
    dens = [1 / h]
    Amask = ElementSet.from_elements(G, Al).mask if Al else np.zeros(h, dtype=bool)
    while True:
        n = len(S)
        delta = n / h
        rule = "increment" if delta > params["kappa1"] else _density_rule(delta)
        growth = growth_sizes(S)
        omega = _omega_from_growth(growth, n, h, rule, eps, params["eps1"])
        rem = Amask.copy()
        rem[chosen] = False
        outside = rem & ~omega
        if not outside.any():
            break
        cand = np.flatnonzero(rem)
        x = int(cand[int(np.argmax(growth[cand]))])
        chosen.append(x)
        S = S | S.translate(x)
        dens.append(len(S) / h)

    omega[chosen] = True
    Om = ElementSet(G, omega)
    k = len(chosen)
    small = len(Om) <= eps * h + k and k < k_bound(h, eps, c_loglog, c_eps)
    report = Theorem1Report(
        Alternative.SMALL_OMEGA, chosen=chosen, omega=Om, omega_rule=rule, densities=dens, **base
    )
    if small:
        return report
    if best is not None and best[0] <= c_eps:
        count, p, mask = best
        H = ElementSet(G, mask)
        exc = [a for a in Al if not mask[a]]
        return Theorem1Report(Alternative.SUBGROUP, subgroup=H, index=p, exceptional=exc, **base)
    log.warning("no certifiable alternative found; emitting an unverified SMALL_OMEGA witness")
    return report


# ---------------------------------------------------------------------------
# subgroup enumeration


def _small_subgroups(G: FiniteAbelianGroup, B: int, limit: int) -> list[ElementSet]:
    """All subgroups of order <= B.

    Every subgroup is reached by a chain of prime-index steps K < <K, x>, so
    only x of prime order modulo K are adjoined.
    """
    el = G.elements()
    primes = [p for p in range(2, G.size + 1) if G.size % p == 0 and _is_prime(p)]
    start = ElementSet.zero(G)
    seen = {start.mask.tobytes(): start}
    frontier = [start]
    while frontier:
        nxt = []
        for K in frontier:
            size = len(K)
            for p in primes:
                if size * p > B:
                    continue
                pool = np.flatnonzero(K.mask[G.mul(el, p)] & ~K.mask)
                covered = K.mask.copy()
                for x in pool:
                    if covered[x]:
                        continue
                    acc, cur = K.mask.copy(), K.mask
                    for _ in range(p - 1):
                        cur = G.roll(cur, x)
                        acc |= cur
                    covered |= acc
                    key = acc.tobytes()
                    if key not in seen:
                        K2 = ElementSet(G, acc)
                        seen[key] = K2
                        nxt.append(K2)
                        if len(seen) > limit:
                            raise RuntimeError(f"more than {limit} subgroups; raise the limit")
        frontier = nxt
    return list(seen.values())


def annihilator(K: ElementSet) -> ElementSet:
    """{x : <x, k> = 0 for all k in K}."""
    G = K.group
    el = G.elements()
    mask = np.ones(G.size, dtype=bool)
    gens = K.elements()
    for k in gens:
        if not mask.any():
            break
        mask &= G.pairing(el, int(k)) == 0
    return ElementSet(G, mask)


def subgroups_up_to_index(G: FiniteAbelianGroup, B: int, limit: int = 100_000) -> list[ElementSet]:
    """All subgroups H with [G : H] <= B, G itself first.

    Uses duality: H = K^perp for the subgroups K of order [G : H].
    """
    if B < 1:
        raise ValueError("B must be >= 1")
    subs = [annihilator(K) for K in _small_subgroups(G, B, limit)]
    subs.sort(key=lambda H: (-len(H), H.elements().tolist()))
    return subs


def all_subgroups(G: FiniteAbelianGroup, limit: int = 5000) -> list[ElementSet] | None:
    """Every subgroup of G, or None if there are more than ``limit``."""
    try:
        return _small_subgroups(G, G.size, limit)
    except RuntimeError:
        return None


# ---------------------------------------------------------------------------
# additive combinatorics diagnostics


def additive_energy(U: ElementSet, V: ElementSet | None = None) -> int:
    """#{(u1, v1, u2, v2) : u1 + v1 = u2 + v2}; E(U, U) by default."""
    r = convolution(U, U if V is None else V)
    return int(np.sum(r * r))


def sym1(T: ElementSet) -> ElementSet:
    """Symmetry group {x : T + x = T}."""
    return ElementSet(T.group, correlation(T) == len(T))


def difference_set(T: ElementSet) -> ElementSet:
    return ElementSet(T.group, correlation(T) > 0)


@dataclass(frozen=True)
class KneserResult:
    holds: bool
    diff_size: int
    set_size: int
    sym_size: int

    @property
    def bound(self) -> int:
        return 2 * self.set_size - self.sym_size


def kneser_check(T: ElementSet) -> KneserResult:
    """|T - T| >= 2|T| - |Sym_1(T - T)|."""
    if len(T) == 0:
        raise ValueError("T must be non-empty")
    D = difference_set(T)
    s = len(sym1(D))
    return KneserResult(len(D) >= 2 * len(T) - s, len(D), len(T), s)


@dataclass
class Lemma1Witness:
    kappa: float
    norm2: float
    window: tuple[float, float]
    subgroup: ElementSet | None = None
    shift: int | None = None
    coset: ElementSet | None = None
    distance: float | None = None
    bound: float | None = None
    meets_bound: bool | None = None
    exhaustive: bool = False
    candidates: int = 0

    @property
    def found(self) -> bool:
        return self.subgroup is not None


def _cosets(H: ElementSet):
    G = H.group
    left = np.ones(G.size, dtype=bool)
    while left.any():
        r = int(np.argmax(left))
        K = G.roll(H.mask, r)
        left &= ~K
        yield r, K


def _candidate_subgroups(mu: np.ndarray, G: FiniteAbelianGroup, lo: float, hi: float):
    """Subgroups suggested by mu: spans of popular differences and level sets."""
    cands = {}
    F = _fft(mu, G)
    corr = _ifft(F * np.conj(F), G)
    n2 = float(np.sum(mu * mu))
    for tau in (0.95, 0.9, 0.75, 0.5, 0.25, 0.1):
        H = G.generated(np.flatnonzero(corr >= tau * n2 - 1e-15))
        cands.setdefault(H.mask.tobytes(), H)
    levels = np.unique(mu[mu > 0])[::-1][:64]
    for t in levels:
        T = np.flatnonzero(mu >= t)
        H = G.generated(G.sub(T, int(T[0])))
        cands.setdefault(H.mask.tobytes(), H)
    return [H for H in cands.values() if lo < len(H) < hi]


def lemma1_witness(mu, G: FiniteAbelianGroup, kappa_max: float = 0.1, c: float = 1.0,
                   subgroup_limit: int = 5000) -> Lemma1Witness:
    """Closest normalized coset indicator to mu, when ||mu*mu|| > (1-kappa)||mu||.

    kappa is measured as 1 - ||mu*mu||_2 / ||mu||_2. Subgroups with
    |H| in (||mu||^-2 / 2, 2 ||mu||^-2) are scanned exhaustively when G has
    at most ``subgroup_limit`` subgroups; otherwise a candidate family built
    from mu is used and ``exhaustive`` is False.
    """
    mu = np.asarray(mu, dtype=np.float64).ravel()
    if mu.shape[0] != G.size or np.any(mu < 0) or abs(mu.sum() - 1) > 1e-9:
        raise ValueError("mu must be a probability vector on G")
    F = _fft(mu, G)
    conv = _ifft(F * F, G)
    n2 = float(np.sqrt(np.sum(mu * mu)))
    kappa = max(0.0, 1.0 - float(np.sqrt(np.sum(conv * conv))) / n2)
    lo, hi = 0.5 / n2**2, 2.0 / n2**2
    w = Lemma1Witness(kappa=kappa, norm2=n2, window=(lo, hi))
    if kappa > kappa_max:
        return w
    subs = all_subgroups(G, subgroup_limit)
    if subs is not None:
        cands = [H for H in subs if lo < len(H) < hi]
        w.exhaustive = True
    else:
        cands = _candidate_subgroups(mu, G, lo, hi)
    w.candidates = len(cands)
    best = None
    for H in cands:
        m = len(H)
        for r, K in _cosets(H):
            d = float(np.abs(mu[K] - 1.0 / m).sum() + (1.0 - mu[K].sum()))
            key = (d, m, r)
            if best is None or key < best[0]:
                best = (key, H, r, K)
    if best is None:
        return w
    (d, _, r), H, _, K = best
    w.subgroup, w.coset, w.distance = H, ElementSet(G, K), d
    # coset K = H + r = H - z with z = -r
    w.shift = int(G.neg(r))
    w.bound = c * kappa ** (1 / 12)
    w.meets_bound = d <= w.bound
    return w
