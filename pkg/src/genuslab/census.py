"""Desk-scale counting experiments over sieve tables and representation bitmaps.

Every experiment returns a ``CensusReport``: rows of observed counts next to
the predicted shape they are compared with. Predicted values name the shape
in ``formula``; constants the theory leaves open are set to 1 and only
ratios and their trends are meant to be read.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from math import isqrt

import numpy as np
from scipy.integrate import quad

from .genus import genus_partition
from .kernels import BACKEND
from .qforms import ClassGroup, QuadForm, as_discriminant, kronecker_table, primes_to_classes, represented_mask
from .sieve import primes_up_to, segment, spf_table, squarefree_mask

SCHEMA = 1
DELTA_GRID = (0.0, 0.01, 0.02, 0.05, 0.1)
DEFAULT_MEM_MB = 2048
SEGMENT = 1 << 22


class MemoryBudgetError(RuntimeError):
    pass


def mem_budget_bytes() -> int:
    return int(float(os.environ.get("GENUSLAB_MEM_MB", DEFAULT_MEM_MB)) * 2**20)


def _check_budget(nbytes: int, what: str):
    budget = mem_budget_bytes()
    if nbytes > budget:
        raise MemoryBudgetError(
            f"{what} needs ~{nbytes / 2**20:.0f} MB, over the {budget / 2**20:.0f} MB budget "
            "(GENUSLAB_MEM_MB); use segmented mode"
        )


# ---------------------------------------------------------------------------
# reports

CSV_COLUMNS = ["experiment", "D", "X", "a", "k", "r", "C", "variant", "observed", "predicted", "ratio", "formula", "runtime_ms"]


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.12g}"
    return str(v)


@dataclass
class CensusRow:
    experiment: str
    D: int | None
    X: int
    variant: str
    observed: float
    predicted: float | None = None
    formula: str = ""
    a: int | None = None
    k: int | None = None
    r: int | None = None
    C: str | None = None

    @property
    def ratio(self) -> float | None:
        if self.predicted in (None, 0):
            return None
        return self.observed / self.predicted


@dataclass
class CensusReport:
    experiment: str
    D: int | None
    X: int
    rows: list[CensusRow] = field(default_factory=list)
    params: dict = field(default_factory=dict)
    runtime_ms: float = 0.0

    def row(self, variant: str, **kw) -> CensusRow:
        for r in self.rows:
            if r.variant == variant and all(getattr(r, k) == v for k, v in kw.items()):
                return r
        raise KeyError(variant)

    def observed(self, variant: str, **kw):
        return self.row(variant, **kw).observed

    def to_records(self) -> list[dict]:
        out = []
        for r in self.rows:
            d = {c: getattr(r, c, None) for c in CSV_COLUMNS if c not in ("ratio", "runtime_ms")}
            d["ratio"] = r.ratio
            d["runtime_ms"] = self.runtime_ms
            out.append(d)
        return out

    def to_csv(self, header: bool = True) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(CSV_COLUMNS)
        for rec in self.to_records():
            w.writerow([_fmt(rec[c]) for c in CSV_COLUMNS])
        return buf.getvalue()

    def to_dict(self) -> dict:
        rows = []
        for rec in self.to_records():
            rec = {k: (float(v) if isinstance(v, np.floating) else int(v) if isinstance(v, np.integer) else v) for k, v in rec.items()}
            rec.pop("runtime_ms")
            rows.append(rec)
        return {
            "schema": SCHEMA,
            "experiment": self.experiment,
            "D": self.D,
            "X": self.X,
            "params": self.params,
            "rows": rows,
            "runtime_ms": self.runtime_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = (time.perf_counter() - self.t0) * 1000.0


# ---------------------------------------------------------------------------
# tables


@dataclass
class SieveTables:
    X: int
    spf: np.ndarray
    squarefree: np.ndarray
    primes: np.ndarray
    D: int | None = None
    chi: np.ndarray | None = None  # chi_D(n) for 0 <= n <= X

    def pi(self, x: int) -> int:
        return int(np.searchsorted(self.primes, x, side="right"))

    @property
    def is_prime(self) -> np.ndarray:
        m = np.zeros(self.X + 1, dtype=bool)
        m[self.primes] = True
        return m

    def chi_primes(self) -> np.ndarray:
        return self.chi[self.primes]


def build_tables(X: int, D: int | None = None) -> SieveTables:
    """spf, squarefree mask and primes up to X; chi_D on [0, X] if D is given."""
    if X < 2:
        raise ValueError("X must be >= 2")
    _check_budget(6 * (X + 1), "sieve tables")
    spf = spf_table(X)
    primes = np.flatnonzero(spf == np.arange(X + 1)).astype(np.int64)
    primes = primes[primes >= 2]
    chi = kronecker_table(D, X + 1) if D is not None else None
    return SieveTables(X, spf, squarefree_mask(X), primes, D, chi)


def Li(xi: float) -> float:
    """Offset logarithmic integral: integral of dt / log t over [2, xi]."""
    if xi <= 2:
        return 0.0
    pts = [2.0]
    while pts[-1] * 10 < xi:
        pts.append(pts[-1] * 10)
    pts.append(float(xi))
    return math.fsum(
        quad(lambda t: 1.0 / math.log(t), a, b, epsrel=1e-12, epsabs=0, limit=200)[0] for a, b in zip(pts, pts[1:])
    )


# ---------------------------------------------------------------------------
# representation bitmaps


@dataclass
class RepresentationBitmaps:
    G: ClassGroup
    lo: int
    hi: int
    bits: np.ndarray  # (h, hi - lo) bool
    primitive: bool = False

    def of(self, i: int) -> np.ndarray:
        return self.bits[i]

    def any(self) -> np.ndarray:
        return self.bits.any(axis=0)

    def genus_any_all(self, classes) -> tuple[np.ndarray, np.ndarray]:
        sub = self.bits[list(classes)]
        return sub.any(axis=0), sub.all(axis=0)

    def representing(self, n: int) -> frozenset:
        return frozenset(int(i) for i in np.flatnonzero(self.bits[:, n - self.lo]))


def build_bitmaps(G: ClassGroup, lo: int, hi: int, primitive: bool = False, threads: int = 1) -> RepresentationBitmaps:
    """One bitmap per reduced form over [lo, hi), filled in parallel."""
    bits = np.zeros((G.h, max(hi - lo, 0)), dtype=bool)

    def fill(i):
        bits[i] = represented_mask(G.forms[i], lo, hi, primitive)

    if threads > 1 and G.h > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            list(ex.map(fill, range(G.h)))
    else:
        for i in range(G.h):
            fill(i)
    return RepresentationBitmaps(G, lo, hi, bits, primitive)


def _windows(lo: int, hi: int, segmented: bool, h: int):
    """Half-open windows covering [lo, hi)."""
    if not segmented:
        _check_budget((h + 3) * (hi - lo), "representation bitmaps")
        yield lo, hi
        return
    step = max(1, min(SEGMENT, mem_budget_bytes() // (4 * (h + 3))))
    for s in range(lo, hi, step):
        yield s, min(hi, s + step)


def _group(D) -> ClassGroup:
    return D if isinstance(D, ClassGroup) else ClassGroup(D)


def _exceptional_mask(bm: RepresentationBitmaps, genera) -> np.ndarray:
    exc = np.zeros(bm.bits.shape[1], dtype=bool)
    for gen in genera:
        if len(gen) < 2:
            continue
        a, b = bm.genus_any_all(gen)
        exc |= a & ~b
    return exc


def _shape_rows(rep: CensusReport, counts: dict, X: int, power: float, formula: str, **kw):
    L = math.log(X)
    for variant, obs in counts.items():
        for dp in DELTA_GRID:
            rep.rows.append(
                CensusRow(rep.experiment, rep.D, X, f"{variant}" if dp == 0 else f"{variant}:delta'={dp}", obs,
                          X / L ** (power + dp), formula, **kw)
            )


# ---------------------------------------------------------------------------
# experiments


def u_f(f, X: int, primitive: bool = False) -> int:
    """Number of 1 <= n <= X represented by f."""
    if X < 1:
        return 0
    return int(np.count_nonzero(represented_mask(f, 1, X + 1, primitive)))


def u_f_report(D, X: int, threads: int = 1) -> CensusReport:
    G = _group(D)
    rep = CensusReport("u_f", G.D, X, params={"backend": BACKEND})
    with _Timer() as t:
        for i, f in enumerate(G.forms):
            for prim in (False, True):
                rep.rows.append(CensusRow("u_f", G.D, X, "primitive" if prim else "all", u_f(f, X, prim),
                                          X / math.sqrt(math.log(X)) if X > 2 else None, "U_f_vs_X_over_sqrt_logX",
                                          C=str(f)))
    rep.runtime_ms = t.ms
    return rep


def exceptional_count(D, X: int, threads: int = 1, segmented: bool = False) -> CensusReport:
    """Squarefree n represented by some form but not by every form of that form's genus."""
    G = _group(D)
    part = genus_partition(G)
    rep = CensusReport("exceptional", G.D, X, params={"threads": threads, "segmented": segmented, "backend": BACKEND})
    half = X // 2
    dyadic = cumulative = 0
    with _Timer() as t:
        if any(len(g) > 1 for g in part.genera):
            base = primes_up_to(isqrt(X) + 1)
            for lo, hi in _windows(1, X + 1, segmented, G.h):
                bm = build_bitmaps(G, lo, hi, threads=threads)
                _, sq = segment(lo, hi, base)
                exc = _exceptional_mask(bm, part.genera) & sq
                cumulative += int(np.count_nonzero(exc))
                s = max(half + 1, lo)
                if s < hi:
                    dyadic += int(np.count_nonzero(exc[s - lo:]))
    _shape_rows(rep, {"dyadic": dyadic, "cumulative": cumulative}, X, 0.5, "exceptional_bound")
    rep.runtime_ms = t.ms
    return rep


def shifted_prime_exceptional_count(D, X: int, a: int, threads: int = 1, segmented: bool = False) -> CensusReport:
    """Primes q with q + a <= X, q + a squarefree and exceptional."""
    G = _group(D)
    part = genus_partition(G)
    rep = CensusReport("shifted", G.D, X, params={"a": a, "threads": threads, "segmented": segmented, "backend": BACKEND})
    half = X // 2
    dyadic = cumulative = 0
    with _Timer() as t:
        if any(len(g) > 1 for g in part.genera):
            base = primes_up_to(isqrt(X + abs(a)) + 2)
            for lo, hi in _windows(max(1, 2 + a), X + 1, segmented, G.h):
                bm = build_bitmaps(G, lo, hi, threads=threads)
                _, sq = segment(lo, hi, base)
                qprime, _ = segment(lo - a, hi - a, base)
                hit = _exceptional_mask(bm, part.genera) & sq & qprime
                cumulative += int(np.count_nonzero(hit))
                s = max(half + 1, lo)
                if s < hi:
                    dyadic += int(np.count_nonzero(hit[s - lo:]))
    _shape_rows(rep, {"dyadic": dyadic, "cumulative": cumulative}, X, 1.5, "shifted_exceptional_bound", a=a)
    rep.runtime_ms = t.ms
    return rep


def corollary4_count(f, X: int, a: int, threads: int = 1, segmented: bool = False) -> CensusReport:
    """Primes q with q + a <= X represented by f (any and primitive representations)."""
    f = f if isinstance(f, QuadForm) else QuadForm(*f)
    rep = CensusReport("corollary4", f.discriminant, X, params={"a": a, "form": str(f), "segmented": segmented, "backend": BACKEND})
    half = X // 2
    counts = {"dyadic": 0, "cumulative": 0, "dyadic:primitive": 0, "cumulative:primitive": 0}
    with _Timer() as t:
        base = primes_up_to(isqrt(X + abs(a)) + 2)
        for lo, hi in _windows(max(1, 2 + a), X + 1, segmented, 2):
            qprime, _ = segment(lo - a, hi - a, base)
            s = max(half + 1, lo) - lo
            for prim in (False, True):
                hit = represented_mask(f, lo, hi, prim) & qprime
                sfx = ":primitive" if prim else ""
                counts["cumulative" + sfx] += int(np.count_nonzero(hit))
                if s < hi - lo:
                    counts["dyadic" + sfx] += int(np.count_nonzero(hit[s:]))
    L = math.log(X)
    for variant, obs in counts.items():
        rep.rows.append(CensusRow("corollary4", f.discriminant, X, variant, obs, X / L**1.5, "shifted_representable_lower", a=a, C=str(f)))
    rep.runtime_ms = t.ms
    return rep


@dataclass
class PrimeClassHistogram:
    D: int
    xi: int
    h: int
    classes: list[int]  # one representative per inverse pair
    forms: list[str]
    ambiguous: list[bool]
    observed: list[int]
    predicted: list[float]
    split_total: int
    ramified_total: int
    ramified: dict = field(default_factory=dict)  # class -> ramified primes (flagged)

    @property
    def eps(self) -> list[int]:
        return [2 if a else 1 for a in self.ambiguous]

    def ratios(self) -> list[float]:
        return [o / p for o, p in zip(self.observed, self.predicted)]

    def pi_C(self, i: int, G: ClassGroup) -> int:
        j = min(i, int(G.inverse[i]))
        return self.observed[self.classes.index(j)]


def prime_class_histogram(D, xi: int, tables: SieveTables | None = None) -> PrimeClassHistogram:
    """pi_C(xi) per inverse pair {C, C^-1} vs Li(xi) / (eps(C) h).

    Ramified primes with a prime form are counted in their (ambiguous) class
    and listed separately in ``ramified``.
    """
    G = _group(D)
    primes = tables.primes[tables.primes <= xi] if tables is not None else primes_up_to(xi)
    cls, st = primes_to_classes(primes, G)
    pair = np.minimum(cls, G.inverse[np.maximum(cls, 0)])
    reps = sorted({min(i, int(G.inverse[i])) for i in range(G.h)})
    li = Li(xi)
    obs, pred, amb = [], [], []
    ramified = {}
    for c in reps:
        sel = (st >= 0) & (pair == c)
        obs.append(int(np.count_nonzero(sel)))
        a = c in G.ambiguous
        amb.append(a)
        pred.append(li / ((2 if a else 1) * G.h))
        r = primes[sel & (st == 0)].tolist()
        if r:
            ramified[c] = r
    return PrimeClassHistogram(G.D, xi, G.h, reps, [str(G.forms[c]) for c in reps], amb, obs, pred,
                               int(np.count_nonzero(st == 1)), int(np.count_nonzero(st == 0)), ramified)


def prime_class_report(D, xi: int) -> CensusReport:
    rep = CensusReport("primes-by-class", as_discriminant(D).value if not isinstance(D, ClassGroup) else D.D, xi, params={"backend": BACKEND})
    with _Timer() as t:
        H = prime_class_histogram(D, xi)
    for f, o, p in zip(H.forms, H.observed, H.predicted):
        rep.rows.append(CensusRow("primes-by-class", H.D, xi, "pi_C", o, p, "prime_class_density", C=f))
    rep.rows.append(CensusRow("primes-by-class", H.D, xi, "split_total", H.split_total))
    rep.rows.append(CensusRow("primes-by-class", H.D, xi, "ramified_total", H.ramified_total))
    rep.runtime_ms = t.ms
    return rep


def split_reciprocal_sum(D, X: int, tables: SieveTables | None = None) -> CensusReport:
    """sum of 1/p over p < X with chi_D(p) != -1, against (1/2) log log X."""
    D = as_discriminant(D).value if not isinstance(D, ClassGroup) else D.D
    rep = CensusReport("split-reciprocal", D, X, params={"backend": BACKEND})
    with _Timer() as t:
        primes = tables.primes if tables is not None else primes_up_to(X)
        primes = primes[primes < X]
        chi = kronecker_table(D, int(primes.max()) + 1 if primes.size else 1)[primes]
        s = math.fsum((1.0 / primes[chi != -1].astype(np.float64)).tolist())
    rep.rows.append(CensusRow("split-reciprocal", D, X, "sum", s, 0.5 * math.log(math.log(X)), "half_loglog"))
    rep.runtime_ms = t.ms
    return rep


def _factor_stats(tables: SieveTables, lo: int = 1):
    """omega(n), all-split (chi = +1) and all-nonsplit-free (chi != -1) flags for squarefree n."""
    n = np.arange(lo, tables.X + 1, dtype=np.int64)
    n = n[tables.squarefree[n]]
    cur = n.copy()
    omega = np.zeros(n.size, dtype=np.int8)
    split = np.ones(n.size, dtype=bool)
    nonin = np.ones(n.size, dtype=bool)
    active = np.flatnonzero(cur > 1)
    while active.size:
        p = tables.spf[cur[active]].astype(np.int64)
        c = tables.chi[p]
        omega[active] += 1
        split[active] &= c == 1
        nonin[active] &= c != -1
        cur[active] //= p
        active = active[cur[active] > 1]
    return n, omega, split, nonin


def k_factor_histogram(D, X: int, tables: SieveTables | None = None, kmax: int = 12) -> CensusReport:
    """Squarefree n <= X whose prime factors all split, bucketed by omega(n)."""
    G = _group(D)
    rep = CensusReport("kfactor", G.D, X, params={"backend": BACKEND})
    with _Timer() as t:
        tables = tables if tables is not None and tables.chi is not None and tables.X >= X else build_tables(X, G.D)
        n, omega, split, _ = _factor_stats(tables, 2)
        keep = (n <= X) & split
        counts = np.bincount(omega[keep], minlength=kmax + 1)
    L, LL = math.log(X), math.log(math.log(X))
    total = 0
    for k in range(1, kmax + 1):
        pred = X / L / 2**k * LL ** (k - 1) / math.factorial(k - 1)
        rep.rows.append(CensusRow("kfactor", G.D, X, "bucket", int(counts[k]), pred, "split_factor_count", k=k))
        total += int(counts[k])
    rep.rows.append(CensusRow("kfactor", G.D, X, "sum", total, X / math.sqrt(L), "split_factor_count_sum"))
    rep.runtime_ms = t.ms
    return rep


def lemma3_count(D, X: int, r: int, eps: float = 0.1, tables: SieveTables | None = None) -> CensusReport:
    """n < X squarefree, represented by some class, with at most r prime factors."""
    G = _group(D)
    if not 0 <= r <= 12:
        raise ValueError("r must lie in [0, 12]")
    rep = CensusReport("lemma3", G.D, X, params={"eps": eps, "backend": BACKEND})
    with _Timer() as t:
        tables = tables if tables is not None and tables.chi is not None and tables.X >= X else build_tables(X, G.D)
        n, omega, _, _ = _factor_stats(tables, 1)
        rep_any = build_bitmaps(G, 1, X).any()
        keep = (n < X) & rep_any[np.minimum(n, X - 1) - 1]
        obs = int(np.count_nonzero(keep & (omega <= r)))
    L, LL = math.log(X), math.log(math.log(X))
    if r == 0:
        pred = None
    elif r == 1:
        pred = X / L
    else:
        pred = r * X / L * (math.e * (0.5 + eps) * LL / (r - 1)) ** (r - 1)
    rep.rows.append(CensusRow("lemma3", G.D, X, "count", obs, pred, "bounded_omega_count", r=r))
    rep.runtime_ms = t.ms
    return rep


@dataclass
class ResidueFamily:
    moduli: np.ndarray  # prime l, repeated once per residue
    residues: np.ndarray
    sizes: dict  # l -> |R_l|

    @classmethod
    def from_dict(cls, fam: dict) -> "ResidueFamily":
        mods, res = [], []
        sizes = {}
        for ell, R in sorted(fam.items()):
            R = sorted({int(r) % ell for r in R})
            if len(R) > 2:
                raise ValueError("|R_l| must be 0, 1 or 2")
            sizes[ell] = len(R)
            mods += [ell] * len(R)
            res += R
        return cls(np.array(mods, dtype=np.int64), np.array(res, dtype=np.int64), sizes)

    @classmethod
    def random(cls, rng: np.random.Generator, primes: np.ndarray) -> "ResidueFamily":
        fam = {}
        sizes = rng.integers(0, 3, size=primes.size)
        for ell, k in zip(primes.tolist(), sizes.tolist()):
            k = min(k, ell)
            fam[ell] = rng.choice(ell, size=k, replace=False).tolist() if k else []
        return cls.from_dict(fam)

    def main_term(self, Y: int) -> float:
        return Y * math.exp(math.fsum(math.log1p(-k / ell) if k < ell else -math.inf for ell, k in self.sizes.items() if k))


@dataclass(frozen=True)
class SieveBoundResult:
    Y: int
    observed: int
    main_term: float
    bound: float

    @property
    def holds(self) -> bool:
        return self.observed <= self.bound

    @property
    def ratio(self) -> float:
        return self.observed / self.main_term if self.main_term else math.inf


def lemma4_count(Y: int, family: ResidueFamily | dict) -> SieveBoundResult:
    """n in [1, Y) with n mod l outside R_l for every l, against the sieve bound."""
    from . import kernels

    fam = family if isinstance(family, ResidueFamily) else ResidueFamily.from_dict(family)
    obs = int(kernels.residue_sieve_count(Y, fam.moduli, fam.residues))
    main = fam.main_term(Y)
    bound = math.log(math.log(Y)) ** 3 * main + Y / math.log(Y) ** 10
    return SieveBoundResult(Y, obs, main, bound)


def lemma4_report(Y: int, families: int = 100, seed: int = 0, zmax: int | None = None) -> CensusReport:
    """Random residue families over primes l < zmax (default Y)."""
    rng = np.random.default_rng(seed)
    zmax = Y if zmax is None else zmax
    primes = primes_up_to(zmax - 1)
    rep = CensusReport("lemma4", None, Y, params={"seed": seed, "families": families, "zmax": zmax, "backend": BACKEND})
    with _Timer() as t:
        for j in range(families):
            z = int(rng.integers(3, zmax + 1))
            fam = ResidueFamily.random(rng, primes[primes < z])
            res = lemma4_count(Y, fam)
            rep.rows.append(CensusRow("lemma4", None, Y, "family", res.observed, res.bound, "residue_sieve_bound", k=j))
        prim = ResidueFamily.from_dict({ell: [0] for ell in primes_up_to(isqrt(Y)).tolist()})
        res = lemma4_count(Y, prim)
        rep.rows.append(CensusRow("lemma4", None, Y, "primality", res.observed, res.bound, "residue_sieve_bound"))
    rep.runtime_ms = t.ms
    return rep


def lemma5_count(D, Y: int, C: int, family: dict | None = None, tables: SieveTables | None = None) -> CensusReport:
    """Primes p < Y in the class pair of C avoiding R_l for l < sqrt(Y)."""
    G = _group(D)
    rep = CensusReport("lemma5", G.D, Y, params={"class": str(G.forms[C]), "backend": BACKEND})
    with _Timer() as t:
        primes = tables.primes[tables.primes < Y] if tables is not None else primes_up_to(Y - 1)
        cls, st = primes_to_classes(primes, G)
        keep = (st >= 0) & ((cls == C) | (cls == G.inverse[C]))
        z = isqrt(Y - 1) + 1
        for ell, R in sorted((family or {}).items()):
            if ell >= z:
                continue
            for r in R:
                keep &= (primes % ell) != (r % ell)
        obs = int(np.count_nonzero(keep))
    pred = Y / (G.h * math.log(Y) ** 2)
    rep.rows.append(CensusRow("lemma5", G.D, Y, "count", obs, pred, "class_prime_residue_shape", C=str(G.forms[C])))
    rep.runtime_ms = t.ms
    return rep


def generic_lemma5_family(Y: int, seed: int = 0) -> dict:
    """R_l = {0, xi_l} with random xi_l for odd l < sqrt(Y); R_2 = {0}."""
    rng = np.random.default_rng(seed)
    fam = {2: [0]}
    for ell in primes_up_to(isqrt(Y - 1)).tolist():
        if ell > 2:
            fam[ell] = sorted({0, int(rng.integers(0, ell))})
    return fam


def units(D: int) -> int:
    return {-3: 6, -4: 4}.get(D, 2)


def ideal_count(D, x: int) -> CensusReport:
    """sum_{n <= x} sum_{d | n} chi_D(d) = sum_{d <= x} chi_D(d) floor(x/d), against c_1 x."""
    G = _group(D)
    if not G.discriminant.is_fundamental:
        raise ValueError("ideal_count needs a fundamental discriminant")
    rep = CensusReport("ideals", G.D, x, params={"backend": BACKEND})
    with _Timer() as t:
        d = np.arange(1, x + 1, dtype=np.int64)
        chi = kronecker_table(G.D, x + 1)[1:].astype(np.int64)
        obs = int(np.sum(chi * (x // d)))
    c1 = 2 * math.pi * G.h / (units(G.D) * math.sqrt(-G.D))
    rep.rows.append(CensusRow("ideals", G.D, x, "count", obs, c1 * x, "ideal_density"))
    rep.params["c1"] = c1
    rep.runtime_ms = t.ms
    return rep


def ideal_norm_counts(D: int, N: int) -> np.ndarray:
    """r(n) = sum_{d | n} chi_D(d) for 0 <= n <= N."""
    chi = kronecker_table(D, N + 1).astype(np.int64)
    r = np.zeros(N + 1, dtype=np.int64)
    for d in range(1, N + 1):
        if chi[d]:
            r[d::d] += chi[d]
    return r


def multiclass_genus_discriminants(count: int, start: int = 3) -> list[int]:
    """The first ``count`` discriminants (by |D|) having a genus with >= 2 classes."""
    out = []
    m = start
    while len(out) < count:
        if m % 4 in (0, 3):
            G = ClassGroup(-m)
            if G.h > G.genera_count:
                out.append(-m)
        m += 1
    return out
