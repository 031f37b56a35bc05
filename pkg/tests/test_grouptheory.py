import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from genuslab.grouptheory import (
    Alternative,
    ElementSet,
    FiniteAbelianGroup,
    additive_energy,
    all_subgroups,
    annihilator,
    c_eps_default,
    classify_theorem1,
    convolution,
    correlation,
    difference_set,
    greedy_grow,
    growth_sizes,
    k_bound,
    kneser_check,
    lemma1_witness,
    omega_set,
    subgroups_up_to_index,
    subset_sums,
    sym1,
)

orders_st = st.lists(st.integers(1, 12), min_size=1, max_size=3).filter(lambda o: 2 <= math.prod(o) <= 600)


def random_set(G, rng, p=0.3):
    m = rng.random(G.size) < p
    m[rng.integers(G.size)] = True
    return ElementSet(G, m)


def brute_subset_sums(A, G):
    S = {0}
    for a in A:
        S |= {int(G.add(s, a)) for s in S}
    return S


def brute_subgroups(G):
    """All subsets closed under subtraction, by closure of generator sets."""
    seen = set()
    els = range(G.size)
    for r in range(0, G.rank + 1):
        for gens in itertools.combinations(els, r):
            H = G.generated(list(gens))
            seen.add(tuple(H.elements().tolist()))
    return seen


def test_group_basics():
    G = FiniteAbelianGroup([2, 6])
    assert G.size == 12 and G.exponent == 6 and G.rank == 2 and not G.is_cyclic
    x = G.index([1, 5])
    assert G.coords(G.add(x, x)).tolist() == [0, 4]
    assert int(G.add(x, G.neg(x))) == 0
    assert int(G.order(x)) == 6


def test_subset_sums_examples():
    G5 = FiniteAbelianGroup([5])
    assert subset_sums([1, 2], G5).elements().tolist() == [0, 1, 2, 3]
    assert subset_sums([1], FiniteAbelianGroup([2])).is_full()
    assert subset_sums([2, 4], FiniteAbelianGroup([6])).elements().tolist() == [0, 2, 4]
    # multiset: repeated summands count separately
    assert subset_sums([1, 1], G5).elements().tolist() == [0, 1]
    assert subset_sums([1, 1], G5, multiset=True).elements().tolist() == [0, 1, 2]


@settings(max_examples=100, deadline=None)
@given(orders_st, st.lists(st.integers(0, 10**6), max_size=8))
def test_subset_sums_properties(orders, raw):
    G = FiniteAbelianGroup(orders)
    A = sorted({a % G.size for a in raw})
    S = subset_sums(A, G)
    assert set(S.elements().tolist()) == brute_subset_sums(A, G)
    assert len(S) <= min(2 ** len(A), G.size)
    for x in range(min(G.size, 20)):
        if x in A:
            continue
        # s(A + x) = s(A) u (s(A) + x)
        assert subset_sums(A + [x], G) == (S | S.translate(x))


def test_fft_routines_match_direct():
    rng = np.random.default_rng(3)
    for orders in ([12], [4, 6], [2, 2, 8]):
        G = FiniteAbelianGroup(orders)
        U, V = random_set(G, rng), random_set(G, rng)
        conv = convolution(U, V)
        corr = correlation(U)
        for z in range(G.size):
            assert conv[z] == sum(1 for u in U.elements() for v in V.elements() if G.add(u, v) == z)
            assert corr[z] == len(U & U.translate(z))
        assert np.array_equal(growth_sizes(U), growth_sizes(U, method="direct"))


def test_expectation_and_pointwise_bounds():
    rng = np.random.default_rng(7)
    for _ in range(50):
        G = FiniteAbelianGroup([int(rng.integers(2, 40))])
        S = random_set(G, rng)
        n, h = len(S), G.size
        g = growth_sizes(S)
        assert int(g.sum()) == 2 * n * h - n * n  # mean equals delta (2 - delta) h'
        assert g.max() <= min(2 * n, h)


def test_greedy_examples():
    G8 = FiniteAbelianGroup([8])
    tr = greedy_grow(range(8), G8)
    first = next(i for i, x in enumerate(tr.chosen) if x != 0)
    assert tr.densities[-1] == 1.0 and len(tr.chosen) - first <= 4
    tr = greedy_grow([0], G8)
    assert tr.densities == [1 / 8, 1 / 8]
    tr = greedy_grow([1], FiniteAbelianGroup([64]))
    assert tr.k == 1 and tr.densities[-1] == 2 / 64


@settings(max_examples=60, deadline=None)
@given(orders_st, st.lists(st.integers(0, 10**6), min_size=1, max_size=10))
def test_greedy_density_step(orders, raw):
    G = FiniteAbelianGroup(orders)
    tr = greedy_grow([a % G.size for a in raw], G)
    for a, b in zip(tr.densities, tr.densities[1:]):
        assert b <= min(2 * a, 1.0) + 1e-12
    # each pick maximizes the growth among the remaining candidates
    S = ElementSet.zero(G)
    rem = sorted({a % G.size for a in raw})
    for x in tr.chosen:
        g = growth_sizes(S)
        assert g[x] == max(g[r] for r in rem)
        rem.remove(x)
        S = S | S.translate(x)


def test_omega_examples():
    G5 = FiniteAbelianGroup([5])
    assert omega_set([], G5, 0.1).elements().tolist() == [0]
    # s = {0, 1}: x = 1 and x = 4 only reach 3 elements, below 1.9 * 2 = 3.8
    assert omega_set([1], G5, 0.1).elements().tolist() == [0, 1, 4]
    assert omega_set([2], FiniteAbelianGroup([11]), 0.1).elements().tolist() == [0, 2, 9]


def test_omega_measure_bounds():
    rng = np.random.default_rng(11)
    eps = 0.1
    for _ in range(200):
        G = FiniteAbelianGroup([int(rng.integers(8, 300))])
        xs = rng.integers(0, G.size, size=int(rng.integers(0, 6))).tolist()
        S = subset_sums(xs, G)
        d = len(S) / G.size
        Om = omega_set(xs, G, eps)
        if d <= 0.5:
            assert len(Om) < d / eps * G.size
        else:
            assert len(Om) < (1 - d) ** 0.5 * G.size or d == 1


def test_classifier_examples():
    G = FiniteAbelianGroup([8])
    assert classify_theorem1(range(8), G).alternative is Alternative.SUMS_ALL
    G = FiniteAbelianGroup([2, 16])
    A = [G.index([0, t]).item() for t in (1, 2, 3, 5)]
    rep = classify_theorem1(A, G, 0.1)
    assert rep.alternative is Alternative.SUBGROUP and rep.index == 2 and len(rep.subgroup) == 16
    assert rep.verify()[0]
    with pytest.raises(ValueError):
        classify_theorem1([1], G, 0.6)


def test_classifier_random_cyclic_prime():
    rng = np.random.default_rng(5)
    p = 1009
    G = FiniteAbelianGroup([p])
    k = int(0.5 * math.log2(p))
    for _ in range(20):
        A = rng.choice(p, size=k, replace=False).tolist()
        rep = classify_theorem1(A, G, 0.1)
        assert rep.alternative in (Alternative.SMALL_OMEGA, Alternative.SUMS_ALL)
        assert rep.verify()[0]


def test_k_bound_and_constants():
    assert c_eps_default(0.1) == 2000
    assert k_bound(1024, 0.1, 3.0, 0) == pytest.approx(1.1 * 10 + 3 * math.log(math.log(1024)))


def test_subgroup_enumeration_against_brute_force():
    for orders in ([6], [2, 2], [2, 4], [3, 3], [12], [2, 2, 2], [4, 4]):
        G = FiniteAbelianGroup(orders)
        got = {tuple(H.elements().tolist()) for H in all_subgroups(G)}
        want = {t for t in brute_subgroups(G)} if G.size <= 16 else None
        if want is not None:
            assert got == want
        for B in (1, 2, 3, 4):
            sub = {tuple(H.elements().tolist()) for H in subgroups_up_to_index(G, B)}
            assert sub == {t for t in got if G.size // len(t) <= B}


def test_annihilator_is_subgroup():
    G = FiniteAbelianGroup([4, 6])
    for H in all_subgroups(G):
        K = annihilator(H)
        assert K.is_subgroup() and len(K) * len(H) == G.size


def test_energy_examples():
    assert additive_energy(ElementSet.full(FiniteAbelianGroup([4]))) == 64
    assert additive_energy(ElementSet.zero(FiniteAbelianGroup([7]))) == 1
    G5 = FiniteAbelianGroup([5])
    U = ElementSet.from_elements(G5, [0, 1])
    assert additive_energy(U) == 6
    brute = sum(1 for a, b, c, d in itertools.product([0, 1], repeat=4) if (a + b - c - d) % 5 == 0)
    assert brute == 6


def test_sym1_and_kneser_examples():
    G5, G6 = FiniteAbelianGroup([5]), FiniteAbelianGroup([6])
    assert sym1(ElementSet.from_elements(G5, [0, 1])).elements().tolist() == [0]
    assert sym1(ElementSet.from_elements(G6, [0, 2, 4])).elements().tolist() == [0, 2, 4]
    r = kneser_check(ElementSet.from_elements(G5, [0, 1]))
    assert r.holds and r.diff_size == 3
    H = ElementSet.from_elements(G6, [0, 3])
    r = kneser_check(H)
    assert r.holds and r.diff_size == 2 == r.bound
    assert difference_set(H) == H


def test_lemma1_examples():
    G = FiniteAbelianGroup([4, 8])
    H = G.generated([G.index([0, 2])])
    mu = H.mask / len(H)
    w = lemma1_witness(mu, G)
    assert w.kappa == pytest.approx(0, abs=1e-12) and w.distance == pytest.approx(0, abs=1e-12)
    assert w.coset == H
    z = G.index([1, 3]).item()
    mu2 = G.roll(H.mask, z) / len(H)
    w = lemma1_witness(mu2, G)
    assert w.distance == pytest.approx(0, abs=1e-12) and w.subgroup == H
    assert w.coset == ElementSet(G, G.roll(H.mask, int(G.neg(w.shift))))
    rho = 0.01
    mu3 = mu * (1 - rho)
    mu3[np.flatnonzero(~H.mask)[0]] += rho
    w = lemma1_witness(mu3, G)
    assert w.found and w.distance <= 2 * rho + 1e-12
