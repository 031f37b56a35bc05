import math

import numpy as np
import pytest
from sympy import factorint

from genuslab.census import build_bitmaps
from genuslab.genus import (
    ROW4_READINGS,
    TABLE1_READING,
    RepresentingClasses,
    C0_constant,
    admissible_m,
    build_L_set,
    calibrate_table1,
    character_names,
    classes_representing,
    genus_characters,
    genus_oracle,
    genus_partition,
    genus_represents_local,
    half_dim_check,
    omega_D,
    phi_E,
    sieve_constants,
    theta_F,
    theta_constant,
)
from genuslab.grouptheory import Alternative, classify_theorem1
from genuslab.qforms import ClassGroup, QuadForm, kronecker


def test_genus_partition_examples():
    assert genus_partition(ClassGroup(-23)).genera == ((0, 1, 2),)
    p = genus_partition(ClassGroup(-84))
    assert p.g == 4 and all(len(g) == 1 for g in p.genera)
    assert genus_partition(ClassGroup(-4)).g == 1


@pytest.mark.parametrize("D", [-84, -23, -39, -56, -420, -5460, -3299, -1155, -400, -576, -4 * 12**2])
def test_characters_induce_genus_partition(D):
    G = ClassGroup(D)
    part = genus_partition(G)
    vec = [genus_characters(f, D) for f in G.forms]
    assert len(set(vec)) == part.g
    for i in range(G.h):
        for j in range(G.h):
            assert (vec[i] == vec[j]) == (part.genus_of[i] == part.genus_of[j])
    assert vec[0] == (1,) * len(character_names(D))


def test_characters_examples():
    G = ClassGroup(-84)
    assert genus_characters(QuadForm(1, 0, 21)) == (1,) * len(character_names(-84))
    assert len({genus_characters(f) for f in G.forms}) == 4
    G = ClassGroup(-23)
    assert {genus_characters(f) for f in G.forms} == {genus_characters(G.forms[0])}


def test_classes_representing_examples():
    G = ClassGroup(-23)
    assert classes_representing(6, G) == frozenset({0, 1, 2})
    assert classes_representing(1, G) == frozenset({0})
    c, ci = 1, 2
    assert classes_representing(2, G) == frozenset({c, ci})
    assert classes_representing(5, G) == frozenset()  # 5 is inert
    with pytest.raises(ValueError):
        classes_representing(12, G)


@pytest.mark.parametrize("D", [-23, -47, -84, -3299])
def test_classes_representing_matches_bitmaps(D):
    G = ClassGroup(D)
    N = 20000
    bm = build_bitmaps(G, 1, N + 1)
    rc = RepresentingClasses(G, N)
    for n in range(1, N + 1):
        fac = factorint(n)
        if any(e > 1 for e in fac.values()):
            continue
        want = bm.representing(n)
        assert rc(n) == want, n
        if n < 3000:
            assert classes_representing(n, G) == want


def test_sums_all_gives_full_genus():
    """A = {C_j^2} with s(A) the whole of C^2 means n is represented by its full genus."""
    G = ClassGroup(-455)
    G2, code2 = G.squares_group()
    part = genus_partition(G)
    rc = RepresentingClasses(G, 30000)
    seen = 0
    for n in range(3, 30000, 2):
        fac = factorint(n)
        if any(e > 1 for e in fac.values()) or any(kronecker(G.D, p) != 1 for p in fac):
            continue
        cls = [rc(p) for p in fac]
        A = [int(code2[G.square(next(iter(c)))]) for c in cls]
        rep = classify_theorem1(A, G2, 0.1) if G2.size >= 2 else None
        if rep is not None and rep.alternative is Alternative.SUMS_ALL:
            got = rc(n)
            assert got == frozenset(part.genus_of_class(next(iter(got))))
            seen += 1
    assert seen > 0


def test_table1_reading_is_calibrated():
    res = calibrate_table1(limit=1500)
    key = (TABLE1_READING["d2_sign"], TABLE1_READING["row4"])
    assert res[key] == 0
    assert all(v > 0 for k, v in res.items() if k != key)
    assert set(r for _, r in res) == set(ROW4_READINGS)


def test_local_examples():
    f = QuadForm(1, 0, 1)
    assert genus_represents_local(1, f)
    assert not genus_represents_local(3, f)
    for n in range(1, 2000, 2):
        fac = factorint(n)
        if any(e > 1 for e in fac.values()):
            continue
        if all(p % 4 == 1 for p in fac):
            assert genus_represents_local(n, f) == (n % 4 == 1)
    with pytest.raises(ValueError):
        genus_represents_local(9, f)


@pytest.mark.parametrize("abc", [(1, 0, 1), (1, 0, 2), (2, 2, 3), (1, 0, 5), (3, 2, 3), (1, 0, 9), (4, 4, 5)])
def test_local_matches_oracle(abc):
    f = QuadForm(*abc)
    N = 5000
    orc = genus_oracle(f, N)
    for m in admissible_m(-f.discriminant, N).tolist():
        assert genus_represents_local(m, f) == bool(orc[m]), m


def test_L_sets():
    lc = build_L_set(QuadForm(1, 0, 1))
    assert (lc.Q, lc.L) == (4, [1])
    assert lc.in_P(5) and not lc.in_P(3)
    assert build_L_set(QuadForm(1, 0, 5)).L == [1, 9]
    assert build_L_set(QuadForm(2, 2, 3)).L == [3, 7]
    for abc in [(1, 0, 1), (1, 0, 2), (1, 0, 5), (2, 2, 3), (1, 0, 6)]:
        for delta in (1, 2):
            lc = build_L_set(QuadForm(*abc), delta)
            assert lc.kronecker_ok
            assert all(kronecker(lc.k_minus_D, L) == 1 for L in lc.L)


def test_L_set_predicate_matches_oracle():
    for abc in [(1, 0, 1), (1, 0, 2), (1, 0, 5), (2, 2, 3)]:
        f = QuadForm(*abc)
        orc = genus_oracle(f, 4000)
        lcs = {d: build_L_set(f, d) for d in (1, 2)}
        for m in admissible_m(-f.discriminant, 4000).tolist():
            if m < 2:
                continue
            lc = lcs[2 if m % 2 == 0 else 1]
            assert lc.admits(m) == bool(orc[m]), (abc, m)


def test_phi_E():
    assert phi_E(3, 4) == 2
    assert phi_E(2, 4) == 2
    assert phi_E(5, 10) == 5


def test_C0_converges():
    r = C0_constant(4, 1, 10**5)
    r6 = C0_constant(4, 1, 10**6)
    assert round(r.value, 4) == round(r6.value, 4)
    assert abs(r6.log_value - math.log(r6.value_half)) < 10 * r6.tail_bound
    # the plain truncated product drifts towards the accelerated value
    assert abs(r6.direct - r6.value) < 1e-4
    assert r6.L1 == pytest.approx(math.pi / 4, rel=1e-12)


def test_C0_L_value_against_mpmath():
    import mpmath

    from genuslab.genus import _psi_L1

    for k in (-1, -2, -3, -5, -7, -15, -21):
        q = 4 * abs(k)
        chi = [kronecker(k, n) if n % 2 else 0 for n in range(q)]
        want = -sum(chi[a] * mpmath.digamma(mpmath.mpf(a) / q) for a in range(1, q)) / q
        assert _psi_L1(k) == pytest.approx(float(want), rel=1e-12)
        # independent: partial sum of the series with averaging
        N = 200000
        s = sum(chi[n % q] / n for n in range(1, N))
        assert _psi_L1(k) == pytest.approx(s, abs=5 * q / N)


def test_theta():
    assert float(theta_F(1.0)) == 0.0
    assert theta_F(1.0001) > 0
    t = theta_constant()
    assert t.agreement < 1e-6
    assert 1 < t.s_star < 4 / 3


def test_half_dim_and_omega():
    rows = half_dim_check(4, [3, 10**4, 10**6])
    assert rows[0].residual < 2
    assert abs(rows[2].residual - rows[1].residual) < 0.05
    om = omega_D(QuadForm(1, 0, 1), 1)
    assert {d for d, _, _ in om.terms} <= {1, 2}
    assert om.value == pytest.approx(0.25)  # only delta = 2, L = 1 survives (2 + 1, 8) = 1
    om0 = omega_D(QuadForm(1, 0, 1), 0)
    assert any(d == 1 for d, _, _ in om0.terms)
    assert om0.value >= 1 / 2  # the delta = 1 term alone is 1/phi(4)
    sc = sieve_constants(4, 1, 10**5, zs=(10, 100))
    assert sc.to_dict()["omega_D_c_is_placeholder"]
