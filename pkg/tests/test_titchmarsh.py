import cmath
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from circtitch import (
    Arc,
    Distribution,
    HypothesisViolation,
    analyze_pair,
    analyze_power,
    analyze_reflection,
    check_corollary_n2,
    convolve,
    delta,
    lemma_alpha,
    make_zero_divisors,
    minimal_hull,
    shift,
    symmetrize,
)
from circtitch.titchmarsh import root_vandermonde_det, root_vandermonde_product
from conftest import HALF, distributions, zeta


def d(x, order=0, c=1):
    return delta(F(x), order, c)


HAND_F = d(0) - d(HALF)
HAND_G = d(0) + d(HALF) + d(F(1, 8)) - d(F(5, 8))
FOUR = d(F(1, 16)) + d(F(9, 16)) + d(F(15, 16)) - d(F(7, 16))


def test_minimal_hull_examples():
    assert minimal_hull(d(F(1, 16)), 2) == Arc(F(1, 16))
    assert minimal_hull(d(0) + d(F(1, 8)) + d(HALF) + d(F(5, 8)), 2) == Arc(F(0), F(1, 8))
    hull = minimal_hull(FOUR, 2, within=(F(-1, 4), F(1, 4)))
    assert (hull.inf, hull.sup) == (F(-1, 16), F(1, 16))


def test_lemma_alpha_examples():
    assert lemma_alpha([d(F(1, 10)), Distribution()], 2) == 1
    assert lemma_alpha([d(F(1, 10)), -d(F(1, 10))], 2) == -1


def test_lemma_alpha_exhaustive_n3():
    comps = [d(F(1, 10), 0, zeta(-j, 3)) for j in range(3)]
    alpha = lemma_alpha(comps, 3)
    survivors = []
    for k in range(3):
        a = zeta(k, 3)
        total = sum((zeta(-j, 3) * a ** j for j in range(3)), zeta(0, 1) * 0)
        if total:
            survivors.append(a)
    # sum_j (a zeta^-1)^j is nonzero only for a = zeta_3
    assert survivors == [zeta(1, 3)]
    assert alpha == zeta(1, 3)


def test_pair_trivial():
    rep = analyze_pair(d(0), d(0), 2)
    assert rep.I == rep.J == rep.K == Arc(F(0))
    assert rep.lam == rep.rho == 0 and rep.certificates == ()


def test_pair_hand_example():
    assert convolve(HAND_F, HAND_G) == d(F(1, 8), 0, 2) - d(F(5, 8), 0, 2)
    rep = analyze_pair(HAND_F, HAND_G, 2)
    assert rep.I == Arc(F(0)) and rep.J == Arc(F(0), F(1, 8)) and rep.K == Arc(F(1, 8))
    assert rep.lam == F(1, 8) and rep.rho == 0
    assert rep.alpha == 1 and rep.beta == -1
    assert all(c.verified for c in rep.certificates)
    windows = {c.name: (c.window.inf, c.window.sup) for c in rep.certificates}
    assert windows["alpha.f"] == (F(-1, 2), F(1, 8))
    assert windows["alpha.g"] == (F(-3, 8), F(1, 8))
    # the facts behind the certificates, by hand
    assert symmetrize(HAND_F, 2, 1).is_zero()
    assert symmetrize(HAND_G, 2, 1) == d(0, 0, 2) + d(HALF, 0, 2)
    assert symmetrize(HAND_F, 2, -1) == d(0, 0, 2) - d(HALF, 0, 2)
    assert symmetrize(HAND_G, 2, -1) == d(F(1, 8), 0, 2) - d(F(5, 8), 0, 2)


def test_pair_smaller_lambda():
    rep = analyze_pair(HAND_F, HAND_G, 2, lam=F(1, 16))
    assert rep.lam == F(1, 16) and rep.lam_max == F(1, 8)
    with pytest.raises(HypothesisViolation):
        analyze_pair(HAND_F, HAND_G, 2, lam=F(1, 4))


def test_pair_generic():
    rep = analyze_pair(d(0) + d(F(1, 8)), d(0) + d(F(1, 16)), 2)
    assert rep.K == Arc(F(0), F(3, 16)) and rep.lam == rep.rho == 0


def test_pair_hypothesis_gate():
    f = d(0) + d(F(1, 4))
    with pytest.raises(HypothesisViolation) as err:
        analyze_pair(f, f, 2)
    assert err.value.bound == "|I| + |J| < 1/n"


def test_pair_annihilated():
    rep = analyze_pair(d(0) + d(HALF), d(F(1, 8)) - d(F(5, 8)), 2)
    assert rep.annihilated and rep.K is None and rep.lam is None


@given(st.sampled_from([2, 3, 4]), st.integers(0, 3), st.integers(0, 3), st.integers(1, 3))
def test_pair_seeded_gap(n, s, dt, lam_units):
    # f = sym_beta(d_0) + d_lam, g = sym_alpha(d_0) + d_lam with alpha != beta
    t = (s + 1 + dt % (n - 1)) % n
    lam = F(lam_units, 16 * n)
    f = symmetrize(d(0), n, zeta(t, n)) + d(lam)
    g = symmetrize(d(0), n, zeta(s, n)) + d(lam, 1)
    rep = analyze_pair(f, g, n)
    assert rep.lam == lam
    assert rep.alpha == zeta(s, n) and rep.beta == zeta(t, n)


def test_corollary_examples():
    v = check_corollary_n2(HAND_F, HAND_G)
    assert v.lhs and v.rhs and v.alpha == 1 and v.lam_rhs == F(1, 8)
    v = check_corollary_n2(d(0) + d(F(1, 8)), d(0) + d(F(1, 16)))
    assert v.lhs is False and v.rhs is False
    sym, anti = d(0) + d(HALF), d(F(1, 8)) - d(F(5, 8))
    v = check_corollary_n2(sym, anti)
    assert v.annihilated and v.lhs is None and v.agree


def test_reflection_examples():
    dec = analyze_reflection(d(0) + d(HALF))
    assert dec.I.is_point() and dec.mu == d(0) and dec.nu.is_zero()
    dec = analyze_reflection(FOUR)
    assert (dec.I.inf, dec.I.sup) == (F(-1, 16), F(1, 16))
    assert dec.mu == d(F(1, 16)) and dec.nu == d(F(15, 16))
    assert dec.mu + shift(dec.mu, HALF) + dec.nu - shift(dec.nu, HALF) == FOUR
    assert analyze_reflection(d(F(1, 16)) + d(F(1, 8))) is None


def test_power_examples():
    assert analyze_power(d(F(1, 32)), 2, 3) == Arc(F(3, 32))
    assert analyze_power(d(0) + d(F(1, 32)) + d(HALF), 2, 3) == Arc(F(0), F(3, 32))
    assert analyze_power(d(0) - d(F(1, 32)), 1, 2) == Arc(F(0), F(2, 32))


def test_power_hypothesis_gate():
    with pytest.raises(HypothesisViolation):
        analyze_power(d(0) + d(F(1, 8)), 2, 4)


def test_make_zero_divisors_examples():
    a, b = make_zero_divisors(d(0), d(0))
    assert (a, b) == (d(0) + d(HALF), d(0) - d(HALF)) and convolve(a, b).is_zero()
    a, b = make_zero_divisors(d(F(1, 8), 1), d(F(1, 3)))
    assert convolve(a, b).is_zero()
    g = d(F(2, 5), 2, 3)
    a, b = make_zero_divisors(Distribution(), g)
    assert a.is_zero() and b == g - shift(g, HALF) and convolve(a, b).is_zero()


@given(distributions(max_points=4), distributions(max_points=4))
def test_make_zero_divisors_property(f, g):
    a, b = make_zero_divisors(f, g)
    assert convolve(a, b).is_zero()


@pytest.mark.parametrize("n", range(1, 13))
def test_vandermonde(n):
    det = root_vandermonde_det(n)
    assert not det.is_zero()
    assert det == root_vandermonde_product(n)
    # |det|^2 = n^n for the DFT matrix, up to the row order used here
    assert abs(abs(complex(det)) ** 2 - n ** n) < 1e-6 * n ** n
    w = cmath.exp(2j * cmath.pi / n)
    prod = 1
    for k in range(1, n + 1):
        for j in range(1, k):
            prod *= w ** k - w ** j
    assert abs(complex(det) - prod) < 1e-6 * max(1, abs(prod))


@st.composite
def _short_arc_dist(draw, den=64):
    start = draw(st.integers(0, den - 1))
    offsets = draw(st.lists(st.integers(0, den // 2 - 2), min_size=1, max_size=4))
    coeffs = draw(st.lists(st.integers(-3, 3).filter(bool), min_size=len(offsets),
                           max_size=len(offsets)))
    orders = draw(st.lists(st.integers(0, 2), min_size=len(offsets), max_size=len(offsets)))
    return Distribution([((F(start + o, den), p), c)
                         for o, p, c in zip(offsets, orders, coeffs)])


@given(_short_arc_dist(), _short_arc_dist())
def test_line_case_n1(f, g):
    # with n = 1 there is no symmetry to exploit: K = I + J exactly
    if f.is_zero() or g.is_zero():
        return
    I, J = minimal_hull(f, 1), minimal_hull(g, 1)
    if I.length + J.length >= 1:
        return
    rep = analyze_pair(f, g, 1)
    assert rep.lam == 0 and rep.rho == 0
    assert (rep.K.inf - I.inf - J.inf, rep.K.length) == (0, I.length + J.length)
