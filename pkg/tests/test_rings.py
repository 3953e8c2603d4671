"""Polynomial and rational-function arithmetic over exact coefficients."""
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from algint.rings import (
    QQ,
    POLY_X_QQ,
    RAT_X_QQ,
    ext_gcd,
    gcd,
    invert_mod,
    is_squarefree,
    lcm,
    lcm_many,
    poly_crt,
    resultant,
    square_part_root,
    squarefree_decomposition,
    squarefree_part,
)

from conftest import polys_over_qq, ratfuncs_over_qq, small_fractions

R = POLY_X_QQ
F = RAT_X_QQ
x = R.gen


def P(*coeffs):
    """Polynomial from low-to-high coefficient list."""
    return R.poly([Fraction(c) for c in coeffs])


# ---------------------------------------------------------------------------
# frozen values

def test_divmod_matches_long_division():
    q, r = divmod(P(-1, 0, 0, 1), P(-1, 1))  # x^3-1 by x-1
    assert q == P(1, 1, 1)
    assert not r


def test_gcd_is_monic_common_factor():
    a = P(-1, 0, 1) * P(2, 1)  # (x^2-1)(x+2)
    b = P(1, 1) * P(3, 1)      # (x+1)(x+3)
    assert gcd(a, b) == P(1, 1)


def test_ext_gcd_bezout_identity_frozen():
    g, s, t = ext_gcd(P(0, 0, 1), P(-1, 1))  # x^2, x-1
    assert g == R.one
    assert s * P(0, 0, 1) + t * P(-1, 1) == R.one


def test_lcm_of_coprime_is_product():
    assert lcm(P(0, 1), P(1, 1)) == P(0, 1, 1)
    assert lcm_many([P(0, 1), P(0, 1), P(1, 1)]) == P(0, 1, 1)


def test_squarefree_decomposition_frozen():
    p = P(1, 1) ** 3 * P(0, 1) ** 2 * P(-2, 1) * 4
    lc, parts = squarefree_decomposition(p)
    assert lc == Fraction(4)
    table = {m: f for f, m in parts}
    assert table[3] == P(1, 1)
    assert table[2] == P(0, 1)
    assert table[1] == P(-2, 1)


def test_square_part_root_frozen():
    p = P(1, 1) ** 3 * P(0, 1) ** 2
    # square part is (x+1)^2 * x^2, its root (x+1)*x
    assert square_part_root(p) == P(0, 1) * P(1, 1)
    assert squarefree_part(p) == P(0, 1) * P(1, 1)


def test_is_squarefree():
    assert is_squarefree(P(1, 1) * P(0, 1))
    assert not is_squarefree(P(0, 0, 1))


def test_resultant_linear_factors():
    # res(f, g) = lc(f)^deg g * prod g(root) over roots of f
    f = P(-1, 1) * P(2, 1)  # roots 1, -2
    g = P(-3, 1)            # g(1) = -2, g(-2) = -5
    assert resultant(f, g) == Fraction(10)


def test_resultant_detects_common_root():
    assert resultant(P(-1, 1) * P(1, 1), P(-1, 1)) == Fraction(0)


def test_invert_mod_frozen():
    inv = invert_mod(P(1, 1), P(0, 0, 1))  # (x+1)^-1 mod x^2 = 1 - x
    assert (inv * P(1, 1)) % P(0, 0, 1) == R.one


def test_poly_crt_two_moduli():
    r, mod = poly_crt([(P(1), P(0, 1)), (P(2), P(-1, 1))])
    assert mod == P(0, 1) * P(-1, 1)
    assert r % P(0, 1) == P(1)
    assert r % P(-1, 1) == P(2)


def test_poly_str_canonical():
    assert str(P(1, -2, 1)) == "x^2 - 2*x + 1"
    assert str(P(0, Fraction(1, 2))) == "1/2*x"
    assert str(R.zero) == "0"
    assert str(F.of(P(1), P(0, 1))) == "1/x"


def test_ratfunc_normalizes_to_monic_denominator():
    r = F.of(P(0, 2), P(0, 0, 4))  # 2x / 4x^2
    assert r.den.lc == 1
    assert r == F.of(P(1), P(0, 2))


def test_ratfunc_derivative_quotient_rule():
    r = F.of(R.one, P(0, 1))  # 1/x
    assert r.derivative() == F.of(P(-1), P(0, 0, 1))


# ---------------------------------------------------------------------------
# algebraic laws

@given(polys_over_qq(), polys_over_qq(nonzero=True))
def test_divmod_identity(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(polys_over_qq(nonzero=True), polys_over_qq(nonzero=True))
def test_gcd_divides_both(a, b):
    g = gcd(a, b)
    assert g.lc == 1
    assert not a % g
    assert not b % g


@given(polys_over_qq(), polys_over_qq(nonzero=True))
def test_ext_gcd_identity(a, b):
    g, s, t = ext_gcd(a, b)
    assert s * a + t * b == g


@given(polys_over_qq(nonzero=True), polys_over_qq(nonzero=True))
def test_gcd_lcm_product(a, b):
    assert gcd(a, b) * lcm(a, b) == (a * b).monic()


@given(polys_over_qq(nonzero=True))
def test_squarefree_decomposition_reassembles(p):
    lc, parts = squarefree_decomposition(p)
    prod = R.from_coeff(lc)
    for f, m in parts:
        assert is_squarefree(f)
        assert f.lc == 1
        prod = prod * f ** m
    assert prod == p


@given(polys_over_qq(nonzero=True))
def test_square_part_root_squared_divides(p):
    r = square_part_root(p)
    assert not p % (r * r)
    assert is_squarefree(squarefree_part(p))


nonconstant_polys = polys_over_qq(max_degree=2, nonzero=True).filter(
    lambda p: p.degree >= 1
)


@given(nonconstant_polys, nonconstant_polys, nonconstant_polys)
def test_resultant_multiplicative(f, g, h):
    assert resultant(f * g, h) == resultant(f, h) * resultant(g, h)


@given(polys_over_qq(), polys_over_qq())
def test_derivative_leibniz(a, b):
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


@given(ratfuncs_over_qq(), ratfuncs_over_qq())
def test_ratfunc_derivative_additive(ra, rb):
    assert (ra + rb).derivative() == ra.derivative() + rb.derivative()


@given(ratfuncs_over_qq(), ratfuncs_over_qq())
def test_ratfunc_field_ops(ra, rb):
    assert ra + rb == rb + ra
    assert ra * rb == rb * ra
    if rb:
        assert (ra / rb) * rb == ra


@given(ratfuncs_over_qq())
def test_ratfunc_coprime_normal_form(r):
    if r:
        assert gcd(r.num, r.den) == R.one
    assert r.den.lc == 1
