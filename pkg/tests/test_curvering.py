from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import twistcoh.polyq as P
from twistcoh.curvering import (NEG_INF, CurveElement, CurveSpec, Form1,
                                TorusRing, d, dlog, is_unit, make_curve,
                                twisted_d)
from twistcoh.errors import IncompatibleRing, NonSmooth, NotAUnit

F_ELL = (-1, -4, 0, 4)                   # 4x^3 - 4x - 1


def elliptic(inverted=()):
    return make_curve(CurveSpec(F_ELL, frozenset(inverted)))


coeffs = st.fractions(min_value=-9, max_value=9, max_denominator=4)
small_polys = st.lists(coeffs, max_size=4).map(P.poly)


@st.composite
def curve_elements(draw, ring):
    a = draw(small_polys)
    b = draw(small_polys)
    p = draw(st.integers(0, 2)) if "x" in ring.inverted else 0
    q = draw(st.integers(0, 2)) if "y" in ring.inverted else 0
    return CurveElement(ring, a, b, p, q)


@st.composite
def torus_elements(draw, ring):
    pairs = draw(st.dictionaries(st.integers(-4, 4), coeffs, max_size=4))
    return ring.element(pairs)


# -- construction --------------------------------------------------------

def test_make_curve_examples():
    ring = elliptic()
    assert ring.f == P.poly(F_ELL)
    with pytest.raises(NonSmooth) as exc:
        make_curve(CurveSpec((0, 0, 0, 1)))          # f = x^3
    assert exc.value.payload["witness"] == P.poly([0, 0, 1])
    genus2 = make_curve(CurveSpec((-1, 0, 0, 0, 0, 1), {"y"}))
    assert genus2.inverted == frozenset({"y"})


def test_degree_checked():
    with pytest.raises(ValueError):
        make_curve(CurveSpec((1, 2, 1)))


def test_localization_enforced():
    ring = elliptic()
    with pytest.raises(IncompatibleRing):
        ring.element([1], [], p=1)
    with pytest.raises(IncompatibleRing):
        ring.element([1], [], q=1)


# -- arithmetic ----------------------------------------------------------

def test_ring_mul_examples():
    ring = elliptic({"y"})
    y = ring.y()
    assert y * y == ring.element(F_ELL)              # y^2 = f(x)
    assert ring.element([], [1], q=1) == ring.one()   # y/y cancels
    one_over_y = ring.element([1], [], 0, 1)
    assert one_over_y * y == ring.one()
    x = ring.x()
    assert (x + y) * (x - y) == x * x - ring.element(F_ELL)


def test_canonical_reduction_of_f_over_y():
    ring = elliptic({"y"})
    # f(x)/y^2 reduces to 1 and f(x)*y/y^2 reduces to y.
    assert ring.element(F_ELL, [], 0, 2) == ring.one()
    assert ring.element([], F_ELL, 0, 2) == ring.y()


@given(st.data())
@settings(max_examples=60)
def test_canonicalization_is_mul_fixed_point(data):
    ring = elliptic({"x", "y"})
    u = data.draw(curve_elements(ring))
    v = data.draw(curve_elements(ring))
    # products of canonical elements re-canonicalize to the same value
    w = u * v
    again = CurveElement(ring, w.a, w.b, w.p, w.q)
    assert again == w
    assert u * v == v * u


# -- derivative ----------------------------------------------------------

def test_d_examples():
    ring = elliptic()
    assert d(ring.x()) == Form1(ring.y())
    half_fprime = P.scale(ring.fprime, Fraction(1, 2))
    assert d(ring.y()) == Form1(ring.element(half_fprime))
    assert d(ring.const(7)).is_zero()
    torus = TorusRing()
    assert d(torus.t(3)) == Form1(torus.element({3: 3}))


def test_twisted_d_examples():
    ring = elliptic()
    omega = Form1(ring.one())
    assert twisted_d(omega, ring.one()) == omega
    assert twisted_d(omega, ring.x()) == Form1(ring.x() + ring.y())
    torus = TorusRing()
    for lam in (Fraction(2), Fraction(-1, 2)):
        w = Form1(torus.const(-lam))
        for n in range(-3, 4):
            got = twisted_d(w, torus.t(n))
            assert got == Form1(torus.element({n: n - lam}))


@given(st.data())
@settings(max_examples=60)
def test_leibniz(data):
    ring = elliptic({"x", "y"})
    u = data.draw(curve_elements(ring))
    v = data.draw(curve_elements(ring))
    assert d(u * v).coeff == (u * d(v).coeff + v * d(u).coeff)


@given(st.data())
@settings(max_examples=40)
def test_leibniz_torus(data):
    ring = TorusRing()
    u = data.draw(torus_elements(ring))
    v = data.draw(torus_elements(ring))
    assert d(u * v).coeff == (u * d(v).coeff + v * d(u).coeff)


@given(st.data())
@settings(max_examples=40)
def test_d_linear_and_kills_constants(data):
    ring = elliptic({"y"})
    u = data.draw(curve_elements(ring))
    c = data.draw(coeffs)
    assert d(u * c).coeff == d(u).coeff * c
    assert d(ring.const(c)).is_zero()
    zero = Form1(ring.zero())
    assert twisted_d(zero, u) == d(u)


@given(st.data())
@settings(max_examples=60)
def test_weight_bound_unlocalized(data):
    ring = elliptic()
    u = data.draw(curve_elements(ring))
    omega = Form1(data.draw(curve_elements(ring)))
    if u.is_zero():
        return
    out = twisted_d(omega, u)
    if out.is_zero():
        return
    wc = omega.coeff.weighted_degree()
    bound = u.weighted_degree() + max(1, wc if wc != NEG_INF else 1)
    assert out.coeff.weighted_degree() <= bound


# -- units and dlog ------------------------------------------------------

def test_is_unit_examples():
    ring = elliptic({"y"})
    ok, inv = is_unit(ring.const(5))
    assert ok and inv == ring.const(Fraction(1, 5))
    ok, inv = is_unit(ring.y())
    assert ok and inv * ring.y() == ring.one()
    ok, inv = is_unit(elliptic().x() + elliptic().y())
    assert not ok and inv is None
    ok, _ = is_unit(ring.zero())
    assert not ok


def test_unit_monomials_localized():
    ring = elliptic({"x", "y"})
    g = ring.monomial(i=2, j=1) * 3
    ok, inv = is_unit(g)
    assert ok and g * inv == ring.one()


def test_dlog_examples():
    ring = elliptic({"y"})
    got = dlog(ring.y())
    # d(y)/y = (f'/2) / y against dx/y
    expect = ring.element([], P.scale(ring.fprime, Fraction(1, 2)), 0, 1) * ring.element([1], [], 0, 1)
    assert got == Form1(ring.element(P.scale(ring.fprime, Fraction(1, 2)), [], 0, 1))
    assert dlog(ring.const(3)).is_zero()
    torus = TorusRing()
    assert dlog(torus.t()) == Form1(torus.one())
    with pytest.raises(NotAUnit):
        dlog(elliptic().x())


# -- weights -------------------------------------------------------------

def test_weighted_degree_examples():
    ring = elliptic()
    assert ring.monomial(i=3).weighted_degree() == 6
    assert ring.monomial(i=1, j=1).weighted_degree() == 5
    assert ring.zero().weighted_degree() == NEG_INF
    loc = elliptic({"y"})
    assert loc.element([1], [], 0, 1).weighted_degree() == -3
