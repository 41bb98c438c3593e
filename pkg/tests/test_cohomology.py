import random
from fractions import Fraction

import pytest

from twistcoh.cohomology import (TruncationWindow, gauge_invariance_check,
                                 gauge_transform, twisted_cohomology,
                                 verify_chain_map)
from twistcoh.curvering import (CurveSpec, Form1, TorusRing, dlog, make_curve,
                                twisted_d)
from twistcoh.errors import IncompatibleRing, NotAUnit, NotStabilized

F_ELL = (-1, -4, 0, 4)


def elliptic(inverted=()):
    return make_curve(CurveSpec(F_ELL, frozenset(inverted)))


def torus_oracle(lam, bound=40):
    """Independent diagonal-action count: d_w(t^n) = (n - lam) t^n dt/t, so
    both kernel and cokernel are spanned by t^lam when lam is an integer."""
    hits = [n for n in range(-bound, bound + 1) if n - lam == 0]
    return (len(hits), len(hits))


def test_window_invariants():
    with pytest.raises(ValueError):
        TruncationWindow(n_max=0, delta=1)
    with pytest.raises(ValueError):
        TruncationWindow(stabilization_span=1)


def test_twisted_elliptic_dimensions():
    ring = elliptic()
    report = twisted_cohomology(ring, Form1(ring.one()))
    assert report.dims() == (0, 1)
    assert report.stabilized_at <= 60
    # representative is x*dx/y: d_w(1) = w puts dx/y itself in the image
    assert [w.to_str() for w in report.h1_basis] == ["x*dx/y"]


def test_untwisted_elliptic_dimensions():
    ring = elliptic()
    report = twisted_cohomology(ring, Form1(ring.zero()))
    assert report.dims() == (1, 2)
    assert [s.to_str() for s in report.h0_basis] == ["1"]
    assert [w.to_str() for w in report.h1_basis] == ["dx/y", "x*dx/y"]


@pytest.mark.parametrize("lam", [Fraction(-3), Fraction(-1, 2), Fraction(0),
                                 Fraction(1, 2), Fraction(2), Fraction(7)])
def test_torus_diagonal_family(lam):
    ring = TorusRing()
    report = twisted_cohomology(ring, Form1(ring.const(-lam)))
    assert report.dims() == torus_oracle(lam)
    if lam.denominator == 1:
        assert report.h0_basis[0] == ring.t(int(lam))
        assert report.h1_basis[0].coeff == ring.t(int(lam))


def test_report_invariants_hold():
    ring = elliptic()
    omega = Form1(ring.one())
    report = twisted_cohomology(ring, omega)
    assert len(report.h0_basis) == report.h0_dim
    assert len(report.h1_basis) == report.h1_dim
    for s in report.h0_basis:
        assert twisted_d(omega, s).is_zero()


def test_not_stabilized_carries_trail():
    ring = TorusRing()
    with pytest.raises(NotStabilized) as exc:
        twisted_cohomology(ring, Form1(ring.const(-7)),
                           TruncationWindow(n_max=4))
    assert exc.value.payload["trail"]


def test_incompatible_ring_rejected():
    ring = elliptic()
    with pytest.raises(IncompatibleRing):
        twisted_cohomology(ring, Form1(TorusRing().one()))


def test_gauge_transform_examples():
    ring = elliptic({"y"})
    eta = Form1(ring.one())
    assert gauge_transform(ring.one(), eta) == eta
    assert gauge_transform(ring.const(2), eta) == Form1(ring.const(Fraction(1, 2)))
    got = gauge_transform(ring.y(), eta)
    assert got == Form1(ring.element([1], [], 0, 1))
    with pytest.raises(NotAUnit):
        gauge_transform(elliptic().x(), eta)


def test_chain_map_examples():
    ring = elliptic({"y"})
    samples = [ring.one(), ring.x(), ring.y(), ring.x() * ring.x(),
               ring.x() + ring.y()]
    ok, counter = verify_chain_map(ring, Form1(ring.one()), ring.y(), samples)
    assert ok and counter is None
    ok, _ = verify_chain_map(ring, Form1(ring.x()), ring.one(), samples)
    assert ok
    torus = TorusRing()
    ok, _ = verify_chain_map(torus, Form1(torus.one()), torus.t(3),
                             [torus.t(n) for n in range(-2, 3)])
    assert ok


def test_chain_map_randomized():
    rng = random.Random(11)
    torus = TorusRing()
    curve = elliptic({"x", "y"})
    for _ in range(40):
        if rng.random() < 0.5:
            ring = torus
            g = torus.t(rng.randrange(-3, 4)) * Fraction(rng.choice([1, 2, -3]))
            psi = Form1(torus.element(
                {rng.randrange(-3, 4): rng.randrange(-4, 5) for _ in range(2)}))
            samples = [torus.t(n) for n in range(-3, 4)]
        else:
            ring = curve
            g = curve.monomial(i=rng.randrange(0, 3), j=rng.randrange(0, 2),
                               p=rng.randrange(0, 2), q=rng.randrange(0, 2))
            g = g * Fraction(rng.choice([1, -1, 2]))
            psi = Form1(curve.monomial(i=rng.randrange(0, 2),
                                       j=rng.randrange(0, 2)))
            samples = [curve.one(), curve.x(), curve.y(),
                       curve.monomial(i=1, j=1)]
        ok, counter = verify_chain_map(ring, psi, g, samples)
        assert ok, counter


def test_gauge_invariance_examples():
    torus = TorusRing()
    r1, r2, equal = gauge_invariance_check(torus, Form1(torus.const(-2)),
                                           torus.t())
    assert equal and r1.dims() == (1, 1) and r2.dims() == (1, 1)
    # psi2 = -1 dt/t: basis shifts from t^2 to t^1
    assert r2.h0_basis[0] == torus.t(1)

    ring = elliptic({"y"})
    r1, r2, equal = gauge_invariance_check(ring, Form1(ring.one()),
                                           ring.const(5))
    assert equal and r1.dims() == r2.dims()


def test_omega_zero_matches_untwisted():
    ring = elliptic()
    rep0 = twisted_cohomology(ring, Form1(ring.zero()))
    assert rep0.dims() == (1, 2)
