"""Acceptance suite: one test per criterion, one pass/fail line each.

Criterion 1 asserts the published h1 representative dx/y verbatim.  The
engine reports x*dx/y instead, because d_w(1) = w places dx/y itself in
the image of d_w; the dimension claims (h0 = 0, h1 = 1) do hold and are
asserted first.  See the repository notes for the full analysis.
"""

import json
import random
import time
from fractions import Fraction

import pytest

from twistcoh.cli import main, parse_job, run_job
from twistcoh.cohomology import (TruncationWindow, gauge_invariance_check,
                                 twisted_cohomology, verify_chain_map)
from twistcoh.curvering import (CurveSpec, Form1, TorusRing, make_curve,
                                twisted_d)
from twistcoh.errors import NotClosed, ParseError
from twistcoh.exactalg import QMatrix, rank
from twistcoh.hyperspec import (TwoTermPage, e2_term, hyper0, hyper1_split,
                                hyper1_total, hyper2)
from twistcoh.logforms import (Chart, LogForm, MPoly, d_log, is_pole_free,
                               residue, twisted_d_log)

F_ELL = (-1, -4, 0, 4)                   # 4x^3 - 4x - 1


def _line(num, ok, detail):
    print("[PRIMARY] criterion %d: %s — %s" % (num, "PASS" if ok else "FAIL",
                                               detail))
    assert ok, detail


def elliptic(inverted=()):
    return make_curve(CurveSpec(F_ELL, frozenset(inverted)))


def test_criterion_01_twisted_elliptic_regression():
    t0 = time.perf_counter()
    ring = elliptic()
    report = twisted_cohomology(ring, Form1(ring.one()),
                                TruncationWindow(n_max=60))
    elapsed = time.perf_counter() - t0
    reps = [w.to_str() for w in report.h1_basis]
    ok = (report.dims() == (0, 1) and report.stabilized_at <= 60
          and elapsed <= 5.0 and reps == ["dx/y"])
    _line(1, ok, "dims=%s reps=%s stabilized_at=%d %.2fs"
          % (report.dims(), reps, report.stabilized_at, elapsed))


def test_criterion_02_untwisted_elliptic_regression():
    t0 = time.perf_counter()
    ring = elliptic()
    report = twisted_cohomology(ring, Form1(ring.zero()),
                                TruncationWindow(n_max=60))
    elapsed = time.perf_counter() - t0
    reps = [w.to_str() for w in report.h1_basis]
    ok = (report.dims() == (1, 2) and reps == ["dx/y", "x*dx/y"]
          and elapsed <= 5.0)
    _line(2, ok, "dims=%s reps=%s %.2fs" % (report.dims(), reps, elapsed))


def test_criterion_03_torus_diagonal_family():
    ring = TorusRing()
    results = []
    ok = True
    for lam in (Fraction(-3), Fraction(-1, 2), Fraction(0), Fraction(1, 2),
                Fraction(2), Fraction(7)):
        t0 = time.perf_counter()
        report = twisted_cohomology(ring, Form1(ring.const(-lam)))
        elapsed = time.perf_counter() - t0
        # independent oracle: the diagonal action n - lam on monomials
        hits = sum(1 for n in range(-40, 41) if n == lam)
        expect = (hits, hits)
        results.append((str(lam), report.dims(), round(elapsed, 3)))
        ok = ok and report.dims() == expect and elapsed <= 1.0
    _line(3, ok, "per-lambda (dims, s): %s" % results)


def test_criterion_04_chain_map_suite():
    rng = random.Random(20260825)
    torus = TorusRing()
    curve = elliptic({"x", "y"})
    failures = 0

    def rand_coeff():
        return Fraction(rng.randrange(-6, 7) or 1, rng.choice([1, 1, 2, 3]))

    def curve_monos(max_w):
        out = []
        for i in range(0, max_w // 2 + 1):
            for j in (0, 1):
                if 2 * i + 3 * j <= max_w:
                    out.append(curve.monomial(i=i, j=j))
        out.append(curve.monomial(p=1))
        out.append(curve.monomial(q=1))
        return out

    for k in range(200):
        if k % 2 == 0:
            ring = torus
            g = torus.t(rng.randrange(-4, 5)) * rand_coeff()
            psi = Form1(torus.element(
                {rng.randrange(-3, 4): rng.randrange(-5, 6)
                 for _ in range(rng.randrange(1, 3))}))
            samples = [torus.t(n) for n in range(-4, 5)]
        else:
            ring = curve
            g = curve.monomial(i=rng.randrange(0, 3), j=rng.randrange(0, 2),
                               p=rng.randrange(0, 3), q=rng.randrange(0, 2))
            g = g * rand_coeff()
            psi = Form1(curve.monomial(i=rng.randrange(0, 3),
                                       j=rng.randrange(0, 2)))
            samples = curve_monos(12)
        ok, counter = verify_chain_map(ring, psi, g, samples)
        if not ok:
            failures += 1
    _line(4, failures == 0, "200 randomized triples, %d failures" % failures)


def test_criterion_05_gauge_invariance_suite():
    rng = random.Random(7)
    torus = TorusRing()
    curve = elliptic({"y"})
    checked = 0
    ok = True
    details = []
    for k in range(25):
        if k < 18:
            lam = Fraction(rng.randrange(-5, 6), rng.choice([1, 1, 2]))
            psi = Form1(torus.const(-lam))
            g = torus.t(rng.randrange(-3, 4)) * Fraction(rng.choice([1, 2, 5]))
            r1, r2, equal = gauge_invariance_check(torus, psi, g)
        else:
            psi = Form1(curve.const(rng.choice([0, 1, 1, 2])))
            g = (curve.y() if k >= 23
                 else curve.const(Fraction(rng.choice([1, 2, 3, 5]))))
            r1, r2, equal = gauge_invariance_check(curve, psi, g)
        checked += 1
        ok = ok and equal
        details.append((r1.dims(), r2.dims(), equal))
    _line(5, ok and checked == 25,
          "25 instances, all equal=%s" % all(d[2] for d in details))


def test_criterion_06_residue_exactness():
    rng = random.Random(3)
    mismatches = 0
    for _ in range(200):
        n = rng.randrange(1, 4)
        l = rng.randrange(1, n + 1)
        chart = Chart(n, l)
        terms = {}
        for i in range(1, n + 1):
            if rng.random() < 0.7:
                poly = {}
                for _ in range(rng.randrange(0, 3)):
                    exp = tuple(rng.randrange(0, 3) for _ in range(n))
                    poly[exp] = Fraction(rng.randrange(-4, 5))
                terms[(i,)] = MPoly(n, poly)
        form = LogForm(chart, 1, terms)
        if is_pole_free(form) != all(r.is_zero() for r in residue(form)):
            mismatches += 1
    # Res: f(z) dz/z -> f(0) on 50 random univariate f
    bad_evals = 0
    c1 = Chart(1, 1)
    for _ in range(50):
        poly = {(k,): Fraction(rng.randrange(-9, 10)) for k in range(4)}
        f = MPoly(1, poly)
        got = residue(LogForm(c1, 1, {(1,): f}))[0]
        if got != MPoly.const(1, f.evaluate_origin()):
            bad_evals += 1
    ok = mismatches == 0 and bad_evals == 0
    _line(6, ok, "200 exactness checks (%d mismatches), 50 evaluations "
          "(%d wrong)" % (mismatches, bad_evals))


def test_criterion_07_nilpotency_gate():
    rng = random.Random(5)

    def rand_poly(n, nonconst=False):
        poly = {tuple(rng.randrange(0, 3) for _ in range(n)):
                Fraction(rng.randrange(-4, 5)) for _ in range(2)}
        if nonconst:
            exp = tuple(1 if i == 0 else 0 for i in range(n))
            poly[exp] = poly.get(exp, Fraction(0)) + 1
        return MPoly(n, poly)

    nil_failures = 0
    for _ in range(100):
        n = rng.randrange(2, 4)
        l = rng.randrange(1, n)
        chart = Chart(n, l)
        # closed: constant log residues plus an exact part
        omega = LogForm(chart, 1, {(i,): MPoly.const(n, rng.randrange(-3, 4))
                                   for i in range(1, l + 1)})
        omega = omega + d_log(LogForm.function(chart, rand_poly(n)))
        a = LogForm.function(chart, rand_poly(n))
        if not twisted_d_log(omega, twisted_d_log(omega, a)).is_zero():
            nil_failures += 1
    rejected = 0
    for _ in range(20):
        n = rng.randrange(2, 4)
        chart = Chart(n, 1)
        # t_n-dependent coefficient against dt_1/t_1 is never closed
        omega = LogForm(chart, 1, {(1,): MPoly.var(n, n)})
        try:
            twisted_d_log(omega, LogForm.function(chart, rand_poly(n)))
        except NotClosed as exc:
            if exc.code == "NOT_CLOSED":
                rejected += 1
    ok = nil_failures == 0 and rejected == 20
    _line(7, ok, "100 nilpotency checks (%d failures), 20/20 non-closed "
          "rejected" % nil_failures)


def test_criterion_08_hyperspec_identities():
    rng = random.Random(13)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(500):
        d00, d01, d10, d11 = (rng.randrange(0, 7) for _ in range(4))
        zero_d1p = rng.random() < 0.3
        d1 = QMatrix(d10, d00, [Fraction(rng.randrange(-3, 4))
                                for _ in range(d10 * d00)])
        d1p = QMatrix(d11, d01,
                      [Fraction(0 if zero_d1p else rng.randrange(-3, 4))
                       for _ in range(d11 * d01)])
        page = TwoTermPage(d00, d01, d10, d11, d1, d1p)
        h1 = hyper1_total(page)
        if h1 != (d10 - rank(d1)) + e2_term(page):
            bad += 1
        if hyper0(page) - h1 + hyper2(page) != d00 - d10 - d01 + d11:
            bad += 1
        if all(e == 0 for e in d1p.entries) and h1 != hyper1_split(page):
            bad += 1
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed <= 2.0
    _line(8, ok, "500 pages, %d identity violations, %.2fs" % (bad, elapsed))


def test_criterion_09_elliptic_log_page():
    ok = True
    got = []
    for n in (2, 3, 5):
        # residue-theorem count: h0(log 1-forms) = g + n - 1 = n for g = 1;
        # d1 injective since multiplication by a nonzero form is injective
        d1 = QMatrix(n, 1, [1] + [0] * (n - 1))
        page = TwoTermPage(1, 1, n, 0, d1, QMatrix.zero(0, 1))
        h0, h1 = hyper0(page), hyper1_split(page)
        got.append((n, h0, h1))
        ok = ok and h0 == 0 and h1 == n and hyper1_total(page) == n
    _line(9, ok, "(n, H0, H1) = %s" % got)


def test_criterion_10_cli_determinism(tmp_path, capsys):
    job = tmp_path / "job.txt"
    job.write_text("[curve]\nf = 4*x^3 - 4*x - 1\n[twist]\nomega = (1) dx/y\n")
    code1 = main(["cohomology", str(job)])
    out1 = capsys.readouterr().out
    code2 = main(["cohomology", str(job)])
    out2 = capsys.readouterr().out
    identical = code1 == code2 == 0 and out1 == out2

    bad = tmp_path / "bad.txt"
    bad.write_text("[curve]\nf = 4*x^3 @ 1\n[twist]\nomega = 0\n")
    code3 = main(["cohomology", str(bad)])
    err = json.loads(capsys.readouterr().out)
    positioned = (code3 == 2 and err["error"]["code"] == "PARSE_ERROR"
                  and "line 2" in err["error"]["message"])
    with pytest.raises(ParseError) as exc:
        parse_job(bad.read_text())
    positioned = positioned and exc.value.line == 2 and exc.value.column > 0
    ok = identical and positioned
    _line(10, ok, "byte-identical=%s, malformed input exit 2 with "
          "line/column=%s" % (out1 == out2, positioned))
