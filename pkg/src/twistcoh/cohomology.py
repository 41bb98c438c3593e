"""Twisted cohomology of the two-term complex A --d_w--> Omega^1.

H^0 and H^1 are computed by exact linear algebra on weight-filtered
truncations.  The domain window at cutoff n is spanned by the canonical
monomials of weighted degree <= n (denominator exponents additionally
bounded by ceil(n/2) on localized rings); the cokernel is counted on the
codomain filtration lagged by a safety margin, because the differential
can push a monomial's lowest-weight part down by a bounded amount.
Dimensions are certified by stabilization over a span of consecutive
windows; anything else raises NotStabilized.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import polyq as P
from .curvering import (CurveElement, Form1, NEG_INF, _monomial_num, d, dlog,
                        is_unit, twisted_d)
from .errors import IncompatibleRing, NotAUnit, NotStabilized
from .exactalg import QMatrix, kernel_basis, rref


@dataclass(frozen=True)
class TruncationWindow:
    n_max: int = 60
    delta: int = 1
    stabilization_span: int = 3

    def __post_init__(self):
        if not (self.n_max >= self.delta >= 0):
            raise ValueError("need n_max >= delta >= 0")
        if self.stabilization_span < 2:
            raise ValueError("stabilization_span must be >= 2")


@dataclass(frozen=True)
class CohomologyReport:
    h0_dim: int
    h1_dim: int
    h0_basis: tuple          # ring elements with d_w(s) = 0 exactly
    h1_basis: tuple          # Form1 representatives outside the image
    stabilized_at: int
    windows: tuple           # audit trail of (n, h0, h1)

    def dims(self):
        return (self.h0_dim, self.h1_dim)


class _Echelon:
    """Incremental row echelon over sparse vectors keyed by int indices."""

    def __init__(self):
        self.rows = {}

    def add(self, vec):
        """Reduce vec against the rows; insert if independent.  True iff
        the span grew."""
        v = {k: Fraction(c) for k, c in vec.items() if c}
        while v:
            piv = min(v)
            if piv not in self.rows:
                c = v[piv]
                self.rows[piv] = {k: x / c for k, x in v.items()}
                return True
            row = self.rows[piv]
            c = v.pop(piv)
            for k, rc in row.items():
                if k == piv:
                    continue
                nv = v.get(k, Fraction(0)) - c * rc
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
        return False


class _CurveCoords:
    """Coordinates for a batch of curve elements: clear the common monomial
    denominator, then read coefficients off the free {1, y} basis.

    Keys are (j, i) for x^i y^j of the cleared form; the intrinsic weight of
    a key is 2i + 3j minus the top weight of the clearing monomial."""

    def __init__(self, ring, elems):
        self.ring = ring
        self.pc = max((e.p for e in elems), default=0)
        self.qc = max((e.q for e in elems), default=0)
        num = _monomial_num(ring, self.pc, self.qc)
        self.clear = CurveElement(ring, *num)
        w = self.clear.weighted_degree()
        self.wshift = 0 if w == NEG_INF else int(w)

    def vec(self, e):
        cleared = e * self.clear
        assert cleared.p == 0 and cleared.q == 0
        out = {}
        for i, c in enumerate(cleared.a):
            if c:
                out[(0, i)] = c
        for i, c in enumerate(cleared.b):
            if c:
                out[(1, i)] = c
        return out

    def key_weight(self, key):
        j, i = key
        return 2 * i + 3 * j - self.wshift

    def universe(self, m):
        """All keys of weight <= m, ascending by (weight, j, i)."""
        top = m + self.wshift
        keys = []
        for j in (0, 1):
            imax = (top - 3 * j) // 2
            keys.extend((j, i) for i in range(imax + 1))
        keys.sort(key=lambda k: (self.key_weight(k), k))
        return keys

    def dim_universe(self, m):
        top = m + self.wshift
        total = 0
        for j in (0, 1):
            if top - 3 * j >= 0:
                total += (top - 3 * j) // 2 + 1
        return total

    def rebuild(self, key):
        j, i = key
        a, b = _monomial_num(self.ring, i, j)
        return CurveElement(self.ring, a, b, self.pc, self.qc)


class _TorusCoords:
    """Laurent monomial coordinates; key = exponent, weight = |exponent|."""

    def __init__(self, ring, elems):
        self.ring = ring

    def vec(self, e):
        return dict(e.coeffs)

    def key_weight(self, key):
        return abs(key)

    def universe(self, m):
        return sorted(range(-m, m + 1), key=lambda k: (abs(k), k))

    def dim_universe(self, m):
        return 2 * m + 1

    def rebuild(self, key):
        return self.ring.t(key)


def _coords(ring, elems):
    if ring.model == "torus":
        return _TorusCoords(ring, elems)
    return _CurveCoords(ring, elems)


def _spanning_monomials(ring, n):
    """Canonical monomials of weighted degree <= n spanning the window."""
    if ring.model == "torus":
        return [ring.t(k) for k in range(-n, n + 1)]
    half = (n + 1) // 2
    pmax = half if "x" in ring.inverted else 0
    qmax = half if "y" in ring.inverted else 0
    out = []
    for i in range(n // 2 + 1):
        out.append(ring.monomial(i=i))
    for i in range((n - 3) // 2 + 1):
        out.append(ring.monomial(i=i, j=1))
    for q in range(1, qmax + 1):
        for i in range((n + 3 * q) // 2 + 1):
            out.append(CurveElement(ring, P.shift(P.ONE, i), P.ZERO, 0, q))
    for p in range(1, pmax + 1):
        out.append(CurveElement(ring, P.ONE, P.ZERO, p, 0))
        out.append(CurveElement(ring, P.ZERO, P.ONE, p, 0))
        for q in range(1, qmax + 1):
            out.append(CurveElement(ring, P.ONE, P.ZERO, p, q))
    return out


def _weight_lag(ring, omega):
    """How far the codomain filtration trails the domain window.

    The exterior derivative can lower a monomial's minimum weight by at
    most 5 on a curve (via the b'f and b f'/2 terms, whose low monomials
    reach down to the constant term of f); localization denominators add
    up to 3 more.  Multiplying by omega lowers by the negative part of the
    minimum weight of its coefficient.  On the torus only the omega shift
    matters.
    """
    c = omega.coeff
    if ring.model == "torus":
        return max((abs(e) for e in c.coeffs), default=0)
    lag = 5 + (3 if ring.inverted else 0)
    mw = c.min_weight()
    if mw != NEG_INF and mw < 0:
        lag += -int(mw)
    return lag


def _twist_height(ring, omega):
    """Numeric scale of the twist data.

    Rank drops of the truncated matrices (resonances) happen at weights
    governed by the size of omega's coefficients -- e.g. the diagonal
    torus action n - lambda degenerates at n = lambda -- so windows must
    at least exhaust this scale before stabilization is believed.
    """
    c = omega.coeff
    if c.is_zero():
        return 0
    if ring.model == "torus":
        top = max(-(-abs(v).numerator // abs(v).denominator)
                  for v in c.coeffs.values())
        return top + max(abs(e) for e in c.coeffs)
    top = 0
    for poly in (c.a, c.b):
        for v in poly:
            if v:
                top = max(top, -(-abs(v).numerator // abs(v).denominator))
    wd = c.weighted_degree()
    return top + max(0, int(wd))


def _window_compute(ring, omega, n, m):
    dom = _spanning_monomials(ring, n)
    imgs = [twisted_d(omega, u).coeff for u in dom]
    cs = _coords(ring, imgs)
    vecs = [cs.vec(u) for u in imgs]

    observed = sorted({k for v in vecs for k in v},
                      key=lambda k: (cs.key_weight(k), k))
    key_row = {k: r for r, k in enumerate(observed)}

    # --- H^0: kernel of the truncated matrix, deduplicated exactly -------
    rows = [[Fraction(0)] * len(dom) for _ in observed]
    for col, v in enumerate(vecs):
        for k, c in v.items():
            rows[key_row[k]][col] = c
    mat = (QMatrix.from_rows(rows) if observed
           else QMatrix.zero(0, len(dom)))
    kvecs = kernel_basis(mat)
    kelems = []
    for kv in kvecs:
        s = None
        for c, u in zip(kv, dom):
            if c:
                term = u * c
                s = term if s is None else s + term
        if s is not None and not s.is_zero():
            kelems.append(s)
    h0_basis = []
    if kelems:
        kcs = _coords(ring, kelems)
        kkeys = sorted({k for e in kelems for k in kcs.vec(e)},
                       key=lambda k: (kcs.key_weight(k), k))
        kidx = {k: j for j, k in enumerate(kkeys)}
        kmat = QMatrix.from_rows(
            [[kcs.vec(e).get(k, Fraction(0)) for k in kkeys] for e in kelems])
        ech, _ = rref(kmat)
        for row in ech:
            s = None
            for j, c in enumerate(row):
                if c:
                    term = kcs.rebuild(kkeys[j]) * c
                    s = term if s is None else s + term
            assert s is not None
            if not twisted_d(omega, s).coeff.is_zero():
                raise AssertionError("truncation produced a spurious kernel element")
            h0_basis.append(s)
    h0 = len(h0_basis)

    # --- H^1: image intersected with the lagged filtration ---------------
    high = [k for k in observed if cs.key_weight(k) > m]
    low_universe = cs.universe(m)
    index = {}
    for k in high:
        index[k] = len(index)
    n_high = len(index)
    for k in low_universe:
        if k not in index:
            index[k] = len(index)
    img_ech = _Echelon()
    for v in vecs:
        img_ech.add({index[k]: c for k, c in v.items()})
    in_filtration = [row for piv, row in img_ech.rows.items() if piv >= n_high]
    h1 = cs.dim_universe(m) - len(in_filtration)

    rep_ech = _Echelon()
    for row in in_filtration:
        rep_ech.add(row)
    h1_basis = []
    for k in low_universe:
        if len(h1_basis) == h1:
            break
        if rep_ech.add({index[k]: Fraction(1)}):
            h1_basis.append(Form1(cs.rebuild(k)))
    return h0, h1, h0_basis, h1_basis


def twisted_cohomology(ring, omega, window=None):
    """CohomologyReport for the complex (A, d + omega wedge).

    Raises NotStabilized (with the dimension trail) if the reported pair
    (h0, h1) is not constant over `stabilization_span` consecutive windows
    before n_max is reached.
    """
    if window is None:
        window = TruncationWindow()
    if omega.ring != ring:
        raise IncompatibleRing("omega does not live in the given ring")
    lag = _weight_lag(ring, omega)
    span = window.stabilization_span
    # Do not trust agreement between windows that are still too small to
    # see the resonances of the twist data.
    n_floor = lag + span + _twist_height(ring, omega)
    trail = []
    last = None
    for n in range(lag, window.n_max + 1):
        h0, h1, h0_basis, h1_basis = _window_compute(ring, omega, n, n - lag)
        trail.append((n, h0, h1))
        last = (h0, h1, h0_basis, h1_basis)
        if (n >= n_floor and len(trail) >= span
                and len({t[1:] for t in trail[-span:]}) == 1):
            h0, h1, h0_basis, h1_basis = last
            return CohomologyReport(h0, h1, tuple(h0_basis), tuple(h1_basis),
                                    stabilized_at=trail[-span][0],
                                    windows=tuple(trail))
    raise NotStabilized(
        "dimensions did not stabilize for %d consecutive windows by n_max=%d"
        % (span, window.n_max), trail=tuple(trail))


def gauge_transform(g, eta):
    """T(eta) = g^-1 eta for a unit g."""
    ok, inv = is_unit(g)
    if not ok:
        raise NotAUnit("gauge transform by a non-unit %r" % g)
    return Form1(eta.coeff * inv)


def verify_chain_map(ring, psi1, g, samples):
    """Check d_{psi2}(T(s)) = T(d_{psi1}(s)) with psi2 = psi1 + dg/g on
    every sample 0-form s.  Returns (True, None) or (False, counterexample).
    """
    ok, _ = is_unit(g)
    if not ok:
        raise NotAUnit("%r is not a unit" % g)
    psi2 = Form1(psi1.coeff + dlog(g).coeff)
    for s in samples:
        lhs = twisted_d(psi2, gauge_transform(g, Form1(s)).coeff)
        rhs = gauge_transform(g, twisted_d(psi1, s))
        if lhs.coeff != rhs.coeff:
            return False, s
    return True, None


def gauge_invariance_check(ring, psi1, g, window=None):
    """Twisted cohomology for psi1 and for psi2 = psi1 + dg/g; the reported
    dimensions must agree along the dg/g orbit."""
    psi2 = Form1(psi1.coeff + dlog(g).coeff)
    report1 = twisted_cohomology(ring, psi1, window)
    report2 = twisted_cohomology(ring, psi2, window)
    return report1, report2, report1.dims() == report2.dims()
