"""Coordinate rings of smooth affine hyperelliptic curves and the torus.

The curve ring is A = k[x, y] / (y^2 - f(x)) with k = Q, optionally
localized at the coordinate monomials x and/or y.  Elements live in the
canonical form (a(x) + b(x) y) / (x^p y^q): the defining relation makes
{1, y} a free k[x]-module basis, and denominators are restricted to
monomials over the inverted generators, which keeps unit detection
decidable.  The torus ring is Q[t, 1/t].

All 1-forms are stored as a single ring coefficient against the global
generator dx/y (curve) or dt/t (torus).
"""

from dataclasses import dataclass
from fractions import Fraction

from . import polyq as P
from .errors import IncompatibleRing, NonSmooth, NotAUnit

NEG_INF = float("-inf")

# Weierstrass weights: deg(x) = 2, deg(y) = 3, so that for cubic f the
# defining relation is weight-homogeneous in leading terms and d raises
# weight by exactly one.
WX = 2
WY = 3


@dataclass(frozen=True)
class CurveSpec:
    """Defining data y^2 = f(x) plus the set of inverted coordinates."""
    f: tuple
    inverted: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "f", P.trim(tuple(Fraction(c) for c in self.f)))
        object.__setattr__(self, "inverted", frozenset(self.inverted))
        bad = self.inverted - {"x", "y"}
        if bad:
            raise ValueError("cannot invert %s" % sorted(bad))


def make_curve(spec):
    """Validated ring handle; raises NonSmooth if f is not squarefree."""
    f = spec.f
    if P.deg(f) < 3:
        raise ValueError("deg f = %d < 3" % P.deg(f))
    witness = P.gcd(f, P.deriv(f))
    if P.deg(witness) > 0:
        raise NonSmooth("f is not squarefree; gcd(f, f') = %s" % P.to_str(witness),
                        witness=witness)
    return CurveRing(f, spec.inverted)


class CurveRing:
    """Handle carrying f, the inverted set and canonicalization rules."""

    model = "curve"

    def __init__(self, f, inverted=frozenset()):
        self.f = P.trim(tuple(Fraction(c) for c in f))
        self.fprime = P.deriv(self.f)
        self.inverted = frozenset(inverted)

    def __eq__(self, other):
        return (isinstance(other, CurveRing) and self.f == other.f
                and self.inverted == other.inverted)

    def __hash__(self):
        return hash((self.f, self.inverted))

    def __repr__(self):
        return "CurveRing(y^2 = %s, inverted=%s)" % (
            P.to_str(self.f), sorted(self.inverted))

    def element(self, a=(), b=(), p=0, q=0):
        return CurveElement(self, P.poly(a), P.poly(b), p, q)

    def const(self, c):
        return self.element([c])

    def zero(self):
        return self.element()

    def one(self):
        return self.element([1])

    def x(self):
        return self.element([0, 1])

    def y(self):
        return self.element([], [1])

    def monomial(self, i=0, j=0, p=0, q=0):
        """x^i y^j / (x^p y^q), canonicalized.  j may exceed 1."""
        num_b_even = j % 2
        fpow = P.power(self.f, j // 2)
        if num_b_even:
            return CurveElement(self, P.ZERO, P.shift(fpow, i), p, q)
        return CurveElement(self, P.shift(fpow, i), P.ZERO, p, q)


class CurveElement:
    """Canonical (a + b y) / (x^p y^q)."""

    __slots__ = ("ring", "a", "b", "p", "q")

    def __init__(self, ring, a, b, p=0, q=0):
        a, b = P.trim(a), P.trim(b)
        if p < 0 or q < 0:
            raise ValueError("negative denominator exponent")
        if p and "x" not in ring.inverted:
            raise IncompatibleRing("x is not inverted in this ring")
        if q and "y" not in ring.inverted:
            raise IncompatibleRing("y is not inverted in this ring")
        # y-cancellation: (a + b y)/y^q = (b + (a/f) y)/y^(q-1) when f | a.
        while q >= 1:
            quo = P.div_exact(a, ring.f) if a else P.ZERO
            if quo is None:
                break
            a, b = b, quo
            q -= 1
        # x-cancellation.
        while p >= 1 and (not a or a[0] == 0) and (not b or b[0] == 0):
            a = P.trim(a[1:])
            b = P.trim(b[1:])
            p -= 1
        if not a and not b:
            p = q = 0
        self.ring = ring
        self.a = a
        self.b = b
        self.p = p
        self.q = q

    # -- arithmetic ------------------------------------------------------

    def _check(self, other):
        if self.ring != other.ring:
            raise IncompatibleRing("elements of different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check(other)
        pp, qq = max(self.p, other.p), max(self.q, other.q)
        a1, b1 = _num_times_monomial(self.ring, self.a, self.b,
                                     pp - self.p, qq - self.q)
        a2, b2 = _num_times_monomial(self.ring, other.a, other.b,
                                     pp - other.p, qq - other.q)
        return CurveElement(self.ring, P.add(a1, a2), P.add(b1, b2), pp, qq)

    __radd__ = __add__

    def __neg__(self):
        return CurveElement(self.ring, P.neg(self.a), P.neg(self.b),
                            self.p, self.q)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CurveElement(self.ring, P.scale(self.a, other),
                                P.scale(self.b, other), self.p, self.q)
        self._check(other)
        f = self.ring.f
        a = P.add(P.mul(self.a, other.a), P.mul(P.mul(self.b, other.b), f))
        b = P.add(P.mul(self.a, other.b), P.mul(self.b, other.a))
        return CurveElement(self.ring, a, b, self.p + other.p, self.q + other.q)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return (isinstance(other, CurveElement) and self.ring == other.ring
                and self.a == other.a and self.b == other.b
                and self.p == other.p and self.q == other.q)

    def __hash__(self):
        return hash((self.a, self.b, self.p, self.q))

    def is_zero(self):
        return not self.a and not self.b

    # -- weights ---------------------------------------------------------

    def weighted_degree(self):
        """max over monomials of 2 i + 3 j - (2 p + 3 q); -inf for zero."""
        if self.is_zero():
            return NEG_INF
        best = NEG_INF
        for i, c in enumerate(self.a):
            if c:
                best = max(best, WX * i)
        for i, c in enumerate(self.b):
            if c:
                best = max(best, WX * i + WY)
        return best - WX * self.p - WY * self.q

    def min_weight(self):
        if self.is_zero():
            return NEG_INF
        best = None
        for i, c in enumerate(self.a):
            if c:
                best = WX * i if best is None else min(best, WX * i)
        for i, c in enumerate(self.b):
            if c:
                w = WX * i + WY
                best = w if best is None else min(best, w)
        return best - WX * self.p - WY * self.q

    # -- rendering -------------------------------------------------------

    def __repr__(self):
        return "<%s>" % self.to_str()

    def to_str(self):
        if self.is_zero():
            return "0"
        parts = []
        if self.a:
            parts.append(P.to_str(self.a))
        if self.b:
            if self.b == P.ONE:
                parts.append("y")
            elif P.is_const(self.b):
                parts.append("%s*y" % self.b[0])
            else:
                parts.append("(%s)*y" % P.to_str(self.b))
        num = " + ".join(parts)
        if self.p == 0 and self.q == 0:
            return num
        den_parts = []
        if self.p:
            den_parts.append("x" if self.p == 1 else "x^%d" % self.p)
        if self.q:
            den_parts.append("y" if self.q == 1 else "y^%d" % self.q)
        den = "*".join(den_parts)
        if len(parts) > 1 or (self.a and not P.is_const(self.a)) or self.b:
            num = "(%s)" % num
        return "%s/%s" % (num, den)


def _num_times_monomial(ring, a, b, dp, dq):
    """(a + b y) * x^dp * y^dq expanded back onto the {1, y} basis."""
    a = P.shift(a, dp) if a else P.ZERO
    b = P.shift(b, dp) if b else P.ZERO
    for _ in range(dq):
        a, b = P.mul(b, ring.f), a
    return a, b


class TorusRing:
    """Q[t, 1/t]."""

    model = "torus"
    inverted = frozenset({"t"})

    def __eq__(self, other):
        return isinstance(other, TorusRing)

    def __hash__(self):
        return hash("torus")

    def __repr__(self):
        return "TorusRing()"

    def element(self, coeffs):
        return TorusElement(self, coeffs)

    def const(self, c):
        return TorusElement(self, {0: c})

    def zero(self):
        return TorusElement(self, {})

    def one(self):
        return TorusElement(self, {0: 1})

    def t(self, n=1):
        return TorusElement(self, {n: 1})


class TorusElement:
    """Laurent polynomial in t, sparse exponent -> coefficient map."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = {n: Fraction(c) for n, c in coeffs.items() if c != 0}

    def _check(self, other):
        if self.ring != other.ring:
            raise IncompatibleRing("elements of different rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check(other)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, Fraction(0)) + c
        return TorusElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return TorusElement(self.ring, {n: -c for n, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TorusElement(self.ring,
                                {n: c * other for n, c in self.coeffs.items()})
        self._check(other)
        out = {}
        for n, c in self.coeffs.items():
            for m, d in other.coeffs.items():
                out[n + m] = out.get(n + m, Fraction(0)) + c * d
        return TorusElement(self.ring, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        return (isinstance(other, TorusElement) and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self):
        return not self.coeffs

    def weighted_degree(self):
        """max |exponent|; the torus filtration is symmetric in t, 1/t."""
        if self.is_zero():
            return NEG_INF
        return max(abs(n) for n in self.coeffs)

    def min_weight(self):
        if self.is_zero():
            return NEG_INF
        return min(abs(n) for n in self.coeffs)

    def __repr__(self):
        return "<%s>" % self.to_str()

    def to_str(self):
        if self.is_zero():
            return "0"
        parts = []
        for n in sorted(self.coeffs, reverse=True):
            c = self.coeffs[n]
            if n == 0:
                term = str(c)
            else:
                mono = "t" if n == 1 else "t^%d" % n
                if c == 1:
                    term = mono
                elif c == -1:
                    term = "-" + mono
                else:
                    term = "%s*%s" % (c, mono)
            parts.append(term)
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out


@dataclass(frozen=True)
class Form1:
    """A 1-form: one ring coefficient against dx/y (curve) or dt/t (torus)."""
    coeff: object

    @property
    def ring(self):
        return self.coeff.ring

    def __add__(self, other):
        return Form1(self.coeff + other.coeff)

    def __sub__(self, other):
        return Form1(self.coeff - other.coeff)

    def __neg__(self):
        return Form1(-self.coeff)

    def scaled(self, c):
        return Form1(self.coeff * c)

    def is_zero(self):
        return self.coeff.is_zero()

    def basis_str(self):
        return "dx/y" if self.ring.model == "curve" else "dt/t"

    def to_str(self):
        c = self.coeff.to_str()
        if c == "0":
            return "0"
        if c == "1":
            return self.basis_str()
        if ("+" in c or "-" in c[1:] or "/" in c) and not (
                c.startswith("(") and c.endswith(")")):
            c = "(%s)" % c
        return "%s*%s" % (c, self.basis_str())

    def __repr__(self):
        return "<%s>" % self.to_str()


def ring_add(u, v):
    return u + v


def ring_mul(u, v):
    return u * v


def d(s):
    """Exterior derivative as a Form1 coefficient against the global basis.

    Curve: d(a + b y) = (a' y + b' f + b f'/2) (dx/y), extended to monomial
    denominators by the quotient rule.  Torus: d(t^n) = n t^n (dt/t).
    """
    ring = s.ring
    if ring.model == "torus":
        return Form1(TorusElement(ring, {n: n * c for n, c in s.coeffs.items()}))
    f, fp = ring.f, ring.fprime
    # numerator part: x-component b' f + (1/2) b f', y-component a'
    num_d = CurveElement(
        ring,
        P.add(P.mul(P.deriv(s.b), f), P.scale(P.mul(s.b, fp), Fraction(1, 2))),
        P.deriv(s.a))
    num = CurveElement(ring, s.a, s.b)
    inv_den = CurveElement(ring, P.ONE, P.ZERO, s.p, s.q)
    total = num_d * inv_den
    # d(x^-p y^-q) = -p x^(-p-1) y^(1-q) - (q/2) f' x^-p y^(-q-1), against dx/y
    if s.p:
        total = total + num * CurveElement(ring, P.ZERO, (Fraction(-s.p),),
                                           s.p + 1, s.q)
    if s.q:
        total = total + num * CurveElement(ring, P.scale(fp, Fraction(-s.q, 2)),
                                           P.ZERO, s.p, s.q + 1)
    return Form1(total)


def twisted_d(omega, s):
    """d(s) + s * omega for a 0-form s."""
    if omega.ring != s.ring:
        raise IncompatibleRing("omega and s live in different rings")
    return Form1(d(s).coeff + s * omega.coeff)


def is_unit(s):
    """(invertible?, inverse-or-None).

    Curve case by the norm form N(a + b y) = a^2 - b^2 f: the element is a
    unit of the localized ring iff every irreducible factor of N divides x
    (x inverted) or f (y inverted).
    """
    ring = s.ring
    if s.is_zero():
        return False, None
    if ring.model == "torus":
        if len(s.coeffs) != 1:
            return False, None
        (n, c), = s.coeffs.items()
        return True, TorusElement(ring, {-n: Fraction(1) / c})
    norm = P.sub(P.mul(s.a, s.a), P.mul(P.mul(s.b, s.b), ring.f))
    if not norm:
        return False, None
    allowed = P.ONE
    if "x" in ring.inverted:
        allowed = P.mul(allowed, P.X)
    if "y" in ring.inverted:
        allowed = P.mul(allowed, ring.f)
    h = norm
    while P.deg(h) > 0:
        g = P.gcd(h, allowed)
        if P.deg(g) == 0:
            return False, None
        h = P.div_exact(h, g)
    # Build the inverse: find D = x^ex f^ey with N | D, then
    # s^-1 = (x^p y^q) (a - b y) (D/N) / (x^ex y^(2 ey)).
    e = max(P.deg(norm), 0)
    ex = e if "x" in ring.inverted else 0
    ey = e if "y" in ring.inverted else 0
    big = P.shift(P.power(ring.f, ey), ex)
    quo = P.div_exact(big, norm)
    assert quo is not None
    conj = CurveElement(ring, s.a, P.neg(s.b))
    inv = conj * CurveElement(ring, quo, P.ZERO, ex, 2 * ey)
    inv = inv * CurveElement(ring, *_monomial_num(ring, s.p, s.q))
    return True, inv


def _monomial_num(ring, i_x, j_y):
    """x^i y^j as a numerator pair (a, b)."""
    fpow = P.power(ring.f, j_y // 2)
    if j_y % 2:
        return P.ZERO, P.shift(fpow, i_x)
    return P.shift(fpow, i_x), P.ZERO


def dlog(g):
    """d(g) / g; requires g to be a unit."""
    ok, inv = is_unit(g)
    if not ok:
        raise NotAUnit("dlog of a non-unit %r" % g)
    return Form1(d(g).coeff * inv)


def weighted_degree(s):
    return s.weighted_degree()
