"""Local-chart model of logarithmic differential forms.

A chart has coordinates t_1..t_n with the divisor cut out by
t_1 = ... = t_l = 0.  A degree-k form is stored against the log basis
b_i = dt_i/t_i (i <= l) and b_i = dt_i (i > l), with polynomial
coefficients keyed by ascending index subsets, so poles enter only through
the log basis and are at worst of order one.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotClosed


@dataclass(frozen=True)
class Chart:
    n: int
    l: int

    def __post_init__(self):
        if not 1 <= self.l <= self.n:
            raise ValueError("need 1 <= l <= n")


class MPoly:
    """Polynomial in t_1..t_n: sparse map exponent-tuple -> Fraction."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n, coeffs=()):
        self.n = n
        out = {}
        for exp, c in dict(coeffs).items():
            c = Fraction(c)
            if c:
                exp = tuple(exp)
                if len(exp) != n or any(e < 0 for e in exp):
                    raise ValueError("bad exponent %r" % (exp,))
                out[exp] = c
        self.coeffs = out

    @classmethod
    def const(cls, n, c):
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n, i, power=1):
        """t_i ** power (1-based i)."""
        exp = [0] * n
        exp[i - 1] = power
        return cls(n, {tuple(exp): 1})

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MPoly(self.n, out)

    def __neg__(self):
        return MPoly(self.n, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MPoly(self.n, {e: c * other for e, c in self.coeffs.items()})
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MPoly(self.n, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, MPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def partial(self, i):
        """d/dt_i, 1-based."""
        out = {}
        for e, c in self.coeffs.items():
            if e[i - 1]:
                ne = e[:i - 1] + (e[i - 1] - 1,) + e[i:]
                out[ne] = out.get(ne, Fraction(0)) + c * e[i - 1]
        return MPoly(self.n, out)

    def subs_zero(self, i):
        """Restrict to the slice t_i = 0."""
        return MPoly(self.n, {e: c for e, c in self.coeffs.items()
                              if e[i - 1] == 0})

    def divisible_by(self, i):
        return all(e[i - 1] >= 1 for e in self.coeffs)

    def divided_by(self, i):
        if not self.divisible_by(i):
            raise ValueError("not divisible by t_%d" % i)
        return MPoly(self.n, {e[:i - 1] + (e[i - 1] - 1,) + e[i:]: c
                              for e, c in self.coeffs.items()})

    def times_var(self, i):
        return MPoly(self.n, {e[:i - 1] + (e[i - 1] + 1,) + e[i:]: c
                              for e, c in self.coeffs.items()})

    def evaluate_origin(self):
        return self.coeffs.get((0,) * self.n, Fraction(0))

    def to_str(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            mono = "*".join("t%d" % (i + 1) if k == 1 else "t%d^%d" % (i + 1, k)
                            for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (c, mono))
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __repr__(self):
        return "<%s>" % self.to_str()


class LogForm:
    """Degree-k form: map from sorted index tuples S (|S| = k) to MPoly."""

    __slots__ = ("chart", "degree", "terms")

    def __init__(self, chart, degree, terms=()):
        self.chart = chart
        self.degree = degree
        out = {}
        for S, c in dict(terms).items():
            S = tuple(S)
            if list(S) != sorted(set(S)) or len(S) != degree:
                raise ValueError("bad index set %r" % (S,))
            if any(not 1 <= i <= chart.n for i in S):
                raise ValueError("index out of chart range")
            if not c.is_zero():
                out[S] = c
        self.terms = out

    @classmethod
    def zero(cls, chart, degree=0):
        return cls(chart, degree)

    @classmethod
    def function(cls, chart, poly):
        return cls(chart, 0, {(): poly})

    @classmethod
    def basis(cls, chart, *indices):
        """b_{i1} ^ ... ^ b_{ik} for strictly ascending indices."""
        n = chart.n
        return cls(chart, len(indices),
                   {tuple(indices): MPoly.const(n, 1)})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        self._compat(other)
        if self.degree != other.degree:
            raise ValueError("degree mismatch in sum")
        out = dict(self.terms)
        for S, c in other.terms.items():
            out[S] = out.get(S, MPoly(self.chart.n)) + c
        return LogForm(self.chart, self.degree, out)

    def __neg__(self):
        return LogForm(self.chart, self.degree,
                       {S: -c for S, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (isinstance(other, LogForm) and self.chart == other.chart
                and self.degree == other.degree and self.terms == other.terms)

    def __hash__(self):
        return hash((self.chart, self.degree, frozenset(self.terms.items())))

    def scaled(self, c):
        return LogForm(self.chart, self.degree,
                       {S: p * c for S, p in self.terms.items()})

    def _compat(self, other):
        if self.chart != other.chart:
            raise ValueError("forms on different charts")

    def to_str(self):
        if not self.terms:
            return "0"
        l = self.chart.l
        parts = []
        for S in sorted(self.terms):
            basis = "^".join("dt%d/t%d" % (i, i) if i <= l else "dt%d" % i
                             for i in S)
            c = self.terms[S].to_str()
            if not basis:
                parts.append(c)
            elif c == "1":
                parts.append(basis)
            else:
                parts.append("(%s)*%s" % (c, basis))
        return " + ".join(parts)

    def __repr__(self):
        return "<%s>" % self.to_str()


def _merge_sign(s1, s2):
    """Koszul sign for concatenating ascending tuples s1, s2; None if they
    overlap."""
    if set(s1) & set(s2):
        return None
    inversions = sum(1 for a in s1 for b in s2 if a > b)
    return -1 if inversions % 2 else 1


def wedge(a, b):
    """Graded-commutative product; overlapping basis indices annihilate."""
    a._compat(b)
    chart = a.chart
    out = {}
    for S1, c1 in a.terms.items():
        for S2, c2 in b.terms.items():
            sign = _merge_sign(S1, S2)
            if sign is None:
                continue
            S = tuple(sorted(S1 + S2))
            c = c1 * c2 * sign
            out[S] = out.get(S, MPoly(chart.n)) + c
    return LogForm(chart, a.degree + b.degree, out)


def d_log(a):
    """Exterior derivative in the log basis.

    d(f b_S) = sum_i (df/dt_i) dt_i ^ b_S, rewriting dt_i = t_i (dt_i/t_i)
    for log coordinates; d o d = 0.
    """
    chart = a.chart
    out = {}
    for S, f in a.terms.items():
        for i in range(1, chart.n + 1):
            if i in S:
                continue
            g = f.partial(i)
            if g.is_zero():
                continue
            if i <= chart.l:
                g = g.times_var(i)
            sign = 1 if sum(1 for s in S if s < i) % 2 == 0 else -1
            T = tuple(sorted(S + (i,)))
            c = g * sign
            out[T] = out.get(T, MPoly(chart.n)) + c
    return LogForm(chart, a.degree + 1, out)


def twisted_d_log(omega, a):
    """d_log(a) + omega ^ a; omega must be a closed 1-form."""
    if omega.degree != 1:
        raise ValueError("twisting parameter must have degree 1")
    witness = d_log(omega)
    if not witness.is_zero():
        raise NotClosed("twisting parameter is not closed", witness=witness)
    return d_log(a) + wedge(omega, a)


def residue(a):
    """Per-component residues of a degree-1 form: the j-th entry is the
    coefficient of dt_j/t_j restricted to t_j = 0."""
    if a.degree != 1:
        raise ValueError("residue expects a degree-1 form")
    chart = a.chart
    out = []
    for j in range(1, chart.l + 1):
        f = a.terms.get((j,), MPoly(chart.n))
        out.append(f.subs_zero(j))
    return out


def residue_k(a, j):
    """Extract the dt_j/t_j factor (front position, Koszul sign) and
    restrict the remaining (k-1)-form to the slice t_j = 0."""
    if a.degree < 1:
        raise ValueError("residue_k expects degree >= 1")
    if not 1 <= j <= a.chart.l:
        raise ValueError("t_%d is not a log coordinate" % j)
    out = {}
    for S, f in a.terms.items():
        if j not in S:
            continue
        pos = S.index(j)
        sign = 1 if pos % 2 == 0 else -1
        rest = tuple(i for i in S if i != j)
        out[rest] = out.get(rest, MPoly(a.chart.n)) + f.subs_zero(j) * sign
    return LogForm(a.chart, a.degree - 1, out)


def is_pole_free(a):
    """True iff a is the image of a regular form: every log-basis
    coefficient at index i <= l is divisible by t_i."""
    for S, f in a.terms.items():
        for i in S:
            if i <= a.chart.l and not f.divisible_by(i):
                return False
    return True


def log_as_twist(a):
    """Rewrite f dt_1/t_1 on a single-log chart as (f/t_1) dt_1 over the
    1/t_1-twisted module: returns (numerator f, pole_free flag).

    pole_free is True exactly when t_1 | f, i.e. the form is regular.
    The inverse rewriting is twist_as_log.
    """
    if a.chart.l != 1:
        raise ValueError("chart must have a single log coordinate")
    if a.degree != 1:
        raise ValueError("expects a degree-1 form")
    for S in a.terms:
        if S != (1,):
            raise ValueError("form has components outside dt_1/t_1")
    f = a.terms.get((1,), MPoly(a.chart.n))
    return f, f.divisible_by(1)


def twist_as_log(chart, numerator):
    """Inverse of log_as_twist: (f/t_1) dt_1 back to f dt_1/t_1."""
    if chart.l != 1:
        raise ValueError("chart must have a single log coordinate")
    return LogForm(chart, 1, {(1,): numerator})
