"""Univariate polynomials over Q as coefficient tuples (low degree first).

The zero polynomial is the empty tuple.  Everything here is a plain
function on tuples; callers keep them normalized via ``trim``.
"""

from fractions import Fraction

ZERO = ()
ONE = (Fraction(1),)
X = (Fraction(0), Fraction(1))


def poly(coeffs):
    return trim(tuple(Fraction(c) for c in coeffs))


def trim(p):
    p = tuple(p)
    n = len(p)
    while n and p[n - 1] == 0:
        n -= 1
    return p[:n]


def deg(p):
    """Degree; -1 for the zero polynomial."""
    return len(p) - 1


def add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def neg(p):
    return tuple(-c for c in p)


def sub(p, q):
    return add(p, neg(q))


def scale(p, c):
    c = Fraction(c)
    if c == 0:
        return ZERO
    return tuple(c * x for x in p)


def mul(p, q):
    if not p or not q:
        return ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def shift(p, k):
    """Multiply by x**k."""
    if not p:
        return ZERO
    return (Fraction(0),) * k + tuple(p)


def deriv(p):
    return trim(tuple(i * c for i, c in enumerate(p)))[1:] if p else ZERO


def divmod_(p, q):
    """(quotient, remainder) with deg(remainder) < deg(q)."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    dq = deg(q)
    lead = q[-1]
    quo = [Fraction(0)] * max(0, len(p) - dq)
    for i in range(len(p) - 1, dq - 1, -1):
        c = rem[i]
        if c == 0:
            continue
        factor = c / lead
        quo[i - dq] = factor
        for j in range(dq + 1):
            rem[i - dq + j] -= factor * q[j]
    return trim(quo), trim(rem)


def div_exact(p, q):
    """p / q if the division is exact, else None."""
    quo, rem = divmod_(p, q)
    return quo if not rem else None


def gcd(p, q):
    """Monic gcd."""
    while q:
        p, q = q, divmod_(p, q)[1]
    if p:
        p = scale(p, Fraction(1) / p[-1])
    return p


def power(p, k):
    out = ONE
    base = p
    while k:
        if k & 1:
            out = mul(out, base)
        base = mul(base, base)
        k >>= 1
    return out


def evaluate(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def is_const(p):
    return len(p) <= 1


def to_str(p, var="x"):
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        if i == 0:
            term = str(c)
        else:
            mono = var if i == 1 else "%s^%d" % (var, i)
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
