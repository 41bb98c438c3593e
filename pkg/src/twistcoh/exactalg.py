"""Exact linear algebra over the rationals.

Dense matrices of ``fractions.Fraction`` entries.  Rank is computed by
fraction-free (Bareiss) elimination on an integer-scaled copy; kernels,
images and cokernels come from a canonical reduced row echelon form, so
every answer is deterministic bit-for-bit.
"""

from fractions import Fraction
from math import gcd


class QMatrix:
    """Immutable dense matrix over Q, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries):
        entries = [Fraction(e) for e in entries]
        if len(entries) != rows * cols:
            raise ValueError("entry count %d != %d x %d" % (len(entries), rows, cols))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", tuple(entries))

    def __setattr__(self, name, value):
        raise AttributeError("QMatrix is immutable")

    @classmethod
    def from_rows(cls, row_lists):
        rows = len(row_lists)
        cols = len(row_lists[0]) if rows else 0
        flat = []
        for r in row_lists:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(rows, cols, flat)

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n):
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def transpose(self):
        return QMatrix(self.cols, self.rows,
                       [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def mul_vec(self, v):
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum((self[i, j] * v[j] for j in range(self.cols)), Fraction(0))
                for i in range(self.rows)]

    def __eq__(self, other):
        return (isinstance(other, QMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return "QMatrix(%d, %d, %r)" % (self.rows, self.cols, list(self.entries))


def _integer_rows(m):
    """Scale each row by its lcm of denominators; preserves row space."""
    out = []
    for i in range(m.rows):
        row = m.row(i)
        lcm = 1
        for e in row:
            d = e.denominator
            lcm = lcm // gcd(lcm, d) * d
        out.append([int(e * lcm) for e in row])
    return out


def rank(m):
    """Rank via fraction-free Bareiss elimination."""
    a = _integer_rows(m)
    rows, cols = m.rows, m.cols
    r = 0
    prev = 1
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == rows:
            break
    return r


def rref(m):
    """Canonical reduced row echelon form.

    Returns (rows, pivot_cols) where rows is a list of Fraction lists with
    zero rows dropped.  Forward pass is fraction-free; normalization to
    leading-1 reduced form happens at the end.
    """
    a = _integer_rows(m)
    rows, cols = m.rows, m.cols
    pivots = []
    r = 0
    prev = 1
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    # Back substitution over Q for the canonical reduced form.
    ech = [[Fraction(x) for x in a[i]] for i in range(r)]
    for i in range(r - 1, -1, -1):
        c = pivots[i]
        lead = ech[i][c]
        ech[i] = [x / lead for x in ech[i]]
        for k in range(i):
            factor = ech[k][c]
            if factor:
                ech[k] = [ech[k][j] - factor * ech[i][j] for j in range(cols)]
    return ech, pivots


def kernel_basis(m):
    """Basis of the null space {v : m v = 0}.

    Reduced-echelon parametrization with free variables in ascending column
    order; the basis vector for free column c has entry 1 at c.
    """
    ech, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for c in free:
        v = [Fraction(0)] * m.cols
        v[c] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -ech[i][c]
        lead = next(x for x in v if x)
        basis.append([x / lead for x in v])
    return basis


def image_basis(m):
    """Canonical basis of the column space (rref of the transpose)."""
    ech, _ = rref(m.transpose())
    return ech


def cokernel_basis(m):
    """(dimension, representatives) for target / Im(m).

    Representatives are the standard basis vectors at the non-pivot rows of
    the column echelon form; they project to a basis of the quotient.
    """
    ech, pivots = rref(m.transpose())
    pivot_set = set(pivots)
    dim = m.rows - len(pivots)
    reps = []
    for r in range(m.rows):
        if r not in pivot_set:
            v = [Fraction(0)] * m.rows
            v[r] = Fraction(1)
            reps.append(v)
    return dim, reps


def solve_in_span(span_vectors, target):
    """Is target a Q-linear combination of span_vectors?  Bool only."""
    if not span_vectors:
        return all(x == 0 for x in target)
    n = len(target)
    m = QMatrix.from_rows([list(v) for v in span_vectors])
    r0 = rank(m)
    aug = QMatrix.from_rows([list(v) for v in span_vectors] + [list(target)])
    return rank(aug) == r0
