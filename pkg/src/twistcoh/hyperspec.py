"""Hypercohomology of a two-term complex from its first spectral page.

Inputs are abstract: four dimensions and the two differentials d1, d1p as
rational matrices.  The totalization is D0 = E00 -> D1 = E10 (+) E01 ->
D2 = E11 with block maps d0 = (d1, 0) and d1 = (0, d1p); no cross term
E10 -> E11 enters.  The split route additionally assumes d1p = 0.
"""

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerationViolated, ShapeMismatch
from .exactalg import QMatrix, kernel_basis, rank


@dataclass(frozen=True)
class TwoTermPage:
    dim00: int
    dim01: int
    dim10: int
    dim11: int
    d1: QMatrix
    d1p: QMatrix

    def __post_init__(self):
        dims = (self.dim00, self.dim01, self.dim10, self.dim11)
        if any(d < 0 for d in dims):
            raise ShapeMismatch("negative dimension", dims=dims)
        if (self.d1.rows, self.d1.cols) != (self.dim10, self.dim00):
            raise ShapeMismatch(
                "d1 must be dim10 x dim00",
                expected=(self.dim10, self.dim00),
                got=(self.d1.rows, self.d1.cols))
        if (self.d1p.rows, self.d1p.cols) != (self.dim11, self.dim01):
            raise ShapeMismatch(
                "d1p must be dim11 x dim01",
                expected=(self.dim11, self.dim01),
                got=(self.d1p.rows, self.d1p.cols))


@dataclass(frozen=True)
class HyperReport:
    h0: int
    h1: int
    h2: int
    e2_01: int


def hyper0(page):
    """dim Ker(d1)."""
    return page.dim00 - rank(page.d1)


def hyper1_total(page):
    """dim Ker(d1 on D1) / Im(d0 into D1) on the totalized complex.

    With the block maps d0 = (d1, 0) and d1 = (0, d1p) this is
    coker(d1) + ker(d1p), but the computation runs on the assembled
    block matrices rather than the split formula.
    """
    r10, r01 = page.dim10, page.dim01
    # d^1 : E10 (+) E01 -> E11, zero on the E10 block.
    d_up = QMatrix.from_rows(
        [[Fraction(0)] * r10 + page.d1p.row(i) for i in range(page.dim11)]
        ) if page.dim11 else QMatrix.zero(0, r10 + r01)
    # d^0 : E00 -> E10 (+) E01, zero on the E01 block.
    d_down = QMatrix.from_rows(
        [page.d1.row(i) for i in range(r10)]
        + [[Fraction(0)] * page.dim00 for _ in range(r01)]
        ) if r10 + r01 else QMatrix.zero(0, page.dim00)
    ker = (r10 + r01) - rank(d_up)
    return ker - rank(d_down)


def hyper1_split(page):
    """Coker(d1) + E01 under the degeneration hypothesis d1p = 0."""
    if any(e != 0 for e in page.d1p.entries):
        raise DegenerationViolated("d1p is not zero", d1p=page.d1p)
    return (page.dim10 - rank(page.d1)) + page.dim01


def hyper2(page):
    """dim Coker(d1p)."""
    return page.dim11 - rank(page.d1p)


def e2_term(page):
    """dim Ker(d1p), the surviving E2 term in bidegree (0,1)."""
    return len(kernel_basis(page.d1p))


def hyper_report(page):
    return HyperReport(h0=hyper0(page), h1=hyper1_total(page),
                       h2=hyper2(page), e2_01=e2_term(page))


def _matrix_from_json(data, rows, cols, name):
    if len(data) != rows or any(len(r) != cols for r in data):
        raise ShapeMismatch("%s entries do not match dims" % name,
                            expected=(rows, cols))
    flat = [Fraction(str(e)) for r in data for e in r]
    return QMatrix(rows, cols, flat)


def load_page(path):
    """Read a page file: {"dims": [d00, d01, d10, d11],
    "d1": [["p/q", ...], ...], "d1p": [[...], ...]}."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    dims = doc["dims"]
    if len(dims) != 4:
        raise ShapeMismatch("dims must have four entries", dims=dims)
    d00, d01, d10, d11 = (int(d) for d in dims)
    d1 = _matrix_from_json(doc.get("d1", []), d10, d00, "d1")
    d1p = _matrix_from_json(doc.get("d1p", []), d11, d01, "d1p")
    return TwoTermPage(d00, d01, d10, d11, d1, d1p)
