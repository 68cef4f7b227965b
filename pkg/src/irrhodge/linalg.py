"""Exact dense linear algebra over Q.

Ranks use fraction-free (Bareiss) elimination on integer rows obtained by
clearing denominators.  Solving and inversion use Gauss-Jordan on Fractions,
which stays small at the sizes this package works with (a few dozen).
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence


def _integer_row(row):
    den = 1
    for a in row:
        if a:
            den = lcm(den, Fraction(a).denominator)
    return [int(Fraction(a) * den) for a in row]


def rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix via Bareiss fraction-free elimination."""
    m = [_integer_row(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            a = m[i][c]
            row_i, row_r = m[i], m[r]
            # exact division by the previous pivot (Sylvester identity)
            m[i] = [(p * row_i[j] - a * row_r[j]) // prev for j in range(ncols)]
        prev = p
        r += 1
        if r == len(m):
            break
    return r


def identity(n: int) -> list:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a, b):
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def inverse(a):
    """Inverse of a square rational matrix; raises ZeroDivisionError if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def determinant(a) -> Fraction:
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        p = m[c][c]
        det *= p
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / p
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def solve(columns: Sequence[Sequence], target: Sequence):
    """Solve ``sum_k x_k * columns[k] == target``.

    Returns the list of coefficients, or ``None`` if the system is
    inconsistent.  When the columns are dependent the free variables are set
    to zero.
    """
    ncols = len(columns)
    nrows = len(target)
    m = [[Fraction(columns[k][i]) for k in range(ncols)] + [Fraction(target[i])]
         for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    if any(m[i][ncols] for i in range(r, nrows)):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = m[i][ncols]
    return x


def nullspace(rows: Sequence[Sequence]) -> list:
    """Basis of ``{x : rows @ x = 0}`` as a list of vectors."""
    if not rows:
        return []
    ncols = len(rows[0])
    m = [[Fraction(a) for a in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


class EchelonBasis:
    """Incrementally maintained row-echelon basis of a subspace of Q^d.

    ``add`` reduces a vector against the current basis and keeps it if it is
    new, so ``len(basis)`` is the dimension of the span seen so far.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, v) -> list:
        v = [Fraction(a) for a in v]
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        return not any(self.reduce(v))

    def add(self, v) -> bool:
        v = self.reduce(v)
        p = next((i for i, a in enumerate(v) if a), None)
        if p is None:
            return False
        piv = v[p]
        v = [a / piv for a in v]
        # keep the basis fully reduced so reduce() is one pass
        for k, row in enumerate(self.rows):
            if row[p]:
                f = row[p]
                self.rows[k] = [a - f * b for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(p)
        return True


def same_span(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    """True iff the row spaces of ``a`` and ``b`` coincide."""
    ra, rb = rank(a), rank(b)
    if ra != rb:
        return False
    return rank(list(a) + list(b)) == ra


def content_gcd(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
