"""Buchberger Groebner bases over Q, torus saturation and finite quotients.

Polynomials are handled internally as ``{exponent_tuple: coefficient}``
dicts with gmpy2 rationals; everything crossing the module boundary is a
:class:`~irrhodge.laurent.LaurentPolynomial` with Fraction coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import gmpy2

from .errors import InfiniteQuotient, ResourceLimit, SingularMultiplication
from .laurent import LaurentPolynomial
from . import linalg

ORDERS = ("grevlex", "lex")
DEFAULT_BUDGET = 5_000_000

_mpq = gmpy2.mpq


def _to_fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def _grevlex_key(m):
    return (sum(m), tuple(-a for a in reversed(m)))


def _lex_key(m):
    return m


_BASE_KEYS = {"grevlex": _grevlex_key, "lex": _lex_key}


def order_key(order: str, eliminate: int = 0):
    """Sort key for a monomial order; larger key means larger monomial.

    With ``eliminate=k`` the first ``k`` variables form a block that is
    compared first by total degree (an elimination order for them).
    """
    try:
        base = _BASE_KEYS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}; expected one of {ORDERS}") from None
    if eliminate:
        def key(m, _k=eliminate):
            return (sum(m[:_k]), m[:_k], base(m[_k:]))
    else:
        key = base
    cache = {}

    def cached(m):
        v = cache.get(m)
        if v is None:
            v = cache[m] = key(m)
        return v
    return cached


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x >= y else y for x, y in zip(a, b))


def _disjoint(a, b):
    return all(not (x and y) for x, y in zip(a, b))


class _Poly:
    """Monic polynomial with cached leading monomial and tail."""

    __slots__ = ("lm", "tail", "terms")

    def __init__(self, terms: dict, key):
        lm = max(terms, key=key)
        c = terms[lm]
        if c != 1:
            inv = 1 / c
            terms = {m: a * inv for m, a in terms.items()}
        self.terms = terms
        self.lm = lm
        self.tail = [(m, a) for m, a in terms.items() if m != lm]


class _Reducer:
    def __init__(self, key, budget):
        self.key = key
        self.budget = budget
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise ResourceLimit(f"Groebner computation exceeded its budget of {self.budget} steps")

    def reduce(self, p: dict, G: Sequence[_Poly], full: bool = True) -> dict:
        """Remainder of ``p`` on division by ``G`` (``full=False``: only the head)."""
        key = self.key
        p = dict(p)
        r = {}
        while p:
            lm = max(p, key=key)
            c = p[lm]
            for g in G:
                if _divides(g.lm, lm):
                    self.tick()
                    del p[lm]
                    shift = tuple(a - b for a, b in zip(lm, g.lm))
                    for m, a in g.tail:
                        mm = tuple(x + y for x, y in zip(m, shift))
                        v = p.get(mm, 0) - c * a
                        if v:
                            p[mm] = v
                        else:
                            p.pop(mm, None)
                    break
            else:
                if not full:
                    r.update(p)
                    return r
                r[lm] = c
                del p[lm]
        return r


def _spoly(f: _Poly, g: _Poly) -> dict:
    L = _lcm(f.lm, g.lm)
    sf = tuple(a - b for a, b in zip(L, f.lm))
    sg = tuple(a - b for a, b in zip(L, g.lm))
    out = {}
    for m, a in f.tail:
        mm = tuple(x + y for x, y in zip(m, sf))
        out[mm] = out.get(mm, 0) + a
    for m, a in g.tail:
        mm = tuple(x + y for x, y in zip(m, sg))
        out[mm] = out.get(mm, 0) - a
    return {m: a for m, a in out.items() if a}


def _buchberger(polys, key, budget) -> list:
    """Reduced Groebner basis (list of _Poly) of the ideal spanned by ``polys``."""
    red = _Reducer(key, budget)
    basis: list[_Poly] = []
    active: list[int] = []
    pairs: set = set()

    def update(h_idx):
        nonlocal active, pairs
        h = basis[h_idx]
        C = [(h_idx, g) for g in active]
        D = []
        while C:
            pair = C.pop()
            g1 = basis[pair[1]]
            L1 = _lcm(h.lm, g1.lm)
            if _disjoint(h.lm, g1.lm) or not any(
                    _divides(_lcm(h.lm, basis[q[1]].lm), L1) for q in C + D):
                D.append(pair)
        E = {(g, h_idx) for _, g in D if not _disjoint(h.lm, basis[g].lm)}
        kept = set()
        for (i, j) in pairs:
            gi, gj = basis[i], basis[j]
            L = _lcm(gi.lm, gj.lm)
            if (_divides(h.lm, L) and _lcm(gi.lm, h.lm) != L and _lcm(h.lm, gj.lm) != L):
                continue
            kept.add((i, j))
        pairs = kept | E
        active = [g for g in active if not _divides(h.lm, basis[g].lm)] + [h_idx]

    for p in polys:
        r = red.reduce(p, [basis[i] for i in active])
        if r:
            basis.append(_Poly(r, key))
            update(len(basis) - 1)

    while pairs:
        pair = min(pairs, key=lambda ij: (key(_lcm(basis[ij[0]].lm, basis[ij[1]].lm)), ij))
        pairs.discard(pair)
        red.tick()  # every processed pair counts against the budget
        s = _spoly(basis[pair[0]], basis[pair[1]])
        if not s:
            continue
        r = red.reduce(s, basis)
        if r:
            basis.append(_Poly(r, key))
            update(len(basis) - 1)

    # minimalize, then interreduce
    G = [basis[i] for i in active]
    G = [g for g in G if not any(h is not g and _divides(h.lm, g.lm) for h in G)]
    G.sort(key=lambda g: key(g.lm))
    out = []
    for i, g in enumerate(G):
        others = G[:i] + G[i + 1:]
        tail = red.reduce(dict(g.tail), others)
        tail[g.lm] = _mpq(1)
        out.append(_Poly(tail, key))
    out.sort(key=lambda g: key(g.lm), reverse=True)
    return out


def _to_internal(f: LaurentPolynomial) -> dict:
    return {m: _mpq(c.numerator, c.denominator) for m, c in f.terms}


def _to_laurent(n: int, d: dict) -> LaurentPolynomial:
    return LaurentPolynomial(n, {m: _to_fraction(c) for m, c in d.items()})


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis; ``elements`` are monic, sorted by decreasing leading monomial."""

    n: int
    order: str
    elements: tuple
    _polys: tuple = field(repr=False, compare=False)

    @property
    def leading_monomials(self) -> list:
        return [g.lm for g in self._polys]

    def is_unit(self) -> bool:
        return len(self._polys) == 1 and not any(self._polys[0].lm)

    def is_zero_ideal(self) -> bool:
        return not self._polys

    def _key(self):
        return order_key(self.order)

    def normal_form(self, f: LaurentPolynomial, budget: int = DEFAULT_BUDGET) -> LaurentPolynomial:
        if any(a < 0 for m in f.support() for a in m):
            raise ValueError("normal_form needs a polynomial with nonnegative exponents")
        red = _Reducer(self._key(), budget)
        return _to_laurent(self.n, red.reduce(_to_internal(f), self._polys))

    def contains(self, f: LaurentPolynomial) -> bool:
        return self.normal_form(f).is_zero()

    def dump(self, names=None) -> str:
        """Debug text: one basis element per line."""
        return "\n".join(g.to_string(names) for g in self.elements)


def _make_basis(n, order, polys) -> GroebnerBasis:
    return GroebnerBasis(n, order, tuple(_to_laurent(n, p.terms) for p in polys), tuple(polys))


def groebner_basis(gens: Sequence[LaurentPolynomial], order: str = "grevlex",
                   budget: int | None = None, n: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by polynomials ``gens``.

    ``n`` is only needed when every generator is zero.
    """
    if n is None:
        n = gens[0].n if gens else 0
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return GroebnerBasis(n, order, (), ())
    for g in gens:
        if any(a < 0 for m in g.support() for a in m):
            raise ValueError("groebner_basis needs polynomial-ring generators")
    key = order_key(order)
    polys = _buchberger([_to_internal(g) for g in gens], key, budget or DEFAULT_BUDGET)
    return _make_basis(n, order, polys)


@dataclass(frozen=True)
class Ideal:
    """Ideal of the Laurent ring given by polynomial-ring generators.

    Each Laurent generator ``g`` is stored as ``x^s * g`` with the smallest
    shift ``s`` making it a polynomial; ``shifts`` records ``s``.
    """

    n: int
    generators: tuple
    shifts: tuple
    basis: GroebnerBasis | None = field(default=None, compare=False)

    @classmethod
    def from_laurent(cls, n: int, gens: Sequence[LaurentPolynomial]) -> "Ideal":
        cleared, shifts = [], []
        for g in gens:
            if g.n != n:
                raise ValueError("arity mismatch")
            if g.is_zero():
                continue
            p, s = g.clear_denominators()
            cleared.append(p)
            shifts.append(s)
        return cls(n, tuple(cleared), tuple(shifts))

    def groebner(self, order: str = "grevlex", budget: int | None = None) -> GroebnerBasis:
        if self.basis is not None and self.basis.order == order:
            return self.basis
        gb = groebner_basis(self.generators, order, budget, n=self.n)
        return GroebnerBasis(self.n, gb.order, gb.elements, gb._polys)

    def is_unit(self) -> bool:
        return self.groebner().is_unit()


def saturate_torus(I: Ideal, order: str = "grevlex", budget: int | None = None) -> Ideal:
    """``I : (x_1 ... x_n)^oo`` by eliminating ``t`` from ``I + (t x_1...x_n - 1)``.

    The returned ideal carries its reduced Groebner basis in ``order``.
    """
    n = I.n
    if not I.generators:
        empty = GroebnerBasis(n, order, (), ())
        return Ideal(n, (), (), empty)
    gens = [{(0,) + m: c for m, c in _to_internal(g).items()} for g in I.generators]
    gens.append({(1,) * (n + 1): _mpq(1), (0,) * (n + 1): _mpq(-1)})
    key = order_key(order, eliminate=1)
    full = _buchberger(gens, key, budget or DEFAULT_BUDGET)
    base_key = order_key(order)
    kept = []
    for g in full:
        if g.lm[0] == 0:
            kept.append(_Poly({m[1:]: c for m, c in g.terms.items()}, base_key))
    kept.sort(key=lambda g: base_key(g.lm), reverse=True)
    gb = _make_basis(n, order, kept)
    return Ideal(n, gb.elements, ((0,) * n,) * len(gb.elements), gb)


@dataclass(frozen=True)
class QuotientRing:
    """Finite-dimensional ``Q[x]/I`` with its standard-monomial basis.

    ``mult_matrices[i][r][c]`` is the coefficient of ``basis[r]`` in the
    normal form of ``x_i * basis[c]``.
    """

    n: int
    basis: tuple
    mult_matrices: tuple
    groebner: GroebnerBasis = field(repr=False, compare=False)
    _inverses: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def index(self, m) -> int:
        return self.basis.index(tuple(m))

    def coordinates(self, f: LaurentPolynomial) -> list:
        """Coordinate vector of the class of a polynomial (nonnegative exponents)."""
        nf = self.groebner.normal_form(f)
        pos = {b: k for k, b in enumerate(self.basis)}
        v = [Fraction(0)] * len(self.basis)
        for m, c in nf.terms:
            v[pos[m]] = c
        return v

    def inverse_matrix(self, i: int):
        if i not in self._inverses:
            try:
                self._inverses[i] = linalg.inverse(self.mult_matrices[i])
            except ZeroDivisionError:
                raise SingularMultiplication(
                    f"multiplication by variable {i} is not invertible in the quotient") from None
        return self._inverses[i]


def _staircase(n, lms):
    bounds = [None] * n
    for m in lms:
        nz = [i for i, a in enumerate(m) if a]
        if len(nz) == 1:
            i = nz[0]
            bounds[i] = m[i] if bounds[i] is None else min(bounds[i], m[i])
    if any(b is None for b in bounds):
        raise InfiniteQuotient("the quotient is infinite-dimensional (no pure power leading term "
                               "for some variable)")
    out = []
    stack = [(0,) * n]
    seen = {stack[0]}
    while stack:
        m = stack.pop()
        if any(_divides(l, m) for l in lms):
            continue
        out.append(m)
        for i in range(n):
            mm = m[:i] + (m[i] + 1,) + m[i + 1:]
            if mm not in seen and mm[i] < bounds[i]:
                seen.add(mm)
                stack.append(mm)
    return out


def quotient_ring(gb: GroebnerBasis) -> QuotientRing:
    n = gb.n
    if gb.is_zero_ideal():
        raise InfiniteQuotient("the zero ideal has an infinite-dimensional quotient")
    if gb.is_unit():
        return QuotientRing(n, (), tuple(() for _ in range(n)), gb)
    key = order_key(gb.order)
    basis = sorted(_staircase(n, gb.leading_monomials), key=key)
    pos = {b: k for k, b in enumerate(basis)}
    red = _Reducer(key, DEFAULT_BUDGET)
    mats = []
    for i in range(n):
        M = [[Fraction(0)] * len(basis) for _ in basis]
        for c, b in enumerate(basis):
            mb = b[:i] + (b[i] + 1,) + b[i + 1:]
            if mb in pos:
                M[pos[mb]][c] = Fraction(1)
                continue
            nf = red.reduce({mb: _mpq(1)}, gb._polys)
            for m, a in nf.items():
                M[pos[m]][c] = _to_fraction(a)
        mats.append(tuple(tuple(row) for row in M))
    return QuotientRing(n, tuple(basis), tuple(mats), gb)


def laurent_class_vector(Q: QuotientRing, m: Sequence[int]) -> list:
    """Coordinates of the class of ``x^m`` (``m`` may be negative) in the quotient."""
    v = [Fraction(int(k == 0)) for k in range(Q.dimension)]
    if Q.dimension == 0:
        return v
    for i, a in enumerate(m):
        M = Q.mult_matrices[i] if a >= 0 else Q.inverse_matrix(i)
        for _ in range(abs(a)):
            v = linalg.matvec(M, v)
    return v
