"""Exact model of the rescaled exponential module in a normal-crossing chart.

The chart has coordinates ``x_1..x_l``, the function is ``f = x^-e`` and a
section ``sum c x^m v^j . E`` of ``O(*P)[v] . E`` (``E = exp(v f)``) is a
:class:`ChartSection`.  The Euler operator acts by

    v d/dv (x^m v^j E) = j x^m v^j E + x^(m-e) v^(j+1) E,

so it preserves the weight ``m + j e``.  Within a weight ``w`` a section is
``x^w R(t) E`` with ``t = v x^-e`` and ``R`` a polynomial, and
``P(v d/dv) x^w E = x^w Q(t) E`` where ``Q = pq_convert(P)``.  All the
identities verified here decompose weight by weight into small exact
linear-algebra problems on coefficient vectors of such ``R``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from itertools import product
from math import ceil, floor
from typing import Iterable, Mapping, Sequence

from .errors import NotRepresentable, TruncationOverflow
from .laurent import LaurentPolynomial, as_rational, rational_str
from . import linalg


@dataclass(frozen=True)
class Truncation:
    """Box of monomials ``x^m v^j``: ``x_min <= m_i <= x_max``, ``j <= v_max``.

    ``op_max`` caps the degree of the Euler-operator polynomials used as
    generators of the V-filtration.
    """

    x_min: int = -8
    x_max: int = 2
    v_max: int = 6
    op_max: int = 6

    def __post_init__(self):
        if self.x_min > self.x_max or self.v_max < 0 or self.op_max < 0:
            raise ValueError(f"empty truncation box {self}")

    def contains(self, m: Sequence[int], j: int) -> bool:
        return 0 <= j <= self.v_max and all(self.x_min <= a <= self.x_max for a in m)


@dataclass(frozen=True)
class ChartSpec:
    e: tuple
    truncation: Truncation = field(default_factory=Truncation)

    def __post_init__(self):
        object.__setattr__(self, "e", tuple(int(a) for a in self.e))
        if not self.e or any(a < 1 for a in self.e):
            raise ValueError("chart multiplicities must be positive integers")

    @property
    def ell(self) -> int:
        return len(self.e)

    def box(self) -> Iterable:
        t = self.truncation
        for m in product(range(t.x_min, t.x_max + 1), repeat=self.ell):
            for j in range(t.v_max + 1):
                yield m, j


# -- operator polynomials ---------------------------------------------------

class OperatorPolynomial:
    """Polynomial in ``s`` whose coefficients are polynomials in ``hbar``."""

    __slots__ = ("poly",)

    def __init__(self, poly: LaurentPolynomial):
        if poly.n != 2 or any(a < 0 for m in poly.support() for a in m):
            raise ValueError("operator polynomials live in Q[s, hbar]")
        self.poly = poly

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "OperatorPolynomial":
        """From ``[c_0, c_1, ...]`` meaning ``sum c_k s^k`` (no hbar)."""
        return cls(LaurentPolynomial(2, {(k, 0): c for k, c in enumerate(coeffs)}))

    @classmethod
    def one(cls) -> "OperatorPolynomial":
        return cls.from_coeffs([1])

    @classmethod
    def linear(cls, shift, hbar_shift=0) -> "OperatorPolynomial":
        """``s + shift + hbar_shift * hbar``."""
        return cls(LaurentPolynomial(2, {(1, 0): 1, (0, 0): shift, (0, 1): hbar_shift}))

    @property
    def degree(self) -> int:
        return max((m[0] for m in self.poly.support()), default=-1)

    def leading_coefficient(self) -> LaurentPolynomial:
        d = self.degree
        return LaurentPolynomial(1, {(m[1],): c for m, c in self.poly.terms if m[0] == d})

    def is_monic(self) -> bool:
        return self.leading_coefficient() == LaurentPolynomial.constant(1, 1)

    @property
    def has_hbar(self) -> bool:
        return any(m[1] for m in self.poly.support())

    def coeffs(self) -> list:
        if self.has_hbar:
            raise ValueError("operator polynomial depends on hbar")
        out = [Fraction(0)] * (self.degree + 1)
        for m, c in self.poly.terms:
            out[m[0]] = c
        return out

    def at_hbar(self, value) -> "OperatorPolynomial":
        value = as_rational(value)
        d = {}
        for (i, k), c in self.poly.terms:
            d[(i, 0)] = d.get((i, 0), 0) + c * value ** k
        return OperatorPolynomial(LaurentPolynomial(2, d))

    def __mul__(self, other):
        return OperatorPolynomial(self.poly * other.poly)

    def __add__(self, other):
        return OperatorPolynomial(self.poly + other.poly)

    def __pow__(self, k: int):
        return OperatorPolynomial(self.poly ** k)

    def __eq__(self, other):
        return isinstance(other, OperatorPolynomial) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __str__(self):
        return self.poly.to_string(("s", "hbar"))

    __repr__ = __str__


def p_poly(a: Sequence[int], e: Sequence[int], beta) -> OperatorPolynomial:
    """``prod_i prod_{k=1}^{a_i} (s + ([beta e_i] + k) / e_i)``."""
    beta = as_rational(beta)
    out = OperatorPolynomial.one()
    for ai, ei in zip(a, e):
        if ai < 0:
            raise ValueError("multi-index must be nonnegative")
        base = floor(beta * ei)
        for k in range(1, ai + 1):
            out = out * OperatorPolynomial.linear(Fraction(base + k, ei))
    return out


def p_poly_lambda(a, lam: int, e, beta) -> OperatorPolynomial:
    """``(s + beta)^lam * p_poly(a, e, beta)``."""
    beta = as_rational(beta)
    return OperatorPolynomial.linear(beta) ** lam * p_poly(a, e, beta)


def p_poly_hbar(a: Sequence[int], e: Sequence[int], alpha, variant: str = "alpha") -> OperatorPolynomial:
    """The hbar-deformed products; ``variant`` is ``"alpha"`` or ``"strict"``."""
    alpha = as_rational(alpha)
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0, 1)")
    out = OperatorPolynomial.one()
    for ai, ei in zip(a, e):
        if variant == "alpha":
            js = [j + floor(alpha * ei) for j in range(1, ai + 1)]
        elif variant == "strict":
            js = [j + ceil(alpha * ei) for j in range(0, ai)]
        else:
            raise ValueError(f"unknown variant {variant!r}")
        for j in js:
            out = out * OperatorPolynomial.linear(0, Fraction(j, ei))
    return out


def _euler_image(coeffs: Sequence) -> list:
    # s^k -> k s^k + s^(k+1)
    out = [Fraction(0)] * (len(coeffs) + 1)
    for k, c in enumerate(coeffs):
        if c:
            out[k] += k * c
            out[k + 1] += c
    return out


def pq_convert(P: OperatorPolynomial, e: Sequence[int] | None = None) -> OperatorPolynomial:
    """The polynomial ``Q`` with ``P(v d/dv) E = Q(v f) E``.

    ``Q = P(T)(1)`` with ``T(s^k) = k s^k + s^(k+1)``; the chart ``e`` does
    not enter, it is accepted for symmetry with the other chart operations.
    """
    p = P.coeffs()
    q = [Fraction(0)] * max(len(p), 1)
    cur = [Fraction(1)]
    for c in p:
        for i, a in enumerate(cur):
            if i >= len(q):
                q.append(Fraction(0))
            q[i] += c * a
        cur = _euler_image(cur)
    return OperatorPolynomial.from_coeffs(q)


# -- sections ---------------------------------------------------------------

class ChartSection:
    """Finite sum ``sum c x^m v^j . E`` keyed by ``(m, j)``."""

    __slots__ = ("ell", "_terms")

    def __init__(self, ell: int, terms: Mapping | Iterable = ()):
        acc = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (m, j), c in items:
            m = tuple(int(a) for a in m)
            if len(m) != ell or j < 0:
                raise ValueError(f"bad chart monomial {(m, j)}")
            key = (m, int(j))
            acc[key] = acc.get(key, 0) + as_rational(c)
        self.ell = ell
        self._terms = tuple(sorted((k, c) for k, c in acc.items() if c))

    @classmethod
    def monomial(cls, m: Sequence[int], j: int = 0, c=1) -> "ChartSection":
        return cls(len(m), {(tuple(m), j): c})

    @property
    def terms(self) -> tuple:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        return isinstance(other, ChartSection) and self.ell == other.ell and self._terms == other._terms

    def __hash__(self):
        return hash((self.ell, self._terms))

    def __add__(self, other):
        return ChartSection(self.ell, list(self._terms) + list(other._terms))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "ChartSection":
        c = as_rational(c)
        return ChartSection(self.ell, [(k, c * a) for k, a in self._terms])

    def times_v(self, k: int = 1) -> "ChartSection":
        return ChartSection(self.ell, [((m, j + k), c) for (m, j), c in self._terms])

    def times_x(self, shift: Sequence[int]) -> "ChartSection":
        return ChartSection(self.ell, [((tuple(a + b for a, b in zip(m, shift)), j), c)
                                       for (m, j), c in self._terms])

    def in_truncation(self, trunc: Truncation) -> bool:
        return all(trunc.contains(m, j) for (m, j), _ in self._terms)

    def to_json(self) -> list:
        return [{"x": list(m), "v": j, "c": rational_str(c)} for (m, j), c in self._terms]

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (m, j), c in self._terms:
            mono = "*".join([f"x{i + 1}^{a}" for i, a in enumerate(m) if a] + ([f"v^{j}"] if j else []))
            parts.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) + " . E"

    __repr__ = __str__


def _check(sec: ChartSection, spec: ChartSpec) -> ChartSection:
    for (m, j), _ in sec.terms:
        if not spec.truncation.contains(m, j):
            raise TruncationOverflow(f"monomial x^{m} v^{j} leaves the truncation box {spec.truncation}")
    return sec


def vpartial_apply(sec: ChartSection, spec: ChartSpec) -> ChartSection:
    """Apply the Euler operator ``v d/dv``."""
    out = []
    for (m, j), c in sec.terms:
        if j:
            out.append(((m, j), j * c))
        out.append(((tuple(a - b for a, b in zip(m, spec.e)), j + 1), c))
    return _check(ChartSection(sec.ell, out), spec)


def apply_operator(P: OperatorPolynomial, sec: ChartSection, spec: ChartSpec) -> ChartSection:
    """``P(v d/dv) sec`` by repeated application of :func:`vpartial_apply`."""
    out = ChartSection(sec.ell)
    cur = sec
    for k, c in enumerate(P.coeffs()):
        if k:
            cur = vpartial_apply(cur, spec)
        if c:
            out = out + cur.scale(c)
    return out


def q_section(Q: OperatorPolynomial, m: Sequence[int], spec: ChartSpec) -> ChartSection:
    """``x^m Q(v f) E``."""
    terms = [((tuple(a - k * b for a, b in zip(m, spec.e)), k), c) for k, c in enumerate(Q.coeffs())]
    return _check(ChartSection(len(m), terms), spec)


# -- weight decomposition ----------------------------------------------------

def weight(m: Sequence[int], j: int, e: Sequence[int]) -> tuple:
    return tuple(a + j * b for a, b in zip(m, e))


def by_weight(sec: ChartSection, e: Sequence[int]) -> dict:
    """``{w: [R_0, R_1, ...]}`` with ``sec = sum_w x^w R_w(v x^-e) E``."""
    out: dict = {}
    for (m, j), c in sec.terms:
        R = out.setdefault(weight(m, j, e), [])
        R.extend([Fraction(0)] * (j + 1 - len(R)))
        R[j] = c
    return out


def from_weight(w: Sequence[int], R: Sequence, e: Sequence[int]) -> ChartSection:
    return ChartSection(len(w), [((tuple(a - j * b for a, b in zip(w, e)), j), c)
                                 for j, c in enumerate(R) if c])


def v_base(beta, e) -> tuple:
    """Exponent ``-[beta e] - 1`` of the leading generator of ``V_beta``."""
    beta = as_rational(beta)
    return tuple(-floor(beta * a) - 1 for a in e)


def weight_indices(w: Sequence[int], beta, e) -> tuple:
    """The unique ``(a, c)`` with ``x^c x^base x^-a = x^w`` and ``c_i a_i = 0``."""
    base = v_base(beta, e)
    a = tuple(max(0, b - x) for b, x in zip(base, w))
    c = tuple(max(0, x - b) for b, x in zip(base, w))
    return a, c


@lru_cache(maxsize=None)
def _v_columns(a: tuple, beta: Fraction, e: tuple, max_degree: int) -> tuple:
    """``((lam, Phi(P_{a,lam,beta})), ...)`` for all ``|a| + lam <= max_degree``."""
    return tuple((lam, tuple(pq_convert(p_poly_lambda(a, lam, e, beta)).coeffs()))
                 for lam in range(max_degree - sum(a) + 1))


def _pad(R, length):
    return list(R) + [Fraction(0)] * (length - len(R))


def _decompose_index(a, R, beta, e, op_max) -> dict:
    """``{lam: h}`` with ``R = sum h Phi(P_{a,lam,beta})``, or NotRepresentable."""
    R = list(R)
    while R and not R[-1]:
        R.pop()
    if not R:
        return {}
    if len(R) - 1 > op_max:
        raise TruncationOverflow(f"degree {len(R) - 1} exceeds operator bound {op_max}")
    cols = _v_columns(a, beta, e, op_max)
    length = op_max + 1
    sol = linalg.solve([_pad(col, length) for _, col in cols], _pad(R, length)) if cols else None
    if sol is None:
        raise NotRepresentable(f"component is not in V_{beta} within the truncation")
    return {lam: h for (lam, _), h in zip(cols, sol) if h}


def decompose_weight(w, R, beta, spec: ChartSpec) -> dict:
    """Solve ``R = sum_lam h_lam Phi(P_{a,lam,beta})`` in weight ``w``; ``{lam: h_lam}``."""
    a, _ = weight_indices(w, beta, spec.e)
    try:
        return _decompose_index(a, R, as_rational(beta), spec.e, spec.truncation.op_max)
    except NotRepresentable:
        raise NotRepresentable(f"weight-{tuple(w)} component is not in V_{beta} within the truncation") from None


def decompose_Vbeta(sec: ChartSection, beta, spec: ChartSpec) -> dict:
    """Coefficients ``{(a, lam): {c: h_c}}`` of the unique V_beta decomposition.

    ``h = sum_c h_c x^c`` only involves the variables ``x_i`` with ``a_i = 0``.
    """
    beta = as_rational(beta)
    if beta < 0:
        raise ValueError("decompositions are defined for beta >= 0")
    out: dict = {}
    for w, R in sorted(by_weight(sec, spec.e).items()):
        a, c = weight_indices(w, beta, spec.e)
        for lam, h in decompose_weight(w, R, beta, spec).items():
            out.setdefault((a, lam), {})[c] = h
    return out


def reexpand(coeffs: Mapping, beta, spec: ChartSpec) -> ChartSection:
    """Inverse of :func:`decompose_Vbeta`."""
    base = v_base(beta, spec.e)
    out = ChartSection(spec.ell)
    for (a, lam), h in coeffs.items():
        Q = pq_convert(p_poly_lambda(a, lam, spec.e, beta))
        for c, coeff in h.items():
            if any(ci and ai for ci, ai in zip(c, a)):
                raise ValueError(f"coefficient of index {a} depends on a variable outside I(a)")
            m = tuple(ci + bi - ai for ci, bi, ai in zip(c, base, a))
            out = out + q_section(Q, m, spec).scale(coeff)
    return out


def grv_threshold(beta, e, c=None) -> int:
    """Least ``lam`` for which a generator lies in ``V_<beta``.

    With ``c=None`` (or ``c = 0``) this is the stated rule: the number of
    ``i`` with ``beta e_i`` integral, or ``l + 1`` when ``beta = 0``.  For a
    term ``x^c`` of ``h`` with ``c_i > 0`` the direction ``i`` drops out of
    the count, since that term already lies in a smaller V-step along
    ``x_i = 0``.
    """
    beta = as_rational(beta)
    c = c or (0,) * len(e)
    count = sum(1 for ei, ci in zip(e, c) if (beta * ei).denominator == 1 and ci == 0)
    return count + 1 if beta == 0 else count


def in_V_strictly_less(coeffs: Mapping, beta, e) -> bool:
    """Membership in ``V_<beta`` read off the decomposition coefficients."""
    for (a, lam), h in coeffs.items():
        for c, val in h.items():
            if val and lam < grv_threshold(beta, e, c):
                return False
    return True


def previous_jump(beta, e) -> Fraction:
    """Largest ``b < beta`` at which ``V_b`` can change (some ``b e_i`` integral)."""
    beta = as_rational(beta)
    if beta <= 0:
        raise ValueError("previous_jump needs beta > 0")
    return max(Fraction(ceil(beta * a) - 1, a) for a in e)


def in_V_strictly_less_linear(sec: ChartSection, beta, spec: ChartSpec) -> bool:
    """Membership in ``V_<beta`` decided by solving linear systems.

    For ``beta > 0`` this is ``V_b`` at the previous jump ``b``; for
    ``beta = 0`` it is ``v V_b`` with ``b`` the last jump below 1.
    """
    beta = as_rational(beta)
    if beta == 0:
        if any(j == 0 for (_, j), _ in sec.terms):
            return False
        lower = ChartSection(sec.ell, [((m, j - 1), c) for (m, j), c in sec.terms])
        target, b = lower, previous_jump(1, spec.e)
    else:
        target, b = sec, previous_jump(beta, spec.e)
    try:
        decompose_Vbeta(target, b, spec)
    except NotRepresentable:
        return False
    return True


# -- precision lemma ---------------------------------------------------------

def plus_norm(a: Sequence[int]) -> int:
    return sum(max(x, 0) for x in a)


def precision_lemma_check(a: Sequence[int], e: Sequence[int], k: int) -> bool:
    """``|a - (k - j) e|_+ <= j`` for every ``0 <= j <= k``."""
    return all(plus_norm([x - (k - j) * y for x, y in zip(a, e)]) <= j for j in range(k + 1))


# -- the two filtrations -------------------------------------------------------

def _f_weight_space(w, alpha, p, e) -> list:
    """Degrees ``j`` with ``x^(w - j e) v^j`` in ``F_{alpha+p}``."""
    if p < 0:
        return []
    twist = [floor((alpha + p) * b) for b in e]
    out = []
    j = 0
    while True:
        m = [x - j * b for x, b in zip(w, e)]
        deficit = sum(max(0, -mi - ti - 1) for mi, ti in zip(m, twist))
        if deficit > p and j >= p:
            # deficit only grows with j from here on
            return out
        if deficit <= min(p, j):
            out.append(j)
        j += 1


def _gk_cap_v(w, k, beta, spec: ChartSpec) -> list:
    """Basis (as t-coefficient vectors) of ``G_k cap V_beta`` in weight ``w``."""
    if k < 0:
        return []
    if k > spec.truncation.op_max:
        raise TruncationOverflow(f"G_{k} needs operator degree {k} > {spec.truncation.op_max}")
    a, _ = weight_indices(w, beta, spec.e)
    return _gk_cap_index(a, k, as_rational(beta), spec.e, spec.truncation.op_max)


@lru_cache(maxsize=None)
def _gk_cap_index(a, k, beta, e, op_max) -> list:
    # only the index a matters: within a weight the t-coordinate model is the same
    cols = [col for _, col in _v_columns(a, beta, e, op_max)]
    if not cols:
        return []
    length = op_max + 1
    cols = [_pad(col, length) for col in cols]
    # combinations whose coefficients above degree k vanish
    high_rows = [[col[d] for col in cols] for d in range(k + 1, length)]
    kernel = linalg.nullspace(high_rows) if high_rows else [
        [Fraction(int(i == j)) for j in range(len(cols))] for i in range(len(cols))]
    out = []
    for x in kernel:
        vec = tuple(sum((xi * col[d] for xi, col in zip(x, cols)), Fraction(0)) for d in range(k + 1))
        if any(vec):
            # cross-check: G_k cap V_beta is spanned by generators with |a| + lam <= k
            if any(sum(a) + lam > k for lam in _decompose_index(a, vec, beta, e, op_max)):
                raise AssertionError(f"G_{k} criterion fails for index {a}")
            out.append(vec)
    return out


def _f_prime_weight_space(w, alpha, p, spec: ChartSpec) -> list:
    """Spanning vectors of ``F'_{alpha+p}`` in weight ``w``.

    ``F' = C[v](G_p cap V_alpha) + sum_{j=1}^p G_{p-j} cap V_{alpha+j}``.
    """
    if p < 0:
        return []
    e = spec.e
    vecs = []
    for j in range(1, p + 1):
        vecs.extend(_gk_cap_v(w, p - j, alpha + j, spec))
    i = 0
    while True:
        wi = tuple(x - i * b for x, b in zip(w, e))
        a, _ = weight_indices(wi, alpha, e)
        if sum(a) > p:
            break
        for vec in _gk_cap_v(wi, p, alpha, spec):
            vecs.append([Fraction(0)] * i + list(vec))
        i += 1
    return vecs


@dataclass
class FiltrationComparison:
    alpha: Fraction
    p: int
    weights_checked: int
    total_dimension: int
    mismatch: tuple | None = None

    @property
    def equal(self) -> bool:
        return self.mismatch is None

    def to_json(self) -> dict:
        out = {"alpha": rational_str(self.alpha), "p": self.p, "equal": self.equal,
               "weights_checked": self.weights_checked, "dimension": self.total_dimension}
        if self.mismatch is not None:
            w, f_dim, fp_dim = self.mismatch
            out["mismatch"] = {"weight": list(w), "dim_F": f_dim, "dim_F_prime": fp_dim}
        return out


def compare_filtrations(spec: ChartSpec, alpha, p: int) -> FiltrationComparison:
    """Compare ``F_{alpha+p}`` with ``F'_{alpha+p}`` weight by weight on the box."""
    alpha = as_rational(alpha)
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0, 1)")
    result = FiltrationComparison(alpha, p, 0, 0)
    if p < 0:
        return result
    t = spec.truncation
    if p > min(t.op_max, t.v_max):
        raise TruncationOverflow(f"p = {p} exceeds the truncation (operator degree {t.op_max}, v-degree {t.v_max})")
    weights = sorted({weight(m, j, spec.e) for m, j in spec.box()})
    for w in weights:
        f_degrees = _f_weight_space(w, alpha, p, spec.e)
        fp = _f_prime_weight_space(w, alpha, p, spec)
        length = max([d + 1 for d in f_degrees] + [len(v) for v in fp] + [1])
        f_rows = [[Fraction(int(d == j)) for d in range(length)] for j in f_degrees]
        fp_rows = [_pad(v, length) for v in fp]
        result.weights_checked += 1
        result.total_dimension += len(f_rows)
        if not linalg.same_span(f_rows, fp_rows):
            result.mismatch = (w, len(f_rows), linalg.rank(fp_rows))
            return result
    return result


def filtration_compare(spec: ChartSpec, alpha, p: int) -> bool:
    return compare_filtrations(spec, alpha, p).equal
