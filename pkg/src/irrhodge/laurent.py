"""Exact Laurent polynomials over the rationals.

Coefficients are :class:`fractions.Fraction` (always reduced, positive
denominator).  Exponent vectors are plain tuples of ints and may contain
negative entries.  Terms are stored in descending graded-lex order, which is
also the print order.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence

from .errors import ExpressionSyntaxError, UnknownVariable

Rational = Fraction
Exponent = tuple  # tuple[int, ...]

DEFAULT_VARS = ("x", "y", "z", "w")


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)) or isinstance(value, _RationalABC):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rational_str(q) -> str:
    """Serialize a rational as "p/q" or "p"."""
    return str(Fraction(q))


def grlex_key(m: Sequence[int]):
    return (sum(m), tuple(m))


class LaurentPolynomial:
    """Immutable finite sum ``sum c_m x^m`` with ``m`` in Z^n."""

    __slots__ = ("_n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Sequence[int], object] | Iterable = ()):
        if n < 0:
            raise ValueError("arity must be nonnegative")
        acc: dict[tuple, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for m, c in items:
            m = tuple(int(a) for a in m)
            if len(m) != n:
                raise ValueError(f"exponent {m} does not have arity {n}")
            c = as_rational(c)
            acc[m] = acc.get(m, 0) + c
        ordered = sorted(((m, c) for m, c in acc.items() if c != 0),
                         key=lambda t: grlex_key(t[0]), reverse=True)
        self._n = n
        self._terms = tuple(ordered)
        self._hash = None

    @classmethod
    def _from_dict(cls, n, d):
        # trusted constructor: d has no zero coefficients
        obj = object.__new__(cls)
        obj._n = n
        obj._terms = tuple(sorted(d.items(), key=lambda t: grlex_key(t[0]), reverse=True))
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, n: int) -> "LaurentPolynomial":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c) -> "LaurentPolynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def monomial(cls, m: Sequence[int], c=1) -> "LaurentPolynomial":
        return cls(len(m), {tuple(m): c})

    @classmethod
    def variable(cls, n: int, i: int) -> "LaurentPolynomial":
        m = [0] * n
        m[i] = 1
        return cls(n, {tuple(m): 1})

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> tuple:
        """Tuple of ``(exponent, coefficient)`` pairs in descending grlex order."""
        return self._terms

    def as_dict(self) -> dict:
        return dict(self._terms)

    def support(self) -> list:
        return [m for m, _ in self._terms]

    def coefficient(self, m: Sequence[int]) -> Fraction:
        return dict(self._terms).get(tuple(m), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m, _ in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self._n == other._n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPolynomial.constant(self._n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._n, self._terms))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            if other._n != self._n:
                raise ValueError("arity mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPolynomial.constant(self._n, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d = dict(self._terms)
        for m, c in other._terms:
            s = d.get(m, 0) + c
            if s:
                d[m] = s
            else:
                d.pop(m, None)
        return LaurentPolynomial._from_dict(self._n, d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._from_dict(self._n, {m: -c for m, c in self._terms})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        d: dict = {}
        for m1, c1 in self._terms:
            for m2, c2 in other._terms:
                m = tuple(a + b for a, b in zip(m1, m2))
                d[m] = d.get(m, 0) + c1 * c2
        return LaurentPolynomial._from_dict(self._n, {m: c for m, c in d.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials can be raised to negative powers")
            (m, c), = self._terms
            return LaurentPolynomial(self._n, {tuple(a * k for a in m): Fraction(1) / c ** (-k)})
        result = LaurentPolynomial.constant(self._n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "LaurentPolynomial":
        c = as_rational(c)
        if c == 0:
            return LaurentPolynomial.zero(self._n)
        return LaurentPolynomial._from_dict(self._n, {m: c * a for m, a in self._terms})

    def shift(self, m: Sequence[int]) -> "LaurentPolynomial":
        """Multiply by the monomial ``x^m``."""
        return LaurentPolynomial._from_dict(
            self._n, {tuple(a + b for a, b in zip(e, m)): c for e, c in self._terms})

    def min_exponents(self) -> tuple:
        if not self._terms:
            return (0,) * self._n
        return tuple(min(m[i] for m, _ in self._terms) for i in range(self._n))

    def clear_denominators(self) -> tuple["LaurentPolynomial", tuple]:
        """Return ``(x^s * self, s)`` with ``s`` the smallest shift making all exponents >= 0."""
        lo = self.min_exponents()
        s = tuple(-a if a < 0 else 0 for a in lo)
        return self.shift(s), s

    def transform(self, matrix: Sequence[Sequence[int]]) -> "LaurentPolynomial":
        """Monomial change of variables: exponent ``m`` becomes ``matrix @ m``."""
        d = {}
        for m, c in self._terms:
            new = tuple(sum(row[j] * m[j] for j in range(self._n)) for row in matrix)
            d[new] = d.get(new, 0) + c
        return LaurentPolynomial(len(matrix), d)

    def to_string(self, names: Sequence[str] | None = None) -> str:
        return format_laurent(self, names)

    def __str__(self):
        return format_laurent(self)

    def __repr__(self):
        return f"LaurentPolynomial({self._n}, {format_laurent(self)!r})"


def log_derivative(f: LaurentPolynomial, i: int) -> LaurentPolynomial:
    """``x_i * df/dx_i``; ``i`` is 0-based."""
    if not 0 <= i < f.n:
        raise IndexError(f"variable index {i} out of range for arity {f.n}")
    return LaurentPolynomial._from_dict(f.n, {m: c * m[i] for m, c in f.terms if m[i]})


def default_names(n: int) -> tuple:
    if n <= len(DEFAULT_VARS):
        return DEFAULT_VARS[:n]
    return tuple(f"x{i + 1}" for i in range(n))


def _format_monomial(m, names):
    parts = []
    for a, name in zip(m, names):
        if a == 1:
            parts.append(name)
        elif a:
            parts.append(f"{name}^{a}")
    return "*".join(parts)


def format_laurent(f: LaurentPolynomial, names: Sequence[str] | None = None) -> str:
    """Render in the expression grammar accepted by :func:`parse_laurent`."""
    names = tuple(names) if names is not None else default_names(f.n)
    if len(names) != f.n:
        raise ValueError("wrong number of variable names")
    if f.is_zero():
        return "0"
    out = []
    for k, (m, c) in enumerate(f.terms):
        mono = _format_monomial(m, names)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(body if sign == "+" else "-" + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# -- parser ----------------------------------------------------------------
#
# expr    := ["+"|"-"] term (("+"|"-") term)*
# term    := factor (("*"|"/") factor)*
# factor  := atom ["^" ["-"|"+"] INT]
# atom    := INT | NAME | "(" expr ")"
#
# Division is allowed only by a nonzero monomial (after evaluation), and
# negative powers only of monomials.

def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
        elif ch == "−":  # unicode minus
            tokens.append(("-", "-", i))
            i += 1
        else:
            raise ExpressionSyntaxError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, names):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.names = {name: k for k, name in enumerate(names)}
        self.n = len(names)

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            what = tok[1] or "end of input"
            raise ExpressionSyntaxError(f"expected {kind!r}, found {what!r}", tok[2])
        self.pos += 1
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExpressionSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return value

    def expr(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        value = self.term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, where = self.take()
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ExpressionSyntaxError("division by zero", where)
                if not rhs.is_monomial():
                    raise ExpressionSyntaxError("can only divide by a monomial", where)
                value = value * rhs ** -1
        return value

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "^":
            _, _, where = self.take()
            sign = 1
            if self.peek()[0] in "+-":
                sign = -1 if self.take()[0] == "-" else 1
            k = int(self.take("int")[1]) * sign
            if k < 0 and not base.is_monomial():
                raise ExpressionSyntaxError("negative power of a non-monomial", where)
            base = base ** k
        return base

    def atom(self):
        kind, text, where = self.peek()
        if kind == "int":
            self.take()
            return LaurentPolynomial.constant(self.n, int(text))
        if kind == "name":
            self.take()
            if text not in self.names:
                raise UnknownVariable(f"unknown variable {text!r}", where)
            return LaurentPolynomial.variable(self.n, self.names[text])
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        raise ExpressionSyntaxError(f"unexpected {text or 'end of input'!r}", where)


def parse_laurent(text: str, vars: Sequence[str] | None = None) -> LaurentPolynomial:
    """Parse ``text`` into a Laurent polynomial in the ordered variables ``vars``.

    >>> str(parse_laurent("x + y + x^-1*y^-1", ["x", "y"]))
    'x + y + x^-1*y^-1'
    """
    if vars is None:
        vars = infer_variables(text)
    vars = tuple(vars)
    if len(set(vars)) != len(vars):
        raise ValueError("duplicate variable names")
    return _Parser(text, vars).parse()


def infer_variables(text: str) -> tuple:
    """Variable names occurring in ``text``; x, y, z, w first, then alphabetical."""
    seen = {tok[1] for tok in _tokenize(text) if tok[0] == "name"}
    preferred = [v for v in DEFAULT_VARS if v in seen]
    return tuple(preferred + sorted(seen - set(preferred)))
