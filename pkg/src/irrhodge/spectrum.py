"""Jacobian ring, Milnor number and the spectrum at infinity.

The spectrum of a convenient non-degenerate Laurent polynomial ``f`` is read
off the Newton filtration on ``A = Q[x^+-1] / (x_i df/dx_i)``: the step
``N_g A`` is spanned by the classes of monomials of Newton degree ``<= g``,
and ``g`` has multiplicity ``dim N_g A - dim N_<g A``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import Degenerate, IrrHodgeError, NotConvenient
from .groebner import (Ideal, QuotientRing, laurent_class_vector, quotient_ring,
                       saturate_torus)
from .laurent import LaurentPolynomial, as_rational, log_derivative, rational_str
from .linalg import EchelonBasis, matvec
from .newton import is_nondegenerate, newton_degree, newton_polytope


@dataclass(frozen=True)
class SpectrumTable:
    """Spectrum at infinity as sorted ``(gamma, multiplicity)`` pairs."""

    n: int
    entries: tuple

    def __post_init__(self):
        gammas = [g for g, _ in self.entries]
        if any(a >= b for a, b in zip(gammas, gammas[1:])):
            raise ValueError("spectrum values must be strictly increasing")
        if any(d <= 0 for _, d in self.entries):
            raise ValueError("spectral multiplicities must be positive")

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "SpectrumTable":
        acc: dict = {}
        for g, d in pairs:
            g = as_rational(g)
            acc[g] = acc.get(g, 0) + int(d)
        return cls(n, tuple(sorted((g, d) for g, d in acc.items() if d)))

    @property
    def total(self) -> int:
        return sum(d for _, d in self.entries)

    def multiplicity(self, gamma) -> int:
        gamma = as_rational(gamma)
        for g, d in self.entries:
            if g == gamma:
                return d
        return 0

    def values(self) -> list:
        """The spectrum as a sorted multiset of rationals."""
        return [g for g, d in self.entries for _ in range(d)]

    def to_json(self) -> list:
        return [{"gamma": rational_str(g), "delta": d} for g, d in self.entries]


def jacobian_ideal(f: LaurentPolynomial) -> Ideal:
    """The ideal of the log-derivatives ``x_i df/dx_i`` in the Laurent ring."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no Jacobian ideal")
    return Ideal.from_laurent(f.n, [log_derivative(f, i) for i in range(f.n)])


def check_hypotheses(f: LaurentPolynomial, budget: int | None = None) -> None:
    if not newton_polytope(f).is_convenient:
        raise NotConvenient(f"{f} is not convenient: the origin is not interior to its Newton polytope")
    if not is_nondegenerate(f, budget=budget):
        raise Degenerate(f"{f} is degenerate on some face of its Newton polytope")


def jacobian_quotient(f: LaurentPolynomial, order: str = "grevlex",
                      budget: int | None = None) -> QuotientRing:
    sat = saturate_torus(jacobian_ideal(f), order=order, budget=budget)
    return quotient_ring(sat.basis)


def milnor_number(f: LaurentPolynomial, order: str = "grevlex", budget: int | None = None,
                  verify: bool = True) -> int:
    """Dimension of the Jacobian ring of ``f`` over the torus."""
    if verify:
        check_hypotheses(f, budget)
    return jacobian_quotient(f, order, budget).dimension


def newton_filtration_jumps(f: LaurentPolynomial, Q: QuotientRing) -> list:
    """``[(gamma, dim N_gamma - dim N_<gamma)]`` over the candidate degrees.

    Candidates are the Newton degrees of the lattice points of ``n * P``;
    the spectrum lies in ``[0, n]`` so no other monomial contributes a jump.
    """
    P = newton_polytope(f)
    by_degree: dict = {}
    for m in P.lattice_points(scale=f.n):
        by_degree.setdefault(newton_degree(P, m), []).append(m)
    vectors: dict = {}

    def class_vector(m):
        # x^m = x_i * x^(m - e_i): reuse a neighbour's class when available
        if m in vectors:
            return vectors[m]
        for i, a in enumerate(m):
            if a:
                prev = m[:i] + (a - (1 if a > 0 else -1),) + m[i + 1:]
                if prev in vectors:
                    M = Q.mult_matrices[i] if a > 0 else Q.inverse_matrix(i)
                    vectors[m] = matvec(M, vectors[prev])
                    return vectors[m]
        vectors[m] = laurent_class_vector(Q, m)
        return vectors[m]

    span = EchelonBasis(Q.dimension)
    jumps = []
    for gamma in sorted(by_degree):
        before = len(span)
        for m in sorted(by_degree[gamma], key=lambda v: sum(abs(a) for a in v)):
            span.add(class_vector(m))
        if len(span) > before:
            jumps.append((gamma, len(span) - before))
    if len(span) != Q.dimension:
        raise IrrHodgeError(
            f"Newton filtration reached dimension {len(span)} of {Q.dimension}; "
            "the input is probably not convenient and non-degenerate")
    return jumps


def spectrum_at_infinity(f: LaurentPolynomial, order: str = "grevlex",
                         budget: int | None = None, verify: bool = True) -> SpectrumTable:
    if verify:
        check_hypotheses(f, budget)
    Q = jacobian_quotient(f, order, budget)
    return SpectrumTable(f.n, tuple(newton_filtration_jumps(f, Q)))


def check_spectrum_symmetry(S: SpectrumTable) -> bool:
    """Symmetry of the spectrum about ``n/2``."""
    return all(S.multiplicity(S.n - g) == d for g, d in S.entries)


def spectral_multiplicity(S: SpectrumTable, alpha, p: int) -> int:
    """``mu_alpha^n(p)``, i.e. the multiplicity of ``alpha + n - p``."""
    alpha = as_rational(alpha)
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0, 1)")
    return S.multiplicity(alpha + S.n - p)


def spectrum_from_json(n: int, rows: Sequence[dict]) -> SpectrumTable:
    return SpectrumTable.from_pairs(n, [(Fraction(r["gamma"]), r["delta"]) for r in rows])
