"""Irregular Hodge numbers, Kontsevich bundles and the toric mirror catalog.

In the tame torus case everything here is a function of the spectrum: a
spectral value ``gamma = alpha + q`` with ``alpha`` in [0, 1) contributes
``h_alpha^{n-q, q}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, comb, floor
from typing import Mapping, Sequence

from .errors import SpectrumOutOfRange, UnknownCatalogEntry
from .laurent import LaurentPolynomial, as_rational, rational_str
from .spectrum import SpectrumTable


def frac(q: Fraction) -> Fraction:
    return q - floor(q)


@dataclass(frozen=True)
class IrregularHodgeTable:
    """Nonzero irregular Hodge numbers keyed by ``(alpha, p, q)``."""

    n: int
    entries: Mapping

    def __post_init__(self):
        for (alpha, p, q), h in self.entries.items():
            if not (0 <= alpha < 1 and p >= 0 and q >= 0 and p + q == self.n and h > 0):
                raise ValueError(f"invalid Hodge entry h_{alpha}^{{{p},{q}}} = {h}")

    def get(self, alpha, p: int, q: int) -> int:
        return self.entries.get((as_rational(alpha), p, q), 0)

    @property
    def alphas(self) -> list:
        return sorted({a for a, _, _ in self.entries})

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def to_json(self) -> list:
        return [{"alpha": rational_str(a), "p": p, "q": q, "h": h}
                for (a, p, q), h in sorted(self.entries.items(), key=lambda kv: (kv[0][0], -kv[0][1]))]


def irregular_hodge_numbers(S: SpectrumTable) -> IrregularHodgeTable:
    entries = {}
    for gamma, delta in S.entries:
        if not 0 <= gamma <= S.n:
            raise SpectrumOutOfRange(f"spectral value {gamma} lies outside [0, {S.n}]")
        q = floor(gamma)
        alpha = gamma - q
        key = (alpha, S.n - q, q)
        entries[key] = entries.get(key, 0) + delta
    return IrregularHodgeTable(S.n, entries)


@dataclass(frozen=True)
class BundleType:
    """Splitting type ``sum O(p)^mult`` of a bundle on the projective line."""

    k: int
    alpha: Fraction
    summands: tuple  # ((slope, multiplicity), ...) by increasing slope

    @property
    def rank(self) -> int:
        return sum(m for _, m in self.summands)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "alpha": rational_str(self.alpha),
            "summands": [[p, m] for p, m in self.summands],
            "rank": self.rank,
            "degree": bundle_degree(self),
            "hn_jumps": [[p, r] for p, r in hn_jumps(self)],
        }

    def __str__(self):
        if not self.summands:
            return "0"
        parts = []
        for p, m in self.summands:
            o = "O" if p == 0 else f"O({p})"
            parts.append(o if m == 1 else f"{o}^{m}")
        return " + ".join(parts)


def kontsevich_bundle_type(T: IrregularHodgeTable, k: int, alpha) -> BundleType:
    alpha = as_rational(alpha)
    summands = sorted((p, h) for (a, p, q), h in T.entries.items() if a == alpha and p + q == k)
    return BundleType(k, alpha, tuple(summands))


def bundle_degree(B: BundleType) -> int:
    return sum(p * m for p, m in B.summands)


def hn_jumps(B: BundleType) -> list:
    """``(slope, rank of the sum of summands with slope >= it)`` from the top slope down."""
    out = []
    total = 0
    for p, m in sorted(B.summands, reverse=True):
        total += m
        out.append((p, total))
    return out


def nearby_cycle_dimension(S: SpectrumTable, alpha) -> int:
    alpha = as_rational(alpha)
    return sum(d for g, d in S.entries if frac(g) == alpha)


def residue_classes(S: SpectrumTable, alpha) -> list:
    """Predicted residue eigenvalue classes on the ``V_alpha`` lattice.

    Each spectral class ``a = frac(gamma)`` gives the representative of
    ``-a`` mod 1 lying in ``[-alpha, 1 - alpha)``, with multiplicity the
    nearby-cycle dimension of ``a``.
    """
    alpha = as_rational(alpha)
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0, 1)")
    out = {}
    for a in sorted({frac(g) for g, _ in S.entries}):
        r = -a + ceil(-alpha + a)
        out[r] = out.get(r, 0) + nearby_cycle_dimension(S, a)
    return sorted(out.items())


# -- toric catalog ---------------------------------------------------------

@dataclass(frozen=True)
class ToricFano:
    """Smooth complete toric variety given by its fan (rays and maximal cones)."""

    name: str
    rays: tuple
    max_cones: tuple

    @property
    def dim(self) -> int:
        return len(self.rays[0])

    def mirror(self) -> LaurentPolynomial:
        """Sum of the monomials ``x^ray``: the mirror Laurent polynomial."""
        return LaurentPolynomial(self.dim, {r: 1 for r in self.rays})


CATALOG = {
    "P1": ToricFano("P1", ((1,), (-1,)), ((0,), (1,))),
    "P2": ToricFano("P2", ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (2, 0))),
    "P1xP1": ToricFano("P1xP1", ((1, 0), (0, 1), (-1, 0), (0, -1)),
                       ((0, 1), (1, 2), (2, 3), (3, 0))),
}

_ALIASES = {"p1": "P1", "p^1": "P1", "p2": "P2", "p^2": "P2",
            "p1xp1": "P1xP1", "p1*p1": "P1xP1", "p^1xp^1": "P1xP1"}


def catalog_entry(name: str) -> ToricFano:
    key = _ALIASES.get(name.replace(" ", "").lower(), name)
    if key not in CATALOG:
        raise UnknownCatalogEntry(f"unknown catalog entry {name!r}; known: {sorted(CATALOG)}")
    return CATALOG[key]


def cone_counts(Y: ToricFano) -> list:
    """``d_k`` = number of k-dimensional cones of a simplicial fan, k = 0..n."""
    cones = set()
    for cone in Y.max_cones:
        for k in range(len(cone) + 1):
            cones.update(frozenset(c) for c in combinations(cone, k))
    counts = [0] * (Y.dim + 1)
    for c in cones:
        counts[len(c)] += 1
    return counts


def toric_hodge_numbers(Y: ToricFano) -> list:
    """``[h^{0,0}, h^{1,1}, ..., h^{n,n}]`` from the cone counts of the fan."""
    n = Y.dim
    d = cone_counts(Y)
    return [sum((-1) ** (i - p) * comb(i, p) * d[n - i] for i in range(p, n + 1))
            for p in range(n + 1)]


@dataclass(frozen=True)
class MirrorReport:
    fano: str
    expected: tuple
    observed: tuple
    stray_alphas: tuple

    @property
    def match(self) -> bool:
        return self.expected == self.observed and not self.stray_alphas

    def to_json(self) -> dict:
        return {
            "fano": self.fano,
            "expected": list(self.expected),
            "observed": list(self.observed),
            "non_integral_alphas": [rational_str(a) for a in self.stray_alphas],
            "match": self.match,
        }


def mirror_check(T: IrregularHodgeTable, fano: str | Sequence[int]) -> MirrorReport:
    """Compare ``h^{q,q}(Y)`` with ``h_0^{n-q,q}(f)`` for q = 0..dim Y."""
    if isinstance(fano, str):
        Y = catalog_entry(fano)
        name, expected = Y.name, tuple(toric_hodge_numbers(Y))
    else:
        name, expected = "explicit", tuple(int(h) for h in fano)
    observed = tuple(T.get(0, T.n - q, q) for q in range(T.n + 1))
    stray = tuple(a for a in T.alphas if a != 0)
    return MirrorReport(name, expected, observed, stray)
