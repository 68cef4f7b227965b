"""Newton polytopes of Laurent polynomials in dimension <= 3.

All geometry is done with integer arithmetic.  A full-dimensional polytope is
stored by its vertices and its facet inequalities ``<m, u> <= c`` with ``u``
a primitive integer outward normal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Sequence

from .errors import (ArityLimitExceeded, DegeneratePolytope, EmptyPolynomial,
                     NotConvenient)
from .laurent import LaurentPolynomial, log_derivative, rational_str
from . import linalg

MAX_ARITY = 3


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _primitive(v):
    g = 0
    for a in v:
        g = gcd(g, a)
    return tuple(a // g for a in v) if g else tuple(v)


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _cross2(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _affine_rank(points):
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return linalg.rank([_sub(p, p0) for p in points[1:]])


def _hull2d(points):
    """Andrew's monotone chain; vertices counter-clockwise, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _facets_full(points, n):
    """Facet inequalities (u, c) of a full-dimensional hull of integer points."""
    if n == 1:
        xs = [p[0] for p in points]
        return [((1,), max(xs)), ((-1,), -min(xs))]
    if n == 2:
        ring = _hull2d(points)
        facets = []
        for k in range(len(ring)):
            p, q = ring[k], ring[(k + 1) % len(ring)]
            d = _sub(q, p)
            u = _primitive((d[1], -d[0]))
            facets.append((u, _dot(u, p)))
        return facets
    # n == 3: every facet plane passes through three affinely independent
    # support points; keep the planes with all points on one side.
    pts = sorted(set(points))
    found = {}
    for a, b, c in combinations(pts, 3):
        u = _cross(_sub(b, a), _sub(c, a))
        if u == (0, 0, 0):
            continue
        u = _primitive(u)
        off = _dot(u, a)
        vals = [_dot(u, p) for p in pts]
        if all(v <= off for v in vals):
            found[u] = off
        elif all(v >= off for v in vals):
            found[tuple(-x for x in u)] = -off
    return sorted(found.items())


def _coordinate_projection(points, d):
    """Indices of ``d`` coordinates on which the affine hull projects injectively."""
    n = len(points[0])
    p0 = points[0]
    diffs = [_sub(p, p0) for p in points[1:]]
    for idx in combinations(range(n), d):
        if linalg.rank([[v[i] for i in idx] for v in diffs]) == d:
            return idx
    raise AssertionError("no injective coordinate projection")


@dataclass(frozen=True)
class NewtonPolytope:
    """Convex hull of a finite set of lattice points.

    ``facets`` is empty unless the polytope is full-dimensional.  ``faces``
    lists every nonempty proper face as the sorted tuple of support points
    it contains, smallest faces first.
    """

    n: int
    dim: int
    points: tuple
    vertices: tuple
    facets: tuple
    faces: tuple = field(repr=False)

    @property
    def full_dimensional(self) -> bool:
        return self.dim == self.n

    @property
    def is_convenient(self) -> bool:
        return self.full_dimensional and all(c > 0 for _, c in self.facets)

    def contains(self, m: Sequence[int], scale=1) -> bool:
        """Membership of ``m`` in ``scale * P`` by direct facet evaluation."""
        if not self.full_dimensional:
            raise DegeneratePolytope("membership test needs a full-dimensional polytope")
        return all(_dot(u, m) <= scale * c for u, c in self.facets)

    def lattice_points(self, scale=1) -> list:
        """Integer points of ``scale * P``, sorted."""
        ranges = [range(scale * min(v[i] for v in self.vertices),
                        scale * max(v[i] for v in self.vertices) + 1) for i in range(self.n)]
        return [m for m in product(*ranges) if self.contains(m, scale)]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "dim": self.dim,
            "vertices": [list(v) for v in self.vertices],
            "facets": [{"normal": [rational_str(a) for a in u], "offset": rational_str(c)}
                       for u, c in self.facets],
        }


def _faces_from_facets(points, facets):
    facet_sets = []
    for u, c in facets:
        facet_sets.append(frozenset(p for p in points if _dot(u, p) == c))
    faces = set(facet_sets)
    frontier = set(facet_sets)
    while frontier:
        new = set()
        for f1 in frontier:
            for f2 in facet_sets:
                g = f1 & f2
                if g and g not in faces:
                    new.add(g)
        faces |= new
        frontier = new
    return faces


def _hull(points, n):
    points = tuple(sorted(set(points)))
    dim = _affine_rank(points)
    if dim == n:
        facets = tuple(_facets_full(points, n))
        faces = _faces_from_facets(points, facets)
        vertices = []
        for p in points:
            normals = [u for u, c in facets if _dot(u, p) == c]
            if normals and linalg.rank(normals) == n:
                vertices.append(p)
        return dim, tuple(vertices), facets, faces
    if dim == 0:
        return 0, points, (), set()
    idx = _coordinate_projection(points, dim)
    proj = {p: tuple(p[i] for i in idx) for p in points}
    back = {}
    for p, q in proj.items():
        back.setdefault(q, p)
    _, pverts, _, pfaces = _hull(list(back), dim)
    vertices = tuple(sorted(back[q] for q in pverts))
    faces = {frozenset(back[q] for q in face) for face in pfaces}
    return dim, vertices, (), faces


def newton_polytope(f: LaurentPolynomial) -> NewtonPolytope:
    if f.is_zero():
        raise EmptyPolynomial("the zero polynomial has no Newton polytope")
    if f.n > MAX_ARITY:
        raise ArityLimitExceeded(f"Newton polytopes are supported for n <= {MAX_ARITY}")
    if f.n == 0:
        return NewtonPolytope(0, 0, ((),), ((),), (), ())
    points = tuple(sorted(f.support()))
    dim, vertices, facets, faces = _hull(points, f.n)
    ordered_faces = tuple(sorted((tuple(sorted(face)) for face in faces),
                                 key=lambda fc: (len(fc), fc)))
    return NewtonPolytope(f.n, dim, points, tuple(sorted(vertices)), tuple(facets), ordered_faces)


def is_convenient(f: LaurentPolynomial) -> bool:
    """Origin in the interior of the Newton polytope."""
    if f.n == 0:
        return False
    return newton_polytope(f).is_convenient


def newton_degree(P: NewtonPolytope, m: Sequence[int]) -> Fraction:
    """Newton function: least ``t >= 0`` with ``m`` in ``t * P``."""
    if not P.is_convenient:
        raise NotConvenient("Newton function needs a convenient polytope")
    best = Fraction(0)
    for u, c in P.facets:
        val = Fraction(_dot(u, m), c)
        if val > best:
            best = val
    return best


def normalized_volume(P: NewtonPolytope) -> int:
    """``n! * vol(P)``, computed exactly."""
    if not P.full_dimensional or P.n == 0:
        raise DegeneratePolytope("volume needs a full-dimensional polytope")
    n = P.n
    if n == 1:
        return P.vertices[-1][0] - P.vertices[0][0]
    if n == 2:
        ring = _hull2d(P.vertices)
        twice = sum(_cross2((0, 0), ring[k], ring[(k + 1) % len(ring)]) for k in range(len(ring)))
        return abs(twice)
    # n == 3: cone from a vertex over a fan triangulation of each far facet
    apex = P.vertices[0]
    total = 0
    for u, c in P.facets:
        if _dot(u, apex) == c:
            continue
        fverts = [v for v in P.vertices if _dot(u, v) == c]
        idx = _coordinate_projection(fverts, 2)
        proj = {tuple(v[i] for i in idx): v for v in fverts}
        ring = [proj[q] for q in _hull2d(list(proj))]
        for k in range(1, len(ring) - 1):
            a, b, d = _sub(ring[0], apex), _sub(ring[k], apex), _sub(ring[k + 1], apex)
            total += abs(_dot(a, _cross(b, d)))
    return total


def face_polynomial(f: LaurentPolynomial, face: Sequence[tuple]) -> LaurentPolynomial:
    keep = set(face)
    return LaurentPolynomial(f.n, {m: c for m, c in f.terms if m in keep})


def is_nondegenerate(f: LaurentPolynomial, budget: int | None = None) -> bool:
    """Kouchnirenko non-degeneracy at infinity.

    For every proper face, the log-derivatives of the face polynomial must have
    no common zero on the torus, i.e. their torus saturation is the unit ideal.
    """
    from .groebner import Ideal, saturate_torus

    if f.n > MAX_ARITY:
        raise ArityLimitExceeded(f"face enumeration is limited to n <= {MAX_ARITY}")
    P = newton_polytope(f)
    for face in P.faces:
        fs = face_polynomial(f, face)
        gens = [log_derivative(fs, i) for i in range(f.n)]
        sat = saturate_torus(Ideal.from_laurent(f.n, gens), budget=budget)
        if not sat.is_unit():
            return False
    return True

