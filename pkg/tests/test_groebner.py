from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from irrhodge import linalg
from irrhodge.errors import InfiniteQuotient, ResourceLimit, SingularMultiplication
from irrhodge.groebner import (GroebnerBasis, Ideal, groebner_basis, laurent_class_vector,
                               quotient_ring, saturate_torus)
from irrhodge.laurent import LaurentPolynomial, parse_laurent
from irrhodge.spectrum import jacobian_ideal, jacobian_quotient

XY = ("x", "y")


def P(text, names=XY):
    return parse_laurent(text, names)


def test_single_generator():
    gb = groebner_basis([P("x^2 - 1", ["x"])])
    assert gb.elements == (P("x^2 - 1", ["x"]),)


def test_lex_example():
    gb = groebner_basis([P("x - y"), P("y - 1")], order="lex")
    assert set(gb.elements) == {P("x - 1"), P("y - 1")}


def test_unit_ideal():
    gb = groebner_basis([P("3 + 0*x", ["x"])])
    assert gb.is_unit() and gb.elements == (P("1", ["x"]),)


def test_zero_ideal_keeps_arity():
    gb = groebner_basis([LaurentPolynomial.zero(2)])
    assert gb.n == 2 and gb.is_zero_ideal()
    assert groebner_basis([], n=3).n == 3


def test_basis_is_monic_and_autoreduced():
    gb = groebner_basis([P("2*x^2*y - 1"), P("3*x*y^2 - 1")])
    for g in gb.elements:
        assert g.terms[0][1] == 1
    lms = gb.leading_monomials
    for i, a in enumerate(lms):
        for j, b in enumerate(lms):
            assert i == j or not all(x <= y for x, y in zip(a, b))


def test_saturation_examples():
    one = lambda g: saturate_torus(Ideal.from_laurent(1, [P(g, ["x"])]))
    assert one("x^2 - 1").basis.elements == (P("x^2 - 1", ["x"]),)
    assert one("x^3 - x^2").basis.elements == (P("x - 1", ["x"]),)
    assert one("x^2").is_unit()
    assert saturate_torus(Ideal.from_laurent(2, [P("1")])).is_unit()


def test_ideal_from_laurent_clears_monomials():
    I = Ideal.from_laurent(2, [P("x - x^-1*y^-1"), P("y - x^-1*y^-1")])
    assert set(I.generators) == {P("x^2*y - 1"), P("x*y^2 - 1")}
    assert I.shifts == ((1, 1), (1, 1))


def test_quotient_examples():
    Q = quotient_ring(groebner_basis([P("x^2 - 1", ["x"])]))
    assert Q.basis == ((0,), (1,)) and Q.dimension == 2
    Q1 = quotient_ring(groebner_basis([P("x", ["x"])]))
    assert Q1.basis == ((0,),)
    with pytest.raises(InfiniteQuotient):
        quotient_ring(groebner_basis([P("x*y - 1")]))
    with pytest.raises(InfiniteQuotient):
        quotient_ring(groebner_basis([LaurentPolynomial.zero(1)]))


def test_p2_mirror_quotient():
    Q = jacobian_quotient(P("x + y + x^-1*y^-1"))
    assert Q.dimension == 3 and Q.basis[0] == (0, 0)
    assert Q.groebner.elements == (P("y^3 - 1"), P("x - y"))
    assert Q.basis == ((0, 0), (0, 1), (0, 2))
    # x = y in the quotient, so x^2 is the basis monomial y^2
    v = laurent_class_vector(Q, (2, 0))
    assert v == [0, 0, 1] == Q.coordinates(P("x^2"))


def test_class_vectors_x_plus_inverse():
    Q = jacobian_quotient(P("x + 1/x", ["x"]))
    assert Q.basis == ((0,), (1,))
    assert laurent_class_vector(Q, (0,)) == [1, 0]
    assert laurent_class_vector(Q, (-1,)) == laurent_class_vector(Q, (1,)) == [0, 1]
    M = Q.mult_matrices[0]
    assert linalg.matmul(M, M) == linalg.identity(2)


def test_singular_multiplication():
    Q = quotient_ring(groebner_basis([P("x^2", ["x"])]))
    with pytest.raises(SingularMultiplication):
        laurent_class_vector(Q, (-1,))


def test_resource_limit():
    with pytest.raises(ResourceLimit):
        groebner_basis([P("x^3*y - 2*y^2 + 1"), P("x*y^3 - x^2 + 3"), P("x^2*y^2 + x - y")], budget=5)
    gb = groebner_basis([P("x^3*y - 2*y^2 + 1"), P("x*y^3 - x^2 + 3")], budget=1000)
    assert len(gb.elements) == 4


def test_dump():
    gb = groebner_basis([P("x - y"), P("y - 1")], order="lex")
    assert gb.dump(XY).splitlines() == ["x - 1", "y - 1"]


# -- oracle: sympy ----------------------------------------------------------

mono = st.tuples(st.integers(0, 3), st.integers(0, 3))
small = st.integers(-3, 3).filter(bool)
polys = st.dictionaries(mono, small, min_size=1, max_size=4).map(lambda d: LaurentPolynomial(2, d))


def _sympy_basis(gens, order):
    x, y = sympy.symbols("x y")
    exprs = [sum(sympy.Rational(c.numerator, c.denominator) * x ** m[0] * y ** m[1] for m, c in g.terms)
             for g in gens]
    G = sympy.groebner(exprs, x, y, order=order)
    out = set()
    for e in G.exprs:
        p = sympy.Poly(e, x, y)
        lc = p.coeffs(order=order)[0]
        out.add(LaurentPolynomial(2, {m: Fraction(int(c.p), int(c.q)) / Fraction(int(lc.p), int(lc.q))
                                      for m, c in p.terms()}))
    return out


@settings(max_examples=60, deadline=None)
@given(st.lists(polys, min_size=1, max_size=3), st.sampled_from(["grevlex", "lex"]))
def test_reduced_basis_matches_sympy(gens, order):
    gb = groebner_basis(gens, order=order, budget=200_000)
    assert set(gb.elements) == _sympy_basis(gens, order)


@settings(max_examples=40, deadline=None)
@given(st.lists(polys, min_size=1, max_size=3), polys)
def test_normal_form_idempotent_and_linear(gens, f):
    gb = groebner_basis(gens, budget=200_000)
    nf = gb.normal_form(f)
    assert gb.normal_form(nf) == nf
    g = gens[0]
    assert gb.normal_form(f + g.scale(3)) == nf
    assert gb.normal_form(f.scale(Fraction(2, 3))) == nf.scale(Fraction(2, 3))


JACOBIANS = [
    "x + y + x^-1*y^-1",
    "x + 1/x + y + 1/y",
    "x^2 + y + x^-1*y^-1 + 2",
    "x*y + x^-1 + y^-2 - 3*x",
    "x^2 + 1/x",
]


@pytest.mark.parametrize("text", JACOBIANS)
@pytest.mark.parametrize("order", ["grevlex", "lex"])
def test_multiplication_matrices_commute(text, order):
    names = XY if "y" in text else ("x",)
    Q = jacobian_quotient(P(text, names), order)
    Ms = Q.mult_matrices
    for A in Ms:
        for B in Ms:
            assert linalg.matmul(A, B) == linalg.matmul(B, A)
    m1, m2 = (2, -1)[:Q.n], (-1, 3)[:Q.n]
    total = tuple(a + b for a, b in zip(m1, m2))
    v = laurent_class_vector(Q, total)
    # x^(m1+m2) through m2 applied after m1, in either order
    route = laurent_class_vector(Q, m1)
    for i, a in enumerate(m2):
        M = Ms[i] if a >= 0 else Q.inverse_matrix(i)
        for _ in range(abs(a)):
            route = linalg.matvec(M, route)
    assert v == route


def test_jacobian_ideal_generators():
    I = jacobian_ideal(P("x + 1/x", ["x"]))
    assert I.generators == (P("x^2 - 1", ["x"]),)
    I2 = jacobian_ideal(P("x + y + x^-1*y^-1"))
    assert set(I2.generators) == {P("x^2*y - 1"), P("x*y^2 - 1")}
    assert isinstance(saturate_torus(I2).basis, GroebnerBasis)
