import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from irrhodge.chart import (ChartSection, ChartSpec, OperatorPolynomial, Truncation,
                            apply_operator, compare_filtrations, decompose_Vbeta,
                            filtration_compare, grv_threshold, in_V_strictly_less,
                            in_V_strictly_less_linear, p_poly, p_poly_hbar, plus_norm,
                            pq_convert, precision_lemma_check, previous_jump, q_section,
                            reexpand, v_base, weight_indices)
from irrhodge.errors import NotRepresentable, TruncationOverflow
from irrhodge.verify import (check_decompositions, check_p_poly, check_pq,
                             check_precision_lemma, random_monic, random_vbeta_section)

F = Fraction
E2 = ChartSpec((2,))
SMALL = ChartSpec((2,), Truncation(x_min=-6, v_max=4, op_max=4))


def op(*coeffs):
    return OperatorPolynomial.from_coeffs(coeffs)


def s_plus(c):
    return OperatorPolynomial.linear(c)


# -- generator polynomials ----------------------------------------------------

def test_p_poly_examples():
    assert p_poly((0,), (2,), 0) == OperatorPolynomial.one()
    assert p_poly((1,), (2,), 0) == op(F(1, 2), 1)
    assert p_poly((2,), (2,), F(1, 2)) == s_plus(1) * s_plus(F(3, 2))
    with pytest.raises(ValueError):
        p_poly((-1,), (2,), 0)


def test_p_poly_two_variables():
    P = p_poly((1, 2), (1, 2), F(1, 2))
    # [1/2] = 0 and [1] = 1
    assert P == s_plus(1) * s_plus(1) * s_plus(F(3, 2))
    assert P.degree == 3 and P.is_monic()


def test_p_poly_hbar_examples():
    s = OperatorPolynomial.linear(0)
    assert p_poly_hbar((0,), (2,), 0) == OperatorPolynomial.one()
    alpha = p_poly_hbar((1,), (2,), 0, "alpha")
    assert alpha == OperatorPolynomial.linear(0, F(1, 2)) and alpha.has_hbar
    assert p_poly_hbar((1,), (2,), 0, "strict") == s
    assert p_poly_hbar((2,), (3,), F(1, 3), "alpha").at_hbar(1) == p_poly((2,), (3,), F(1, 3))
    with pytest.raises(ValueError):
        p_poly_hbar((1,), (2,), 1)
    with pytest.raises(ValueError):
        p_poly_hbar((1,), (2,), 0, "other")


# -- Euler operator and P -> Q ---------------------------------------------------

def test_vpartial_examples():
    from irrhodge.chart import vpartial_apply
    one = ChartSection.monomial((0,))
    assert vpartial_apply(one, E2) == ChartSection.monomial((-2,), 1)
    v = ChartSection.monomial((0,), 1)
    assert vpartial_apply(v, E2) == v + ChartSection.monomial((-2,), 2)
    assert vpartial_apply(ChartSection(1), E2).is_zero()
    with pytest.raises(TruncationOverflow):
        vpartial_apply(ChartSection.monomial((-7,)), E2)


def test_pq_examples():
    assert pq_convert(OperatorPolynomial.one()) == OperatorPolynomial.one()
    assert pq_convert(op(0, 1)) == op(0, 1)
    assert pq_convert(op(0, 0, 1)) == op(0, 1, 1)
    # T^3(1) = T(s + s^2) = s + 3 s^2 + s^3
    assert pq_convert(op(0, 0, 0, 1)) == op(0, 1, 3, 1)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), max_size=8))
def test_pq_preserves_degree_and_monicity(lower):
    P = OperatorPolynomial.from_coeffs(list(lower) + [1])
    Q = pq_convert(P)
    assert Q.degree == P.degree and Q.is_monic()


@pytest.mark.parametrize("e", [(2,), (3,), (1, 2)])
def test_pq_identity_on_charts(e):
    spec = ChartSpec(e, Truncation(x_min=-6 * max(e), v_max=6))
    rng = random.Random(7)
    for _ in range(20):
        P = random_monic(rng, rng.randint(0, 6))
        m = tuple(rng.randint(0, 2) for _ in e)
        assert apply_operator(P, ChartSection.monomial(m), spec) == q_section(pq_convert(P), m, spec)


# -- V-filtration decompositions ----------------------------------------------

def test_decompose_examples():
    half = F(1, 2)
    assert v_base(half, (2,)) == (-2,)
    assert decompose_Vbeta(ChartSection.monomial((-2,)), half, E2) == {((0,), 0): {(0,): 1}}
    assert decompose_Vbeta(ChartSection.monomial((-1,)), half, E2) == {((0,), 0): {(1,): 1}}
    # x^-3 has a pole beyond the V_1/2 generator and no v-term to absorb it
    with pytest.raises(NotRepresentable):
        decompose_Vbeta(ChartSection.monomial((-3,)), half, E2)
    assert decompose_Vbeta(ChartSection.monomial((-3,)), 1, E2) == {((0,), 0): {(0,): 1}}


def test_decompose_generator_with_index():
    # x^-2 x^-1 (v d/dv + 1) E = x^-3 (1 + v x^-2) E, index a = (1)
    sec = reexpand({((1,), 0): {(0,): 1}}, F(1, 2), E2)
    assert sec == ChartSection(1, {((-3,), 0): 1, ((-5,), 1): 1})
    assert decompose_Vbeta(sec, F(1, 2), E2) == {((1,), 0): {(0,): 1}}
    assert weight_indices((-3,), F(1, 2), (2,)) == ((1,), (0,))


def test_decompose_negative_beta():
    with pytest.raises(ValueError):
        decompose_Vbeta(ChartSection.monomial((0,)), -1, E2)


def test_reexpand_rejects_bad_coefficient():
    with pytest.raises(ValueError):
        reexpand({((1,), 0): {(1,): 1}}, 0, E2)


@pytest.mark.parametrize("e", [(2,), (3,), (1, 2)])
@pytest.mark.parametrize("beta", [F(0), F(1, 4), F(1, 2), F(1), F(3, 2)])
def test_round_trip(e, beta):
    spec = ChartSpec(e)
    rng = random.Random(11)
    for _ in range(10):
        sec, coeffs = random_vbeta_section(rng, beta, spec)
        assert decompose_Vbeta(sec, beta, spec) == coeffs
        assert reexpand(coeffs, beta, spec) == sec


# -- grV -------------------------------------------------------------------------

def test_grv_examples():
    half = F(1, 2)
    assert grv_threshold(half, (2,)) == 1
    assert grv_threshold(0, (2,)) == 2
    assert grv_threshold(0, (1, 2)) == 3
    assert grv_threshold(F(1, 2), (1, 2)) == 1
    assert not in_V_strictly_less({((0,), 0): {(0,): 1}}, half, (2,))
    assert in_V_strictly_less({((0,), 1): {(0,): 1}}, half, (2,))
    assert in_V_strictly_less({}, half, (2,))


def test_grv_positive_power_of_x():
    # x^-1 E is a generator of V_0 = V_<1/2, although its index (0, 0) has lam = 0
    coeffs = {((0,), 0): {(1,): 1}}
    assert in_V_strictly_less(coeffs, F(1, 2), (2,))
    assert in_V_strictly_less_linear(ChartSection.monomial((-1,)), F(1, 2), E2)
    assert not in_V_strictly_less_linear(ChartSection.monomial((-2,)), F(1, 2), E2)


def test_previous_jump():
    assert previous_jump(F(1, 2), (2,)) == 0
    assert previous_jump(1, (2,)) == F(1, 2)
    assert previous_jump(1, (1, 3)) == F(2, 3)
    with pytest.raises(ValueError):
        previous_jump(0, (2,))


@pytest.mark.parametrize("e", [(2,), (1, 2)])
def test_decomposition_suites(e):
    for suite in check_decompositions(ChartSpec(e), trials=40, seed=3):
        assert suite.passed, suite.example


def test_p_poly_suite():
    assert check_p_poly(ChartSpec((1, 2))).passed
    assert check_pq(ChartSpec((3,), Truncation(x_min=-18)), trials=30).passed


# -- precision lemma ----------------------------------------------------------------

def test_precision_examples():
    assert plus_norm((2, -3, 1)) == 3
    assert precision_lemma_check((2, 0), (1, 1), 2)
    assert precision_lemma_check((0,), (5,), 0)
    # k below |a|_+ fails at j = k
    assert not precision_lemma_check((2, 1), (1, 1), 2)


def test_precision_suite():
    assert check_precision_lemma(trials=2000, seed=5).passed


# -- F = F' ----------------------------------------------------------------------------

def test_filtration_examples():
    assert filtration_compare(SMALL, 0, 0)
    assert filtration_compare(SMALL, F(1, 2), 1)
    assert filtration_compare(SMALL, 0, -1)
    empty = compare_filtrations(SMALL, 0, -1)
    assert empty.weights_checked == 0 and empty.total_dimension == 0


def test_filtration_is_not_vacuous():
    cmp = compare_filtrations(SMALL, F(1, 2), 1)
    assert cmp.weights_checked > 0 and cmp.total_dimension > 0
    assert cmp.to_json()["equal"] is True


def test_filtration_overflow_and_range():
    with pytest.raises(TruncationOverflow):
        compare_filtrations(SMALL, 0, 5)
    with pytest.raises(ValueError):
        compare_filtrations(SMALL, 1, 0)


def test_filtration_detects_a_wrong_filtration(monkeypatch):
    # drop the V_{alpha+j} pieces: F' becomes too small for p = 1
    import irrhodge.chart as chart
    real = chart._gk_cap_v
    monkeypatch.setattr(chart, "_gk_cap_v", lambda w, k, beta, spec: [] if beta >= 1 else real(w, k, beta, spec))
    cmp = compare_filtrations(SMALL, 0, 1)
    assert not cmp.equal and "mismatch" in cmp.to_json()


def test_section_helpers():
    sec = ChartSection(1, {((0,), 0): 1, ((-2,), 1): F(1, 2)})
    assert sec.times_v(2) == ChartSection(1, {((0,), 2): 1, ((-2,), 3): F(1, 2)})
    assert sec.times_x((1,)) == ChartSection(1, {((1,), 0): 1, ((-1,), 1): F(1, 2)})
    assert (sec - sec).is_zero()
    assert sec.in_truncation(E2.truncation)
    assert not ChartSection.monomial((3,)).in_truncation(E2.truncation)
    with pytest.raises(ValueError):
        Truncation(x_min=1, x_max=0)
    with pytest.raises(ValueError):
        ChartSpec((0,))
