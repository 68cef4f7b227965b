from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from irrhodge import linalg

entries = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(entries, min_size=rc[1], max_size=rc[1]),
                            min_size=rc[0], max_size=rc[0]))


def test_rank_examples():
    assert linalg.rank([[1, 2], [2, 4]]) == 1
    assert linalg.rank([[0, 0], [0, 0]]) == 0
    assert linalg.rank([[Fraction(1, 2), 1], [1, Fraction(1, 3)]]) == 2
    assert linalg.rank([]) == 0


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_sympy(M):
    assert linalg.rank(M) == sympy.Matrix(M).rank()


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(entries, min_size=n, max_size=n),
                                                     min_size=n, max_size=n)))
def test_inverse_and_determinant(M):
    det = linalg.determinant(M)
    assert det == sympy.Matrix(M).det()
    if det:
        inv = linalg.inverse(M)
        assert linalg.matmul(M, inv) == linalg.identity(len(M))


@settings(max_examples=100, deadline=None)
@given(matrices(), st.data())
def test_solve_and_nullspace(M, data):
    cols = [list(c) for c in zip(*M)]
    x = data.draw(st.lists(entries, min_size=len(cols), max_size=len(cols)))
    target = linalg.matvec(M, x)
    sol = linalg.solve(cols, target)
    assert sol is not None and linalg.matvec(M, sol) == target
    for v in linalg.nullspace(M):
        assert not any(linalg.matvec(M, v))
    assert len(linalg.nullspace(M)) == len(cols) - linalg.rank(M)


def test_solve_inconsistent():
    assert linalg.solve([[1, 0], [2, 0]], [0, 1]) is None


def test_echelon_basis_and_spans():
    E = linalg.EchelonBasis(3)
    assert E.add([1, 2, 3]) and not E.add([2, 4, 6]) and E.add([0, 1, 0])
    assert len(E) == 2 and E.contains([1, 3, 3]) and not E.contains([0, 0, 1])
    assert linalg.same_span([[1, 1], [1, -1]], [[1, 0], [0, 2]])
    assert not linalg.same_span([[1, 1]], [[1, 0]])
