from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modules.utils import linalg

F = Fraction
small_vectors = st.lists(st.integers(min_value=-4, max_value=4), min_size=4, max_size=4)


@pytest.mark.linalg
def test_primitive():
    assert linalg.primitive((F(2), F(4), F(-6))) == (1, 2, -3)
    assert linalg.primitive((F(-1, 2), F(1, 3))) == (3, -2)
    assert linalg.primitive((F(0), F(0))) == (0, 0)


@pytest.mark.linalg
def test_gram_schmidt_skips_dependent():
    vs = [(1, 1, 0), (2, 2, 0), (1, 0, 1)]
    out = linalg.gram_schmidt([linalg.vec(v) for v in vs])
    assert len(out) == 2
    assert linalg.dot(out[0], out[1]) == 0


@pytest.mark.linalg
def test_gram_schmidt_start_not_returned():
    start = [linalg.vec((1, 0, 0))]
    out = linalg.gram_schmidt([linalg.vec((1, 1, 0)), linalg.vec((1, 0, 0))], start=start)
    assert out == [(0, 1, 0)]


@pytest.mark.linalg
def test_gram_schmidt_non_orthogonal_start():
    # the A2 coroots are not orthogonal; the complement of their span is (1,1,1)
    start = [linalg.vec((1, -1, 0)), linalg.vec((0, 1, -1))]
    out = linalg.gram_schmidt([linalg.unit(3, i) for i in range(3)], start=start)
    assert out == [(1, 1, 1)]


@pytest.mark.linalg
@given(st.lists(small_vectors, min_size=1, max_size=4), st.lists(small_vectors, min_size=1, max_size=4))
def test_gram_schmidt_orthogonal_to_start(start, rows):
    start_vs = [linalg.vec(r) for r in start]
    rows_vs = [linalg.vec(r) for r in rows]
    out = linalg.gram_schmidt(rows_vs, start=start_vs)
    assert len(out) == linalg.rank(start_vs + rows_vs) - linalg.rank(start_vs)
    for u in out:
        assert all(linalg.dot(u, s) == 0 for s in start_vs)


@pytest.mark.linalg
@given(st.lists(small_vectors, min_size=1, max_size=5))
def test_gram_schmidt_orthogonal(rows):
    out = linalg.gram_schmidt([linalg.vec(r) for r in rows])
    assert len(out) == linalg.rank([linalg.vec(r) for r in rows])
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            assert linalg.dot(out[i], out[j]) == 0


@pytest.mark.linalg
def test_solve_coordinates():
    basis = [linalg.vec((1, -1, 0)), linalg.vec((0, 1, -1))]
    assert linalg.solve_coordinates(linalg.vec((1, 0, -1)), basis) == (1, 1)
    assert linalg.solve_coordinates(linalg.vec((1, 1, 1)), basis) is None


@pytest.mark.linalg
def test_determinant():
    assert linalg.determinant([[2, -1], [-1, 2]]) == 3
