from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from dihomol.fields import QQ, FieldError, PrimeField, field_from_token, parse_rational
from dihomol.linalg import (DimensionError, ExactMatrix, SpanBasis, compose, image_basis,
                            kernel_basis, rank)

F2 = PrimeField(2)
F5 = PrimeField(5)


def M(rows, F=QQ):
    return ExactMatrix.from_dense([[F.coerce(x) for x in r] for r in rows], F)


def test_rank_depends_on_field():
    assert rank(M([[2, 4], [1, 2]])) == 1
    assert rank(M([[2, 4], [1, 2]], F2)) == 1
    assert rank(M([[2, 0], [0, 2]], F2)) == 0
    assert rank(M([[2, 0], [0, 2]])) == 2
    assert rank(M([[1, 1], [1, -1]], F2)) == 1
    assert rank(M([[1, 1], [1, -1]], F5)) == 2


def test_kernel_of_row_vector():
    ker = kernel_basis(M([[1, 1]]))
    assert len(ker) == 1
    (v,) = ker
    assert v[0] + v[1] == 0


def test_rational_entries_stay_exact():
    m = M([["1/3", "2/3"], ["1/2", 1]])
    assert rank(m) == 1
    (v,) = kernel_basis(m)
    assert M([["1/3", "2/3"]]).apply(v) == {}


def test_empty_shapes():
    assert rank(ExactMatrix.zero(0, 3, QQ)) == 0
    assert len(kernel_basis(ExactMatrix.zero(0, 3, QQ))) == 3
    assert kernel_basis(ExactMatrix.zero(2, 0, QQ)) == []


def test_compose_shape_mismatch():
    with pytest.raises(DimensionError):
        compose(M([[1, 2]]), M([[1, 2]]))


def test_field_parsing():
    assert field_from_token("Q") is QQ
    assert field_from_token("F7").p == 7
    assert field_from_token({"Fp": 3}).p == 3
    for bad in ("F4", "F1", "R", {"p": 3}):
        with pytest.raises(FieldError):
            field_from_token(bad)
    assert parse_rational("-3/6") == Fraction(-1, 2)
    with pytest.raises(FieldError):
        parse_rational("1/0")
    with pytest.raises(FieldError):
        QQ.coerce(0.5)
    assert F5.coerce("1/2") == 3
    assert F5.coerce(QQ.coerce("1/2")) == 3
    with pytest.raises(FieldError):
        F5.coerce("1/5")


def test_span_basis_express():
    sb = SpanBasis(QQ)
    assert sb.insert({0: QQ.one(), 1: QQ.one()})
    assert sb.insert({1: QQ.one()})
    assert not sb.insert({0: QQ.coerce(2)})
    combo = sb.express({0: QQ.coerce(3), 1: QQ.coerce(5)})
    assert combo == {0: 3, 1: 2}
    assert sb.express({2: QQ.one()}) is None


small_ints = st.integers(min_value=-3, max_value=3)


@st.composite
def int_matrices(draw, max_dim=6):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    return [[draw(small_ints) for _ in range(c)] for _ in range(r)]


@settings(max_examples=80, deadline=None)
@given(int_matrices())
def test_rank_matches_sympy(rows):
    assert rank(M(rows)) == sympy.Matrix(rows).rank()


@settings(max_examples=80, deadline=None)
@given(int_matrices(), st.sampled_from([2, 3, 5]))
def test_rank_transpose_and_reduction(rows, p):
    F = PrimeField(p)
    for field in (QQ, F):
        m = M(rows, field)
        assert rank(m) == rank(m.transpose())
    assert rank(M(rows)) >= rank(M(rows, F))


@settings(max_examples=80, deadline=None)
@given(int_matrices(), st.sampled_from(["Q", "F2", "F3"]))
def test_kernel_and_image(rows, tok):
    F = field_from_token(tok)
    m = M(rows, F)
    ker = kernel_basis(m)
    assert len(ker) == m.ncols - rank(m)
    for v in ker:
        assert m.apply(v) == {}
    assert len(image_basis(m)) == rank(m)
