"""Exact linear algebra: elimination, kernels, incremental spans, solving."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ncgraded.exactla import (F32003, F46337, QQ, FieldSpec, RowSpan,
                              SparseMatrix, field_from_name, kernel_basis,
                              rank, rref, solve_columns)


def from_rows(rows, f):
    m = SparseMatrix(len(rows), len(rows[0]) if rows else 0, f)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            s = f.from_int(v)
            if not f.is_zero(s):
                m.set(i, j, s)
    return m


def apply_columns(columns, x, f):
    out: dict = {}
    for c, coef in x.items():
        for r, v in columns[c].items():
            s = f.add(out.get(r, f.zero()), f.mul(coef, v))
            if f.is_zero(s):
                out.pop(r, None)
            else:
                out[r] = s
    return out


int_entries = st.integers(min_value=-3, max_value=3)


@st.composite
def int_matrices(draw, maxd=5):
    r = draw(st.integers(1, maxd))
    c = draw(st.integers(1, maxd))
    return draw(st.lists(
        st.lists(int_entries, min_size=c, max_size=c),
        min_size=r, max_size=r))


# -- fields -------------------------------------------------------------------

def test_field_names():
    assert field_from_name("Q") == QQ
    assert field_from_name("F32003") == F32003
    assert field_from_name("F2").p == 2


@pytest.mark.parametrize("bad", ["F4", "F0", "F1", "G5", ""])
def test_field_name_rejects(bad):
    with pytest.raises(ValueError):
        field_from_name(bad)


def test_prime_field_arithmetic():
    f = field_from_name("F7")
    assert f.add(f.from_int(5), f.from_int(4)) == 2
    assert f.mul(f.inv(f.from_int(3)), f.from_int(3)) == 1
    assert f.is_zero(f.sub(f.from_int(7), f.zero()))


def test_rational_arithmetic():
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
    assert QQ.neg(QQ.one()) == Fraction(-1)


# -- elimination --------------------------------------------------------------

def test_rref_rank_deficient_q():
    m = from_rows([[1, 2], [2, 4]], QQ)
    r = rref(m)
    assert r.rank == 1
    assert [c for _, c in r.pivots] == [0]


def test_rref_full_rank_fp():
    m = from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]], F32003)
    assert rank(m) == 3
    # same matrix is singular in characteristic 2
    assert rank(from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]],
                          field_from_name("F2"))) == 2


def test_kernel_known():
    m = from_rows([[1, 2], [2, 4]], QQ)
    (k,) = kernel_basis(m)
    assert apply_columns([m.column(0), m.column(1)], k, QQ) == {}


@pytest.mark.parametrize("f", [F32003, QQ])
@given(rows=int_matrices())
def test_rank_nullity_and_kernel_annihilates(f, rows):
    m = from_rows(rows, f)
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.cols
    cols = [m.column(j) for j in range(m.cols)]
    for v in ker:
        assert v
        assert apply_columns(cols, v, f) == {}


@given(rows=int_matrices())
def test_rank_agrees_across_fields(rows):
    # entries in [-3, 3] on a <=5x5 matrix keep every minor far below
    # both primes, so characteristic cannot change the rank
    ranks = {rank(from_rows(rows, f)) for f in (QQ, F32003, F46337)}
    assert len(ranks) == 1


# -- solving ------------------------------------------------------------------

@given(rows=int_matrices(), coeffs=st.lists(int_entries, min_size=1, max_size=5))
def test_solve_columns_recovers_membership(rows, coeffs):
    f = F32003
    m = from_rows(rows, f)
    cols = [m.column(j) for j in range(m.cols)]
    x = {j: f.from_int(c) for j, c in enumerate(coeffs[:m.cols])
         if not f.is_zero(f.from_int(c))}
    target = apply_columns(cols, x, f)
    sol = solve_columns(cols, target, m.rows, f)
    assert sol is not None
    assert apply_columns(cols, sol, f) == target


def test_solve_columns_inconsistent():
    f = QQ
    cols = [{0: f.one()}, {0: f.from_int(2)}]
    assert solve_columns(cols, {1: f.one()}, 2, f) is None
    assert solve_columns(cols, {0: f.from_int(5)}, 2, f) is not None


def test_solve_columns_empty_target():
    assert solve_columns([{0: QQ.one()}], {}, 1, QQ) == {}


# -- incremental spans --------------------------------------------------------

@given(rows=int_matrices())
def test_rowspan_matches_rref(rows):
    f = F32003
    span = RowSpan(f, len(rows[0]))
    vecs = []
    for row in rows:
        v = {j: f.from_int(c) for j, c in enumerate(row)
             if not f.is_zero(f.from_int(c))}
        vecs.append(v)
        span.add(v)
    assert span.rank == rank(from_rows(rows, f))
    for v in vecs:
        assert span.contains(v)
        assert span.reduce(v) == {}


def test_rowspan_growth_flag():
    span = RowSpan(QQ, 3)
    assert span.add({0: QQ.one()}) is True
    assert span.add({0: QQ.from_int(2)}) is False
    assert span.add({1: QQ.one(), 2: QQ.one()}) is True
    assert not span.contains({2: QQ.one()})
    assert span.pivot_columns() == [0, 1]
