import random

import pytest
from hypothesis import given, strategies as st

from conftest import F2, F3, F4, F5, F9, mat, rand_invertible, rand_matrix
from matimage.gf import FieldMismatchError
from matimage.mat import (
    JordanKind,
    Matrix2,
    char_poly,
    jordan_form,
    matrix_kth_root,
    matrix_kth_root_bruteforce,
)

codes3 = st.integers(0, 80)


def test_det_trace_examples():
    m = mat(F5, "[[1,2],[3,4]]")
    assert m.det() == F5(3)
    assert m.trace() == F5(0)
    assert char_poly(m) == (F5(0), F5(3))


def test_code_order_a_most_significant():
    assert Matrix2.from_code(F3, 1) == mat(F3, "[[0,0],[0,1]]")
    assert Matrix2.from_code(F3, 27) == mat(F3, "[[1,0],[0,0]]")
    assert [m.code for m in Matrix2.all(F2)] == list(range(16))


def test_parse_roundtrip_over_extension():
    m = mat(F9, "[[1+2t,t],[0,2]]")
    assert Matrix2.parse(F9, str(m)) == m
    with pytest.raises(ValueError):
        Matrix2.parse(F5, "[[1,2],[3]]")


@given(codes3, codes3, codes3)
def test_ring_laws(i, j, k):
    a, b, c = (Matrix2.from_code(F3, n) for n in (i, j, k))
    assert (a @ b) @ c == a @ (b @ c)
    assert a @ (b + c) == a @ b + a @ c
    assert (a @ b).det() == a.det() * b.det()
    assert (a @ b).trace() == (b @ a).trace()


@given(codes3)
def test_cayley_hamilton(i):
    m = Matrix2.from_code(F3, i)
    tr, dt = char_poly(m)
    I = Matrix2.identity(F3)
    assert (m @ m - m * tr + I * dt).is_zero()


@given(codes3, st.integers(0, 20))
def test_power_matches_repeated_product(i, n):
    m = Matrix2.from_code(F3, i)
    expected = Matrix2.identity(F3)
    for _ in range(n):
        expected = expected @ m
    assert m**n == expected


def _check_jordan(m):
    jd = jordan_form(m)
    mm = m.embed(jd.J.field)
    assert jd.P.det()
    assert jd.P @ mm @ jd.P.inv() == jd.J
    assert jd.base_extended == (jd.J.field != m.field)
    return jd


def test_jordan_reconstruction_exhaustive_f3():
    kinds = {}
    for m in Matrix2.all(F3):
        jd = _check_jordan(m)
        kinds[jd.kind] = kinds.get(jd.kind, 0) + 1
    # 3 scalars; 24 non-scalar with a repeated eigenvalue; the rest distinct
    assert kinds == {JordanKind.SCALAR: 3, JordanKind.BLOCK: 24, JordanKind.DIAGONAL_DISTINCT: 54}


def test_jordan_reconstruction_random_f5():
    rng = random.Random(5)
    for _ in range(1000):
        _check_jordan(rand_matrix(rng, F5))


def test_jordan_examples():
    jd = jordan_form(mat(F5, "[[1,2],[0,3]]"))
    assert jd.kind is JordanKind.DIAGONAL_DISTINCT and jd.J == mat(F5, "[[1,0],[0,3]]")
    jd = jordan_form(mat(F5, "[[2,1],[0,2]]"))
    assert jd.kind is JordanKind.BLOCK and jd.J == mat(F5, "[[2,1],[0,2]]")
    jd = jordan_form(mat(F3, "[[0,2],[1,0]]"))  # x^2 + 1
    assert jd.base_extended and jd.J.field == F9
    # singular diagonalizable matrices put the zero eigenvalue first
    assert jordan_form(mat(F5, "[[1,0],[0,0]]")).J == mat(F5, "[[0,0],[0,1]]")


def test_jordan_kind_conjugation_invariant():
    rng = random.Random(7)
    for _ in range(200):
        m = rand_matrix(rng, F5)
        q = rand_invertible(rng, F5)
        a, b = jordan_form(m), jordan_form(m.conj(q))
        assert a.kind == b.kind
        assert sorted(x.code for x in a.eigenvalues) == sorted(x.code for x in b.eigenvalues)


@pytest.mark.parametrize("field", [F2, F3], ids=str)
@pytest.mark.parametrize("k", [2, 3, 4, 7])
def test_kth_root_agrees_with_bruteforce(field, k):
    for m in Matrix2.all(field):
        fast, slow = matrix_kth_root(m, k), matrix_kth_root_bruteforce(m, k)
        assert (fast is None) == (slow is None)
        if fast is not None:
            assert fast**k == m


@pytest.mark.parametrize("field,k", [(F5, 2), (F5, 3), (F4, 3), (F9, 2)], ids=str)
def test_kth_root_sound_and_complete_on_powers(field, k):
    rng = random.Random(k)
    for _ in range(150):
        x = rand_matrix(rng, field)
        root = matrix_kth_root(x**k, k)
        assert root is not None and root**k == x**k


def test_kth_root_examples():
    # diag(1, 4) over F_5 is the square of diag(1, 2)
    r = matrix_kth_root(mat(F5, "[[1,0],[0,4]]"), 2)
    assert r is not None and r @ r == mat(F5, "[[1,0],[0,4]]")
    # 2 is not a square mod 5, so neither is 2I restricted to scalars, but a
    # non-scalar root exists
    r = matrix_kth_root(mat(F5, "[[2,0],[0,2]]"), 2)
    assert r is not None and not r.is_scalar() and r @ r == mat(F5, "[[2,0],[0,2]]")
    # a nonzero nilpotent has no square root
    assert matrix_kth_root(mat(F5, "[[0,1],[0,0]]"), 2) is None
    assert matrix_kth_root_bruteforce(mat(F5, "[[0,1],[0,0]]"), 2) is None


def test_mixed_fields_rejected():
    with pytest.raises(FieldMismatchError):
        Matrix2.identity(F3) + Matrix2.identity(F5)
