import random

import pytest

from conftest import F2, F3, F4, F5, mat, rand_invertible, rand_matrix
from matimage.commutator import (
    bijective_slice,
    canonical_case_prediction,
    certify_vector_space,
    closed_form_image,
    image_subspace,
)
from matimage.conjugacy import Row
from matimage.mat import Matrix2
from matimage.oracle import Subspace, enumerate_image, span
from matimage.polys import CommutatorPoly, ZeroConstantError
from matimage.waring import Variant


def nonzero(field):
    return [m for m in Matrix2.all(field) if not m.is_zero()]


def trace_zero(field):
    return Subspace.span_of(field, [mat(field, "[[1,0],[0,-1]]"), mat(field, "[[0,1],[0,0]]"), mat(field, "[[0,0],[1,0]]")])


def test_equal_identities_give_trace_zero():
    sub, cert = image_subspace(CommutatorPoly(Matrix2.identity(F5), Matrix2.identity(F5)))
    assert sub == trace_zero(F5) and cert.mode == "closed_form"


def test_invertible_difference_gives_everything():
    sub, cert = image_subspace(CommutatorPoly(mat(F5, "[[2,0],[0,2]]"), Matrix2.identity(F5)))
    assert sub.dim == 4


def test_first_row_example_enumerated():
    sub, cert = image_subspace(CommutatorPoly(mat(F5, "[[1,0],[0,0]]"), mat(F5, "[[1,1],[0,0]]")))
    assert cert.mode == "exhaustive" and cert.is_subspace
    assert sub == Subspace.row_space(F5, 1)


@pytest.mark.parametrize(
    "a,b,size",
    [("[[1,0],[0,1]]", "[[1,0],[0,1]]", 27), ("[[2,0],[0,2]]", "[[1,0],[0,1]]", 81), ("[[1,0],[0,0]]", "[[1,1],[0,0]]", 9)],
)
def test_certify_examples_f3(a, b, size):
    rep = certify_vector_space(CommutatorPoly(mat(F3, a), mat(F3, b)))
    assert rep.is_subspace and rep.size == size and rep.counterexample is None


def test_fast_paths_match_enumeration_f3():
    for A in nonzero(F3):
        for B in nonzero(F3):
            poly = CommutatorPoly(A, B)
            closed = closed_form_image(poly)
            if closed is not None:
                assert closed[0] == span(enumerate_image(poly))


@pytest.mark.parametrize("field", [F2, F3], ids=str)
def test_every_image_is_a_subspace(field):
    for A in nonzero(field):
        for B in nonzero(field):
            assert certify_vector_space(CommutatorPoly(A, B)).is_subspace, (A, B)


@pytest.mark.slow
def test_random_pairs_f5_are_subspaces():
    rng = random.Random(17)
    for _ in range(500):
        A, B = rand_matrix(rng, F5, nonzero=True), rand_matrix(rng, F5, nonzero=True)
        rep = certify_vector_space(CommutatorPoly(A, B))
        assert rep.is_subspace, (A, B, rep.counterexample)


def test_equivariance_f5():
    rng = random.Random(8)
    for _ in range(200):
        A, B = rand_matrix(rng, F5, nonzero=True), rand_matrix(rng, F5, nonzero=True)
        # keep det(A - B) = 0 half the time so enumeration is exercised
        if rng.random() < 0.5:
            B = A + Matrix2.of(F5, [[1, 2], [2, 4]]) * rng.randrange(5)
            if B.is_zero():
                continue
        Q = rand_invertible(rng, F5)
        s, _ = image_subspace(CommutatorPoly(A, B))
        sq, _ = image_subspace(CommutatorPoly(A.conj(Q), B.conj(Q)))
        assert s.conj(Q) == sq


@pytest.mark.parametrize(
    "a,b,variant,row",
    [
        ("[[0,0],[0,1]]", "[[0,1],[0,0]]", Variant.FULL, None),
        ("[[0,1],[0,0]]", "[[0,3],[0,0]]", Variant.ROW_SPACE, Row.SECOND),
        ("[[1,0],[0,2]]", "[[1,1],[0,2]]", Variant.FULL, None),
        ("[[1,0],[0,0]]", "[[1,1],[0,0]]", Variant.ROW_SPACE, Row.SECOND),
    ],
)
def test_prediction_examples(a, b, variant, row):
    pred = canonical_case_prediction(CommutatorPoly(mat(F5, a), mat(F5, b)))
    assert pred is not None and pred.variant is variant and pred.zero_row == row


def test_char2_antidiagonal_abstains():
    A, B = mat(F4, "[[1,0],[0,t]]"), mat(F4, "[[0,t],[1,0]]")
    assert not (A - B).det()
    poly = CommutatorPoly(A, B)
    assert canonical_case_prediction(poly) is None
    assert certify_vector_space(poly).is_subspace


@pytest.mark.parametrize("field", [F2, F3], ids=str)
def test_predictions_agree_with_oracle(field):
    made = 0
    for A in nonzero(field):
        for B in nonzero(field):
            poly = CommutatorPoly(A, B)
            pred = canonical_case_prediction(poly)
            if pred is None:
                continue
            made += 1
            assert pred.subspace() == span(enumerate_image(poly)), (A, B, pred.provenance)
    assert made > 0


def test_certificate_is_a_real_bijection():
    poly = CommutatorPoly(mat(F5, "[[1,0],[0,2]]"), mat(F5, "[[1,1],[0,2]]"))
    var, M = bijective_slice(poly)
    units = [Matrix2.from_code(F5, 5**i) for i in range(4)]
    images = [poly(M, E) if var == "X" else poly(E, M) for E in units]
    assert Subspace.span_of(F5, images).dim == 4


def test_zero_constant_rejected():
    with pytest.raises(ZeroConstantError):
        CommutatorPoly(Matrix2.identity(F3), Matrix2.zero(F3))
