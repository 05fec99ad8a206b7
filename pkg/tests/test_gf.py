import random

import pytest
from hypothesis import given, strategies as st

from conftest import F2, F3, F4, F5, F9
from matimage.gf import (
    FieldError,
    FieldMismatchError,
    is_power_bijective,
    kth_root,
    least_nonresidue,
    make_field,
    quadratic_roots,
)

FIELDS = [F2, F3, F4, F5, F9, make_field(7), make_field(11), make_field(5, 2), make_field(11, 2)]


@pytest.mark.parametrize("field", [F3, F5, F9], ids=str)
def test_field_axioms_random_triples(field):
    rng = random.Random(1234)
    one, zero = field.one, field.zero
    for _ in range(1000):
        a, b, c = (field.from_code(rng.randrange(field.q)) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a and a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a + zero == a and a * one == a and a + (-a) == zero
        if a:
            assert a * a.inv() == one


def test_inverse_and_generator_examples():
    assert F5(3).inv() == F5(2)
    t = F9.gen
    assert t * t == F9(2)  # modulus t^2 + 1
    assert F4.gen * F4.gen == F4.gen + F4.one  # t^2 + t + 1


def test_modulus_uses_least_nonresidue():
    assert [least_nonresidue(p) for p in (3, 5, 7, 11)] == [2, 2, 3, 2]


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_multiplicative_group_is_cyclic_of_order_q_minus_1(field):
    orders = set()
    for a in field.nonzero():
        assert a ** (field.q - 1) == field.one
        orders.add(next(n for n in range(1, field.q) if a**n == field.one))
    assert max(orders) == field.q - 1


def test_code_order_and_roundtrip():
    codes = [x.code for x in F9.elements()]
    assert codes == list(range(9))
    for x in F9.elements():
        assert F9.from_code(x.code) == x
        assert F9.parse(str(x)) == x


@pytest.mark.parametrize("text,c0,c1", [("3", 0, 0), ("2+1t", 2, 1), ("t", 0, 1), ("2t", 0, 2), ("-1", 2, 0), ("1-t", 1, 2)])
def test_parse_forms(text, c0, c1):
    assert F9.parse(text) == F9(c0, c1)


@given(st.integers(0, 24), st.integers(0, 24))
def test_frobenius_is_additive_and_multiplicative(i, j):
    f = make_field(5, 2)
    a, b = f.from_code(i), f.from_code(j)
    assert (a + b).frobenius() == a.frobenius() + b.frobenius()
    assert (a * b).frobenius() == a.frobenius() * b.frobenius()
    assert a.frobenius().frobenius() == a
    assert a.in_base() == (a.frobenius() == a)


def test_kth_root_soundness_exhaustive_f5():
    for k in range(1, 13):
        powers = {x**k for x in F5.elements()}
        for a in F5.elements():
            r = kth_root(a, k)
            if a in powers:
                assert r is not None and r**k == a
                # least root in code order
                assert all(x**k != a for x in F5.elements() if x.code < r.code)
            else:
                assert r is None


@pytest.mark.parametrize("field", [F4, F5, F9, make_field(7)], ids=str)
def test_power_bijective_matches_counting(field):
    for k in range(1, 10):
        image = {x**k for x in field.elements()}
        assert is_power_bijective(field, k) == (len(image) == field.q)


def test_quadratic_roots():
    # x^2 - 3x + 2 over F_5
    assert quadratic_roots(F5(-3), F5(2)) == [F5(1), F5(2)]
    # x^2 + 1 over F_3 splits only in F_9
    roots = quadratic_roots(F3(0), F3(1))
    assert len(roots) == 2 and all(r.field == F9 and r * r == F9(2) for r in roots)
    assert quadratic_roots(F5(0), F5(0)) == [F5(0)]


@given(st.integers(0, 8), st.integers(0, 8))
def test_quadratic_roots_are_roots(b, c):
    roots = quadratic_roots(F3(b), F3(c))
    for r in roots:
        f = r.field
        assert r * r + f.embed(F3(b)) * r + f.embed(F3(c)) == f.zero
    assert len(set(roots)) == len(roots)


def test_field_errors():
    with pytest.raises(FieldError):
        make_field(4)
    with pytest.raises(FieldError):
        make_field(13)
    with pytest.raises(FieldError):
        make_field(3, 3)
    with pytest.raises(FieldMismatchError):
        F3(1) + F5(1)
    with pytest.raises(ZeroDivisionError):
        F5(0).inv()


def test_embedding_base_into_extension():
    for x in F3.elements():
        y = F9.embed(x)
        assert y.in_base() and F3.embed(y) == x
    with pytest.raises(FieldMismatchError):
        F3.embed(F9.gen)
