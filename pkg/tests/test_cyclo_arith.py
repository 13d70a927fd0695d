from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.cyclo_arith import (
    MINUS_ONE,
    ONE,
    CyclicGrp,
    QuadForm,
    Rot,
    gauss_convention,
    gauss_norm_base,
    gauss_norm_form,
    jacobi_cyclic,
    minus_one_symbol,
    mult_order,
    rot_sum,
    sgn_mult,
)

rots = st.builds(Rot, st.integers(-50, 50), st.integers(1, 24))


@pytest.mark.parametrize(("q", "d", "expected"), [(2, 7, 3), (5, 1, 1), (4, 15, 2)])
def test_mult_order(q, d, expected):
    assert mult_order(q, d) == expected


def test_mult_order_rejects_non_units():
    with pytest.raises(ValueError, match="not a unit"):
        mult_order(6, 9)


@pytest.mark.parametrize(("x", "order", "expected"), [(3, 8, -1), (4, 8, 1), (3, 9, 1)])
def test_jacobi_cyclic(x, order, expected):
    assert jacobi_cyclic(x, CyclicGrp(order)) == expected


@pytest.mark.parametrize(("x", "Q", "expected"), [(1, 7, -1), (0, 7, 1), (2, 9, 1)])
def test_sgn_mult(x, Q, expected):
    assert sgn_mult(x, Q) == expected


def test_sgn_mult_rejects_tiny_field():
    with pytest.raises(ValueError):
        sgn_mult(0, 1)


def test_gauss_norm_base_values():
    assert gauss_norm_base(5, 1) == ONE
    assert gauss_norm_base(3, 1) == Rot(1, 4)
    assert gauss_norm_base(3, 2) * 2 == ONE


def test_gauss_norm_base_rejects_two():
    with pytest.raises(ValueError, match="residue characteristic two"):
        gauss_norm_base(2, 1)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_gauss_norm_squares_to_minus_one_symbol(p, m):
    assert gauss_norm_base(p, m) * 2 == Rot.sign(minus_one_symbol(p**m))


def test_conjugate_convention_negates():
    plain = gauss_norm_base(7, 1)
    with gauss_convention(True):
        assert gauss_norm_base(7, 1) == -plain
    assert gauss_norm_base(7, 1) == plain


@pytest.mark.parametrize(
    ("form", "p", "expected"),
    [(QuadForm(0, 1), 5, ONE), (QuadForm(2, -1), 3, ONE), (QuadForm(1, 1), 5, ONE)],
)
def test_gauss_norm_form(form, p, expected):
    assert gauss_norm_form(form, p, 1) == expected


def test_quad_form_validation():
    with pytest.raises(ValueError):
        QuadForm(0, -1)
    with pytest.raises(ValueError):
        QuadForm(1, 2)


def test_rot_normalizes_and_prints():
    assert Rot(3, 2) == MINUS_ONE
    assert str(Rot(-1, 4)) == "3/4"
    assert Rot.parse("2/4") == MINUS_ONE
    assert Rot.of(Fraction(5, 4)) == Rot(1, 4)
    assert MINUS_ONE.to_sign() == -1 and ONE.to_sign() == 1
    with pytest.raises(ValueError):
        Rot(1, 4).to_sign()


@given(rots, rots, rots)
def test_rot_group_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + (-a) == ONE
    assert a - b == a + (-b)


@given(rots)
def test_rot_parse_roundtrip(r):
    assert Rot.parse(str(r)) == r


@given(st.lists(st.sampled_from([1, -1]), max_size=12))
def test_signs_multiply(signs):
    prod = 1
    for s in signs:
        prod *= s
    assert rot_sum(Rot.sign(s) for s in signs) == Rot.sign(prod)
