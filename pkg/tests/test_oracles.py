import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.cyclo_arith import CyclicGrp, gauss_convention, gauss_norm_base, jacobi_cyclic, sgn_mult
from artifact.oracles import (
    finite_field,
    gauss_square_holds,
    hasse_davenport_holds,
    is_square_in_cyclic,
    multiplication_sign,
    normalized_gauss_sum,
    permutation_sign,
)

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (2, 4), (5, 2)]


@pytest.mark.parametrize(("p", "m"), FIELDS)
def test_generator_has_full_order(p, m):
    F = finite_field(p, m)
    assert len(set(F.exp)) == F.q - 1


def test_trace_is_additive():
    F = finite_field(3, 2)
    for a in range(F.q):
        for b in range(F.q):
            assert F.trace(F.add(a, b)) == (F.trace(a) + F.trace(b)) % 3


def test_permutation_sign_examples():
    assert permutation_sign([0, 1, 2]) == 1
    assert permutation_sign([1, 0, 2]) == -1
    assert permutation_sign([1, 2, 0]) == 1


@pytest.mark.parametrize(("p", "m"), FIELDS)
def test_sgn_mult_matches_permutation_parity(p, m):
    F = finite_field(p, m)
    for x in range(F.q - 1):
        assert sgn_mult(x, F.q) == multiplication_sign(F, x)


@given(st.integers(1, 60), st.integers(0, 200))
def test_jacobi_cyclic_matches_square_set(order, x):
    assert (jacobi_cyclic(x, CyclicGrp(order)) == 1) == is_square_in_cyclic(x, order)


@pytest.mark.parametrize(("p", "m"), [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2), (3, 3)])
def test_gauss_sum_closed_form(p, m):
    assert normalized_gauss_sum(p, m) == gauss_norm_base(p, m)
    with gauss_convention(True):
        assert normalized_gauss_sum(p, m, conjugate=True) == gauss_norm_base(p, m)
    assert gauss_square_holds(p, m)
    assert hasse_davenport_holds(p, m)
