import pytest
from hypothesis import given

from artifact.chi_data import (
    ChiDatum,
    assign_chi,
    cosets_in,
    feasibility_check,
    product_restricted,
    restrict_to_F,
    verify_theorem,
)
from artifact.cyclo_arith import MINUS_ONE, ONE, Rot, gauss_norm_base
from artifact.galois_comb import (
    ASYM,
    SYM_RAM,
    SYM_UNRAM,
    ExtShape,
    enumerate_double_cosets,
    make_coset,
    subfield_membership,
)
from artifact.jump_data import JumpDatum, Layer, random_valid
from artifact.rectifier import UNRAM, ChainLayer, TameChar, half_coset_value, nu_rectifier

from .conftest import jump_data, shapes


def test_unoccupied_asymmetric_datum_is_trivial():
    jd = JumpDatum(ExtShape(5, 1, 4, 1), (Layer(1, 1, 1, 0),))
    chi = assign_chi(make_coset(jd.E, 1, 0), jd)
    assert chi.dc.kind == ASYM
    assert chi.mu_Eg_part == ONE and chi.pair_varpi == ONE and chi.mu_E_part == ONE


def test_half_coset_value_is_fourth_root_with_determinant_class():
    jd = JumpDatum(ExtShape(3, 1, 2, 1), (Layer(1, 1, 1, 1),))
    assert half_coset_value(jd, literal=True) == gauss_norm_base(3, 1) == Rot(1, 4)
    # zeta_S = -1 is a non-square in F_3, which flips the sign of the bare Gauss sum
    assert half_coset_value(jd) == Rot(3, 4)
    chi = assign_chi(make_coset(jd.E, 1, 0), jd)
    assert chi.mu_E_part == MINUS_ONE and chi.varpi_val == Rot(3, 4)


def test_literal_half_value_breaks_the_theorem():
    jd = JumpDatum(ExtShape(3, 1, 2, 1), (Layer(1, 1, 1, 1),))
    assert verify_theorem(jd).ok
    assert not verify_theorem(jd, literal_half=True).ok


def test_unramified_root_fixing_varpi():
    jd = JumpDatum(ExtShape(3, 1, 1, 2), (Layer(1, 1, 2, 1),))
    dc = make_coset(jd.E, 0, 1)
    assert dc.kind == SYM_UNRAM and jd.E.root_exp(0, 1) == 0
    assert assign_chi(dc, jd).varpi_val == MINUS_ONE


def test_trivial_coset_has_no_datum():
    jd = random_valid(ExtShape(3, 1, 2, 1), 0)
    with pytest.raises(ValueError):
        assign_chi(enumerate_double_cosets(jd.E)[0], jd)


def test_empty_product_is_trivial():
    jd = random_valid(ExtShape(3, 1, 4, 2), 0)
    assert product_restricted([], jd) == TameChar.trivial(jd.E)


def test_unramified_quadratic_product():
    jd = JumpDatum(ExtShape(3, 1, 1, 2), (Layer(1, 1, 1, 1),))
    prod = product_restricted(enumerate_double_cosets(jd.E)[1:], jd)
    assert prod.mu_mult == 0 and prod.varpi_val == MINUS_ONE


def test_product_requires_inverse_closed_set():
    jd = random_valid(ExtShape(5, 1, 4, 1), 0)
    with pytest.raises(ValueError):
        product_restricted([make_coset(jd.E, 1, 0)], jd)


@given(jump_data(f_max=6))
def test_outside_max_unramified_equals_unramified_layer(jd):
    E = jd.E
    if E.f == 1:
        return
    outside = [dc for dc in enumerate_double_cosets(E)[1:] if not subfield_membership(dc, E, (E.e, 1))]
    assert product_restricted(outside, jd) == nu_rectifier(ChainLayer(UNRAM, 0, E.f), jd)


def test_theorem_small_examples():
    assert verify_theorem(random_valid(ExtShape(5, 1, 1, 1), 0)).ok
    report = verify_theorem(JumpDatum(ExtShape(3, 1, 1, 2), (Layer(1, 1, 1, 1),)))
    assert report.ok and report.full.varpi_val == MINUS_ONE


@given(jump_data(p_values=(3, 5, 7), e_max=16))
def test_theorem(jd):
    report = verify_theorem(jd)
    assert report.ok, report.to_json()


@given(jump_data(p_values=(3, 5, 7), e_max=16))
def test_theorem_ignores_asymmetric_defaults(jd):
    assert verify_theorem(jd, asym_default=Rot(1, 3)).to_json() == verify_theorem(jd).to_json()


@given(jump_data(e_max=16))
def test_symmetric_data_are_feasible(jd):
    for dc in enumerate_double_cosets(jd.E):
        if dc.kind in (SYM_RAM, SYM_UNRAM):
            result = feasibility_check(dc, jd)
            assert result.ok, result.detail


@given(shapes())
def test_restriction_to_F_is_independent_of_jump_data(E):
    full = cosets_in(E, (E.e, E.f))
    values = {restrict_to_F(product_restricted(full, random_valid(E, s)), E) for s in range(6)}
    assert len(values) == 1


def test_chi_datum_is_frozen():
    chi = ChiDatum(None, ONE, ONE)
    with pytest.raises(AttributeError):
        chi.varpi_val = MINUS_ONE
