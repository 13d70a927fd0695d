from hypothesis import given

from artifact.cyclo_arith import MINUS_ONE, Rot, jacobi
from artifact.galois_comb import ExtShape
from artifact.jump_data import JumpDatum, Layer, random_valid
from artifact.rectifier import (
    ODD_TOP,
    QUAD,
    UNRAM,
    ChainLayer,
    TameChar,
    canonical_chain,
    full_rectifier,
    nu_rectifier,
    rectifier_over,
    t0_mu_closed_form,
    t0_mu_product,
)
from artifact.symp_modules import occupancy

from .conftest import jump_data


def test_canonical_chain_examples():
    chain = canonical_chain(ExtShape(5, 1, 12, 2))
    assert [layer.kind for layer in chain] == [UNRAM, QUAD, QUAD, ODD_TOP]
    assert chain[0].degree == 2 and chain[-1].degree == 3
    assert canonical_chain(ExtShape(2, 1, 5, 1)) == [ChainLayer(ODD_TOP, 1, 5)]
    assert canonical_chain(ExtShape(2, 1, 1, 3)) == [ChainLayer(UNRAM, 0, 3)]


def test_odd_top_layer_is_jacobi_symbol():
    jd = random_valid(ExtShape(2, 1, 3, 1), 0)
    nu = nu_rectifier(ChainLayer(ODD_TOP, 1, 3), jd)
    assert nu.mu_mult == 0 and nu.varpi_val == MINUS_ONE


def test_trivial_shape_has_trivial_rectifier():
    E = ExtShape(5, 1, 1, 1)
    assert full_rectifier(random_valid(E, 2)) == TameChar.trivial(E)


def test_unramified_quadratic_odd_jumps():
    E = ExtShape(3, 1, 1, 2)
    jd = JumpDatum(E, (Layer(1, 1, 1, 1),))
    rect = full_rectifier(jd)
    assert rect.mu_mult == 0 and rect.varpi_val == MINUS_ONE


def test_odd_cubic_over_F2():
    rect = full_rectifier(random_valid(ExtShape(2, 1, 3, 1), 7))
    assert rect.varpi_val == Rot.sign(jacobi(2, 3))


def test_rectifier_over_top_is_trivial():
    jd = random_valid(ExtShape(5, 1, 12, 2), 3)
    assert rectifier_over(jd, (1, 1)) == TameChar.trivial(jd.E)


def test_tame_char_arithmetic():
    E = ExtShape(3, 1, 2, 2)
    a = TameChar(3, Rot(1, 4), E.mu_order)
    b = TameChar(6, MINUS_ONE, E.mu_order)
    assert (a + b) - b == a
    assert a.at_mu(2) == Rot(6, 8)
    assert a.to_json() == {"mu_mult": 3, "mu_order": 8, "varpi_val": "1/4"}


@given(jump_data())
def test_layer_values_are_fourth_roots_with_quadratic_mu(jd):
    occ = occupancy(jd)
    for layer in canonical_chain(jd.E):
        nu = nu_rectifier(layer, jd, occ)
        assert (nu.varpi_val * 4).is_trivial()
        assert (nu.mu_val * 2).is_trivial()


@given(jump_data(f_max=6))
def test_t0_mu_closed_form_matches_product(jd):
    assert t0_mu_closed_form(jd) == t0_mu_product(jd)


@given(jump_data())
def test_full_is_sum_of_layers(jd):
    total = TameChar.trivial(jd.E)
    for layer in canonical_chain(jd.E):
        total += nu_rectifier(layer, jd)
    assert total == full_rectifier(jd)
