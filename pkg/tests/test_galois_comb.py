import pytest
from hypothesis import given

from artifact.galois_comb import (
    ASYM,
    SYM_RAM,
    SYM_UNRAM,
    TRIVIAL,
    ExtShape,
    classify,
    count_formula,
    enumerate_double_cosets,
    inverse_coset,
    make_coset,
    subfield_membership,
    sym_unram_parity,
)

from .conftest import shapes


def keys(E):
    return {dc.key for dc in enumerate_double_cosets(E)}


def test_enumeration_examples():
    assert keys(ExtShape(2, 1, 7, 1)) == {(0, 0), (1, 0), (3, 0)}
    assert keys(ExtShape(3, 1, 1, 2)) == {(0, 0), (0, 1)}
    assert keys(ExtShape(5, 1, 4, 1)) == {(0, 0), (1, 0), (2, 0), (3, 0)}


def test_trivial_coset_comes_first():
    first = enumerate_double_cosets(ExtShape(3, 1, 4, 3))[0]
    assert first.kind == TRIVIAL and first.key == (0, 0)


def test_classify_examples():
    E = ExtShape(5, 1, 4, 1)
    assert classify(E, 2, 0) == (SYM_RAM, 1)
    assert classify(E, 1, 0)[0] == ASYM
    assert classify(ExtShape(3, 1, 1, 2), 0, 1)[0] == SYM_UNRAM


@pytest.mark.parametrize(("e", "q", "expected"), [(7, 2, 3), (1, 9, 1), (4, 5, 4)])
def test_count_formula(e, q, expected):
    assert count_formula(e, q) == expected


def test_count_formula_rejects_non_coprime():
    with pytest.raises(ValueError):
        count_formula(4, 2)


def test_shape_rejects_wild_ramification():
    with pytest.raises(ValueError, match="gcd"):
        ExtShape(2, 1, 6, 1)


@pytest.mark.parametrize(
    ("E", "parity"),
    [(ExtShape(3, 1, 1, 2), 1), (ExtShape(2, 1, 3, 1), 0), (ExtShape(3, 1, 2, 2), 0)],
)
def test_sym_unram_parity_examples(E, parity):
    assert sym_unram_parity(E) == parity


def test_membership_in_max_unramified():
    E = ExtShape(5, 1, 4, 3)
    for dc in enumerate_double_cosets(E):
        assert subfield_membership(dc, E, (E.e, 1)) == (dc.i == 0)


def test_membership_in_ramified_two_tower():
    E = ExtShape(3, 1, 8, 1)
    for j in range(4):
        sub = (E.e >> j, 1)
        for k in range(E.e):
            assert subfield_membership(make_coset(E, k, 0), E, sub) == (k % 2**j == 0)


def test_membership_rejects_bad_divisors():
    E = ExtShape(3, 1, 4, 1)
    with pytest.raises(ValueError):
        subfield_membership(enumerate_double_cosets(E)[0], E, (3, 1))


@given(shapes())
def test_trivial_coset_lies_in_every_subfield(E):
    trivial = enumerate_double_cosets(E)[0]
    assert subfield_membership(trivial, E, (E.e, E.f))
    assert subfield_membership(trivial, E, (E.e, 1))


@given(shapes())
def test_inverse_preserves_kind_and_pairs_asymmetric(E):
    cosets = enumerate_double_cosets(E)
    for dc in cosets:
        inv = inverse_coset(E, dc)
        assert inv.kind == dc.kind
        assert inverse_coset(E, inv).key == dc.key
        assert (inv.key != dc.key) == (dc.kind == ASYM)


@given(shapes())
def test_total_degree_is_n(E):
    assert sum(dc.deg_over_E for dc in enumerate_double_cosets(E)) == E.e * E.f


@given(shapes(f_max=1, e_max=40))
def test_count_formula_matches_enumeration(E):
    assert count_formula(E.e, E.q) == len(enumerate_double_cosets(E))


@given(shapes(f_max=6))
def test_sym_unram_parity_law(E):
    assert sym_unram_parity(E) == E.e * (E.f - 1) % 2
