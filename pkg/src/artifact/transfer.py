"""Transfer factors at depth-zero evaluation points, and their link to the rectifier.

Elements are recorded modulo U^1_E as zeta * varpi_E^a.  ``generic_u1`` marks the
element varpi_E * u with u a U^1_E-unit chosen so that the element is regular; such a
u changes nothing modulo U^1_E, but it separates roots that fix the residue class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chi_data import cosets_in, product_restricted, restrict_to_F
from .cyclo_arith import MINUS_ONE, ONE, Rot
from .galois_comb import (
    SYM_RAM,
    SYM_UNRAM,
    TRIVIAL,
    DoubleCoset,
    ExtShape,
    enumerate_double_cosets,
    subfield_membership,
    subfield_representable,
    sym_unram_parity,
)
from .jump_data import JumpDatum, random_valid
from .rectifier import TameChar, rectifier_over
from .symp_modules import occupancy

# Delta_I and Delta_III_1 are trivial for the splitting and a-data used throughout.
DELTA_I = ONE
DELTA_III1 = ONE

OUTSIDE_DOMAIN = "evaluation point outside closed-form domain"


@dataclass(frozen=True)
class TameElement:
    """gamma = zeta * varpi_E^varpi_pow (times a generic U^1 unit when ``generic_u1``)."""

    zeta_exp: int = 0
    varpi_pow: int = 0
    generic_u1: bool = False

    @classmethod
    def varpi(cls) -> TameElement:
        return cls(0, 1)

    @classmethod
    def varpi_times_u(cls) -> TameElement:
        return cls(0, 1, generic_u1=True)


def root_value_exp(gamma: TameElement, dc: DoubleCoset, E: ExtShape) -> int:
    """Ambient exponent of g(gamma)/gamma modulo U^1 for g = sigma^k phi^i."""
    unit = E.mu_to_ambient(gamma.zeta_exp * (E.q**dc.i - 1))
    return (unit + gamma.varpi_pow * E.root_exp(dc.k, dc.i)) % E.M


def _nontrivial(E: ExtShape) -> list[DoubleCoset]:
    return [dc for dc in enumerate_double_cosets(E) if dc.kind != TRIVIAL]


def regularity(gamma: TameElement, E: ExtShape) -> bool:
    if gamma.generic_u1:
        # a generic principal unit generates E over F, so no nontrivial g fixes gamma
        return True
    return all(root_value_exp(gamma, dc, E) != 0 for dc in _nontrivial(E))


def _outside(E: ExtShape, sub: tuple[int, int]) -> list[DoubleCoset]:
    return [dc for dc in _nontrivial(E) if not subfield_membership(dc, E, sub)]


def delta_IV_valuation(gamma: TameElement, E: ExtShape, sub: tuple[int, int]) -> int:
    """Sum of v_F(lambda(gamma) - 1) over the roots outside those of H."""
    if not regularity(gamma, E):
        raise ValueError("gamma is not regular")
    for dc in _outside(E, sub):
        if root_value_exp(gamma, dc, E) == 0:
            # lambda(gamma) is a principal unit here; its valuation is not depth zero
            raise ValueError(OUTSIDE_DOMAIN)
    # every lambda(gamma) is a nontrivial root of unity of order prime to p
    return 0


def delta_IV(gamma: TameElement, E: ExtShape, sub: tuple[int, int]) -> Fraction:
    """q^(-v/2) as an exact rational."""
    v = delta_IV_valuation(gamma, E, sub)
    assert v % 2 == 0
    return Fraction(1, E.q ** (v // 2))


def _sym_factor(gamma: TameElement, dc: DoubleCoset, E: ExtShape, sub: tuple[int, int]) -> Rot:
    """chi_g((gamma - g(gamma)) / a_(1,g)) for one symmetric coset outside W_K."""
    if (gamma.zeta_exp, gamma.varpi_pow) != (0, 1):
        raise ValueError(OUTSIDE_DOMAIN)
    if E.f == 1 and not gamma.generic_u1:
        # a_(1,g) = varpi_E - g(varpi_E), so the quotient is 1
        return ONE
    if gamma.generic_u1 and sub == (E.e, 1):
        assert dc.kind == SYM_UNRAM, "only unramified symmetric cosets lie outside W_(K_0)"
        # a_(1,g) = zeta - g(zeta) is a unit; the numerator is varpi_E^2 * unit when g
        # fixes varpi_E and varpi_E * unit otherwise
        return ONE if E.root_exp(dc.k, dc.i) == 0 else MINUS_ONE
    raise ValueError(OUTSIDE_DOMAIN)


def delta_II_III2_at(gamma: TameElement, jd: JumpDatum | None, E: ExtShape, sub: tuple[int, int]) -> Rot:
    """Delta_II * Delta_III_2 at gamma for the endoscopic group attached to K = sub.

    The jump datum is accepted for interface symmetry; the supported evaluations do
    not depend on the chi-data.
    """
    if not regularity(gamma, E):
        raise ValueError("gamma is not regular")
    total = ONE
    for dc in _outside(E, sub):
        if dc.kind in (SYM_RAM, SYM_UNRAM):
            total += _sym_factor(gamma, dc, E, sub)
    assert total.is_sign(), "Delta_II * Delta_III_2 must be a sign"
    if gamma.generic_u1 and sub == (E.e, 1) and E.f % 2 == 0:
        sym_unram_parity(E)
        closed = Rot.sign((-1) ** (E.e + E.f_varpi - 1))
        assert total == closed, "Delta_II,III_2(varpi_E u) disagrees with (-1)^(e+f_varpi-1)"
    return total


def delta_I_II_III(gamma: TameElement, jd: JumpDatum | None, E: ExtShape, sub: tuple[int, int]) -> Rot:
    return DELTA_I + DELTA_III1 + delta_II_III2_at(gamma, jd, E, sub)


@dataclass
class DeltaComparison:
    sub: tuple[int, int]
    delta_III2: TameChar
    rectifier_quotient: TameChar

    @property
    def equal(self) -> bool:
        return self.delta_III2 == self.rectifier_quotient

    def to_json(self) -> dict:
        return {
            "sub": list(self.sub),
            "delta_III2": self.delta_III2.to_json(),
            "rectifier_quotient": self.rectifier_quotient.to_json(),
            "equal": self.equal,
        }


def delta_III2_vs_rectifier(sub: tuple[int, int], jd: JumpDatum) -> DeltaComparison:
    """chi-product over the cosets outside W_K against F-rectifier / K-rectifier."""
    E = jd.E
    occ = occupancy(jd)
    outside = [dc for dc in _nontrivial(E) if not subfield_membership(dc, E, sub)]
    delta = product_restricted(outside, jd, occ)
    quotient = rectifier_over(jd, (E.e, E.f), occ) - rectifier_over(jd, sub, occ)
    return DeltaComparison(sub, delta, quotient)


def unramified_membership(dc: DoubleCoset, E: ExtShape, d: int) -> bool:
    """Whether sigma^k phi^i fixes the unramified subextension of degree d over F."""
    if E.f % d:
        raise ValueError(f"no unramified subextension of degree {d} when f={E.f}")
    inside = dc.kind == TRIVIAL or dc.i % d == 0
    sub = (E.e, E.f // d)
    if subfield_representable(E, *sub):
        assert inside == subfield_membership(dc, E, sub)
    return inside


def restriction_on_F(cosets, jd: JumpDatum, occ=None) -> tuple[int, Rot]:
    """(mu_F multiplier, value at varpi_F) of the chi-product over ``cosets``."""
    return restrict_to_F(product_restricted(cosets, jd, occ), jd.E)


def restriction_delta(d: int, E: ExtShape, jd: JumpDatum | None = None) -> Rot:
    """Delta_III_2 restricted to F^x at varpi_F for K/F unramified of degree d."""
    jd = random_valid(E, 0) if jd is None else jd
    size_E_over_K = E.e * E.f // d
    closed = Rot.sign((-1) ** ((d - 1) * size_E_over_K))
    outside = [dc for dc in _nontrivial(E) if not unramified_membership(dc, E, d)]
    mu_F, at_varpi_F = restriction_on_F(outside, jd)
    assert mu_F == 0, "delta of an unramified extension is trivial on units"
    assert at_varpi_F == closed, "restricted product disagrees with (-1)^((d-1)|E/K|)"
    return closed


def sub_shape(E: ExtShape, sub: tuple[int, int]) -> ExtShape:
    """K/F as its own tame extension, for K = sub with varpi_K = varpi_E^e(E/K)."""
    e_sub, f_sub = sub
    if sub == (E.e, E.f):
        return ExtShape(E.p, E.m, 1, 1)
    if not subfield_representable(E, e_sub, f_sub):
        raise ValueError(f"{sub} is not a representable subfield")
    f_K = E.f // f_sub
    step = E.mu_order // (E.q**f_K - 1)
    assert E.zeta_EF_exp % step == 0
    return ExtShape(E.p, E.m, E.e // e_sub, f_K, E.zeta_EF_exp // step)


def delta_on_F(E: ExtShape, jd: JumpDatum | None = None) -> tuple[int, Rot]:
    """delta_(E/F) on F^x, read off the full chi-product."""
    jd = random_valid(E, 0) if jd is None else jd
    return restriction_on_F(cosets_in(E, (E.e, E.f)), jd)


@dataclass
class TransitionReport:
    sub: tuple[int, int]
    lhs: tuple[int, Rot]
    rhs: tuple[int, Rot]

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def transition_check(jd: JumpDatum, sub: tuple[int, int]) -> TransitionReport:
    """delta_(E/F) = delta_(E/K)|_F * delta_(K/F)^|E/K| on F^x."""
    E = jd.E
    occ = occupancy(jd)
    lhs = restriction_on_F(cosets_in(E, (E.e, E.f)), jd, occ)
    inner = restriction_on_F(cosets_in(E, sub), jd, occ)
    K = sub_shape(E, sub)
    outer_mu, outer_varpi = delta_on_F(K)
    power = sub[0] * sub[1]
    rhs = (
        (inner[0] + power * outer_mu) % (E.q - 1),
        inner[1] + outer_varpi * power,
    )
    return TransitionReport(sub, lhs, rhs)
