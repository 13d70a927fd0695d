"""Per-coset chi-data, their feasibility, restricted products, and the factorization check."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .cyclo_arith import MINUS_ONE, ONE, Rot
from .galois_comb import (
    ASYM,
    SYM_RAM,
    SYM_UNRAM,
    TRIVIAL,
    DoubleCoset,
    ExtShape,
    enumerate_double_cosets,
    subfield_membership,
)
from .jump_data import JumpDatum
from .rectifier import (
    TameChar,
    chain_fields,
    half_coset_value,
    rectifier_over,
)
from .symp_modules import (
    occupancy,
    pair_representatives,
    t_complement,
    t_mu,
    t_varpi,
)


@dataclass(frozen=True)
class ChiDatum:
    dc: DoubleCoset
    mu_E_part: Rot  # value on the generator of mu_E
    varpi_val: Rot | None  # symmetric cosets only
    mu_Eg_part: Rot | None = None  # asymmetric: sgn character of mu_E on the component
    pair_varpi: Rot | None = None  # asymmetric: contribution of the pair at varpi_E
    constrained_only: bool = field(default=False)


def is_half_coset(dc: DoubleCoset, E: ExtShape) -> bool:
    return E.e % 2 == 0 and dc.key == (E.e // 2, 0)


def assign_chi(
    dc: DoubleCoset,
    jd: JumpDatum,
    occ=None,
    *,
    literal_half: bool = False,
    asym_default: Rot = ONE,
) -> ChiDatum:
    E = jd.E
    if dc.kind == TRIVIAL:
        raise ValueError("no chi-datum for the trivial coset")
    occ = occupancy(jd) if occ is None else occ
    occupied = occ[dc.key]
    if dc.kind == ASYM:
        return ChiDatum(
            dc,
            mu_E_part=ONE,
            varpi_val=asym_default,
            mu_Eg_part=t_mu(dc, occupied, E).t1,
            pair_varpi=t_varpi(dc, occupied, E).total,
            constrained_only=True,
        )
    if is_half_coset(dc, E):
        return ChiDatum(dc, MINUS_ONE, half_coset_value(jd, literal=literal_half))
    varpi_part = t_varpi(dc, occupied, E).total + t_complement(dc, occupied, E)
    if dc.kind == SYM_UNRAM and occupied and E.root_exp(dc.k, dc.i) == 0:
        varpi_part += MINUS_ONE  # t^0_mu of the varpi-fixed part
    return ChiDatum(dc, t_mu(dc, occupied, E).t1, varpi_part)


def _pair_contribution(chi: ChiDatum, partner: ChiDatum) -> tuple[Rot, Rot]:
    """Restriction to E^x of chi_g o [1, g]: defaults of g and g^-1 cancel."""
    return chi.mu_Eg_part, chi.pair_varpi + chi.varpi_val - partner.varpi_val


def product_restricted(cosets, jd: JumpDatum, occ=None, **assign_kw) -> TameChar:
    E = jd.E
    occ = occupancy(jd) if occ is None else occ
    mu, varpi = ONE, ONE
    for dc in pair_representatives(cosets, E):
        chi = assign_chi(dc, jd, occ, **assign_kw)
        if dc.kind == ASYM:
            d_mu, d_varpi = _pair_contribution(chi, chi)
        else:
            d_mu, d_varpi = chi.mu_E_part, chi.varpi_val
        mu += d_mu
        varpi += d_varpi
    return TameChar.from_rots(E, mu, varpi)


def cosets_in(E: ExtShape, sub: tuple[int, int]) -> list[DoubleCoset]:
    return [dc for dc in enumerate_double_cosets(E) if dc.kind != TRIVIAL and subfield_membership(dc, E, sub)]


@dataclass
class TheoremReport:
    ok: bool
    full: TameChar
    product: TameChar
    subfields: list[dict]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "rectifier": self.full.to_json(),
            "chi_product": self.product.to_json(),
            "subfields": self.subfields,
        }


def verify_theorem(jd: JumpDatum, **assign_kw) -> TheoremReport:
    """Compare each rectifier over K (K in the canonical chain) with the chi-product over W_K."""
    E = jd.E
    occ = occupancy(jd)
    rows = []
    for sub in chain_fields(E):
        rect = rectifier_over(jd, sub, occ)
        prod = product_restricted(cosets_in(E, sub), jd, occ, **assign_kw)
        rows.append(
            {
                "sub": list(sub),
                "rectifier": rect.to_json(),
                "chi_product": prod.to_json(),
                "equal": rect == prod,
            }
        )
    full = rectifier_over(jd, (E.e, E.f), occ)
    prod = product_restricted(cosets_in(E, (E.e, E.f)), jd, occ, **assign_kw)
    return TheoremReport(all(r["equal"] for r in rows), full, prod, rows)


@dataclass
class Feasibility:
    ok: bool
    detail: str


def feasibility_check(dc: DoubleCoset, jd: JumpDatum, occ=None) -> Feasibility:
    """Check that the assigned symmetric value extends to a character of E_g^x."""
    E = jd.E
    if dc.kind not in (SYM_RAM, SYM_UNRAM):
        raise ValueError("feasibility is only defined for symmetric cosets")
    occ = occupancy(jd) if occ is None else occ
    chi = assign_chi(dc, jd, occ)
    if is_half_coset(dc, E):
        # chi(varpi)^2 = chi(-1) = (-1 / mu_E)
        minus_one = chi.mu_E_part * (E.mu_order // 2)
        ok = chi.varpi_val * 2 == minus_one
        return Feasibility(ok, f"varpi^2={chi.varpi_val * 2} vs chi(-1)={minus_one}")
    if not chi.varpi_val.is_sign():
        return Feasibility(False, f"symmetric value {chi.varpi_val} is not a sign")
    x = E.root_exp(dc.k, dc.i)
    N = E.element_order(x)
    if dc.kind == SYM_RAM:
        Qt = E.qf**dc.t_min
        # zeta_0 generates mu_{N(Qt-1)}; chi is fixed on mu_{lcm(Qt-1, N)} of index gcd(N, Qt-1)
        index = gcd(N, Qt - 1)
        need = chi.varpi_val + MINUS_ONE  # chi(zeta_0) = -chi(varpi_E)
        ok = need.is_trivial() or index % 2 == 0
        return Feasibility(ok, f"N={N} index={index} chi(zeta_0)={need}")
    half = E.q ** (E.f // 2)
    if N == 1:
        ok = chi.varpi_val == MINUS_ONE and (chi.mu_E_part * (half + 1)).is_trivial()
        return Feasibility(ok, "root fixes varpi_E")
    if N == 2:
        zeta0 = chi.mu_E_part * ((half + 1) // 2)  # zeta_0^(Q-1) = -1
        ok = (zeta0 + chi.varpi_val) == MINUS_ONE
        return Feasibility(ok, f"chi(zeta_0 varpi_E)={zeta0 + chi.varpi_val}")
    if not occ[dc.key]:
        return Feasibility(chi.varpi_val == MINUS_ONE, "trivial V: unramified quadratic")
    g = gcd(N, half + 1)
    index = N // g
    forced = 1 if (half + 1) % 2 or ((half + 1) // g) % 2 == 0 else -1
    t1 = t_varpi(dc, True, E).t1
    ok = index % 2 == 1 and Rot.sign(forced) == t1
    return Feasibility(ok, f"N={N} index={index} forced={forced}")


def restrict_to_F(chi: TameChar, E: ExtShape) -> tuple[int, Rot]:
    """(mu_F multiplier mod q-1, value at varpi_F) of chi restricted to F^x."""
    # the generator of mu_F is gen_E^((q^f-1)/(q-1))
    mu_F = chi.mu_mult % (E.q - 1)
    # varpi_F = zeta_{E/F}^-1 varpi_E^e
    at_varpi_F = chi.varpi_val * E.e - chi.at_mu(E.zeta_EF_exp)
    return mu_F, at_varpi_F
