"""Rectifier characters assembled layer by layer along F < K_0 < K_1 < ... < K_l < E.

K_0/F is unramified of degree f, each K_j/K_(j-1) is ramified quadratic and E/K_l is
totally ramified of odd degree.  With compatible primes, K_j is cut out by
(e(E/K_j), f(E/K_j)) = (e/2^j, 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .cyclo_arith import (
    MINUS_ONE,
    ONE,
    Rot,
    gauss_norm_base,
    jacobi,
    legendre_in_field,
    minus_one_symbol,
)
from .galois_comb import (
    SYM_UNRAM,
    TRIVIAL,
    DoubleCoset,
    ExtShape,
    enumerate_double_cosets,
    subfield_membership,
)
from .jump_data import JumpDatum, check_S_T, derive_indexes
from .symp_modules import occupancy, product_t1_mu, product_t_varpi, t_mu


@dataclass(frozen=True)
class TameChar:
    """Character of E^x trivial on U^1_E: chi(gen of mu_E) = mu_mult/(q^f-1), chi(varpi_E) = varpi_val."""

    mu_mult: int
    varpi_val: Rot
    mu_order: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu_mult", self.mu_mult % self.mu_order)

    @classmethod
    def trivial(cls, E: ExtShape) -> TameChar:
        return cls(0, ONE, E.mu_order)

    @classmethod
    def from_rots(cls, E: ExtShape, mu_val: Rot, varpi_val: Rot) -> TameChar:
        mult = mu_val.frac * E.mu_order
        if mult.denominator != 1:
            raise ValueError(f"{mu_val} is not a character value on mu_E")
        return cls(int(mult), varpi_val, E.mu_order)

    @property
    def mu_val(self) -> Rot:
        return Rot(self.mu_mult, self.mu_order)

    def at_mu(self, exp: int) -> Rot:
        """Value at the element of mu_E with the given exponent."""
        return self.mu_val * exp

    def __add__(self, other: TameChar) -> TameChar:
        assert self.mu_order == other.mu_order
        return TameChar(self.mu_mult + other.mu_mult, self.varpi_val + other.varpi_val, self.mu_order)

    def __sub__(self, other: TameChar) -> TameChar:
        assert self.mu_order == other.mu_order
        return TameChar(self.mu_mult - other.mu_mult, self.varpi_val - other.varpi_val, self.mu_order)

    def to_json(self) -> dict:
        return {"mu_mult": self.mu_mult, "mu_order": self.mu_order, "varpi_val": str(self.varpi_val)}


UNRAM, QUAD, ODD_TOP = "unram", "quad", "odd_top"


@dataclass(frozen=True)
class ChainLayer:
    """kind, index j (quad layers K_j/K_(j-1)), and the degree of the layer."""

    kind: str
    j: int
    degree: int

    def lower(self, E: ExtShape) -> tuple[int, int]:
        """(e(E/K), f(E/K)) of the base field of the layer."""
        if self.kind == UNRAM:
            return (E.e, E.f)
        if self.kind == QUAD:
            return (E.e >> (self.j - 1), 1)
        return (E.e >> two_adic(E.e), 1)

    def upper(self, E: ExtShape) -> tuple[int, int]:
        if self.kind == UNRAM:
            return (E.e, 1)
        if self.kind == QUAD:
            return (E.e >> self.j, 1)
        return (1, 1)


def two_adic(n: int) -> int:
    return (n & -n).bit_length() - 1


def canonical_chain(E: ExtShape) -> list[ChainLayer]:
    chain = []
    if E.f > 1:
        chain.append(ChainLayer(UNRAM, 0, E.f))
    v2 = two_adic(E.e)
    chain.extend(ChainLayer(QUAD, j, 2) for j in range(1, v2 + 1))
    if E.e >> v2 > 1:
        chain.append(ChainLayer(ODD_TOP, v2 + 1, E.e >> v2))
    return chain


def chain_fields(E: ExtShape) -> list[tuple[int, int]]:
    """(e(E/K), f(E/K)) for F, K_0, ..., K_l, E (duplicates removed, bottom first)."""
    fields = [(E.e, E.f)]
    for layer in canonical_chain(E):
        up = layer.upper(E)
        if up != fields[-1]:
            fields.append(up)
    if fields[-1] != (1, 1):
        fields.append((1, 1))
    return fields


def layer_cosets(layer: ChainLayer, E: ExtShape) -> list[DoubleCoset]:
    """Nontrivial cosets in W_lower but not in W_upper."""
    lo, up = layer.lower(E), layer.upper(E)
    return [
        dc
        for dc in enumerate_double_cosets(E)
        if dc.kind != TRIVIAL and subfield_membership(dc, E, lo) and not subfield_membership(dc, E, up)
    ]


@dataclass(frozen=True)
class RelativeData:
    """Jump data of E over a totally ramified base K (K contains K_0), e_K = e(E/K)."""

    e_K: int
    jumps: tuple[int, ...]
    zetas: tuple[int, ...]
    e_chain: tuple[int, ...]  # e(E / E_i K) for the kept layers, plus e_K at the end
    S: int | None
    T: int | None

    @property
    def i_plus(self) -> int:
        return self.jumps[self.S]

    @property
    def i_sub(self) -> int:
        return self.jumps[self.T]

    @property
    def zeta_S(self) -> int:
        return self.zetas[self.S]

    @property
    def d_plus(self) -> int:
        return self.e_K // self.e_chain[self.T + 1]


def relative_data(jd: JumpDatum, e_K: int) -> RelativeData:
    """Restrict the tower to a base K with e(E/K) = e_K: E_i K has e(E/E_iK) = gcd(e_i, e_K)."""
    jumps, zetas, chain = [], [], []
    for i, L in enumerate(jd.layers):
        lo, hi = gcd(L.e_i, e_K), gcd(jd.e_at(i + 1), e_K)
        if lo != hi:
            jumps.append(L.r)
            zetas.append(L.zeta_exp)
            chain.append(lo)
    chain.append(e_K)
    idx = range(len(jumps))
    odd = [i for i in idx if jumps[i] % 2]
    S = max(odd) if odd else None
    T = next((i for i in idx if (e_K // chain[i + 1]) % 2), None)
    check_S_T(S, T, jumps, [e_K // c for c in chain])
    return RelativeData(e_K, tuple(jumps), tuple(zetas), tuple(chain), S, T)


def _zeta_symbol(E: ExtShape, zeta_exp: int) -> int:
    """(zeta / k_E) for zeta in mu_E."""
    return -1 if E.mu_order % 2 == 0 and zeta_exp % 2 else 1


def quad_sign(jd: JumpDatum, layer: ChainLayer) -> Rot:
    """Sign of the Gauss/Kloosterman quotient for K_j/K_(j-1), computed over K_(j-1)."""
    E = jd.E
    rel = relative_data(jd, layer.lower(E)[0])
    qq = E.qf
    m_deg = E.m * E.f
    if (rel.e_K // 2) % 2 == 1:
        d_plus = rel.d_plus
        assert (rel.e_K // 2) % d_plus == 0
        sign = (
            minus_one_symbol(qq) ** ((rel.i_plus - 1) // 2)
            * legendre_in_field(d_plus, E.p, m_deg)
            * _zeta_symbol(E, rel.zeta_S)
        )
        return Rot.sign(sign) + gauss_norm_base(E.p, m_deg) * ((rel.e_K // 2) // d_plus)
    return Rot.sign(minus_one_symbol(qq) ** (rel.e_K * rel.i_sub // 4))


def half_coset_value(jd: JumpDatum, literal: bool = False) -> Rot:
    """t(W) for the coset of sigma^(e/2): n(Q, psi) on that line over K_(l-1).

    The determinant class of the line form is (-1/q')^((r_S-1)/2) (zeta_S/q') (o/q') with
    q' = q^f, o the odd part of e and S taken relative to K_(l-1).  ``literal`` drops the
    determinant class and returns the bare normalized Gauss sum.
    """
    E = jd.E
    m_deg = E.m * E.f
    n = gauss_norm_base(E.p, m_deg)
    if literal:
        return n
    v2 = two_adic(E.e)
    rel = relative_data(jd, E.e >> (v2 - 1))
    odd = E.e >> v2
    det = (
        minus_one_symbol(E.qf) ** ((rel.i_plus - 1) // 2)
        * _zeta_symbol(E, rel.zeta_S)
        * legendre_in_field(odd, E.p, m_deg)
    )
    return Rot.sign(det) + n


def t0_mu_closed_form(jd: JumpDatum) -> int:
    """t^0_mu of V over K_0/F from jump parities."""
    E = jd.E
    if E.f % 2:
        return 1
    ix = derive_indexes(jd)
    if ix.f0 % 2 == 0:
        return 1
    r_R = jd.layers[ix.R].r
    if E.e % 2 == 1:
        return (-1) ** (r_R + 1)
    return 1 if ix.S <= ix.R else (-1) ** (r_R + 1)


def t0_mu_product(jd: JumpDatum, occ=None) -> int:
    occ = occupancy(jd) if occ is None else occ
    out = 1
    for dc in enumerate_double_cosets(jd.E):
        if dc.kind != TRIVIAL:
            out *= t_mu(dc, occ[dc.key], jd.E).t0
    return out


def varpi_fixing_coset(E: ExtShape) -> DoubleCoset | None:
    """The symmetric unramified coset whose root fixes varpi_E, if any."""
    found = [dc for dc in enumerate_double_cosets(E) if dc.kind == SYM_UNRAM and E.root_exp(dc.k, dc.i) == 0]
    assert len(found) <= 1
    assert bool(found) == (E.f_varpi % 2 == 0), "varpi-fixing root exists iff f_varpi even"
    return found[0] if found else None


def t0_mu_varpi_part(jd: JumpDatum, occ) -> int:
    dc = varpi_fixing_coset(jd.E)
    return -1 if dc is not None and occ[dc.key] else 1


def nu_rectifier(layer: ChainLayer, jd: JumpDatum, occ=None) -> TameChar:
    E = jd.E
    occ = occupancy(jd) if occ is None else occ
    if layer.kind == ODD_TOP:
        return TameChar(0, Rot.sign(jacobi(E.qf, layer.degree)), E.mu_order)
    cosets = layer_cosets(layer, E)
    tv = product_t_varpi(cosets, occ, E)
    if layer.kind == QUAD:
        last = layer.j == two_adic(E.e)
        mu_val = MINUS_ONE if last else ONE
        return TameChar.from_rots(E, mu_val, tv + quad_sign(jd, layer))
    closed = t0_mu_closed_form(jd)
    assert closed == t0_mu_product(jd, occ), "closed-form t0_mu disagrees with the t-factor product"
    sign = (-1) ** (E.e * (E.f - 1)) * closed * t0_mu_varpi_part(jd, occ)
    return TameChar.from_rots(E, product_t1_mu(cosets, occ, E), tv + Rot.sign(sign))


def rectifier_over(jd: JumpDatum, base: tuple[int, int], occ=None) -> TameChar:
    """Rectifier of E/K for K in the canonical chain: the layers above K."""
    E = jd.E
    occ = occupancy(jd) if occ is None else occ
    total = TameChar.trivial(E)
    for layer in canonical_chain(E):
        lo = layer.lower(E)
        if lo[0] <= base[0] and lo[1] <= base[1]:
            total += nu_rectifier(layer, jd, occ)
    return total


def full_rectifier(jd: JumpDatum, occ=None) -> TameChar:
    return rectifier_over(jd, (jd.E.e, jd.E.f), occ)
