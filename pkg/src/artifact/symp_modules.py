"""Root-space components of the standard module, occupancy by V, and their t-factors.

A component U_[g] is the residue field of E_g viewed over F_p; mu_E acts on it through
(zeta^(q^i - 1))^-1 and varpi_E through (zeta_e^k zeta_{phi^i})^-1.  All signs are
computed from orders of these elements, never from field elements.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclo_arith import (
    MINUS_ONE,
    ONE,
    CyclicGrp,
    Rot,
    jacobi_cyclic,
    mult_order,
    sgn_mult,
)
from .galois_comb import (
    ASYM,
    SYM_RAM,
    SYM_UNRAM,
    TRIVIAL,
    DoubleCoset,
    ExtShape,
    enumerate_double_cosets,
    inverse_coset,
)
from .jump_data import JumpDatum, layer_of_coset, validate


@dataclass(frozen=True)
class UComponent:
    dc: DoubleCoset
    size_log: int  # #U_[g] = p^size_log
    act_mu_exp: int  # ambient exponent of the image of the generator of mu_E
    act_varpi_exp: int  # ambient exponent of the image of varpi_E


@dataclass(frozen=True)
class TFactorPair:
    """t0 is a sign; t1 is a quadratic character value (on the generator of mu_E or at varpi_E)."""

    t0: int
    t1: Rot

    def __post_init__(self) -> None:
        assert self.t0 in (1, -1)
        assert (self.t1 * 2).is_trivial(), "t1 must be quadratic"

    @property
    def total(self) -> Rot:
        """t0 * t1 evaluated at the generator."""
        return Rot.sign(self.t0) + self.t1


TRIVIAL_T = TFactorPair(1, ONE)


def _field_size(E: ExtShape, dc: DoubleCoset) -> int:
    return E.qf**dc.deg_over_E


def u_component(dc: DoubleCoset, E: ExtShape) -> UComponent:
    if dc.kind == TRIVIAL:
        raise ValueError("the trivial coset has no root-space component")
    mu_gen = E.e  # generator of mu_E inside mu_M
    act_mu = (-mu_gen * (E.q**dc.i - 1)) % E.M
    act_varpi = (-E.root_exp(dc.k, dc.i)) % E.M
    return UComponent(dc, E.m * E.f * dc.deg_over_E, act_mu, act_varpi)


def sign_of_action(E: ExtShape, dc: DoubleCoset, exp: int) -> int:
    """Sign of multiplication by gen_M**exp on the component of dc (a field of Q_g elements)."""
    Q = _field_size(E, dc)
    order = E.element_order(exp)
    assert (Q - 1) % order == 0, "acting element does not lie in the component field"
    return sgn_mult((Q - 1) // order, Q)


def occupancy(jd: JumpDatum) -> dict[tuple[int, int], bool]:
    """Map (k, i) -> whether V has a nonzero component there."""
    bad = validate(jd)
    if bad:
        raise ValueError("invalid jump datum: " + "; ".join(bad))
    occ = {}
    for dc in enumerate_double_cosets(jd.E):
        layer = layer_of_coset(dc, jd)
        occ[dc.key] = layer is not None and jd.layers[layer].r % 2 == 0
    E = jd.E
    if E.e % 2 == 0:
        assert not occ[(E.e // 2, 0)], "the coset of sigma^(e/2) must be unoccupied"
    return occ


def _quadratic_mu_char(E: ExtShape) -> Rot:
    """The unique quadratic character of mu_E at its generator (trivial for odd |mu_E|)."""
    return MINUS_ONE if E.mu_order % 2 == 0 else ONE


def t_mu(dc: DoubleCoset, occupied: bool, E: ExtShape) -> TFactorPair:
    if dc.kind == TRIVIAL:
        raise ValueError("no t-factor for the trivial coset")
    if not occupied or dc.kind == SYM_RAM:
        return TRIVIAL_T
    if dc.kind == SYM_UNRAM:
        return TFactorPair(-1, _quadratic_mu_char(E))
    comp = u_component(dc, E)
    return TFactorPair(1, Rot.sign(sign_of_action(E, dc, comp.act_mu_exp)))


def _norm_kernel_jacobi(p: int, order: int) -> tuple[int, int]:
    """(s, Jacobi) for an element of the given order in mu_{p^s+1}, 2s = [F_p(x) : F_p]."""
    deg = mult_order(p, order)
    assert deg % 2 == 0, "element is not in a norm-one torus"
    s = deg // 2
    H = CyclicGrp(p**s + 1)
    assert H.order % order == 0
    return s, jacobi_cyclic(H.order // order, H)


def _odd_multiplicity(E: ExtShape, dc: DoubleCoset, s: int) -> None:
    r, rem = divmod(E.m * E.f * dc.deg_over_E, 2 * s)
    assert rem == 0 and r % 2 == 1, "multiplicity over F_p[x] must be odd"


def t_varpi(dc: DoubleCoset, occupied: bool, E: ExtShape) -> TFactorPair:
    if dc.kind == TRIVIAL:
        raise ValueError("no t-factor for the trivial coset")
    if not occupied:
        return TRIVIAL_T
    comp = u_component(dc, E)
    if dc.kind == ASYM:
        return TFactorPair(1, Rot.sign(sign_of_action(E, dc, comp.act_varpi_exp)))
    x = E.root_exp(dc.k, dc.i)
    order = E.element_order(x)
    if dc.kind == SYM_RAM:
        s, jac = _norm_kernel_jacobi(E.p, order)
        _odd_multiplicity(E, dc, s)
        return TFactorPair(-1, Rot.sign(jac))
    # symmetric unramified
    if order == 1:
        return TRIVIAL_T
    if order == 2:
        half = E.q ** (E.f // 2)
        return TFactorPair(1, Rot.sign((-1) ** ((half - 1) // 2)))
    s, jac = _norm_kernel_jacobi(E.p, order)
    _odd_multiplicity(E, dc, s)
    return TFactorPair(-1, Rot.sign(jac))


def t_complement(dc: DoubleCoset, occupied: bool, E: ExtShape, half_value: Rot | None = None) -> Rot:
    """Gauss-sum invariant t(W_[g]) of the complement of V in U_[g].

    ``half_value`` is the value for the coset of sigma^(e/2), which depends on the
    quadratic form on that line and is supplied by the caller.
    """
    if dc.kind == TRIVIAL:
        raise ValueError("no complement for the trivial coset")
    if occupied or dc.kind == ASYM:
        return ONE
    if E.e % 2 == 0 and dc.key == (E.e // 2, 0):
        assert E.p != 2
        if half_value is None:
            raise ValueError("the sigma^(e/2) complement needs its Gauss-sum value")
        return half_value
    return MINUS_ONE


def product_t_varpi(cosets, occ, E: ExtShape) -> Rot:
    """t_varpi of the sum of components, asymmetric pairs counted once."""
    total = ONE
    for dc in pair_representatives(cosets, E):
        total += t_varpi(dc, occ[dc.key], E).total
    return total


def product_t1_mu(cosets, occ, E: ExtShape) -> Rot:
    total = ONE
    for dc in pair_representatives(cosets, E):
        total += t_mu(dc, occ[dc.key], E).t1
    return total


def pair_representatives(cosets, E: ExtShape) -> list[DoubleCoset]:
    """Symmetric cosets plus one member of each asymmetric {[g], [g^-1]} pair."""
    keys = {dc.key for dc in cosets}
    out = []
    for dc in sorted(cosets):
        if dc.kind == TRIVIAL:
            continue
        if dc.kind == ASYM:
            inv = inverse_coset(E, dc)
            if inv.key not in keys:
                raise ValueError(f"coset set not closed under inversion at {dc.key}")
            if inv < dc:
                continue
        out.append(dc)
    return out
