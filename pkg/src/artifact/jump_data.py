"""Jump data: the subfield tower E = E_{-1} >= E_0 > ... > E_d > F with jumps and leading roots."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from math import gcd

from sympy import divisors

from .cyclo_arith import mult_order
from .galois_comb import (
    DoubleCoset,
    ExtShape,
    TRIVIAL,
    subfield_membership,
    subfield_representable,
)


@dataclass(frozen=True)
class Layer:
    """One step E_i > E_{i+1}; e_i = e(E/E_i), f_i = f(E/E_i), r_i the jump, zeta_i in mu_E."""

    e_i: int
    f_i: int
    r: int
    zeta_exp: int


@dataclass(frozen=True)
class JumpDatum:
    E: ExtShape
    layers: tuple[Layer, ...]

    @property
    def d(self) -> int:
        return len(self.layers) - 1

    def e_at(self, i: int) -> int:
        """e(E/E_i) with E_{d+1} = F."""
        return self.E.e if i > self.d else self.layers[i].e_i

    def f_at(self, i: int) -> int:
        return self.E.f if i > self.d else self.layers[i].f_i

    def field(self, i: int) -> tuple[int, int]:
        return (self.e_at(i), self.f_at(i))

    def degree_over_F(self, i: int) -> int:
        """|E_i/F|."""
        return (self.E.e // self.e_at(i)) * (self.E.f // self.f_at(i))

    def to_json(self) -> dict:
        E = self.E
        return {
            "shape": {
                "p": E.p,
                "m": E.m,
                "e": E.e,
                "f": E.f,
                "zeta_EF_exp": E.zeta_EF_exp,
                "phi_choice": E.phi_choice,
            },
            "e_chain": [L.e_i for L in self.layers],
            "f_chain": [L.f_i for L in self.layers],
            "jumps": [L.r for L in self.layers],
            "zetas": [L.zeta_exp for L in self.layers],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> JumpDatum:
        E = ExtShape(**data["shape"])
        cols = [data[k] for k in ("e_chain", "f_chain", "jumps", "zetas")]
        if len({len(c) for c in cols}) != 1 or not cols[0]:
            raise ValueError("chain columns must be nonempty and of equal length")
        layers = tuple(Layer(*map(int, row)) for row in zip(*cols))
        return cls(E, layers)


@dataclass(frozen=True)
class DerivedIndexes:
    S: int | None
    T: int | None
    R: int | None
    i_plus: int | None  # r_S, the largest odd jump
    i_sub: int | None  # r_T
    d_plus: int | None  # |E_{T+1}/F|
    f0: int
    f_varpi: int


def _zeta_orbit_len(E: ExtShape, zeta_exp: int, frob_deg: int) -> int:
    order = E.mu_order // gcd(zeta_exp % E.mu_order, E.mu_order)
    return mult_order(E.q**frob_deg, order)


def validate(jd: JumpDatum) -> list[str]:
    """Return the list of violated clauses (empty when the datum is valid)."""
    E = jd.E
    bad: list[str] = []
    if not jd.layers:
        return ["no layers"]
    if jd.layers[0].e_i != 1:
        bad.append("E/E_0 must be unramified (e_0 = 1)")
    for i, L in enumerate(jd.layers):
        e_next, f_next = jd.field(i + 1)
        if L.e_i < 1 or L.f_i < 1 or E.e % L.e_i or E.f % L.f_i:
            bad.append(f"layer {i}: ({L.e_i}, {L.f_i}) does not divide (e, f)")
            continue
        degenerate = (E.e, E.f) == (1, 1) and jd.d == 0
        if e_next % L.e_i or f_next % L.f_i or ((L.e_i, L.f_i) == (e_next, f_next) and not degenerate):
            bad.append(f"layer {i}: chain not strictly decreasing")
        if L.r < 1:
            bad.append(f"layer {i}: jump must be positive")
        if i and L.r <= jd.layers[i - 1].r:
            bad.append(f"layer {i}: jumps not strictly increasing")
        if L.r % L.e_i:
            bad.append(f"layer {i}: e(E/E_i) does not divide r_i")
        elif gcd(L.r, e_next) != L.e_i:
            bad.append(f"layer {i}: gcd(r_i, e(E/E_(i+1))) != e(E/E_i)")
        if not subfield_representable(E, L.e_i, L.f_i):
            bad.append(f"layer {i}: zeta_EF not in the residue field of E_{i}")
        own = E.f // L.f_i
        if L.zeta_exp % ((E.mu_order) // (E.q**own - 1)):
            bad.append(f"layer {i}: zeta_i does not lie in mu_(E_{i})")
        step = f_next // L.f_i
        if step > 1 and _zeta_orbit_len(E, L.zeta_exp, E.f // f_next) < step:
            bad.append(f"layer {i}: zeta_i does not generate the residue step")
    return bad


def _require_valid(jd: JumpDatum) -> None:
    bad = validate(jd)
    if bad:
        raise ValueError("invalid jump datum: " + "; ".join(bad))


def derive_indexes(jd: JumpDatum) -> DerivedIndexes:
    _require_valid(jd)
    E = jd.E
    idx = range(jd.d + 1)
    odd = [i for i in idx if jd.layers[i].r % 2]
    S = max(odd) if odd else None
    T = next((i for i in idx if jd.degree_over_F(i + 1) % 2), None)
    R = None
    if jd.layers[0].f_i % 2 == 1 and E.f % 2 == 0:
        R = next(i for i in idx if jd.f_at(i) % 2 == 1 and jd.f_at(i + 1) % 2 == 0)
    if E.f == 1 and E.e % 2 == 0:
        check_S_T(S, T, [L.r for L in jd.layers], [jd.degree_over_F(i) for i in range(jd.d + 2)])
    return DerivedIndexes(
        S=S,
        T=T,
        R=R,
        i_plus=jd.layers[S].r if S is not None else None,
        i_sub=jd.layers[T].r if T is not None else None,
        d_plus=jd.degree_over_F(T + 1) if T is not None else None,
        f0=jd.layers[0].f_i,
        f_varpi=E.f_varpi,
    )


def check_S_T(S, T, jumps, degrees) -> None:
    """Assert the S/T index relations for a totally ramified chain of even degree.

    ``degrees`` are |E_i/base| for i = 0..d+1.
    """
    if S is None:
        return
    assert T is not None and S <= T, "S <= T violated"
    assert (S == T) == (jumps[T] % 2 == 1), "S = T iff r_T odd violated"
    for i in range(S):
        assert (degrees[i] // degrees[i + 1]) % 2 == 1, "|E_i/E_(i+1)| odd below S violated"
    if S < len(jumps) - 1:
        assert (degrees[S] // degrees[S + 1]) % 2 == 0, "|E_S/E_(S+1)| even violated"
        assert jumps[S + 1] % 2 == 0, "r_(S+1) even violated"


def layer_of_coset(dc: DoubleCoset, jd: JumpDatum) -> int | None:
    """The index i with dc in W_{E_(i+1)} but not W_{E_i}; None inside W_{E_0}."""
    if dc.kind == TRIVIAL or subfield_membership(dc, jd.E, jd.field(0)):
        return None
    for i in range(jd.d + 1):
        if subfield_membership(dc, jd.E, jd.field(i + 1)):
            return i
    raise AssertionError("coset lies outside W_F")


def _random_chain(E: ExtShape, rng: random.Random) -> list[tuple[int, int]]:
    """A strictly decreasing chain of representable fields from E_0 down to (excluding) F."""
    pairs = [
        (a, b)
        for a in divisors(E.e)
        for b in divisors(E.f)
        if subfield_representable(E, a, b) and (a, b) != (E.e, E.f)
    ]
    start = rng.choice([pr for pr in pairs if pr[0] == 1])
    chain = [start]
    while True:
        cur = chain[-1]
        above = [pr for pr in pairs if pr != cur and pr[0] % cur[0] == 0 and pr[1] % cur[1] == 0]
        if not above or rng.random() < 0.35:
            return chain
        chain.append(rng.choice(above))


def random_valid(E: ExtShape, seed: int, max_jump: int = 12) -> JumpDatum:
    """A valid jump datum drawn deterministically from ``seed``."""
    if (E.e, E.f) == (1, 1):
        return JumpDatum(E, (Layer(1, 1, 1 + seed % max_jump, 0),))
    rng = random.Random(f"jump:{E.p}:{E.m}:{E.e}:{E.f}:{E.zeta_EF_exp}:{seed}")
    for _ in range(200):
        chain = _random_chain(E, rng)
        layers = []
        r_prev = 0
        for i, (a, b) in enumerate(chain):
            e_next = chain[i + 1][0] if i + 1 < len(chain) else E.e
            ratio = e_next // a
            s_lo = r_prev // a + 1
            span = range(s_lo, s_lo + max(max_jump, ratio + 1))
            s = rng.choice([s for s in span if gcd(s, ratio) == 1][:6])
            r_prev = a * s
            own = E.f // b
            step = E.mu_order // (E.q**own - 1)
            zeta = step * rng.randrange(E.q**own - 1) if E.q**own > 2 else 0
            layers.append(Layer(a, b, r_prev, zeta))
        jd = JumpDatum(E, tuple(layers))
        if not validate(jd):
            return jd
    # one layer E_0 = E over F with r_0 = 1 and a generator of mu_E is always valid
    return JumpDatum(E, (Layer(1, 1, 1, 1 % E.mu_order),))
