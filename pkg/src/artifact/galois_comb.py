"""The metacyclic Galois group <sigma> x| <phi> of a tame extension and its double cosets.

Roots of unity are exponents of a fixed abstract generator of mu_M with
M = e*(q^f - 1).  That group contains mu_E (multiples of e), zeta_e = gen**(q^f-1),
zeta_phi and every eigenvalue zeta_e^k * zeta_{phi^i} of the prime element.
Frobenius acts on exponents by multiplication by q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd

from sympy import divisors, isprime, totient

from .cyclo_arith import mult_order

TRIVIAL = "trivial"
SYM_RAM = "sym_ram"
SYM_UNRAM = "sym_unram"
ASYM = "asym"
KINDS = (TRIVIAL, SYM_RAM, SYM_UNRAM, ASYM)


@dataclass(frozen=True)
class ExtShape:
    """Tame extension E/F with ramification e, residue degree f over F with q = p^m elements.

    ``zeta_EF_exp`` is the exponent of zeta_{E/F} (where varpi_E^e = zeta_{E/F} varpi_F)
    in mu_E = Z/(q^f - 1).  ``phi_choice`` selects among the admissible e-th roots
    zeta_phi of zeta_{E/F}^(q-1); choice 0 is the one with the smallest exponent.
    """

    p: int
    m: int
    e: int
    f: int
    zeta_EF_exp: int = 0
    phi_choice: int = 0
    M: int = field(init=False)
    zeta_phi_exp: int = field(init=False)

    def __post_init__(self) -> None:
        if not isprime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.m < 1 or self.e < 1 or self.f < 1:
            raise ValueError("m, e, f must be positive")
        if self.e % self.p == 0:
            raise ValueError(f"gcd(e, p) != 1: e={self.e}, p={self.p}")
        object.__setattr__(self, "zeta_EF_exp", self.zeta_EF_exp % self.mu_order)
        object.__setattr__(self, "M", self.e * self.mu_order)
        lifts = self.frobenius_lifts()
        if not lifts:
            raise ValueError("no Frobenius lift with phi^f fixing varpi_E exists for this zeta_{E/F}")
        if not 0 <= self.phi_choice < len(lifts):
            raise ValueError(f"phi_choice must lie in [0, {len(lifts)})")
        object.__setattr__(self, "zeta_phi_exp", lifts[self.phi_choice])

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def qf(self) -> int:
        return self.q**self.f

    @property
    def n(self) -> int:
        return self.e * self.f

    @property
    def mu_order(self) -> int:
        return self.qf - 1

    @property
    def zeta_e_exp(self) -> int:
        return self.mu_order

    def mu_to_ambient(self, exp: int) -> int:
        """Exponent in mu_M of the element of mu_E with exponent ``exp``."""
        return (exp * self.e) % self.M

    def frobenius_lifts(self) -> list[int]:
        """All exponents x with x*e = (q-1)*zeta_{E/F} and zeta_{phi^f} = 1, ascending."""
        base = ((self.q - 1) * self.zeta_EF_exp) % self.mu_order if self.mu_order > 1 else 0
        span = (self.qf - 1) // (self.q - 1)
        out = []
        for j in range(self.e):
            x = base + j * self.mu_order
            if (x * span) % self.M == 0:
                out.append(x)
        return out

    def zeta_phi_power_exp(self, i: int) -> int:
        """Exponent of zeta_{phi^i} = zeta_phi^(1 + q + ... + q^(i-1))."""
        return (self.zeta_phi_exp * ((self.q**i - 1) // (self.q - 1))) % self.M

    def root_exp(self, k: int, i: int) -> int:
        """Exponent of zeta_e^k * zeta_{phi^i}, the image of varpi_E under sigma^k phi^i."""
        return (k * self.zeta_e_exp + self.zeta_phi_power_exp(i)) % self.M

    def element_order(self, exp: int) -> int:
        return self.M // gcd(exp % self.M, self.M)

    def zeta_EF_order(self) -> int:
        return self.mu_order // gcd(self.zeta_EF_exp, self.mu_order)

    @cached_property
    def f_varpi(self) -> int:
        """Residue degree of E over F[varpi_E]."""
        return self.f // mult_order(self.q, self.zeta_EF_order())

    def inverse_k(self, k: int, i: int) -> tuple[int, int]:
        """(k', i') with (sigma^k phi^i)^-1 in the double coset of sigma^k' phi^i'."""
        if self.e == 1:
            return 0, (-i) % self.f
        qbar = pow(self.q, -1, self.e)
        return (-k * pow(qbar, i, self.e)) % self.e, (-i) % self.f


@dataclass(frozen=True, order=True)
class DoubleCoset:
    """[sigma^k phi^i] keyed by the minimal k of its orbit under multiplication by q^f."""

    i: int
    k: int
    kind: str = field(compare=False)
    t_min: int = field(compare=False, default=0)
    deg_over_E: int = field(compare=False, default=1)

    @property
    def key(self) -> tuple[int, int]:
        return (self.k, self.i)


@lru_cache(maxsize=None)
def _orbits(e: int, qf: int) -> tuple[tuple[int, ...], ...]:
    seen = [False] * e
    orbits = []
    for k in range(e):
        if seen[k]:
            continue
        orbit = []
        x = k
        while not seen[x]:
            seen[x] = True
            orbit.append(x)
            x = (x * qf) % e
        orbits.append(tuple(orbit))
    return tuple(orbits)


def orbit_rep(E: ExtShape, k: int) -> int:
    k %= E.e
    for orbit in _orbits(E.e, E.qf % E.e if E.e > 1 else 0):
        if k in orbit:
            return min(orbit)
    raise AssertionError("unreachable")


def _ram_t(E: ExtShape, k: int) -> int | None:
    for t in range(1, E.e * E.f + 1):
        if ((pow(E.qf, t, E.e) + 1) * k) % E.e == 0:
            return t
    return None


def _unram_t(E: ExtShape, k: int) -> int | None:
    if E.f % 2:
        return None
    half = E.q ** (E.f // 2)
    for t in range(E.e * E.f + 1):
        if ((pow(half, 2 * t + 1, E.e) + 1) * k) % E.e == 0:
            return t
    return None


def classify(E: ExtShape, k: int, i: int) -> tuple[str, int]:
    """(kind, t_min) for the coset of sigma^k phi^i."""
    k %= E.e
    i %= E.f
    if k == 0 and i == 0:
        return TRIVIAL, 0
    if i == 0:
        t = _ram_t(E, k)
        if t is not None:
            return SYM_RAM, t
    if E.f % 2 == 0 and i == E.f // 2:
        t = _unram_t(E, k)
        if t is not None:
            return SYM_UNRAM, t
    return ASYM, 0


def _degree(E: ExtShape, k: int, i: int) -> int:
    """|E_g/E|: the orbit length of k, equal to the degree of the varpi-eigenvalue."""
    orbit_len = mult_order(E.qf, E.e // gcd(k, E.e)) if E.e > 1 else 1
    eig = E.element_order(E.root_exp(k, i))
    assert mult_order(E.qf, eig) == orbit_len, "eigenvalue degree disagrees with orbit length"
    return orbit_len


def make_coset(E: ExtShape, k: int, i: int) -> DoubleCoset:
    k = orbit_rep(E, k)
    i %= E.f
    kind, t = classify(E, k, i)
    return DoubleCoset(i=i, k=k, kind=kind, t_min=t, deg_over_E=_degree(E, k, i))


@lru_cache(maxsize=4096)
def enumerate_double_cosets(E: ExtShape) -> tuple[DoubleCoset, ...]:
    """One coset per (q^f-orbit of Z/e, i in Z/f), sorted by (i, k)."""
    reps = [min(o) for o in _orbits(E.e, E.qf % E.e if E.e > 1 else 0)]
    out = [make_coset(E, k, i) for i in range(E.f) for k in reps]
    return tuple(sorted(out))


def inverse_coset(E: ExtShape, dc: DoubleCoset) -> DoubleCoset:
    k, i = E.inverse_k(dc.k, dc.i)
    return make_coset(E, k, i)


def count_formula(e: int, q_eff: int) -> int:
    """Sum over d | e of phi(d) / ord(q_eff, d)."""
    if gcd(e, q_eff) != 1:
        raise ValueError(f"not a unit: {q_eff} mod {e}")
    return sum(int(totient(d)) // mult_order(q_eff, d) for d in divisors(e))


def sym_unram_parity(E: ExtShape) -> int:
    count = sum(dc.kind == SYM_UNRAM for dc in enumerate_double_cosets(E))
    parity = count % 2
    assert parity == (E.e * (E.f - 1)) % 2, "sym_unram parity law violated"
    return parity


def subfield_representable(E: ExtShape, e_sub: int, f_sub: int) -> bool:
    """Whether K with varpi_K = varpi_E^e_sub and f(E/K) = f_sub is a field of that shape."""
    if E.e % e_sub or E.f % f_sub:
        return False
    if (e_sub, f_sub) == (E.e, E.f):
        return True
    return pow(E.q, E.f // f_sub, E.zeta_EF_order()) == 1 % E.zeta_EF_order()


def subfield_membership(dc: DoubleCoset, E: ExtShape, sub: tuple[int, int]) -> bool:
    """Whether sigma^k phi^i lies in W_K for K with (e(E/K), f(E/K)) = sub."""
    e_sub, f_sub = sub
    if E.e % e_sub or E.f % f_sub:
        raise ValueError(f"invalid divisor pair {sub} for e={E.e}, f={E.f}")
    if (e_sub, f_sub) == (E.e, E.f):
        return True
    if dc.i % (E.f // f_sub):
        return False
    return (E.root_exp(dc.k, dc.i) * e_sub) % E.M == 0
