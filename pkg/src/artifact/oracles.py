"""Brute-force reference computations over explicitly constructed finite fields.

Nothing here shares code with the closed forms it is used to check: fields are built
from an irreducible polynomial, permutations are decomposed into cycles, and Gauss
sums are summed term by term in Z[zeta_p].
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache
from itertools import product

from sympy import Poly, factorint, symbols

from .cyclo_arith import Rot

_X = symbols("x")


def _poly_mulmod(a: tuple[int, ...], b: tuple[int, ...], mod: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Product of coefficient tuples (low degree first) modulo a monic polynomial."""
    m = len(mod) - 1
    out = [0] * (2 * m - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for deg in range(len(out) - 1, m - 1, -1):
        c = out[deg]
        if c:
            for j in range(m + 1):
                out[deg - m + j] = (out[deg - m + j] - c * mod[j]) % p
    return tuple(out[:m])


def _irreducible(p: int, m: int) -> tuple[int, ...]:
    """The first monic irreducible polynomial of degree m over F_p in lexicographic order."""
    for tail in product(range(p), repeat=m):
        coeffs = tail + (1,)
        if m == 1 or Poly(list(reversed(coeffs)), _X, modulus=p).is_irreducible:
            return coeffs
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """F_(p^m) with elements encoded as integers whose base-p digits are coefficients."""

    def __init__(self, p: int, m: int) -> None:
        self.p, self.m, self.q = p, m, p**m
        self.modulus = _irreducible(p, m)
        self.gen = self._find_generator()
        self.exp = [0] * (self.q - 1)
        self.log = {}
        x = self.one
        for i in range(self.q - 1):
            self.exp[i] = x
            self.log[x] = i
            x = self.mul(x, self.gen)
        assert x == self.one and len(self.log) == self.q - 1

    @property
    def one(self) -> int:
        return 1

    def _digits(self, a: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def _encode(self, digits) -> int:
        return sum(d * self.p**i for i, d in enumerate(digits))

    def add(self, a: int, b: int) -> int:
        return self._encode((x + y) % self.p for x, y in zip(self._digits(a), self._digits(b)))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        return self._encode(_poly_mulmod(self._digits(a), self._digits(b), self.modulus, self.p))

    def power(self, a: int, n: int) -> int:
        out = self.one
        while n:
            if n & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            n >>= 1
        return out

    def _find_generator(self) -> int:
        primes = list(factorint(self.q - 1))
        for g in range(1, self.q):
            if all(self.power(g, (self.q - 1) // r) != self.one for r in primes):
                return g
        raise AssertionError("multiplicative group is not cyclic")

    def trace(self, a: int) -> int:
        total, x = 0, a
        for _ in range(self.m):
            total = self.add(total, x)
            x = self.power(x, self.p)
        digits = self._digits(total)
        assert all(d == 0 for d in digits[1:]), "trace left the prime field"
        return digits[0]


@lru_cache(maxsize=64)
def finite_field(p: int, m: int) -> FiniteField:
    return FiniteField(p, m)


def permutation_sign(perm: list[int]) -> int:
    """Sign of a permutation of range(len(perm)) via its cycle decomposition."""
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def multiplication_sign(field: FiniteField, x_dlog: int) -> int:
    """Sign of y -> x*y on all of F_Q for x = gen^x_dlog."""
    x = field.exp[x_dlog % (field.q - 1)]
    perm = [0] + [0] * (field.q - 1)
    for y in range(1, field.q):
        perm[y] = field.exp[(field.log[x] + field.log[y]) % (field.q - 1)]
    return permutation_sign(perm)


def is_square_in_cyclic(x_exp: int, order: int) -> bool:
    return x_exp % order in {(2 * y) % order for y in range(order)}


# Z[zeta_p] as coefficient vectors modulo x^p - 1; two vectors represent the same
# cyclotomic integer iff their difference is constant.


def cyclo_mul(a: list[int], b: list[int]) -> list[int]:
    p = len(a)
    out = [0] * p
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[(i + j) % p] += x * y
    return out


def cyclo_equal(a: list[int], b: list[int]) -> bool:
    diff = [x - y for x, y in zip(a, b)]
    return len(set(diff)) == 1


def gauss_sum_vector(p: int, m: int, conjugate: bool = False) -> list[int]:
    """sum over x != 0 of eta(x) zeta_p^(+-Tr x), eta the quadratic character of F_q."""
    field = finite_field(p, m)
    out = [0] * p
    for x in range(1, field.q):
        eta = 1 if field.log[x] % 2 == 0 else -1
        t = field.trace(x)
        out[(-t if conjugate else t) % p] += eta
    return out


def gauss_sum_complex(p: int, m: int, conjugate: bool = False) -> complex:
    vec = gauss_sum_vector(p, m, conjugate)
    return sum(c * cmath.exp(2j * math.pi * k / p) for k, c in enumerate(vec))


def pinned_fourth_root(value: complex) -> Rot:
    """The Rot in {0, 1/4, 1/2, 3/4} equal to a unit complex number of that shape."""
    for k in range(4):
        if abs(value - 1j**k) < 1e-6:
            return Rot(k, 4)
    raise AssertionError(f"{value} is not a fourth root of unity")


def normalized_gauss_sum(p: int, m: int, conjugate: bool = False) -> Rot:
    q = p**m
    return pinned_fourth_root(gauss_sum_complex(p, m, conjugate) / math.sqrt(q))


def hasse_davenport_holds(p: int, m: int) -> bool:
    """g(F_q) = -(-g(F_p))^m, exactly in Z[zeta_p]."""
    g_p = gauss_sum_vector(p, 1)
    neg = [-c for c in g_p]
    power = [1] + [0] * (p - 1)
    for _ in range(m):
        power = cyclo_mul(power, neg)
    return cyclo_equal(gauss_sum_vector(p, m), [-c for c in power])


def gauss_square_holds(p: int, m: int) -> bool:
    """g^2 = eta(-1) q, exactly in Z[zeta_p]."""
    q = p**m
    g = gauss_sum_vector(p, m)
    eta_minus_one = 1 if q % 4 == 1 else -1
    return cyclo_equal(cyclo_mul(g, g), [eta_minus_one * q] + [0] * (p - 1))
