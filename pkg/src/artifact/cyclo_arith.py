"""Exact roots of unity, cyclic-group signs, Jacobi symbols and quadratic Gauss sums.

Every character value in the package is a :class:`Rot`, an element of Q/Z standing
for exp(2*pi*i*num/den).  Signs live in {0, 1/2} and fourth roots of unity in
{0, 1/4, 1/2, 3/4}.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from sympy import isprime, jacobi_symbol, n_order


@dataclass(frozen=True, order=True)
class Rot:
    """A root of unity written additively as num/den in Q/Z."""

    num: int = 0
    den: int = 1

    def __post_init__(self) -> None:
        if self.den < 1:
            raise ValueError("denominator must be positive")
        frac = Fraction(self.num % self.den, self.den)
        object.__setattr__(self, "num", frac.numerator)
        object.__setattr__(self, "den", frac.denominator)

    @classmethod
    def of(cls, value: Fraction | int) -> Rot:
        value = Fraction(value)
        return cls(value.numerator, value.denominator)

    @classmethod
    def sign(cls, s: int) -> Rot:
        if s not in (1, -1):
            raise ValueError(f"not a sign: {s}")
        return cls(0, 1) if s == 1 else cls(1, 2)

    @classmethod
    def parse(cls, text: str) -> Rot:
        num, _, den = text.partition("/")
        return cls(int(num), int(den or 1))

    @property
    def frac(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __add__(self, other: Rot) -> Rot:
        return Rot.of(self.frac + other.frac)

    def __sub__(self, other: Rot) -> Rot:
        return Rot.of(self.frac - other.frac)

    def __neg__(self) -> Rot:
        return Rot(-self.num, self.den)

    def __mul__(self, n: int) -> Rot:
        return Rot(self.num * n, self.den)

    __rmul__ = __mul__

    def is_trivial(self) -> bool:
        return self.num == 0

    def is_sign(self) -> bool:
        return self.den <= 2

    def to_sign(self) -> int:
        if not self.is_sign():
            raise ValueError(f"{self} is not a sign")
        return 1 if self.num == 0 else -1

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"


ONE = Rot()
MINUS_ONE = Rot(1, 2)


def rot_sum(values) -> Rot:
    total = Fraction(0)
    for v in values:
        total += v.frac
    return Rot.of(total)


@dataclass(frozen=True)
class CyclicGrp:
    """Z/order, elements written as exponents of a fixed abstract generator."""

    order: int

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError("cyclic group order must be positive")

    def reduce(self, x: int) -> int:
        return x % self.order

    def element_order(self, x: int) -> int:
        return self.order // gcd(x % self.order, self.order)


@dataclass(frozen=True)
class QuadForm:
    """A nondegenerate quadratic form recorded by dimension and determinant class."""

    dim: int
    det_class: int = 1

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")
        if self.det_class not in (1, -1):
            raise ValueError("det_class must be +1 or -1")
        if self.dim == 0 and self.det_class != 1:
            raise ValueError("the zero form has trivial determinant class")


@lru_cache(maxsize=None)
def mult_order(q: int, d: int) -> int:
    """Multiplicative order of q modulo d (1 when d == 1)."""
    if d < 1:
        raise ValueError("modulus must be positive")
    if gcd(q, d) != 1:
        raise ValueError(f"not a unit: {q} mod {d}")
    if d == 1:
        return 1
    return int(n_order(q % d, d))


def jacobi_cyclic(x_exp: int, H: CyclicGrp) -> int:
    """+1 iff the element with exponent x_exp is a square in the cyclic group H."""
    return 1 if H.order % 2 == 1 or x_exp % 2 == 0 else -1


def sgn_mult(x_dlog: int, Q_g: int) -> int:
    """Sign of the permutation y -> x*y of the field with Q_g elements, x = gen**x_dlog."""
    if Q_g < 2:
        raise ValueError("field size must be at least 2")
    n = Q_g - 1
    return -1 if (n - gcd(n, x_dlog % n)) % 2 else 1


def legendre_in_field(a: int, p: int, degree: int) -> int:
    """Quadratic character of the prime-field element a inside F_{p^degree}."""
    if p == 2:
        return 1
    if a % p == 0:
        raise ValueError("zero has no quadratic character")
    if degree % 2 == 0:
        return 1
    return int(jacobi_symbol(a % p, p))


def minus_one_symbol(Q: int) -> int:
    """(-1 / F_Q): +1 iff -1 is a square in the field with Q elements."""
    return 1 if Q % 4 != 3 else -1


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a/n) for odd positive n."""
    if n < 1 or n % 2 == 0:
        raise ValueError("Jacobi symbol needs an odd positive modulus")
    return int(jacobi_symbol(a % n, n))


_CONJUGATE = contextvars.ContextVar("gauss_conjugate", default=False)


@contextlib.contextmanager
def gauss_convention(conjugate: bool):
    """Temporarily replace every normalized Gauss sum by its complex conjugate."""
    token = _CONJUGATE.set(conjugate)
    try:
        yield
    finally:
        _CONJUGATE.reset(token)


def gauss_conjugated() -> bool:
    return _CONJUGATE.get()


def gauss_norm_base(p: int, m: int) -> Rot:
    """Normalized quadratic Gauss sum of F_{p^m} for psi(x) = exp(2 pi i Tr(x)/p)."""
    if p == 2:
        raise ValueError("residue characteristic two unsupported for Gauss sums")
    if m < 1 or not isprime(p):
        raise ValueError(f"bad field size p={p}, m={m}")
    p, m = int(p), int(m)
    base = Fraction(0) if p % 4 == 1 else Fraction(1, 4)
    # g(psi o Tr) = -(-g(psi))^m, so n_q = (-1)^(m+1) n_p^m.
    value = Fraction(m + 1, 2) + m * base
    if gauss_conjugated():
        value = -value
    return Rot.of(value)


def gauss_norm_form(Q: QuadForm, p: int, m: int) -> Rot:
    """Normalized Gauss sum of a quadratic form: det class times n(psi)^dim."""
    base = gauss_norm_base(p, m)
    return Rot.sign(Q.det_class) + base * Q.dim
