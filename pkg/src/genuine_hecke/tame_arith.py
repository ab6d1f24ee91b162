"""
Residue-field arithmetic in generator-exponent form and the tame Hilbert symbol.

F^x is modelled modulo 1 + p_F: an element is (valuation, exponent of a fixed
generator g of the residue field's unit group).  Roots of unity are stored by
their g-exponent mod q - 1, so mu_n is the set of multiples of (q - 1)/n.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from sympy import isprime


class InvalidFieldError(ValueError):
    pass


@dataclass(frozen=True)
class TameField:
    p: int
    f: int
    n: int
    # epsilon: mu_n -> C^x is zeta -> zeta^eps_power composed with the standard embedding
    eps_power: int = 1

    def __post_init__(self):
        if not isprime(self.p):
            raise InvalidFieldError(f"p = {self.p} is not prime")
        if self.f < 1:
            raise InvalidFieldError("f must be positive")
        if self.n < 1:
            raise InvalidFieldError("n must be positive")
        if self.n % self.p == 0:
            raise InvalidFieldError(f"p | n (p = {self.p}, n = {self.n}): wild covers are not supported")
        if (self.q - 1) % self.n:
            raise InvalidFieldError(f"n does not divide q - 1 (n = {self.n}, q - 1 = {self.q - 1})")
        if gcd(self.eps_power, self.n) != 1:
            raise InvalidFieldError("the embedding power must be prime to n")

    @property
    def q(self) -> int:
        return self.p ** self.f

    @property
    def order(self) -> int:
        return self.q - 1

    @property
    def mu_step(self) -> int:
        """(q - 1)/n, the exponent of a generator of mu_n."""
        return (self.q - 1) // self.n

    @property
    def minus_one(self) -> int:
        return (self.q - 1) // 2 if self.p != 2 else 0

    def in_mu_n(self, exp: int) -> bool:
        return (exp * self.n) % self.order == 0


@dataclass(frozen=True)
class FieldElt:
    """varpi^valuation * (unit whose reduction is g^unit_exp)."""
    valuation: int
    unit_exp: int

    @property
    def is_unit(self) -> bool:
        return self.valuation == 0

    def __mul__(self, other: "FieldElt") -> "FieldElt":
        return FieldElt(self.valuation + other.valuation, self.unit_exp + other.unit_exp)

    def inverse(self) -> "FieldElt":
        return FieldElt(-self.valuation, -self.unit_exp)


def unit(k: int) -> FieldElt:
    return FieldElt(0, k)


UNIFORMIZER = FieldElt(1, 0)


@dataclass(frozen=True)
class RootOfUnity:
    exp: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "exp", self.exp % self.modulus)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        return RootOfUnity(self.exp + other.exp, self.modulus)

    def __pow__(self, k: int) -> "RootOfUnity":
        return RootOfUnity(self.exp * k, self.modulus)

    def inverse(self) -> "RootOfUnity":
        return RootOfUnity(-self.exp, self.modulus)

    @property
    def is_one(self) -> bool:
        return self.exp == 0


def negate(field: TameField, x: FieldElt) -> FieldElt:
    return FieldElt(x.valuation, x.unit_exp + field.minus_one)


def hilbert_exp(field: TameField, a: FieldElt, b: FieldElt) -> int:
    """
    g-exponent of the tame symbol
        (a, b)_n = [(-1)^{v(a)v(b)} abar^{v(b)} bbar^{-v(a)}]^{(q-1)/n}.
    """
    va, vb = a.valuation, b.valuation
    e = va * vb * field.minus_one + a.unit_exp * vb - b.unit_exp * va
    return (e * field.mu_step) % field.order


def hilbert(field: TameField, a: FieldElt, b: FieldElt) -> RootOfUnity:
    return RootOfUnity(hilbert_exp(field, a, b), field.order)


def eps(field: TameField, zeta: RootOfUnity | int) -> RootOfUnity:
    """The fixed embedding mu_n -> C^x, in exponent form."""
    e = zeta.exp if isinstance(zeta, RootOfUnity) else zeta
    if not field.in_mu_n(e):
        raise ValueError(f"exponent {e} is not in mu_{field.n}")
    return RootOfUnity(e * field.eps_power, field.order)


def unit_char_eval(field: TameField, m: int, x: FieldElt) -> RootOfUnity:
    if not x.is_unit:
        raise ValueError("characters of the residue field only take units")
    return RootOfUnity(m * x.unit_exp, field.order)
