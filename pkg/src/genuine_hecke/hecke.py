"""
The Hecke algebra of a depth-zero genuine principal series in the normalised
e_w basis, w in W_chi.

Scalars are Laurent polynomials in t = q^{1/2}.  Multiplication only uses

    e_a e_w = e_{s_a w}                        if w^{-1} a > 0,
    e_a e_w = e_{s_a w} + (t - t^{-1}) e_w      otherwise,
    e_omega e_w = e_{omega w},

for a in Delta_chi and omega in Omega_chi; a general e_x is expanded through the
decomposition x = s_{a_1} ... s_{a_k} omega.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .chi_geometry import ChiGeometry, GeometryError
from .root_datum import ExtendedAffineElement, affine_action, ex_identity, is_positive


# ---------------------------------------------------------------------------
# Laurent polynomials in t = q^{1/2}

class Laurent:
    """Integer Laurent polynomial in t; immutable, no stored zero coefficients."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._c = {e: c for e, c in (coeffs or {}).items() if c}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "Laurent":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "Laurent":
        return cls({e: c})

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __add__(self, other: "Laurent") -> "Laurent":
        out = dict(self._c)
        for e, c in other._c.items():
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    def __neg__(self) -> "Laurent":
        return Laurent({e: -c for e, c in self._c.items()})

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other: "Laurent | int") -> "Laurent":
        if isinstance(other, int):
            return Laurent({e: c * other for e, c in self._c.items()})
        out: dict[int, int] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Laurent.const(other)
        return isinstance(other, Laurent) and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def evaluate(self, t: Fraction) -> Fraction:
        return sum((Fraction(c) * Fraction(t) ** e for e, c in self._c.items()), Fraction(0))

    def __repr__(self):
        if not self._c:
            return "0"
        terms = []
        for e in sorted(self._c):
            c = self._c[e]
            terms.append(f"{c}" if e == 0 else f"{c}*t^{e}")
        return " + ".join(terms)

    def to_list(self) -> list[list[int]]:
        return [[e, self._c[e]] for e in sorted(self._c)]


ZERO = Laurent()
ONE = Laurent.const(1)
# q^{-1/2}(q - 1)
QUAD = Laurent({1: 1, -1: -1})


# ---------------------------------------------------------------------------
# elements

@dataclass(frozen=True)
class HeckeElement:
    terms: tuple[tuple[ExtendedAffineElement, Laurent], ...]

    @classmethod
    def from_dict(cls, d: Mapping[ExtendedAffineElement, Laurent]) -> "HeckeElement":
        items = [(w, c) for w, c in d.items() if not c.is_zero()]
        items.sort(key=lambda p: p[0].key())
        return cls(tuple(items))

    def as_dict(self) -> dict[ExtendedAffineElement, Laurent]:
        return dict(self.terms)

    @property
    def support(self) -> list[ExtendedAffineElement]:
        return [w for w, _ in self.terms]

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        out = self.as_dict()
        for w, c in other.terms:
            out[w] = out.get(w, ZERO) + c
        return HeckeElement.from_dict(out)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + other.scale(Laurent.const(-1))

    def scale(self, c: Laurent) -> "HeckeElement":
        return HeckeElement.from_dict({w: x * c for w, x in self.terms})

    def coefficient(self, w: ExtendedAffineElement) -> Laurent:
        return self.as_dict().get(w, ZERO)

    def to_list(self) -> list:
        return [[_key_str(w), c.to_list()] for w, c in self.terms]


def _key_str(w: ExtendedAffineElement) -> str:
    rows = ";".join(",".join(str(x) for x in r) for r in w.linear.matrix)
    return f"[{rows}|{','.join(str(x) for x in w.translation)}]"


# ---------------------------------------------------------------------------
# the algebra

class HeckeAlgebra:
    def __init__(self, geometry: ChiGeometry):
        self.geometry = geometry
        self.datum = geometry.datum
        self._basis_cache: dict[tuple, HeckeElement] = {}

    # -- constructors --------------------------------------------------------
    def identity(self) -> HeckeElement:
        return HeckeElement(((ex_identity(self.datum), ONE),))

    def basis(self, w: ExtendedAffineElement) -> HeckeElement:
        if not self.geometry.in_wchi(w):
            raise GeometryError(f"{w!r} is not in W_chi")
        return HeckeElement(((w, ONE),))

    def simple(self, idx: int) -> HeckeElement:
        return HeckeElement(((self.geometry.simple_reflections[idx], ONE),))

    # -- multiplication ------------------------------------------------------
    def _left_simple(self, idx: int, x: Mapping[ExtendedAffineElement, Laurent]) -> dict:
        a = self.geometry.delta[idx]
        s = self.geometry.simple_reflections[idx]
        out: dict[ExtendedAffineElement, Laurent] = {}
        for w, c in x.items():
            sw = s * w
            out[sw] = out.get(sw, ZERO) + c
            if not is_positive(self.datum, affine_action(self.datum, w.inverse(), a)):
                out[w] = out.get(w, ZERO) + c * QUAD
        return out

    def basis_product(self, x: ExtendedAffineElement, y: ExtendedAffineElement) -> HeckeElement:
        key = (x, y)
        hit = self._basis_cache.get(key)
        if hit is not None:
            return hit
        word, omega = self.geometry.decompose(x)
        cur = {omega * y: ONE}
        for idx in reversed(word):
            cur = self._left_simple(idx, cur)
        out = HeckeElement.from_dict(cur)
        self._basis_cache[key] = out
        return out

    def mul(self, x: HeckeElement, y: HeckeElement) -> HeckeElement:
        for w in (*x.support, *y.support):
            if not self.geometry.in_wchi(w):
                raise GeometryError(f"support element {w!r} is not in W_chi")
        out: dict[ExtendedAffineElement, Laurent] = {}
        for w1, c1 in x.terms:
            for w2, c2 in y.terms:
                for w, c in self.basis_product(w1, w2).terms:
                    out[w] = out.get(w, ZERO) + c * c1 * c2
        return HeckeElement.from_dict(out)

    def power(self, x: HeckeElement, k: int) -> HeckeElement:
        out = self.identity()
        for _ in range(k):
            out = self.mul(out, x)
        return out

    # -- inverses --------------------------------------------------------------
    def invert_simple(self, idx: int) -> HeckeElement:
        """e_a^{-1} = e_a - q^{-1/2}(q - 1)."""
        if not 0 <= idx < len(self.geometry.delta):
            raise GeometryError(f"no simple wall with index {idx}")
        return self.simple(idx) - self.identity().scale(QUAD)

    def invert_omega(self, omega: ExtendedAffineElement) -> HeckeElement:
        if not self.geometry.in_omega(omega):
            raise GeometryError(f"{omega!r} is not in Omega_chi")
        return self.basis(omega.inverse())

    # -- the subalgebra supported on W_chi,ex ---------------------------------
    def in_subalgebra_ex(self, x: HeckeElement) -> bool:
        return all(self.geometry.in_wchi_ex(w) for w in x.support)


def specialize_q(x: HeckeElement | Laurent, q: Fraction | int):
    """
    Evaluate at q.  Coefficients become Fractions when sqrt(q) is rational and
    (rational part, sqrt(q) part) pairs otherwise.
    """
    q = Fraction(q)
    if q <= 0:
        raise ValueError("q must be positive")
    rt = _rational_sqrt(q)

    def ev(c: Laurent):
        if rt is not None:
            return c.evaluate(rt)
        even = sum((Fraction(v) * q ** (e // 2) for e, v in c.coeffs.items() if e % 2 == 0), Fraction(0))
        odd = sum((Fraction(v) * q ** ((e - 1) // 2) for e, v in c.coeffs.items() if e % 2), Fraction(0))
        return (even, odd)

    if isinstance(x, Laurent):
        return ev(x)
    return {w: ev(c) for w, c in x.terms}


def _rational_sqrt(q: Fraction) -> Fraction | None:
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


# ---------------------------------------------------------------------------
# random elements and relation checks

def random_word_element(geometry: ChiGeometry, rng: random.Random, max_len: int,
                        omegas: list[ExtendedAffineElement] | None = None) -> ExtendedAffineElement:
    """A product of at most max_len generators drawn from S_chi^0 and Omega generators (and inverses)."""
    gens = list(geometry.simple_reflections)
    om = geometry.omega_generators if omegas is None else omegas
    gens += list(om) + [o.inverse() for o in om]
    x = ex_identity(geometry.datum)
    if not gens:
        return x
    for _ in range(rng.randint(0, max_len)):
        x = x * rng.choice(gens)
    return x


def check_quadratic(alg: HeckeAlgebra) -> list:
    bad = []
    for idx in range(len(alg.geometry.delta)):
        ea = alg.simple(idx)
        if alg.mul(ea, ea) != alg.identity() + ea.scale(QUAD):
            bad.append(alg.geometry.delta[idx])
    return bad


def check_braid(alg: HeckeAlgebra) -> list:
    """Alternating products e_a e_b ... = e_b e_a ... of length m_ab for finite m_ab."""
    bad = []
    cox = alg.geometry.coxeter
    k = len(alg.geometry.delta)
    for i in range(k):
        for j in range(i + 1, k):
            m = cox[i][j]
            if m == math.inf:
                continue
            ea, eb = alg.simple(i), alg.simple(j)
            x, y = alg.identity(), alg.identity()
            for t in range(m):
                x = alg.mul(x, ea if t % 2 == 0 else eb)
                y = alg.mul(y, eb if t % 2 == 0 else ea)
            if x != y:
                bad.append((alg.geometry.delta[i], alg.geometry.delta[j]))
    return bad


def check_associativity(alg: HeckeAlgebra, rng: random.Random, trials: int = 300,
                        max_len: int = 5) -> list:
    bad = []
    g = alg.geometry
    for _ in range(trials):
        xs = [random_word_element(g, rng, max_len) for _ in range(3)]
        a, b, c = (alg.basis(x) for x in xs)
        if alg.mul(alg.mul(a, b), c) != alg.mul(a, alg.mul(b, c)):
            bad.append(tuple(xs))
            break
    return bad


def check_invertibility(alg: HeckeAlgebra) -> list:
    bad = []
    one = alg.identity()
    for idx in range(len(alg.geometry.delta)):
        e, inv = alg.simple(idx), alg.invert_simple(idx)
        if alg.mul(e, inv) != one or alg.mul(inv, e) != one:
            bad.append(alg.geometry.delta[idx])
    for om in alg.geometry.omega_generators:
        e, inv = alg.basis(om), alg.invert_omega(om)
        if alg.mul(e, inv) != one or alg.mul(inv, e) != one:
            bad.append(om)
    return bad


def relation_report(alg: HeckeAlgebra, seed: int = 0, trials: int = 300, max_len: int = 5) -> dict:
    rng = random.Random(seed)
    checks = {
        "quadratic": check_quadratic(alg),
        "braid": check_braid(alg),
        "associativity": check_associativity(alg, rng, trials, max_len),
        "invertibility": check_invertibility(alg),
    }
    return {
        "passed": not any(checks.values()),
        "failures": {k: [repr(x) for x in v] for k, v in checks.items() if v},
        "num_walls": len(alg.geometry.delta),
        "num_omega_generators": len(alg.geometry.omega_generators),
    }
