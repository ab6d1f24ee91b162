"""
The covering torus modulo depth, genuine depth-zero characters and the W_ex
action on them.

A depth-zero genuine character chi of T(O_F)-bar is stored as a vector m of
exponents mod q - 1: chi(zeta * s(prod_i e_i(g^{u_i}))) = eps(zeta) * g^{sum m_i u_i}.
Roots of unity (values) are g-exponents mod q - 1 throughout.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Mapping

from .lattice import Vector, dot, mat_inverse, mat_vec, vec_mat
from .quad_cover import QuadraticCoverData
from .root_datum import AffineRoot, ExtendedAffineElement, RootDatum
from .tame_arith import FieldElt, TameField, eps, hilbert_exp, negate


class DepthError(ValueError):
    pass


@dataclass(frozen=True)
class CoverTorusElt:
    """zeta * s(prod_i e_i(varpi^{trans_i} g^{unit_i}))."""
    zeta: int
    unit_part: Vector
    trans_part: Vector

    def coordinates(self) -> list[FieldElt]:
        return [FieldElt(y, u) for u, y in zip(self.unit_part, self.trans_part)]


def torus_identity(rank: int) -> CoverTorusElt:
    return CoverTorusElt(0, (0,) * rank, (0,) * rank)


def canonical(field: TameField, t: CoverTorusElt) -> CoverTorusElt:
    return CoverTorusElt(t.zeta % field.order, tuple(u % field.order for u in t.unit_part),
                         tuple(t.trans_part))


def torus_mul(cover: QuadraticCoverData, field: TameField,
              t1: CoverTorusElt, t2: CoverTorusElt) -> CoverTorusElt:
    """Product with the bilinear cocycle prod_{i,j} (a_i, b_j)_n^{D(e_i, e_j)}."""
    a, b = t1.coordinates(), t2.coordinates()
    corr = 0
    r = len(a)
    for i in range(r):
        for j in range(r):
            d = cover.D[i][j]
            if d:
                corr += d * hilbert_exp(field, a[i], b[j])
    return canonical(field, CoverTorusElt(
        t1.zeta + t2.zeta + corr,
        tuple(u + v for u, v in zip(t1.unit_part, t2.unit_part)),
        tuple(u + v for u, v in zip(t1.trans_part, t2.trans_part))))


def torus_inverse(cover: QuadraticCoverData, field: TameField, t: CoverTorusElt) -> CoverTorusElt:
    inv = CoverTorusElt(0, tuple(-u for u in t.unit_part), tuple(-y for y in t.trans_part))
    prod = torus_mul(cover, field, t, inv)
    return canonical(field, CoverTorusElt(-prod.zeta, inv.unit_part, inv.trans_part))


def commutator(cover, field, t1, t2) -> CoverTorusElt:
    """t1 t2 t1^{-1} t2^{-1}."""
    x = torus_mul(cover, field, t1, t2)
    x = torus_mul(cover, field, x, torus_inverse(cover, field, t1))
    return torus_mul(cover, field, x, torus_inverse(cover, field, t2))


def cocharacter(field: TameField, y: Vector, x: FieldElt) -> CoverTorusElt:
    """s(y(x))."""
    return canonical(field, CoverTorusElt(0, tuple(c * x.unit_exp for c in y),
                                          tuple(c * x.valuation for c in y)))


def h_alpha(cover: QuadraticCoverData, field: TameField, i: int, x: FieldElt) -> CoverTorusElt:
    # convention: h_alpha(x) = s(alpha^vee(x))
    return cocharacter(field, cover.datum.coroots[i], x)


def w_alpha_product(cover: QuadraticCoverData, field: TameField, i: int,
                    x1: FieldElt, x2: FieldElt) -> CoverTorusElt:
    """w_alpha(x1) w_alpha(x2) = (-x1, -x2)_n^{Q(alpha^vee)} h_alpha(-x1/x2)."""
    Qc = cover.Q_coroot(i)
    z = Qc * hilbert_exp(field, negate(field, x1), negate(field, x2))
    h = h_alpha(cover, field, i, negate(field, x1 * x2.inverse()))
    return canonical(field, CoverTorusElt(h.zeta + z, h.unit_part, h.trans_part))


# ---------------------------------------------------------------------------
# genuine characters

@dataclass(frozen=True)
class GenuineCharacter:
    field: TameField
    cover: QuadraticCoverData
    m: Vector
    depth: Mapping[int, int] | None = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        r = self.cover.datum.rank
        if len(self.m) != r:
            raise ValueError(f"character vector must have length {r}")
        object.__setattr__(self, "m", tuple(x % self.field.order for x in self.m))
        if self.depth is not None:
            for k, c in self.depth.items():
                if c < 1:
                    raise DepthError(f"c_alpha must be >= 1 (root {k} has {c})")

    @property
    def datum(self) -> RootDatum:
        return self.cover.datum

    @property
    def is_depth_zero(self) -> bool:
        return self.depth is None or all(c == 1 for c in self.depth.values())

    @property
    def eps_unit(self) -> int:
        """Exponent of x -> eps((varpi, x)_n) per unit of g-exponent, negated."""
        return self.field.eps_power * self.field.mu_step

    def value_on(self, y: Vector) -> int:
        """Exponent of chi(s(y(g)))."""
        return dot(self.m, y) % self.field.order

    def with_m(self, m: Vector) -> "GenuineCharacter":
        return GenuineCharacter(self.field, self.cover, m, self.depth)


def _require_depth_zero(chi: GenuineCharacter):
    if not chi.is_depth_zero:
        raise DepthError("operation only defined for depth-zero characters")


def char_eval(chi: GenuineCharacter, t: CoverTorusElt) -> int:
    if any(t.trans_part):
        raise ValueError("character of T(O_F) evaluated off the integral torus")
    return (eps(chi.field, t.zeta).exp + dot(chi.m, t.unit_part)) % chi.field.order


def chi_affine(chi: GenuineCharacter, a: AffineRoot) -> int:
    """
    Exponent of chi_{alpha+k}(x) = eps((varpi, x)_n^{k Q(alpha^vee)}) chi(h_alpha(x)):
    m(alpha^vee) - k Q(alpha^vee) (q-1)/n  (mod q-1).
    """
    _require_depth_zero(chi)
    i = a.root_index
    Qc = chi.cover.Q_coroot(i)
    return (chi.value_on(chi.datum.coroots[i]) - a.offset * Qc * chi.eps_unit) % chi.field.order


def weyl_act_char(w: ExtendedAffineElement, chi: GenuineCharacter) -> GenuineCharacter:
    """
    (w0 t_{y0}) . chi.  The translation shifts m by -(q-1)/n B_Q(y0, .) (commutator
    with s(y0(varpi^{-1}))); the Weyl part transports m along w0.
    """
    _require_depth_zero(chi)
    cover = chi.cover
    y0 = w.translation
    shift = mat_vec(cover.B_matrix, y0)
    m1 = tuple(mi - chi.eps_unit * s for mi, s in zip(chi.m, shift))
    Minv = mat_inverse(w.linear.matrix)
    m2 = vec_mat(m1, Minv)
    return chi.with_m(m2)


def fixes(w: ExtendedAffineElement, chi: GenuineCharacter) -> bool:
    return weyl_act_char(w, chi).m == chi.m


# ---------------------------------------------------------------------------
# depth ledger

@dataclass(frozen=True)
class DepthDescriptor:
    f_values: dict
    torus_marker: bool = True


def c_alpha(chi: GenuineCharacter, i: int) -> int:
    if chi.depth is None:
        return 1
    c = chi.depth.get(i, 1)
    if c < 1:
        raise DepthError("c_alpha must be >= 1")
    return c


def f_chi(chi: GenuineCharacter, i: int) -> int:
    c = c_alpha(chi, i)
    return c // 2 if chi.datum.positive[i] else (c + 1) // 2


def j_chi_descriptor(chi: GenuineCharacter) -> DepthDescriptor:
    return DepthDescriptor({i: f_chi(chi, i) for i in range(chi.datum.num_roots)})


_BAD = {"B": (2,), "C": (2,), "D": (2,), "F": (2, 3), "G": (2, 3, 5),
        "E": None}


def bad_prime_check(datum: RootDatum, p: int) -> list[str]:
    """One warning per irreducible factor for which p is excluded."""
    out = []
    for letter, m in datum.component_types():
        if letter == "A":
            bad = p <= m + 1
            rule = f"p > {m + 1}"
        elif letter == "E":
            excluded = (2, 3, 5) if m == 6 else (2, 3, 5, 7)
            bad = p in excluded
            rule = "p not in " + ", ".join(map(str, excluded))
        else:
            excluded = _BAD[letter]
            bad = p in excluded
            rule = "p not in " + ", ".join(map(str, excluded))
        if bad:
            out.append(f"p = {p} is a bad prime for the {letter}{m} factor (need {rule})")
    return out


def warn_bad_primes(datum: RootDatum, p: int) -> list[str]:
    msgs = bad_prime_check(datum, p)
    for msg in msgs:
        warnings.warn(msg, stacklevel=2)
    return msgs
