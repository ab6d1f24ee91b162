"""
chi-twisted affine combinatorics.

For a depth-zero genuine character chi the affine roots with trivial chi_a form
{alpha + c_alpha + k n_alpha : alpha in Phi_diamond}; everything else (the chamber
A_{chi,0}, its walls Delta_chi, the stabiliser W_chi = W_chi^0 x| Omega_chi, the
shift vector v and the alcove mover) is derived from that residue presentation
and from a finite scan of W x (Y / Y_{Q,n}).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from .cover_torus import GenuineCharacter, _require_depth_zero, fixes
from .lattice import (Vector, coset_representatives, normalize, reduce_mod_lattice,
                      solve_rational)
from .root_datum import (AffineRoot, ExtendedAffineElement, RootDatum, WeylElement,
                         affine_action, affine_reflection, alcove_point, ex_identity,
                         from_weyl, is_positive, n_set, subgroup_closure, translation,
                         weyl_group)

COXETER_CAP = 12


class GeometryError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# residue systems

@dataclass(frozen=True)
class TwistedAffineSystem:
    """{alpha + c + k n : alpha in residues, (c, n) = residues[alpha], k in Z}."""
    datum: RootDatum
    residue_items: tuple[tuple[int, int, int], ...]  # (root, c mod n, n)

    @classmethod
    def from_map(cls, datum: RootDatum, residues: Mapping[int, tuple[int, int]]):
        items = tuple(sorted((i, c % n, n) for i, (c, n) in residues.items()))
        return cls(datum, items)

    @cached_property
    def residues(self) -> dict[int, tuple[int, int]]:
        return {i: (c, n) for i, c, n in self.residue_items}

    @property
    def diamond_roots(self) -> frozenset[int]:
        return frozenset(self.residues)

    @property
    def is_empty(self) -> bool:
        return not self.residue_items

    def contains(self, a: AffineRoot) -> bool:
        r = self.residues.get(a.root_index)
        return r is not None and (a.offset - r[0]) % r[1] == 0

    def diamond(self) -> "TwistedAffineSystem":
        """Same roots and moduli with every residue 0."""
        return TwistedAffineSystem.from_map(self.datum, {i: (0, n) for i, (_, n) in self.residues.items()})

    def translated(self, v: Vector) -> "TwistedAffineSystem":
        """t_v applied to the system: alpha + k -> alpha + k - <alpha, v>."""
        out = {}
        for i, (c, n) in self.residues.items():
            d = Fraction(self.datum.pair(i, v))
            if d.denominator != 1:
                raise GeometryError(f"<alpha_{i}, v> = {d} is not an integer")
            out[i] = (c - int(d), n)
        return TwistedAffineSystem.from_map(self.datum, out)

    def lowest_positive(self, i: int) -> AffineRoot:
        """The smallest positive affine root of the system with gradient alpha_i."""
        c, n = self.residues[i]
        k_min = 0 if self.datum.positive[i] else 1
        k = k_min + ((c - k_min) % n)
        return AffineRoot(i, k)


def twisted_system(chi: GenuineCharacter) -> TwistedAffineSystem:
    """
    Residue presentation of Phi_{chi,af}: alpha + k is in it iff
    m(alpha^vee) == k Q(alpha^vee) (q-1)/n  (mod q-1).
    """
    _require_depth_zero(chi)
    d = chi.datum
    order = chi.field.order
    res = {}
    for i in range(d.num_roots):
        m_i = chi.value_on(d.coroots[i])
        step = (chi.cover.Q_coroot(i) * chi.eps_unit) % order
        g = math.gcd(step, order)
        if m_i % g:
            continue
        n_i = order // g
        if n_i == 1:
            res[i] = (0, 1)
            continue
        k = (m_i // g) * pow(step // g, -1, n_i) % n_i
        res[i] = (k, n_i)
    return TwistedAffineSystem.from_map(d, res)


def diamond_criterion(chi: GenuineCharacter, i: int) -> bool:
    """alpha in Phi_diamond iff n_alpha m(alpha^vee) == 0 mod q - 1."""
    return (chi.cover.n_alpha(i) * chi.value_on(chi.datum.coroots[i])) % chi.field.order == 0


# ---------------------------------------------------------------------------
# simple systems

def _positive_part(system: TwistedAffineSystem) -> list[int]:
    d = system.datum
    return [i for i in sorted(system.residues) if d.positive[i]]


def diamond_simple_roots(system: TwistedAffineSystem) -> list[int]:
    """Roots of Phi_diamond whose coroots are simple in (Phi_diamond)^vee w.r.t. Phi^+."""
    d = system.datum
    pos = set(_positive_part(system))
    out = []
    for i in sorted(pos):
        w = WeylElement(d.reflection_matrix(i))
        if all(w.root_image(d, j) in pos for j in pos if j != i):
            out.append(i)
    return out


def shift_vector(system: TwistedAffineSystem, max_radius: int = 6) -> Vector:
    """
    A v in V with <alpha, v> == c_alpha (mod n_alpha) for all alpha in Phi_diamond.

    v is taken in the span of the simple diamond coroots, solving
    <alpha_i, v> = c_i for lifts c_i of the residues.  Lifts are searched from the
    nonpositive window (-n_i, 0] outward, and within one search radius by total
    shift and then lexicographically on the denominator-cleared coordinates.
    """
    d = system.datum
    if system.is_empty:
        return (0,) * d.rank
    simple = diamond_simple_roots(system)
    M = tuple(tuple(d.pair(i, d.coroots[j]) for j in simple) for i in simple)
    base = []
    for i in simple:
        c, n = system.residues[i]
        base.append(c - n if c > 0 else 0)
    moduli = [system.residues[i][1] for i in simple]

    def candidate(t):
        rhs = tuple(b - n * s for b, n, s in zip(base, moduli, t))
        x = solve_rational(M, rhs)
        v = [Fraction(0)] * d.rank
        for c, j in zip(x, simple):
            for k in range(d.rank):
                v[k] += c * d.coroots[j][k]
        return tuple(v)

    def valid(v):
        for i, (c, n) in system.residues.items():
            p = Fraction(d.pair(i, v))
            if p.denominator != 1 or (p.numerator - c) % n:
                return False
        return True

    def cleared(v):
        den = math.lcm(*(Fraction(x).denominator for x in v))
        return tuple(int(x * den) for x in v)

    for radius in range(max_radius + 1):
        shell = [t for t in itertools.product(range(-radius, radius + 1), repeat=len(simple))
                 if max((abs(s) for s in t), default=0) == radius]
        found = []
        for t in shell:
            v = candidate(t)
            if valid(v):
                found.append((sum(abs(s) for s in t), cleared(v), v))
        if found:
            found.sort(key=lambda f: (f[0], f[1]))
            return normalize(found[0][2])
    raise GeometryError("no consistent shift vector found; residues are inconsistent")


def simple_walls(system: TwistedAffineSystem) -> list[AffineRoot]:
    """Walls of the chamber containing A_0: a > 0 in the system with N(s_a) meeting it only in a."""
    d = system.datum
    out = []
    for i in sorted(system.residues):
        a = system.lowest_positive(i)
        crossed = n_set(d, affine_reflection(d, a))
        if [b for b in crossed if system.contains(b)] == [a]:
            out.append(a)
    return sorted(out)


def simple_walls_by_facets(system: TwistedAffineSystem) -> list[AffineRoot]:
    """
    Independent wall test: the chamber is cut out by the lowest positive root in each
    gradient; a is a wall iff {a = 0, b > 0 for the others} is feasible.  Feasibility
    is found by LP and certified by an exact rational point.
    """
    import numpy as np
    from scipy.optimize import linprog

    d = system.datum
    cands = [system.lowest_positive(i) for i in sorted(system.residues)]
    out = []
    r = d.rank
    for a in cands:
        others = [b for b in cands if b != a]
        # variables (x_1..x_r, t); maximise t
        c = np.zeros(r + 1)
        c[-1] = -1.0
        A_ub = [list(-np.array(d.functionals[b.root_index], dtype=float)) + [1.0] for b in others]
        b_ub = [float(b.offset) for b in others]
        A_eq = [list(np.array(d.functionals[a.root_index], dtype=float)) + [0.0]]
        b_eq = [-float(a.offset)]
        res = linprog(c, A_ub=A_ub or None, b_ub=b_ub or None, A_eq=A_eq, b_eq=b_eq,
                      bounds=[(None, None)] * r + [(None, 1.0)], method="highs")
        if res.status != 0 or -res.fun <= 1e-9:
            continue
        for den in (10 ** 3, 10 ** 6, 10 ** 9):
            x = [Fraction(float(v)).limit_denominator(den) for v in res.x[:r]]
            # push back onto H_a exactly along alpha^vee
            lam = Fraction(a.value(d, x), 2)
            x = [xi - lam * ci for xi, ci in zip(x, d.coroots[a.root_index])]
            if a.value(d, x) == 0 and all(b.value(d, x) > 0 for b in others):
                out.append(a)
                break
    return sorted(out)


def coxeter_matrix(datum: RootDatum, delta: list[AffineRoot], cap: int = COXETER_CAP) -> list[list]:
    """Orders of s_a s_b; math.inf once the cap is exceeded."""
    refl = [affine_reflection(datum, a) for a in delta]
    out = []
    for sa in refl:
        row = []
        for sb in refl:
            x = sa * sb
            y = x
            order = math.inf
            for k in range(1, cap + 1):
                if y.is_identity:
                    order = k
                    break
                y = y * x
            row.append(order)
        out.append(row)
    return out


def chamber_walk(datum: RootDatum, walls: list[AffineRoot], point: Vector,
                 max_steps: int = 10_000) -> tuple[ExtendedAffineElement, Vector]:
    """Reflect `point` across violated walls until it lies in the chamber; returns (w, w(point))."""
    w = ex_identity(datum)
    p = point
    for _ in range(max_steps):
        bad = next((a for a in walls if a.value(datum, p) < 0), None)
        if bad is None:
            return w, p
        s = affine_reflection(datum, bad)
        p = s.act(p)
        w = s * w
    raise GeometryError("chamber walk did not terminate")


# ---------------------------------------------------------------------------
# the full bundle

class ChiGeometry:
    """All chi-twisted data for one depth-zero genuine character."""

    def __init__(self, chi: GenuineCharacter):
        _require_depth_zero(chi)
        self.chi = chi
        self.datum = chi.datum
        self.cover = chi.cover
        self._decomp_cache: dict = {}

    # -- residue systems ---------------------------------------------------
    @cached_property
    def system(self) -> TwistedAffineSystem:
        return twisted_system(self.chi)

    @cached_property
    def diamond_system(self) -> TwistedAffineSystem:
        return self.system.diamond()

    @cached_property
    def shift_v(self) -> Vector:
        return shift_vector(self.system)

    @cached_property
    def delta(self) -> list[AffineRoot]:
        return simple_walls(self.system)

    @cached_property
    def diamond_delta(self) -> list[AffineRoot]:
        return simple_walls(self.diamond_system)

    @cached_property
    def simple_reflections(self) -> list[ExtendedAffineElement]:
        return [affine_reflection(self.datum, a) for a in self.delta]

    @cached_property
    def coxeter(self) -> list[list]:
        return coxeter_matrix(self.datum, self.delta)

    @cached_property
    def mover(self) -> ExtendedAffineElement:
        """w0 in W_diamond_af with w0 t_v (A_chi0) = A_diamond_0."""
        x0 = alcove_point(self.datum)
        p = translation(self.datum, self.shift_v).act(x0)
        w, _ = chamber_walk(self.datum, self.diamond_delta, p)
        return w

    @cached_property
    def conjugator(self) -> ExtendedAffineElement:
        """w0 t_v (rational translation in general)."""
        return self.mover * translation(self.datum, self.shift_v)

    # -- the stabiliser W_chi ----------------------------------------------
    @cached_property
    def YQn(self):
        return self.cover.YQn_basis

    def reduce(self, y: Vector) -> Vector:
        return reduce_mod_lattice(y, self.YQn)

    @cached_property
    def cosets(self) -> list[tuple[WeylElement, Vector]]:
        """All (w, ybar) in W x Y/Y_{Q,n} with (w t_ybar) . chi = chi."""
        out = []
        for w in weyl_group(self.datum):
            for y in coset_representatives(self.YQn):
                if fixes(ExtendedAffineElement(w, y), self.chi):
                    out.append((w, y))
        return sorted(out, key=lambda p: (p[0].matrix, p[1]))

    @cached_property
    def _coset_set(self) -> frozenset:
        return frozenset(self.cosets)

    def in_wchi(self, w: ExtendedAffineElement) -> bool:
        return w.is_integral and (w.linear, self.reduce(w.translation)) in self._coset_set

    def coset_elements(self) -> list[ExtendedAffineElement]:
        return [ExtendedAffineElement(w, y) for w, y in self.cosets]

    # -- decomposition W_chi = W_chi^0 x| Omega_chi ------------------------
    def l_chi(self, w: ExtendedAffineElement) -> int:
        return sum(1 for a in n_set(self.datum, w) if self.system.contains(a))

    def decompose(self, w: ExtendedAffineElement) -> tuple[tuple[int, ...], ExtendedAffineElement]:
        """
        w = s_{a_1} ... s_{a_k} omega with the word l_chi-reduced (indices into delta)
        and omega(Delta_chi) = Delta_chi.
        """
        hit = self._decomp_cache.get(w)
        if hit is not None:
            return hit
        if not self.in_wchi(w):
            raise GeometryError(f"{w!r} does not fix chi")
        x = w
        word = []
        for _ in range(100_000):
            xinv = x.inverse()
            for idx, a in enumerate(self.delta):
                if not is_positive(self.datum, affine_action(self.datum, xinv, a)):
                    x = self.simple_reflections[idx] * x
                    word.append(idx)
                    break
            else:
                break
        else:
            raise GeometryError("decomposition did not terminate")
        out = (tuple(word), x)
        self._decomp_cache[w] = out
        return out

    def in_omega(self, w: ExtendedAffineElement) -> bool:
        if not self.in_wchi(w):
            return False
        img = {affine_action(self.datum, w, a) for a in self.delta}
        return img == set(self.delta)

    def from_word(self, word: Iterable[int], omega: ExtendedAffineElement | None = None):
        x = ex_identity(self.datum)
        for idx in word:
            x = x * self.simple_reflections[idx]
        return x * omega if omega is not None else x

    @cached_property
    def omega_generators(self) -> list[ExtendedAffineElement]:
        """Omega-parts of the coset representatives and of the Y_{Q,n} basis translations."""
        r = self.datum.rank
        gens = self.coset_elements()
        gens += [translation(self.datum, tuple(self.YQn[i][j] for i in range(r))) for j in range(r)]
        seen = set()
        out = []
        for g in gens:
            _, om = self.decompose(g)
            if om.is_identity or om in seen:
                continue
            seen.add(om)
            out.append(om)
        return sorted(out, key=lambda e: e.key())

    # -- W_chi,ex ------------------------------------------------------------
    @cached_property
    def weyl_diamond(self) -> list[WeylElement]:
        gens = [WeylElement(self.datum.reflection_matrix(i)) for i in sorted(self.system.diamond_roots)]
        return subgroup_closure(gens, self.datum.rank)

    @cached_property
    def wchi_ex_cosets(self) -> list[tuple[WeylElement, Vector]]:
        """t_v^{-1} (W_diamond x| Y_{Q,n}) t_v, as cosets of Y_{Q,n}."""
        tv = translation(self.datum, self.shift_v)
        out = set()
        for u in self.weyl_diamond:
            c = tv.inverse() * from_weyl(u) * tv
            if not c.is_integral:
                raise GeometryError("t_v^{-1} u t_v is not integral")
            out.add((u, self.reduce(c.translation)))
        return sorted(out, key=lambda p: (p[0].matrix, p[1]))

    def in_wchi_ex(self, w: ExtendedAffineElement) -> bool:
        return w.is_integral and (w.linear, self.reduce(w.translation)) in set(self.wchi_ex_cosets)

    @property
    def wchi_ex_index(self) -> Fraction:
        return Fraction(len(self.cosets), len(self.wchi_ex_cosets))

    @cached_property
    def omega_ex_generators(self) -> list[ExtendedAffineElement]:
        """Generators of W_chi,ex intersected with Omega_chi."""
        r = self.datum.rank
        tv = translation(self.datum, self.shift_v)
        gens = [tv.inverse() * from_weyl(u) * tv for u in self.weyl_diamond]
        gens += [translation(self.datum, tuple(self.YQn[i][j] for i in range(r))) for j in range(r)]
        seen, out = set(), []
        for g in gens:
            _, om = self.decompose(g)
            if om.is_identity or om in seen:
                continue
            seen.add(om)
            out.append(om)
        return sorted(out, key=lambda e: e.key())

    # -- reporting -----------------------------------------------------------
    def summary(self) -> dict:
        return {
            "diamond_roots": sorted(self.system.diamond_roots),
            "residues": {i: list(cn) for i, cn in sorted(self.system.residues.items())},
            "shift_v": [str(x) for x in self.shift_v],
            "mover": _element_dict(self.mover),
            "delta_chi": [[a.root_index, a.offset] for a in self.delta],
            "coxeter_matrix": [[("inf" if x == math.inf else x) for x in row] for row in self.coxeter],
            "wchi_cosets": [_coset_dict(w, y) for w, y in self.cosets],
            "omega_generators": [_element_dict(o) for o in self.omega_generators],
            "wchi_ex_cosets": [_coset_dict(w, y) for w, y in self.wchi_ex_cosets],
            "wchi_ex_index": str(self.wchi_ex_index),
        }


def _element_dict(w: ExtendedAffineElement) -> dict:
    return {"linear": [list(r) for r in w.linear.matrix], "translation": [str(x) for x in w.translation]}


def _coset_dict(w: WeylElement, y: Vector) -> dict:
    return {"linear": [list(r) for r in w.matrix], "translation": list(y)}


def wchi_cosets(chi: GenuineCharacter) -> list[tuple[WeylElement, Vector]]:
    return ChiGeometry(chi).cosets


def delta_chi(system: TwistedAffineSystem) -> list[AffineRoot]:
    return simple_walls(system)
