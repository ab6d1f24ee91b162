"""
Comparison with the principal endoscopy group G_{Q,n}.

The linear side runs through the same machinery with n = 1 and D = 0, in the
coordinates of the Y_{Q,n} basis L.  Psi_1 is the coordinate change z -> L z, and
Psi(w) = (w0 t_v)^{-1} Psi_1(w) (w0 t_v).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .chi_geometry import ChiGeometry, TwistedAffineSystem
from .cover_torus import GenuineCharacter, _require_depth_zero
from .hecke import HeckeAlgebra, HeckeElement, random_word_element
from .lattice import Vector, mat_inverse, mat_mul, mat_vec, normalize, solve_integer
from .quad_cover import EndoscopicDatum, QuadraticCoverData, endoscopic_datum
from .root_datum import ExtendedAffineElement, WeylElement
from .tame_arith import TameField


@dataclass(frozen=True)
class EndoscopicCharacter:
    endo: EndoscopicDatum
    character: GenuineCharacter  # n = 1, D = 0 cover of G_{Q,n}

    @property
    def m_restricted(self) -> Vector:
        return self.character.m


def transfer_char(chi: GenuineCharacter, endo: EndoscopicDatum | None = None) -> EndoscopicCharacter:
    """chi_{Q,n}(y(a)) = chi(s(y(a))) for y in Y_{Q,n}: m composed with the basis inclusion."""
    _require_depth_zero(chi)
    if endo is None:
        endo = endoscopic_datum(chi.cover)
    L = endo.lattice_basis
    r = chi.datum.rank
    m = tuple(sum(chi.m[i] * L[i][j] for i in range(r)) for j in range(r))
    lin_field = TameField(chi.field.p, chi.field.f, 1)
    zero = tuple((0,) * r for _ in range(r))
    lin_cover = QuadraticCoverData(endo.datum_Qn, zero, 1)
    return EndoscopicCharacter(endo, GenuineCharacter(lin_field, lin_cover, m))


class ShimuraComparison:
    """Psi, the Upsilon verdict and the fullness/torsion report for one character."""

    def __init__(self, chi: GenuineCharacter, cover_geometry: ChiGeometry | None = None):
        self.chi = chi
        self.cover = cover_geometry or ChiGeometry(chi)
        self.transfer = transfer_char(chi)
        self.endo = ChiGeometry(self.transfer.character)
        self.L = self.transfer.endo.lattice_basis
        self.Linv = mat_inverse(self.L)

    # -- the maps ----------------------------------------------------------
    def psi1(self, w: ExtendedAffineElement) -> ExtendedAffineElement:
        lin = mat_mul(mat_mul(self.L, w.linear.matrix), self.Linv)
        return ExtendedAffineElement(WeylElement(_int_matrix(lin)), mat_vec(self.L, w.translation))

    def psi1_inverse(self, w: ExtendedAffineElement) -> ExtendedAffineElement:
        lin = mat_mul(mat_mul(self.Linv, w.linear.matrix), self.L)
        return ExtendedAffineElement(WeylElement(_int_matrix(lin)), mat_vec(self.Linv, w.translation))

    def psi(self, w: ExtendedAffineElement) -> ExtendedAffineElement:
        g = self.cover.conjugator
        out = g.inverse() * self.psi1(w) * g
        if not out.is_integral:
            raise ArithmeticError(f"Psi({w!r}) has a non-integral translation")
        return out

    def psi_inverse(self, w: ExtendedAffineElement) -> ExtendedAffineElement:
        g = self.cover.conjugator
        out = self.psi1_inverse(g * w * g.inverse())
        if not out.is_integral:
            raise ArithmeticError(f"Psi^-1({w!r}) has a non-integral translation")
        return out

    # -- structural checks ---------------------------------------------------
    def root_set_match(self) -> bool:
        """Phi_{chi_Qn} = {alpha_Qn : alpha in Phi_diamond} as index sets."""
        return self.endo.system.diamond_roots == self.cover.system.diamond_roots

    def wall_set_match(self) -> bool:
        """alpha_Qn + k on the linear side is the hyperplane alpha + k n_alpha."""
        n_al = self.transfer.endo.n_alphas
        mapped = {i: (c * n_al[i], n * n_al[i]) for i, (c, n) in self.endo.system.residues.items()}
        return TwistedAffineSystem.from_map(self.cover.datum, mapped) == self.cover.diamond_system

    @cached_property
    def wall_bijection(self) -> dict[int, int] | None:
        """Delta index on the linear side -> Delta_chi index via Psi(s_b) = s_a."""
        targets = {s: i for i, s in enumerate(self.cover.simple_reflections)}
        out = {}
        for j, s in enumerate(self.endo.simple_reflections):
            i = targets.get(self.psi(s))
            if i is None:
                return None
            out[j] = i
        if len(set(out.values())) != len(self.cover.delta) or len(out) != len(self.cover.delta):
            return None
        return out

    def coxeter_match(self) -> bool:
        b = self.wall_bijection
        if b is None:
            return False
        ce, cc = self.endo.coxeter, self.cover.coxeter
        return all(ce[i][j] == cc[b[i]][b[j]] for i in b for j in b)

    def omega_match(self) -> bool:
        """Psi maps W_ex-part of Omega onto W_ex-part of Omega in both directions."""
        for om in self.endo.omega_ex_generators:
            x = self.psi(om)
            if not (self.cover.in_omega(x) and self.cover.in_wchi_ex(x)):
                return False
        for om in self.cover.omega_ex_generators:
            x = self.psi_inverse(om)
            if not (self.endo.in_omega(x) and self.endo.in_wchi_ex(x)):
                return False
        return True

    def homomorphism_failures(self, rng: random.Random, trials: int = 100, max_len: int = 4) -> list:
        bad = []
        oms = self.endo.omega_ex_generators
        for _ in range(trials):
            a = random_word_element(self.endo, rng, max_len, oms)
            b = random_word_element(self.endo, rng, max_len, oms)
            if self.psi(a * b) != self.psi(a) * self.psi(b):
                bad.append((a, b))
                break
        return bad

    def product_transport_failures(self, rng: random.Random, trials: int = 50, max_len: int = 4) -> list:
        """e_x e_y on the linear side, pushed through Psi, equals e_{Psi x} e_{Psi y}."""
        ha, hc = HeckeAlgebra(self.endo), HeckeAlgebra(self.cover)
        oms = self.endo.omega_ex_generators
        bad = []
        for _ in range(trials):
            x = random_word_element(self.endo, rng, max_len, oms)
            y = random_word_element(self.endo, rng, max_len, oms)
            lhs = ha.basis_product(x, y)
            pushed = HeckeElement.from_dict({self.psi(w): c for w, c in lhs.terms})
            rhs = hc.basis_product(self.psi(x), self.psi(y))
            if pushed != rhs or not hc.in_subalgebra_ex(rhs):
                bad.append((x, y))
                break
        return bad

    def upsilon_check(self, seed: int = 0, trials: int = 50, max_len: int = 4) -> dict:
        rng = random.Random(seed)
        flags = {
            "root_set_match": self.root_set_match(),
            "wall_set_match": self.wall_set_match(),
            "wall_bijection": self.wall_bijection is not None,
            "coxeter_match": self.coxeter_match(),
            "omega_match": self.omega_match(),
        }
        hom = self.homomorphism_failures(rng, 2 * trials, max_len)
        prod = self.product_transport_failures(rng, trials, max_len)
        flags["homomorphism"] = not hom
        flags["product_transport"] = not prod
        out = {"verdict": all(flags.values()), "flags": flags}
        if hom:
            out["homomorphism_witness"] = [repr(x) for x in hom[0]]
        if prod:
            out["product_witness"] = [repr(x) for x in prod[0]]
        return out

    # -- Remark-style fullness and Omega torsion ---------------------------
    def fullness_and_torsion(self) -> dict:
        endo_full = len(self.endo.cosets) == len(self.endo.wchi_ex_cosets)
        cover_full = len(self.cover.cosets) == len(self.cover.wchi_ex_cosets)
        t_endo = omega_involution(self.endo)
        t_cover = omega_involution(self.cover)
        if endo_full and cover_full:
            verdict = "isomorphic"
        elif (t_endo is None) != (t_cover is None):
            verdict = "not isomorphic"
        else:
            verdict = "undetermined"
        out = {
            "endoscopic_full": endo_full,
            "cover_full": cover_full,
            "endoscopic_index": str(self.endo.wchi_ex_index),
            "cover_index": str(self.cover.wchi_ex_index),
            "endoscopic_omega_2_torsion": t_endo is not None,
            "cover_omega_2_torsion": t_cover is not None,
            "verdict": verdict,
        }
        if t_endo is not None:
            out["endoscopic_witness"] = _element_dict(self.psi1(t_endo))
        if t_cover is not None:
            out["cover_witness"] = _element_dict(t_cover)
        return out


def omega_involution(geom: ChiGeometry) -> ExtendedAffineElement | None:
    """
    An element of order 2 in Omega_chi, or None.  For each coset (w0, ybar) with
    w0^2 = 1 != w0 solve (w0 + 1)(ybar + L z) = 0 together with the affine
    constraints that w0 t_y permutes Delta_chi.
    """
    d = geom.datum
    r = d.rank
    L = geom.YQn
    delta = geom.delta
    by_root = {a.root_index: a for a in delta}
    for w0, ybar in geom.cosets:
        if w0.is_identity or not (w0 * w0).is_identity:
            continue
        P = tuple(tuple(w0.matrix[i][j] + (i == j) for j in range(r)) for i in range(r))
        rows = list(mat_mul(P, L))
        rhs = [-x for x in mat_vec(P, ybar)]
        ok = True
        for a in delta:
            j = w0.root_image(d, a.root_index)
            b = by_root.get(j)
            if b is None:
                ok = False
                break
            # offset of w(a) is a.offset - <alpha, ybar + L z>; it must equal b.offset
            f = d.functionals[a.root_index]
            rows.append(tuple(sum(f[i] * L[i][k] for i in range(r)) for k in range(r)))
            rhs.append(a.offset - b.offset - sum(f[i] * ybar[i] for i in range(r)))
        if not ok:
            continue
        z = solve_integer(tuple(rows), tuple(rhs))
        if z is None:
            continue
        y = tuple(ybar[i] + sum(L[i][k] * z[k] for k in range(r)) for i in range(r))
        w = ExtendedAffineElement(w0, y)
        assert (w * w).is_identity and geom.in_omega(w)
        return w
    return None


def _int_matrix(M) -> tuple[tuple[int, ...], ...]:
    out = tuple(tuple(normalize(row)) for row in M)
    if not all(isinstance(x, int) for row in out for x in row):
        raise ArithmeticError("coordinate change produced a non-integral Weyl matrix")
    return out


def _element_dict(w: ExtendedAffineElement) -> dict:
    return {"linear": [list(r) for r in w.linear.matrix], "translation": [str(x) for x in w.translation]}
