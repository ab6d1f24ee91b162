"""
Bilinear-form data of a Brylinski-Deligne cover (with trivial eta) and the
root datum of its principal endoscopy group G_{Q,n}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .lattice import (Matrix, Vector, as_matrix, dot, hermite_basis, identity, integer_kernel,
                      lattice_index, mat_mul, mat_vec, solve_rational, transpose)
from .root_datum import RootDatum, weyl_group


class InvalidCoverError(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticCoverData:
    datum: RootDatum
    D: Matrix
    n: int

    def __post_init__(self):
        object.__setattr__(self, "D", as_matrix(self.D))
        r = self.datum.rank
        if self.n < 1:
            raise InvalidCoverError("cover degree n must be positive")
        if len(self.D) != r or any(len(row) != r for row in self.D):
            raise InvalidCoverError(f"D must be a {r}x{r} integer matrix")
        B = self.B_matrix
        for i in self.datum.simple_indices:
            S = self.datum.reflection_matrix(i)
            if mat_mul(mat_mul(transpose(S), B), S) != B:
                raise InvalidCoverError(f"Q is not Weyl-invariant (fails for simple reflection {i})")
        # B_Q(y, alpha^vee) = <alpha, y> Q(alpha^vee)
        for j, c in enumerate(self.datum.coroots):
            Qc = self.Q(c)
            for k in range(r):
                e = tuple(int(t == k) for t in range(r))
                if self.B(e, c) != self.datum.pair(j, e) * Qc:
                    raise InvalidCoverError(
                        f"B_Q(y, alpha^vee) != <alpha, y> Q(alpha^vee) for coroot {j}")

    @cached_property
    def B_matrix(self) -> Matrix:
        r = self.datum.rank
        return tuple(tuple(self.D[i][j] + self.D[j][i] for j in range(r)) for i in range(r))

    def Q(self, y: Vector) -> int:
        return dot(y, mat_vec(self.D, y))

    def Dform(self, y: Vector, z: Vector) -> int:
        return dot(y, mat_vec(self.D, z))

    def B(self, y: Vector, z: Vector) -> int:
        return dot(y, mat_vec(self.B_matrix, z))

    def Q_coroot(self, i: int) -> int:
        return self.Q(self.datum.coroots[i])

    def n_alpha(self, i: int) -> int:
        """n / gcd(n, Q(alpha^vee))."""
        return self.n // gcd(self.n, self.Q_coroot(i))

    @cached_property
    def YQn_basis(self) -> Matrix:
        return lattice_YQn(self)

    def weyl_preserves_Q(self) -> bool:
        r = self.datum.rank
        basis = [tuple(int(t == k) for t in range(r)) for k in range(r)]
        vecs = basis + list(self.datum.coroots)
        for w in weyl_group(self.datum):
            for y in vecs:
                if self.Q(w.apply(y)) != self.Q(y):
                    return False
        return True


def lattice_YQn(cover: QuadraticCoverData) -> Matrix:
    """
    Y_{Q,n} = {y : B_Q(y, z) in nZ for all z}, as the columns of a lower-triangular
    Hermite basis.  Computed as the projection of ker [B | nI].
    """
    r = cover.datum.rank
    n = cover.n
    B = cover.B_matrix
    M = tuple(tuple(B[i]) + tuple(n if j == i else 0 for j in range(r)) for i in range(r))
    gens = [z[:r] for z in integer_kernel(M)]
    gens += [tuple(n if t == k else 0 for t in range(r)) for k in range(r)]
    return hermite_basis(gens, r)


def in_YQn(cover: QuadraticCoverData, y: Vector) -> bool:
    return all(v % cover.n == 0 for v in mat_vec(cover.B_matrix, y))


@dataclass(frozen=True)
class EndoscopicDatum:
    """Y_{Q,n} (basis columns inside Y) and the root datum of G_{Q,n} in that basis."""
    lattice_basis: Matrix
    datum_Qn: RootDatum
    n_alphas: tuple[int, ...]

    def to_Y(self, z: Vector) -> Vector:
        return mat_vec(self.lattice_basis, z)

    def from_Y(self, y: Vector) -> Vector:
        return solve_rational(self.lattice_basis, y)

    @property
    def index(self) -> int:
        return lattice_index(self.lattice_basis)


def endoscopic_datum(cover: QuadraticCoverData) -> EndoscopicDatum:
    d = cover.datum
    L = cover.YQn_basis
    r = d.rank
    n_al = tuple(cover.n_alpha(i) for i in range(d.num_roots))
    coroots, roots = [], []
    for i in range(d.num_roots):
        z = solve_rational(L, tuple(n_al[i] * c for c in d.coroots[i]))
        if not all(isinstance(t, int) for t in z):
            raise InvalidCoverError(f"n_alpha alpha^vee not in Y_Qn for root {i}")
        coroots.append(z)
        f = d.functionals[i]
        vals = []
        for k in range(r):
            col = tuple(L[t][k] for t in range(r))
            v = dot(f, col)
            if v % n_al[i]:
                raise InvalidCoverError(f"alpha/n_alpha not integral on Y_Qn for root {i}")
            vals.append(v // n_al[i])
        roots.append(tuple(vals))
    dQn = RootDatum(r, roots, coroots, d.simple_indices, identity(r),
                    name=f"{d.name}_Qn" if d.name else "")
    return EndoscopicDatum(L, dQn, n_al)
