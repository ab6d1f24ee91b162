"""
Root data, finite Weyl groups, the extended affine Weyl group Y x| W, affine
roots and the alcove length function.

Conventions
-----------
Y (cocharacters) carries integer coordinates; roots live in X with an explicit
pairing matrix P so that <x, y> = x^T P y.  An element (w0, y0) of W_ex stands
for w0 . t_{y0} and acts on V = Y (x) R by x -> w0(x + y0).  Affine roots a = alpha + k
are transformed by (r f)(x) = f(r^{-1} x), which gives

    (w0 t_{y0})(alpha + k) = w0 alpha + k - <alpha, y0>.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .lattice import (Matrix, Vector, as_matrix, dot, identity, is_integral, mat_inverse,
                      mat_mul, mat_vec, normalize, solve_rational, vec_add, vec_mat)


class InvalidDatumError(ValueError):
    pass


# ---------------------------------------------------------------------------
# root datum

@dataclass(frozen=True)
class RootDatum:
    """A based root datum with roots in X-coordinates and coroots in Y-coordinates."""
    rank: int
    roots: tuple[Vector, ...]
    coroots: tuple[Vector, ...]
    simple_indices: tuple[int, ...]
    pairing: Matrix
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(tuple(r) for r in self.roots))
        object.__setattr__(self, "coroots", tuple(tuple(c) for c in self.coroots))
        object.__setattr__(self, "simple_indices", tuple(self.simple_indices))
        object.__setattr__(self, "pairing", as_matrix(self.pairing))
        self._validate()

    # -- validation --------------------------------------------------------
    def _validate(self):
        r = self.rank
        if r < 1:
            raise InvalidDatumError("rank must be at least 1")
        if len(self.roots) != len(self.coroots):
            raise InvalidDatumError("roots and coroots must be index-aligned")
        if len(self.pairing) != r or any(len(row) != r for row in self.pairing):
            raise InvalidDatumError(f"pairing must be a {r}x{r} matrix")
        for v in self.roots + self.coroots:
            if len(v) != r:
                raise InvalidDatumError(f"vector {v} does not have length {r}")
        if len(set(self.coroots)) != len(self.coroots):
            raise InvalidDatumError("duplicate coroots")
        for i, a in enumerate(self.roots):
            if self.pair(i, self.coroots[i]) != 2:
                raise InvalidDatumError(f"<alpha, alpha^vee> != 2 for root {i}")
        fset = set(self.functionals)
        cset = set(self.coroots)
        for i in range(len(self.roots)):
            for j in range(len(self.roots)):
                c = self.pair(j, self.coroots[i])
                refl = tuple(b - c * a for a, b in zip(self.functionals[i], self.functionals[j]))
                if refl not in fset:
                    raise InvalidDatumError(f"root system not closed under s_{i}")
                d = self.pair(i, self.coroots[j])
                crefl = tuple(b - d * a for a, b in zip(self.coroots[i], self.coroots[j]))
                if crefl not in cset:
                    raise InvalidDatumError(f"coroots not closed under s_{i}")
        if not self.simple_indices:
            raise InvalidDatumError("no simple roots given")
        # every root a same-sign integer combination of the simple roots
        for i in range(len(self.roots)):
            coeffs = self.simple_coefficients[i]
            if not all(isinstance(c, int) for c in coeffs):
                raise InvalidDatumError(f"root {i} is not an integral combination of simple roots")
            if not (all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)):
                raise InvalidDatumError(f"root {i} has mixed-sign simple coefficients")

    # -- basic data --------------------------------------------------------
    @property
    def num_roots(self) -> int:
        return len(self.roots)

    @cached_property
    def functionals(self) -> tuple[Vector, ...]:
        """Each root as a row vector on Y: <alpha, y> = functional . y."""
        return tuple(vec_mat(a, self.pairing) for a in self.roots)

    def pair(self, i: int, y: Vector):
        """<alpha_i, y> for a root index i and y in Y (or V)."""
        return dot(self.functionals[i], y)

    @cached_property
    def coroot_index(self) -> dict[Vector, int]:
        return {c: i for i, c in enumerate(self.coroots)}

    @cached_property
    def functional_index(self) -> dict[Vector, int]:
        return {f: i for i, f in enumerate(self.functionals)}

    @cached_property
    def negative_index(self) -> tuple[int, ...]:
        return tuple(self.coroot_index[tuple(-x for x in c)] for c in self.coroots)

    @cached_property
    def cartan(self) -> Matrix:
        """cartan[i][j] = <alpha_i, alpha_j^vee> over simple roots."""
        s = self.simple_indices
        return tuple(tuple(self.pair(i, self.coroots[j]) for j in s) for i in s)

    @cached_property
    def simple_coefficients(self) -> tuple[Vector, ...]:
        """Coefficients of each root's coroot in the simple coroots.

        Coefficients on the coroot side agree in sign with the root side, which is
        all positivity needs; root-side coefficients are `root_coefficients`.
        """
        s = self.simple_indices
        # solve via pairing against simple roots: <alpha_i, beta^vee> = sum_j c_j <alpha_i, alpha_j^vee>
        A = self.cartan
        out = []
        for c in self.coroots:
            rhs = tuple(self.pair(i, c) for i in s)
            try:
                out.append(solve_rational(A, rhs))
            except ZeroDivisionError:
                raise InvalidDatumError("simple roots are linearly dependent")
        return tuple(out)

    @cached_property
    def root_coefficients(self) -> tuple[Vector, ...]:
        """Coefficients of each root in the simple roots (as functionals on Y)."""
        s = self.simple_indices
        At = tuple(tuple(self.pair(j, self.coroots[i]) for j in s) for i in s)
        out = []
        for f_idx in range(self.num_roots):
            rhs = tuple(self.pair(f_idx, self.coroots[i]) for i in s)
            out.append(solve_rational(At, rhs))
        return tuple(out)

    @cached_property
    def positive(self) -> tuple[bool, ...]:
        return tuple(all(c >= 0 for c in co) for co in self.simple_coefficients)

    @cached_property
    def positive_indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.num_roots) if self.positive[i])

    @cached_property
    def heights(self) -> tuple[int, ...]:
        return tuple(sum(c) for c in self.root_coefficients)

    @cached_property
    def highest_indices(self) -> tuple[int, ...]:
        """Maximal positive roots (one per irreducible component)."""
        pos = self.positive_indices
        out = []
        for i in pos:
            ci = self.root_coefficients[i]
            if not any(j != i and all(a >= b for a, b in zip(self.root_coefficients[j], ci))
                       for j in pos):
                out.append(i)
        return tuple(out)

    def reflection_matrix(self, i: int) -> Matrix:
        """s_alpha on Y: y -> y - <alpha, y> alpha^vee."""
        f, c = self.functionals[i], self.coroots[i]
        r = self.rank
        return tuple(tuple(int(a == b) - c[a] * f[b] for b in range(r)) for a in range(r))

    @cached_property
    def components(self) -> list[tuple[int, ...]]:
        """Connected components of the Dynkin diagram, as tuples of positions in simple_indices."""
        m = len(self.simple_indices)
        seen: set[int] = set()
        comps = []
        for start in range(m):
            if start in seen:
                continue
            comp, queue = [], [start]
            seen.add(start)
            while queue:
                a = queue.pop()
                comp.append(a)
                for b in range(m):
                    if b not in seen and self.cartan[a][b] != 0:
                        seen.add(b)
                        queue.append(b)
            comps.append(tuple(sorted(comp)))
        return comps

    def _long_simple(self, comp: tuple[int, ...]) -> list[int]:
        """Simple roots of maximal length in a component, via |a_i|^2/|a_j|^2 = C_ij/C_ji."""
        sq = {comp[0]: Fraction(1)}
        todo = [comp[0]]
        while todo:
            i = todo.pop()
            for j in comp:
                if j not in sq and self.cartan[i][j]:
                    sq[j] = sq[i] * Fraction(self.cartan[j][i], self.cartan[i][j])
                    todo.append(j)
        top = max(sq.values())
        return [j for j in comp if sq[j] == top]

    def component_types(self) -> list[tuple[str, int]]:
        """Cartan-Killing type letter and rank of each irreducible component."""
        out = []
        for comp in self.components:
            m = len(comp)
            idx = [i for i in range(self.num_roots)
                   if all(self.root_coefficients[i][j] == 0
                          for j in range(len(self.simple_indices)) if j not in comp)]
            N = len(idx)
            ratios = {abs(self.cartan[a][b]) for a in comp for b in comp if a != b}
            lace = max(ratios | {1})
            if lace == 1:
                if N == m * (m + 1):
                    letter = "A"
                elif m >= 4 and N == 2 * m * (m - 1):
                    letter = "D"
                else:
                    letter = "E"
            elif lace == 2:
                if m == 4 and N == 48:
                    letter = "F"
                else:
                    long_ = self._long_simple(comp)
                    # C_m has a single long simple root, at the end of the chain for C_2
                    if m == 2:
                        letter = "C" if long_ == [comp[-1]] else "B"
                    else:
                        letter = "C" if len(long_) == 1 else "B"
            else:
                letter = "G"
            out.append((letter, m))
        return out


# ---------------------------------------------------------------------------
# presets

def _cartan(letter: str, m: int) -> list[list[int]]:
    """P[i][j] = <alpha_i, alpha_j^vee> for the standard simple system."""
    P = [[2 if i == j else 0 for j in range(m)] for i in range(m)]
    for i in range(m - 1):
        P[i][i + 1] = P[i + 1][i] = -1
    if letter == "B" and m >= 2:
        P[m - 2][m - 1] = -2
    elif letter == "C" and m >= 2:
        P[m - 1][m - 2] = -2
    elif letter == "G":
        P = [[2, -1], [-3, 2]]
    return P


def _closure(simple_roots: list[Vector], simple_coroots: list[Vector], pairing: Matrix):
    roots, coroots = list(simple_roots), list(simple_coroots)
    seen = set(coroots)
    queue = deque(zip(roots, coroots))
    while queue:
        a, ac = queue.popleft()
        for s, sc in zip(simple_roots, simple_coroots):
            p = dot(vec_mat(a, pairing), sc)   # <a, s^vee>
            pc = dot(vec_mat(s, pairing), ac)  # <s, a^vee>
            b = tuple(x - p * y for x, y in zip(a, s))
            bc = tuple(x - pc * y for x, y in zip(ac, sc))
            if bc not in seen:
                seen.add(bc)
                roots.append(b)
                coroots.append(bc)
                queue.append((b, bc))
    return roots, coroots


def _from_cartan(letter: str, m: int, adjoint: bool, name: str) -> RootDatum:
    P = _cartan(letter, m)
    I = identity(m)
    if adjoint:
        # X spanned by simple roots, Y by fundamental coweights
        sroots = [I[i] for i in range(m)]
        scoroots = [tuple(P[j][i] for j in range(m)) for i in range(m)]
    else:
        sroots = [tuple(P[i]) for i in range(m)]
        scoroots = [I[i] for i in range(m)]
    roots, coroots = _closure(sroots, scoroots, I)
    return RootDatum(m, roots, coroots, range(m), I, name=name)


def _gl(n: int) -> RootDatum:
    E = identity(n)
    roots = [tuple(E[i][k] - E[j][k] for k in range(n))
             for i in range(n) for j in range(n) if i != j]
    simple = [roots.index(tuple(E[i][k] - E[i + 1][k] for k in range(n))) for i in range(n - 1)]
    return RootDatum(n, roots, roots, simple, E, name=f"GL{n}")


def _so_even(m: int) -> RootDatum:
    E = identity(m)
    roots = []
    for i, j in itertools.combinations(range(m), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            roots.append(tuple(si * E[i][k] + sj * E[j][k] for k in range(m)))
    simple = [roots.index(tuple(E[i][k] - E[i + 1][k] for k in range(m))) for i in range(m - 1)]
    simple.append(roots.index(tuple(E[m - 2][k] + E[m - 1][k] for k in range(m))))
    return RootDatum(m, roots, roots, simple, E, name=f"SO{2 * m}")


PRESETS = ("SL", "GL", "PGL", "Sp", "SO", "G2")


def build_preset(name: str, size: int | None = None) -> RootDatum:
    """
    Standard split root data.

    `size` is the matrix size: ("SL", 3) is SL_3, ("Sp", 4) is Sp_4, ("SO", 5) is
    SO_5.  SL and Sp are simply connected with Y spanned by the simple coroots;
    PGL and odd SO are adjoint; GL and even SO use Y = Z^m with the usual roots.
    """
    if name == "G2":
        return _from_cartan("G", 2, adjoint=False, name="G2")
    if name not in PRESETS:
        raise InvalidDatumError(f"unknown preset {name!r}; expected one of {', '.join(PRESETS)}")
    if size is None:
        raise InvalidDatumError(f"preset {name} needs a size")
    if name == "SL":
        if size < 2:
            raise InvalidDatumError("rank below 1: SL needs size >= 2")
        return _from_cartan("A", size - 1, adjoint=False, name=f"SL{size}")
    if name == "PGL":
        if size < 2:
            raise InvalidDatumError("rank below 1: PGL needs size >= 2")
        return _from_cartan("A", size - 1, adjoint=True, name=f"PGL{size}")
    if name == "GL":
        if size < 2:
            raise InvalidDatumError("GL needs size >= 2 to have roots")
        return _gl(size)
    if name == "Sp":
        if size < 2 or size % 2:
            raise InvalidDatumError("Sp needs an even size >= 2")
        m = size // 2
        return _from_cartan("C" if m >= 2 else "A", m, adjoint=False, name=f"Sp{size}")
    # SO
    if size < 3:
        raise InvalidDatumError("rank below 1: SO needs size >= 3")
    if size % 2:
        m = (size - 1) // 2
        return _from_cartan("B" if m >= 2 else "A", m, adjoint=True, name=f"SO{size}")
    if size < 4:
        raise InvalidDatumError("SO needs size >= 4 when even")
    return _so_even(size // 2)


# ---------------------------------------------------------------------------
# Weyl group

@dataclass(frozen=True)
class WeylElement:
    matrix: Matrix

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "WeylElement":
        return WeylElement(mat_inverse(self.matrix))

    def apply(self, y: Vector) -> Vector:
        return mat_vec(self.matrix, y)

    @property
    def is_identity(self) -> bool:
        return self.matrix == identity(len(self.matrix))

    def root_image(self, datum: RootDatum, i: int) -> int:
        """Index of w(alpha_i); uses (w alpha)^vee = w(alpha^vee)."""
        return datum.coroot_index[self.apply(datum.coroots[i])]


def weyl_identity(datum: RootDatum) -> WeylElement:
    return WeylElement(identity(datum.rank))


def simple_reflections(datum: RootDatum) -> list[WeylElement]:
    return [WeylElement(datum.reflection_matrix(i)) for i in datum.simple_indices]


def weyl_group(datum: RootDatum) -> list[WeylElement]:
    """All elements of W, by closure under the simple reflections (BFS order)."""
    gens = simple_reflections(datum)
    e = weyl_identity(datum)
    seen = {e}
    out = [e]
    queue = deque([e])
    while queue:
        w = queue.popleft()
        for s in gens:
            x = s * w
            if x not in seen:
                seen.add(x)
                out.append(x)
                queue.append(x)
    return out


def subgroup_closure(gens: Iterable[WeylElement], rank: int) -> list[WeylElement]:
    e = WeylElement(identity(rank))
    gens = list(gens)
    seen = {e}
    out = [e]
    queue = deque([e])
    while queue:
        w = queue.popleft()
        for s in gens:
            x = s * w
            if x not in seen:
                seen.add(x)
                out.append(x)
                queue.append(x)
    return out


# ---------------------------------------------------------------------------
# affine roots and the extended affine Weyl group

@dataclass(frozen=True, order=True)
class AffineRoot:
    root_index: int
    offset: int

    def negate(self, datum: RootDatum) -> "AffineRoot":
        return AffineRoot(datum.negative_index[self.root_index], -self.offset)

    def value(self, datum: RootDatum, x: Vector):
        return datum.pair(self.root_index, x) + self.offset


def is_positive(datum: RootDatum, a: AffineRoot) -> bool:
    """a > 0 on the fundamental alcove A_0."""
    return a.offset >= 1 or (a.offset == 0 and datum.positive[a.root_index])


@dataclass(frozen=True)
class ExtendedAffineElement:
    """w = w0 . t_{y0}.  Translations may be rational for conjugation by t_v."""
    linear: WeylElement
    translation: Vector

    def __post_init__(self):
        object.__setattr__(self, "translation", normalize(tuple(self.translation)))

    def __mul__(self, other: "ExtendedAffineElement") -> "ExtendedAffineElement":
        w0, y0 = self.linear, self.translation
        w1, y1 = other.linear, other.translation
        return ExtendedAffineElement(w0 * w1, vec_add(mat_vec(mat_inverse(w1.matrix), y0), y1))

    def inverse(self) -> "ExtendedAffineElement":
        return ExtendedAffineElement(self.linear.inverse(),
                                     tuple(-x for x in self.linear.apply(self.translation)))

    def act(self, x: Vector) -> Vector:
        return normalize(self.linear.apply(vec_add(x, self.translation)))

    @property
    def is_integral(self) -> bool:
        return is_integral(self.translation)

    @property
    def is_identity(self) -> bool:
        return self.linear.is_identity and not any(self.translation)

    def power(self, k: int) -> "ExtendedAffineElement":
        base = self if k >= 0 else self.inverse()
        out = ExtendedAffineElement(WeylElement(identity(len(self.translation))),
                                    (0,) * len(self.translation))
        for _ in range(abs(k)):
            out = out * base
        return out

    def key(self) -> tuple:
        """Canonical, sortable key: (matrix rows, translation)."""
        return (self.linear.matrix, self.translation)

    def __repr__(self):
        return f"W_ex(linear={list(map(list, self.linear.matrix))}, translation={list(self.translation)})"


def ex_identity(datum: RootDatum) -> ExtendedAffineElement:
    return ExtendedAffineElement(weyl_identity(datum), (0,) * datum.rank)


def translation(datum: RootDatum, y: Sequence) -> ExtendedAffineElement:
    return ExtendedAffineElement(weyl_identity(datum), tuple(y))


def from_weyl(w: WeylElement) -> ExtendedAffineElement:
    return ExtendedAffineElement(w, (0,) * len(w.matrix))


def affine_reflection(datum: RootDatum, a: AffineRoot) -> ExtendedAffineElement:
    """s_{alpha+k}: x -> x - (alpha(x) + k) alpha^vee, i.e. (s_alpha, k alpha^vee)."""
    i = a.root_index
    return ExtendedAffineElement(WeylElement(datum.reflection_matrix(i)),
                                 tuple(a.offset * c for c in datum.coroots[i]))


def affine_action(datum: RootDatum, w: ExtendedAffineElement, a: AffineRoot) -> AffineRoot:
    """w(alpha + k) = w0 alpha + k - <alpha, y0>."""
    d = datum.pair(a.root_index, w.translation)
    if isinstance(d, Fraction):
        if d.denominator != 1:
            raise ValueError("non-integral translation moves an affine root off Phi_af")
        d = d.numerator
    return AffineRoot(w.linear.root_image(datum, a.root_index), a.offset - d)


def simple_affine_roots(datum: RootDatum) -> list[AffineRoot]:
    """Delta_af = Delta together with -beta + 1 for every highest root beta."""
    out = [AffineRoot(i, 0) for i in datum.simple_indices]
    out += [AffineRoot(datum.negative_index[b], 1) for b in datum.highest_indices]
    return out


def n_set(datum: RootDatum, w: ExtendedAffineElement) -> frozenset[AffineRoot]:
    """N(w) = {a > 0 : w a < 0}, enumerated root by root in closed form."""
    out = set()
    for i in range(datum.num_roots):
        d = datum.pair(i, w.translation)
        j = w.linear.root_image(datum, i)
        k_min = 0 if datum.positive[i] else 1
        # w(alpha+k) = (j, k - d) is negative iff k - d <= -1, or k == d with j negative
        for k in range(k_min, d):
            out.add(AffineRoot(i, k))
        if d >= k_min and not datum.positive[j]:
            out.add(AffineRoot(i, d))
    return frozenset(out)


def length(datum: RootDatum, w: ExtendedAffineElement) -> int:
    return len(n_set(datum, w))


# ---------------------------------------------------------------------------
# alcove points

def alcove_point(datum: RootDatum) -> Vector:
    """
    A rational interior point of A_0: alpha(x) = ht(alpha)/(h+1) for every root,
    h the largest height, taken in the span of the coroots.
    """
    h = max(datum.heights)
    target = tuple(Fraction(1, h + 1) for _ in datum.simple_indices)
    coeffs = solve_rational(datum.cartan, target)
    x = [Fraction(0)] * datum.rank
    for c, i in zip(coeffs, datum.simple_indices):
        for k in range(datum.rank):
            x[k] += c * datum.coroots[i][k]
    return normalize(tuple(x))


def separating_count(datum: RootDatum, w: ExtendedAffineElement) -> int:
    """Number of hyperplanes H_a separating A_0 from w(A_0), counted geometrically."""
    x = alcove_point(datum)
    wx = w.act(x)
    total = 0
    for i in datum.positive_indices:
        lo, hi = sorted((datum.pair(i, x), datum.pair(i, wx)))
        # integers t with lo < t < hi: each is a wall alpha = t
        total += max(0, _ceil(hi) - _floor(lo) - 1)
    return total


def _floor(x) -> int:
    return int(Fraction(x).__floor__())


def _ceil(x) -> int:
    return int(Fraction(x).__ceil__())


def bfs_lengths(datum: RootDatum, max_length: int) -> dict[ExtendedAffineElement, int]:
    """Word length in the Coxeter system (W_af, S_af) for all elements up to max_length."""
    gens = [affine_reflection(datum, a) for a in simple_affine_roots(datum)]
    e = ex_identity(datum)
    dist = {e: 0}
    frontier = [e]
    for d in range(1, max_length + 1):
        nxt = []
        for w in frontier:
            for s in gens:
                x = s * w
                if x not in dist:
                    dist[x] = d
                    nxt.append(x)
        frontier = nxt
    return dist


def elements_up_to_length(datum: RootDatum, max_length: int) -> Iterator[ExtendedAffineElement]:
    yield from bfs_lengths(datum, max_length)
