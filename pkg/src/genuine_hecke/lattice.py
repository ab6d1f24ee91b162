"""
Exact integer and rational linear algebra on small matrices.

Matrices are tuples of row tuples; vectors are tuples.  Entries are Python
ints or `fractions.Fraction`, never floats.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

Vector = tuple
Matrix = tuple


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def transpose(A: Matrix) -> Matrix:
    return tuple(zip(*A)) if A else ()


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def mat_vec(A: Matrix, v: Vector) -> Vector:
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def vec_mat(v: Vector, A: Matrix) -> Vector:
    """Row vector times matrix."""
    return tuple(sum(x * A[i][j] for i, x in enumerate(v)) for j in range(len(A[0])))


def dot(u: Vector, v: Vector):
    return sum(a * b for a, b in zip(u, v))


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Vector) -> Vector:
    return tuple(c * a for a in v)


def normalize(v: Vector) -> Vector:
    """Turn integral Fractions back into ints so hashing/printing is stable."""
    out = []
    for x in v:
        if isinstance(x, Fraction) and x.denominator == 1:
            x = x.numerator
        out.append(x)
    return tuple(out)


def is_integral(v: Vector) -> bool:
    return all(not isinstance(x, Fraction) or x.denominator == 1 for x in v)


@lru_cache(maxsize=None)
def mat_inverse(A: Matrix) -> Matrix:
    """Exact inverse by Gauss-Jordan over Q; integral entries come back as ints."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return tuple(normalize(tuple(row[n:])) for row in M)


def solve_rational(A: Matrix, b: Vector) -> Vector:
    """Solve A x = b for square invertible A over Q."""
    return normalize(mat_vec(mat_inverse(A), tuple(Fraction(x) for x in b)))


def column_echelon(A: Matrix) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """
    Unimodular column reduction of an integer matrix.

    Returns (H, U, pivot_rows) with A U = H, where the first r = len(pivot_rows)
    columns of H are in echelon form (column j has its first nonzero entry in
    pivot_rows[j], strictly increasing) and the remaining columns vanish.  The
    trailing columns of U therefore span the integer kernel of A.
    """
    m = len(A)
    k = len(A[0]) if m else 0
    H = [list(row) for row in A]
    U = [[int(i == j) for j in range(k)] for i in range(k)]

    def col_op(dst, src, c):
        # column dst += c * column src
        for row in H:
            row[dst] += c * row[src]
        for row in U:
            row[dst] += c * row[src]

    def col_swap(i, j):
        for row in H:
            row[i], row[j] = row[j], row[i]
        for row in U:
            row[i], row[j] = row[j], row[i]

    pivots: list[int] = []
    c = 0
    for i in range(m):
        if c >= k:
            break
        # Euclid across columns c..k-1 on row i
        while True:
            nz = [j for j in range(c, k) if H[i][j] != 0]
            if len(nz) <= 1:
                break
            j0 = min(nz, key=lambda j: abs(H[i][j]))
            for j in nz:
                if j != j0:
                    col_op(j, j0, -(H[i][j] // H[i][j0]))
        nz = [j for j in range(c, k) if H[i][j] != 0]
        if not nz:
            continue
        if nz[0] != c:
            col_swap(c, nz[0])
        if H[i][c] < 0:
            for row in H:
                row[c] = -row[c]
            for row in U:
                row[c] = -row[c]
        pivots.append(i)
        c += 1
    return H, U, pivots


def integer_kernel(A: Matrix) -> list[Vector]:
    """Basis of {z in Z^k : A z = 0}."""
    H, U, piv = column_echelon(A)
    k = len(U)
    return [tuple(U[i][j] for i in range(k)) for j in range(len(piv), k)]


def solve_integer(A: Matrix, b: Vector) -> Vector | None:
    """One integer solution of A z = b, or None if there is none."""
    H, U, piv = column_echelon(A)
    r = len(piv)
    w = []
    for j, i in enumerate(piv):
        rest = b[i] - sum(H[i][l] * w[l] for l in range(j))
        if rest % H[i][j]:
            return None
        w.append(rest // H[i][j])
    for i in range(len(A)):
        if sum(H[i][l] * w[l] for l in range(r)) != b[i]:
            return None
    return tuple(sum(U[row][l] * w[l] for l in range(r)) for row in range(len(U)))


def hermite_basis(generators: Sequence[Vector], dim: int) -> Matrix:
    """
    Column Hermite normal form of the lattice spanned by `generators` in Z^dim.

    The result is a dim x dim lower-triangular matrix whose columns form a basis,
    with positive diagonal and 0 <= H[i][j] < H[i][i] for j < i.  Requires the
    generators to span a full-rank lattice.
    """
    A = tuple(tuple(g[i] for g in generators) for i in range(dim))
    H, _, piv = column_echelon(A)
    if piv != list(range(dim)):
        raise ValueError("generators do not span a full-rank lattice")
    B = [[H[i][j] for j in range(dim)] for i in range(dim)]
    for i in range(dim):
        for j in range(i):
            f = B[i][j] // B[i][i]
            if f:
                for r in range(dim):
                    B[r][j] -= f * B[r][i]
    return as_matrix(B)


def reduce_mod_lattice(y: Vector, H: Matrix) -> Vector:
    """Canonical representative of y modulo the lattice with lower-triangular HNF basis H."""
    y = list(y)
    n = len(H)
    for i in range(n):
        f = y[i] // H[i][i]
        if f:
            for r in range(n):
                y[r] -= f * H[r][i]
    return tuple(y)


def coset_representatives(H: Matrix) -> list[Vector]:
    """All canonical representatives of Z^n / (column span of H)."""
    reps: list[Vector] = [()]
    for i in range(len(H)):
        reps = [r + (t,) for r in reps for t in range(H[i][i])]
    return reps


def lattice_index(H: Matrix) -> int:
    out = 1
    for i in range(len(H)):
        out *= H[i][i]
    return out
