import itertools
from fractions import Fraction

from hypothesis import given, strategies as st

from genuine_hecke.lattice import (coset_representatives, hermite_basis, integer_kernel, lattice_index,
                                   mat_inverse, mat_mul, mat_vec, reduce_mod_lattice, solve_integer,
                                   identity)

small = st.integers(-6, 6)
mat2x3 = st.lists(st.lists(small, min_size=3, max_size=3), min_size=2, max_size=2)


def _lattice_points(H, box):
    """Brute force: all integer points of the column span of H inside [-box, box]^n."""
    n = len(H)
    pts = set()
    for z in itertools.product(range(-3 * box, 3 * box + 1), repeat=n):
        y = mat_vec(H, z)
        if all(abs(c) <= box for c in y):
            pts.add(y)
    return pts


@given(st.lists(st.tuples(small, small), min_size=2, max_size=4))
def test_hermite_basis_spans_same_lattice(gens):
    gens = list(gens) + [(5, 0), (0, 5)]
    H = hermite_basis(gens, 2)
    assert H[0][1] == 0 and H[0][0] > 0 and H[1][1] > 0
    assert 0 <= H[1][0] < H[1][1]
    # every generator lies in the span, and the basis columns are integer combos of the generators
    for g in gens:
        assert solve_integer(H, g) is not None
    A = tuple(tuple(g[i] for g in gens) for i in range(2))
    for j in range(2):
        assert solve_integer(A, (H[0][j], H[1][j])) is not None


def test_hermite_basis_is_canonical():
    a = hermite_basis([(1, -1), (1, 1)], 2)
    b = hermite_basis([(1, 1), (0, 2), (3, -1)], 2)
    assert a == b == ((1, 0), (1, 2))


@given(mat2x3)
def test_integer_kernel(A):
    A = tuple(map(tuple, A))
    ker = integer_kernel(A)
    for z in ker:
        assert mat_vec(A, z) == (0, 0)
    # brute force: every small kernel vector is an integer combination of the basis
    if ker:
        K = tuple(tuple(z[i] for z in ker) for i in range(3))
        for z in itertools.product(range(-3, 4), repeat=3):
            if mat_vec(A, z) == (0, 0):
                assert solve_integer(K, z) is not None


@given(mat2x3, st.tuples(small, small))
def test_solve_integer_matches_brute_force(A, b):
    A = tuple(map(tuple, A))
    z = solve_integer(A, b)
    if z is not None:
        assert mat_vec(A, z) == tuple(b)
    else:
        for cand in itertools.product(range(-4, 5), repeat=3):
            assert mat_vec(A, cand) != tuple(b)


@given(st.integers(1, 4), st.integers(0, 3), st.integers(1, 4))
def test_cosets_and_reduction(a, c, d):
    H = ((a, 0), (c % d, d))
    reps = coset_representatives(H)
    assert len(reps) == lattice_index(H) == a * d
    assert sorted(set(reps)) == sorted(reps)
    lat = _lattice_points(H, 4)
    for y in itertools.product(range(-4, 5), repeat=2):
        r = reduce_mod_lattice(y, H)
        assert r in reps
        assert solve_integer(H, tuple(x - s for x, s in zip(y, r))) is not None
        # two points share a representative iff they differ by a lattice vector
        for y2 in [(y[0] + 1, y[1]), (y[0], y[1] + 1), (y[0] + a, y[1] + c % d)]:
            diff = (y2[0] - y[0], y2[1] - y[1])
            assert (reduce_mod_lattice(y2, H) == r) == (diff in lat)


def test_mat_inverse_exact():
    A = ((2, 1), (1, 1))
    assert mat_mul(A, mat_inverse(A)) == identity(2)
    B = ((2, 0), (0, 3))
    assert mat_inverse(B) == ((Fraction(1, 2), 0), (0, Fraction(1, 3)))
