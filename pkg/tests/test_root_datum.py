import itertools
import random

import pytest
from hypothesis import given, strategies as st

from genuine_hecke.presets import CONFIGS, random_element
from genuine_hecke.root_datum import (AffineRoot, InvalidDatumError, RootDatum,
                                      affine_action, affine_reflection, bfs_lengths, build_preset,
                                      ex_identity, is_positive, length, n_set, separating_count,
                                      simple_affine_roots, translation, weyl_group)


@pytest.mark.parametrize("name,size,roots,order,types", [
    ("SL", 2, 2, 2, [("A", 1)]),
    ("SL", 3, 6, 6, [("A", 2)]),
    ("PGL", 3, 6, 6, [("A", 2)]),
    ("GL", 3, 6, 6, [("A", 2)]),
    ("Sp", 4, 8, 8, [("C", 2)]),
    ("SO", 5, 8, 8, [("B", 2)]),
    ("SO", 8, 24, 192, [("D", 4)]),
    ("G2", None, 12, 12, [("G", 2)]),
])
def test_presets(name, size, roots, order, types):
    d = build_preset(name, size)
    assert d.num_roots == roots
    assert len(weyl_group(d)) == order
    assert d.component_types() == types
    for i in range(d.num_roots):
        assert d.pair(i, d.coroots[i]) == 2


def test_gl2_center_not_in_coroot_span():
    d = build_preset("GL", 2)
    assert d.rank == 2 and d.num_roots == 2
    assert translation(d, (1, 1)) * translation(d, (0, 1)) == translation(d, (1, 2))


def test_invalid_datum_messages():
    with pytest.raises(InvalidDatumError, match="2"):
        RootDatum(1, [(1,), (-1,)], [(1,), (-1,)], [0], [[1]])
    with pytest.raises(InvalidDatumError):
        build_preset("E9", 3)
    with pytest.raises(InvalidDatumError):
        build_preset("SL", 1)
    # not closed under reflections: only one of +-alpha
    with pytest.raises(InvalidDatumError):
        RootDatum(1, [(2,)], [(1,)], [0], [[1]])


def _brute_n_set(d, w, bound=12):
    out = set()
    for i in range(d.num_roots):
        for k in range(-bound, bound + 1):
            a = AffineRoot(i, k)
            if is_positive(d, a) and not is_positive(d, affine_action(d, w, a)):
                out.add(a)
    return frozenset(out)


@pytest.mark.parametrize("key", list(CONFIGS))
def test_n_set_matches_brute_force(key):
    d = CONFIGS[key].datum
    rng = random.Random(5)
    for _ in range(40):
        w = random_element(d, rng, max_length=6)
        assert n_set(d, w) == _brute_n_set(d, w)


@pytest.mark.parametrize("name,size,bound", [("SL", 2, 8), ("SL", 3, 6)])
def test_length_three_ways(name, size, bound):
    d = build_preset(name, size)
    bfs = bfs_lengths(d, bound)
    for w, l in bfs.items():
        assert length(d, w) == l == separating_count(d, w)


def _pool(d, max_len):
    """W_af elements up to max_len, together with their products with length-zero elements."""
    base = list(bfs_lengths(d, max_len))
    zero = [w for w in (random_element(d, random.Random(k), 0) for k in range(20)) if length(d, w) == 0]
    out = set(base)
    for z in set(zero):
        out.update(z * w for w in base if length(d, z * w) <= max_len)
    return sorted(out, key=lambda w: w.key())


@pytest.mark.parametrize("key", list(CONFIGS))
def test_length_additivity_criterion(key):
    """l(w1 w2) = l(w1) + l(w2) iff N(w2) is contained in N(w1 w2)."""
    d = CONFIGS[key].datum
    pool = _pool(d, 4 if key != "Sp4" else 3)
    N = {w: n_set(d, w) for w in pool}
    for w1, w2 in itertools.product(pool, repeat=2):
        p = w1 * w2
        Np = n_set(d, p)
        assert (len(Np) == len(N[w1]) + len(N[w2])) == (N[w2] <= Np)


@pytest.mark.parametrize("key", list(CONFIGS))
def test_simple_reflection_length_step(key):
    """l(s_a w) = l(w) + 1 when w^{-1} a > 0, for a simple affine."""
    d = CONFIGS[key].datum
    for w in _pool(d, 4):
        winv = w.inverse()
        for a in simple_affine_roots(d):
            step = 1 if is_positive(d, affine_action(d, winv, a)) else -1
            assert length(d, affine_reflection(d, a) * w) == length(d, w) + step


@given(st.sampled_from(list(CONFIGS)), st.integers(0, 10 ** 6))
def test_affine_action_is_an_action(key, seed):
    d = CONFIGS[key].datum
    rng = random.Random(seed)
    w1, w2 = random_element(d, rng), random_element(d, rng)
    assert (w1 * w2).inverse() == w2.inverse() * w1.inverse()
    assert (w1 * w1.inverse()).is_identity
    for i in range(d.num_roots):
        a = AffineRoot(i, rng.randint(-3, 3))
        assert affine_action(d, w1 * w2, a) == affine_action(d, w1, affine_action(d, w2, a))
        # reflections negate their root and act on points by the reflection formula
        s = affine_reflection(d, a)
        assert affine_action(d, s, a) == a.negate(d)
        x = tuple(rng.randint(-3, 3) for _ in range(d.rank))
        sx = s.act(x)
        assert a.value(d, sx) == -a.value(d, x)
        # functions transform contravariantly: (w a)(w x) = a(x)
        assert affine_action(d, w1, a).value(d, w1.act(x)) == a.value(d, x)


def test_identity_has_empty_n_set():
    for key in CONFIGS:
        d = CONFIGS[key].datum
        assert n_set(d, ex_identity(d)) == frozenset()
        for a in simple_affine_roots(d):
            assert n_set(d, affine_reflection(d, a)) == {a}
