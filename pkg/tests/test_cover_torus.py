import random
import warnings

import pytest
from hypothesis import given, strategies as st

from genuine_hecke.cover_torus import (CoverTorusElt, DepthError, GenuineCharacter, bad_prime_check,
                                       c_alpha, char_eval, chi_affine, cocharacter, commutator, f_chi,
                                       fixes, h_alpha, j_chi_descriptor, torus_identity, torus_inverse,
                                       torus_mul, w_alpha_product, warn_bad_primes, weyl_act_char)
from genuine_hecke.presets import CONFIGS, random_character, random_element
from genuine_hecke.quad_cover import in_YQn
from genuine_hecke.root_datum import AffineRoot, affine_action, build_preset, translation
from genuine_hecke.tame_arith import FieldElt, UNIFORMIZER, hilbert_exp, unit

KEYS = list(CONFIGS)


@given(st.sampled_from(KEYS), st.integers(0, 10 ** 6))
def test_cover_torus_is_a_group(key, seed):
    cfg = CONFIGS[key]
    cover, F = cfg.cover, cfg.field
    rng = random.Random(seed)
    r = cover.datum.rank
    def mk():
        # central part lives in mu_n
        return CoverTorusElt(F.mu_step * rng.randrange(F.n), tuple(rng.randrange(F.order) for _ in range(r)),
                             tuple(rng.randint(-2, 2) for _ in range(r)))

    a, b, c = mk(), mk(), mk()
    mul = lambda x, y: torus_mul(cover, F, x, y)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    e = torus_identity(r)
    assert mul(a, e) == mul(e, a) == a
    assert mul(a, torus_inverse(cover, F, a)) == e


@given(st.sampled_from(KEYS), st.integers(0, 10 ** 6))
def test_commutator_is_B_Q_power_of_symbol(key, seed):
    """[s(y(a)), s(z(b))] = (a, b)_n^{B_Q(y, z)}."""
    cfg = CONFIGS[key]
    cover, F = cfg.cover, cfg.field
    rng = random.Random(seed)
    r = cover.datum.rank
    y = tuple(rng.randint(-2, 2) for _ in range(r))
    z = tuple(rng.randint(-2, 2) for _ in range(r))
    a = FieldElt(rng.randint(-2, 2), rng.randrange(F.order))
    b = FieldElt(rng.randint(-2, 2), rng.randrange(F.order))
    c = commutator(cover, F, cocharacter(F, y, a), cocharacter(F, z, b))
    assert c.unit_part == (0,) * r and c.trans_part == (0,) * r
    assert c.zeta == (cover.B(y, z) * hilbert_exp(F, a, b)) % F.order


@pytest.mark.parametrize("key", KEYS)
def test_w_alpha_product_shape(key):
    cfg = CONFIGS[key]
    cover, F = cfg.cover, cfg.field
    x1, x2 = FieldElt(1, 1), FieldElt(0, 2)
    for i in range(cover.datum.num_roots):
        t = w_alpha_product(cover, F, i, x1, x2)
        h = h_alpha(cover, F, i, FieldElt(1, 1 - 2 + F.minus_one))
        assert t.unit_part == h.unit_part and t.trans_part == h.trans_part
        assert F.in_mu_n(t.zeta)


@pytest.mark.parametrize("key", KEYS)
def test_translation_action_matches_commutator(key):
    """t_y . chi shifts m(e_j) by eps of the commutator [s(y(varpi)), s(e_j(g))]."""
    cfg = CONFIGS[key]
    cover, F = cfg.cover, cfg.field
    r = cover.datum.rank
    chi = cfg.character((0,) * r)
    for y in [(1,) + (0,) * (r - 1), (0,) * (r - 1) + (2,), (1,) * r]:
        moved = weyl_act_char(translation(cover.datum, y), chi)
        for j in range(r):
            e = tuple(int(t == j) for t in range(r))
            c = commutator(cover, F, cocharacter(F, y, UNIFORMIZER), cocharacter(F, e, unit(1)))
            assert moved.m[j] == c.zeta % F.order


@pytest.mark.parametrize("key", KEYS)
def test_translations_fix_chi_iff_in_YQn(key):
    cfg = CONFIGS[key]
    rng = random.Random(3)
    import itertools
    for _ in range(5):
        chi = random_character(cfg, rng)
        for y in itertools.product(range(-3, 4), repeat=cfg.cover.datum.rank):
            assert fixes(translation(cfg.datum, y), chi) == in_YQn(cfg.cover, y)


@pytest.mark.parametrize("key", KEYS)
def test_action_and_equivariance(key):
    """(w1 w2) . chi = w1 . (w2 . chi) and chi_a = (w . chi)_{w a}."""
    cfg = CONFIGS[key]
    d = cfg.datum
    rng = random.Random(11)
    for _ in range(20):
        chi = random_character(cfg, rng)
        w1, w2 = random_element(d, rng), random_element(d, rng)
        assert weyl_act_char(w1 * w2, chi) == weyl_act_char(w1, weyl_act_char(w2, chi))
        wchi = weyl_act_char(w1, chi)
        for i in range(d.num_roots):
            for k in range(-3, 4):
                a = AffineRoot(i, k)
                assert chi_affine(chi, a) == chi_affine(wchi, affine_action(d, w1, a))


def test_char_eval():
    cfg = CONFIGS["SL3"]
    chi = cfg.character((3, 3))
    assert char_eval(chi, CoverTorusElt(3, (1, 0), (0, 0))) == (3 + 3) % 6
    with pytest.raises(ValueError):
        char_eval(chi, CoverTorusElt(0, (0, 0), (1, 0)))


def test_depth_descriptor_and_errors():
    cfg = CONFIGS["SL2"]
    with pytest.raises(DepthError):
        GenuineCharacter(cfg.field, cfg.cover, (0,), {0: 0})
    chi = GenuineCharacter(cfg.field, cfg.cover, (0,), {0: 3, 1: 2})
    assert not chi.is_depth_zero
    assert c_alpha(chi, 0) == 3 and f_chi(chi, 0) == 1 and f_chi(chi, 1) == 1
    desc = j_chi_descriptor(chi)
    assert desc.f_values == {0: 1, 1: 1}
    with pytest.raises(DepthError):
        chi_affine(chi, AffineRoot(0, 0))
    chi0 = cfg.character((0,))
    assert chi0.is_depth_zero and j_chi_descriptor(chi0).f_values == {0: 0, 1: 1}


def test_bad_primes():
    assert bad_prime_check(build_preset("SL", 3), 3)
    assert not bad_prime_check(build_preset("SL", 3), 5)
    assert bad_prime_check(build_preset("Sp", 4), 2)
    assert not bad_prime_check(build_preset("Sp", 4), 3)
    g2 = bad_prime_check(build_preset("G2"), 5)
    assert g2 and "G2" in g2[0]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        warn_bad_primes(build_preset("SL", 2), 2)
    assert len(caught) == 1
