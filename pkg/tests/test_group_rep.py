import random
from fractions import Fraction

import numpy as np
import pytest

from lie2kit.catalog import abelian, heis3
from lie2kit.errors import InvalidRep, NotAssociative, NotMorphism
from lie2kit.group_rep import (
    TWO_GROUP_CHECKS,
    TwoGroup,
    check_fbar_cocycle,
    check_group_3cocycle,
    check_group_rep,
    check_two_group,
    coadjoint_rep,
    coboundary_1,
    f2_from_fbar,
    gauge,
    identity_complex_rep,
    strict_rep,
    two_group,
)
from lie2kit.groups import NilpotentGroup, SO3Group
from lie2kit.integrate import integrate_nilpotent, random_alpha
from lie2kit.linalg import eye, qarray, zeros
from lie2kit.rep import TwoTermComplex

HEIS = NilpotentGroup(heis3())


def ad_rep():
    return identity_complex_rep(HEIS, 3, HEIS.Ad, name="Id complex with Ad")


def shear_rep():
    # M(g) = I + a1 E13: M(1) = Id but not multiplicative, so F2 != 0
    def M(g):
        m = eye(2)
        m[0, 1] = g[0] * g[0]
        return m

    return identity_complex_rep(HEIS, 2, M, name="shear")


def add_to_F2(r, term):
    base = r.F2

    def F2(g1, g2):
        return base(g1, g2) + term(g1, g2)

    return r.with_F2(F2, name=f"{r.name} mutated")


def test_valid_instances():
    for r in (coadjoint_rep(HEIS), ad_rep(), shear_rep(), integrate_nilpotent(heis3())):
        rep = check_group_rep(r, samples=16, seed=1)
        assert rep.ok, (r.name, rep.failed)
        assert rep.extra["samples"]


def test_shear_has_nonzero_F2():
    r = shear_rep()
    g1, g2 = HEIS.element([1, 0, 0]), HEIS.element([1, 0, 0])
    assert r.F2(g1, g2)[0, 1] == -2


def test_tampered_F2_fails_coherence():
    r = integrate_nilpotent(heis3())

    def bump(g1, g2):
        out = zeros(1, 3)
        out[0, 0] = g1[0] * g2[0] * g2[1]
        return out

    rep = check_group_rep(add_to_F2(r, bump), samples=32, seed=2)
    assert rep.failed == ["coherence"]
    with pytest.raises(InvalidRep):
        two_group(add_to_F2(r, bump))


def test_associator_typing_tracks_the_defect_identity():
    """With d = Id, a bad F2 breaks the defect identity and the associator leaves its hom-set."""
    r = shear_rep()

    def bump(g1, g2):
        out = zeros(2, 2)
        out[1, 0] = g1[1] * g2[1]
        return out

    bad = add_to_F2(r, bump)
    group_rep = check_group_rep(bad, samples=32, seed=3)
    assert "defect-V0" in group_rep.failed
    tg = check_two_group(TwoGroup(bad), samples=32, seed=3)
    assert "associator-typed" in tg.failed
    assert check_two_group(TwoGroup(r), samples=32, seed=3).ok


def test_two_group_reports_every_family():
    rep = check_two_group(TwoGroup(ad_rep()), samples=8, seed=4)
    assert [c.name for c in rep.checks] == list(TWO_GROUP_CHECKS)
    assert rep.ok


def test_two_group_operations():
    t = TwoGroup(integrate_nilpotent(heis3()))
    rng = random.Random(5)
    x = t.random_object(rng)
    one = t.unit_object()
    assert t.object_distance(t.mul_objects(x, one), x) == 0
    assert t.object_distance(t.mul_objects(one, x), x) == 0
    f = t.random_morphism(rng)
    assert t.object_distance(t.source(t.identity(x)), x) == 0
    assert t.object_distance(t.target(t.identity(x)), x) == 0
    g, gap = t.compose(t.identity(t.target(f)), f)
    assert gap == 0 and t.morphism_distance(g, f) == 0


def abelian_plane():
    G = NilpotentGroup(abelian(2))
    one = eye(1)
    return strict_rep(G, TwoTermComplex.zero(1, 1), lambda g: (one, one), name="trivial R on R^2")


def test_bilinear_fbar_is_a_cocycle_on_abelian_group():
    r = abelian_plane()

    def bilinear(g1, g2):
        return qarray([[3 * g1[0] * g2[1] - g1[1] * g2[1]]])

    def cubic(g1, g2):
        return qarray([[g1[0] * g1[0] * g2[0]]])

    assert check_fbar_cocycle(r, bilinear, samples=32, seed=6).ok
    assert "closed" in check_fbar_cocycle(r, cubic, samples=32, seed=6).failed
    assert check_group_3cocycle(r.with_F2(f2_from_fbar(r, bilinear)), samples=32, seed=6).ok
    assert not check_group_3cocycle(r.with_F2(f2_from_fbar(r, cubic)), samples=32, seed=6).ok


def test_coboundaries_are_cocycles_and_gauge_preserves_validity():
    r = integrate_nilpotent(heis3())
    for seed in range(3):
        alpha = random_alpha(heis3(), 1, 3, seed=seed)
        assert check_fbar_cocycle(r, coboundary_1(r, alpha), samples=16, seed=seed).ok
        gr = gauge(r, alpha)
        assert check_group_rep(gr, samples=16, seed=seed).ok
        assert check_fbar_cocycle(gr, gr.meta["fbar"], samples=16, seed=seed).ok


def test_non_morphism_F1_rejected():
    one = eye(1)
    bad = strict_rep(HEIS, TwoTermComplex.zero(1, 3), lambda g: (HEIS.coadjoint(g) + g[0] * eye(3), one))
    with pytest.raises(NotAssociative):
        check_group_3cocycle(bad, samples=4)
    from lie2kit.group_rep import exactness_transfer

    with pytest.raises(NotMorphism):
        exactness_transfer(random_alpha(heis3(), 1, 3, seed=0), bad, samples=4)


def test_so3_float_two_group():
    G = SO3Group()
    r = coadjoint_rep(G)
    assert check_group_rep(r, samples=16, seed=7).ok
    assert check_two_group(TwoGroup(r), samples=16, seed=7).ok
