from fractions import Fraction

import numpy as np
import pytest

from lie2kit.algebra import AlternatingMap, coadjoint_action
from lie2kit.catalog import get, heis3, so3
from lie2kit.errors import DimensionError, InvalidPairing
from lie2kit.linalg import eye, qarray, zeros
from lie2kit.rep import (
    RepUpToHomotopy,
    TwoTermComplex,
    check_pairing,
    check_rep,
    nu_differential,
    random_rep,
    rep_from_quadratic,
)


@pytest.mark.parametrize("name", ["so3", "sl2", "heis3", "abelian:2"])
@pytest.mark.parametrize("seed", range(4))
def test_random_rep_is_valid(name, seed):
    r = random_rep(get(name), TwoTermComplex.zero(2, 2), seed=seed)
    assert check_rep(r).ok


def test_random_rep_requires_zero_differential():
    with pytest.raises(DimensionError):
        random_rep(get("heis3"), TwoTermComplex(1, 1, qarray([[1]])), seed=1)


def test_strict_coadjoint():
    g = so3()
    r = RepUpToHomotopy(g, TwoTermComplex.zero(1, 3), tuple(coadjoint_action(g)),
                        tuple(zeros(1, 1) for _ in range(3)), AlternatingMap.zero(2, 3, 3))
    assert r.is_strict and check_rep(r).ok


def test_mu1_perturbation_breaks_chain_map():
    g = so3()
    cx = TwoTermComplex.identity(3)
    mu = tuple(coadjoint_action(g))
    r = RepUpToHomotopy(g, cx, mu, mu, AlternatingMap.zero(2, 3, 9))
    assert check_rep(r).ok
    bad = RepUpToHomotopy(g, cx, mu, (mu[0] + eye(3),) + mu[1:], AlternatingMap.zero(2, 3, 9))
    rep = check_rep(bad)
    assert not rep["chain"].passed


def test_non_cocycle_nu_is_flagged():
    r = rep_from_quadratic(heis3())
    assert check_rep(r).ok
    # with d = 0 any multiple of a cocycle stays valid
    assert check_rep(r.with_nu(r.nu.scale(2))).ok
    wrong = r.with_nu(AlternatingMap(2, 3, 3, {(0, 2): [1, 0, 0]}))
    assert check_rep(wrong).failed == ["nu-cocycle"]


def test_quadratic_rep_values():
    r = rep_from_quadratic(so3(), half_pairing=True)
    x, y = so3().basis_vector(0), so3().basis_vector(1)
    # nu(e0, e1) maps e2* to 1/2
    assert r.nu_at(x, y)[0, 2] == Fraction(1, 2)
    assert check_rep(r).ok
    assert nu_differential(r).is_zero()


def test_pairing_validation():
    with pytest.raises(InvalidPairing):
        check_pairing(so3(), qarray([[1, 0, 0], [0, 1, 0], [0, 0, 2]]))
    with pytest.raises((InvalidPairing, DimensionError)):
        check_pairing(so3(), eye(2))
    check_pairing(so3(), eye(3))
