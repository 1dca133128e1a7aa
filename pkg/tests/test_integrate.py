import random
from fractions import Fraction

import numpy as np
import pytest

from lie2kit.algebra import AlternatingMap, LieAlgebra
from lie2kit.catalog import abelian, heis3, so3
from lie2kit.constructions import nu_tilde
from lie2kit.errors import InvalidRep, ModeUnsupported, NotNilpotent
from lie2kit.group_rep import check_fbar_cocycle, check_group_3cocycle, check_group_rep, coadjoint_rep, gauge
from lie2kit.groups import SO3Group
from lie2kit.integrate import (
    PolyMap,
    default_datum,
    derivative_error,
    differentiate_3cocycle,
    integrate_nilpotent,
    random_alpha,
    solve_fbar,
)
from lie2kit.linalg import qarray, zeros
from lie2kit.linfty import nu_tilde_of_rep
from lie2kit.rep import RepUpToHomotopy, TwoTermComplex, random_rep


def filiform4():
    return LieAlgebra.from_brackets(4, {(0, 1): {2: 1}, (0, 2): {3: 1}}, name="n4")


def test_heisenberg_fbar():
    fbar = solve_fbar(default_datum(heis3()))
    # exponent tuples over (a1, a2, a3, b1, b2, b3)
    assert set(fbar.terms) == {(1, 0, 0, 0, 1, 0), (0, 1, 0, 1, 0, 0)}
    assert list(fbar.terms[(1, 0, 0, 0, 1, 0)].reshape(-1)) == [0, 0, Fraction(1, 4)]
    assert list(fbar.terms[(0, 1, 0, 1, 0, 0)].reshape(-1)) == [0, 0, Fraction(-1, 4)]
    assert "a1*b2 * [0, 0, 1/4]" in fbar.format()


def test_abelian_fbar_is_half_nu():
    g = abelian(3)
    rng = random.Random(0)
    nu = AlternatingMap.from_function(2, 3, 2, lambda i, j: [rng.randint(-3, 3) for _ in range(2)])
    cx = TwoTermComplex.zero(1, 2)
    r = RepUpToHomotopy(g, cx, tuple(zeros(2, 2) for _ in range(3)), tuple(zeros(1, 1) for _ in range(3)), nu)
    fbar = solve_fbar(r)
    assert fbar.degree == 2
    for _ in range(10):
        a, b = [qarray([rng.randint(-3, 3) for _ in range(3)]) for _ in range(2)]
        assert (fbar(a, b) == (nu(a, b) / 2).reshape(1, 2)).all()


@pytest.mark.parametrize("seed", range(3))
def test_random_heisenberg_reps_round_trip(seed):
    rep = random_rep(heis3(), TwoTermComplex.zero(1, 2), seed=seed)
    try:
        r = integrate_nilpotent(heis3(), rep)
    except NotNilpotent:
        pytest.skip("sampled action is not nilpotent")
    assert check_group_rep(r, samples=8, seed=seed).ok
    assert check_fbar_cocycle(r, r.meta["fbar"], samples=8, seed=seed).ok
    assert differentiate_3cocycle(r, "jet") == nu_tilde_of_rep(rep)


def test_class_three_round_trip():
    g = filiform4()
    r = integrate_nilpotent(g)
    assert r.meta["fbar"].degree >= 3
    assert check_group_3cocycle(r, samples=8, seed=1).ok
    assert differentiate_3cocycle(r, "jet") == nu_tilde(g)


def test_float_and_symbolic_modes():
    fl = integrate_nilpotent(heis3(), mode="float")
    assert check_group_rep(fl, samples=8).ok
    err = derivative_error(differentiate_3cocycle(fl, "fd", 1e-3), nu_tilde(heis3()))
    assert err < 1e-8
    sym = integrate_nilpotent(heis3(), mode="symbolic")
    assert sym.meta["fbar_exact"].terms.keys() == fl.meta["fbar_exact"].terms.keys()


def test_fd_converges_at_second_order_on_gauged_instance():
    """The gauge adds cubic terms, so the central difference has a genuine h^2 error."""
    r = gauge(integrate_nilpotent(heis3()), random_alpha(heis3(), 1, 3, seed=0))
    exact = differentiate_3cocycle(r, "jet")
    e1 = derivative_error(differentiate_3cocycle(r, "fd", 1e-2), exact)
    e2 = derivative_error(differentiate_3cocycle(r, "fd", 5e-3), exact)
    assert e1 > 1e-8
    assert 3.5 < e1 / e2 < 4.5


def test_errors():
    with pytest.raises(NotNilpotent):
        integrate_nilpotent(so3())
    with pytest.raises(ModeUnsupported):
        differentiate_3cocycle(coadjoint_rep(SO3Group()), "jet")
    with pytest.raises((ModeUnsupported, ValueError)):
        differentiate_3cocycle(integrate_nilpotent(heis3()), "spline")
    cx = TwoTermComplex(1, 1, qarray([[1]]))
    bad = RepUpToHomotopy(abelian(2), cx, (zeros(1, 1),) * 2, (zeros(1, 1),) * 2, AlternatingMap.zero(2, 2, 1))
    with pytest.raises(InvalidRep):
        solve_fbar(bad)


def test_polymap_roundtrip_dict():
    alpha = random_alpha(heis3(), 1, 3, seed=4)
    d = alpha.to_dict()
    assert d["nargs"] == 1 and d["dim"] == 3
    rebuilt = PolyMap(1, 3, 1, 3, {tuple(e): [Fraction(v) for v in m] for e, m in d["terms"]})
    x = qarray([1, -2, 3])
    assert (rebuilt(x) == alpha(x)).all()
