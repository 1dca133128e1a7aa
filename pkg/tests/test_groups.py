import random
from fractions import Fraction

import numpy as np
import pytest

from lie2kit.algebra import LieAlgebra
from lie2kit.catalog import abelian, heis3, so3
from lie2kit.errors import NotNilpotent
from lie2kit.groups import Jet, NilpotentGroup, SO3Group, jet_vector, make_group
from lie2kit.linalg import eye, qarray


def filiform(n):
    """[e0, ei] = e(i+1) for 1 <= i < n-1; nilpotency class n-1."""
    return LieAlgebra.from_brackets(n, {(0, i): {i + 1: 1} for i in range(1, n - 1)}, name=f"n{n}")


GROUPS = [heis3(), abelian(3), filiform(4), filiform(5)]


@pytest.mark.parametrize("g", GROUPS, ids=lambda g: g.name)
def test_group_axioms(g):
    G = NilpotentGroup(g)
    rng = random.Random(1)
    for _ in range(20):
        a, b, c = (G.sample(rng) for _ in range(3))
        assert G.equal(G.mul(G.mul(a, b), c), G.mul(a, G.mul(b, c)))
        assert G.equal(G.mul(a, G.inv(a)), G.identity())
        assert G.equal(G.mul(G.identity(), a), a)


@pytest.mark.parametrize("g", GROUPS, ids=lambda g: g.name)
def test_adjoint_is_a_homomorphism_and_conjugation(g):
    G = NilpotentGroup(g)
    rng = random.Random(2)
    for _ in range(10):
        a, b, y = G.sample(rng), G.sample(rng), G.sample(rng)
        assert (G.Ad(G.mul(a, b)) == G.Ad(a).dot(G.Ad(b))).all()
        # in exponential coordinates a exp(Y) a^-1 = exp(Ad_a Y)
        assert G.equal(G.mul(G.mul(a, y), G.inv(a)), G.Ad(a).dot(y))
        assert (G.coadjoint(a).T.dot(G.Ad(a)) == eye(g.dim)).all()


def test_heisenberg_product():
    G = NilpotentGroup(heis3())
    a, b = G.element([1, 0, 0]), G.element([0, 1, 0])
    assert list(G.mul(a, b)) == [1, 1, Fraction(1, 2)]


def test_float_mode_agrees_with_exact():
    ex, fl = NilpotentGroup(filiform(4)), NilpotentGroup(filiform(4), "float")
    rng = random.Random(3)
    for _ in range(5):
        a, b = ex.sample(rng), ex.sample(rng)
        got = fl.mul(fl.element(a), fl.element(b))
        assert np.allclose(got, np.array(ex.mul(a, b), dtype=float))


def test_jets():
    t1, t2 = Jet.t(0), Jet.t(1)
    assert t1 * t1 == 0
    assert (t1 * t2).coeff(3) == 1
    assert ((1 + t1) * (1 - t1)) == 1
    G = NilpotentGroup(heis3())
    x = jet_vector(qarray([1, 0, 0]), 0)
    y = jet_vector(qarray([0, 1, 0]), 1)
    p = G.mul(x, y)
    # the t1 t2 coefficient is half the bracket
    assert [v.coeff(3) if isinstance(v, Jet) else 0 for v in p] == [0, 0, Fraction(1, 2)]


def test_integrated_action():
    g = heis3()
    G = NilpotentGroup(g)
    act = G.integrate(g.ad_basis)
    rng = random.Random(4)
    for _ in range(5):
        a = G.sample(rng)
        assert (act(a) == G.Ad(a)).all()
    with pytest.raises(NotNilpotent):
        G.integrate([eye(2), eye(2), eye(2)])


def test_not_nilpotent():
    with pytest.raises(NotNilpotent):
        NilpotentGroup(so3())
    with pytest.raises(NotNilpotent):
        NilpotentGroup(filiform(6))
    with pytest.raises(NotNilpotent):
        make_group(so3())


def test_so3_group():
    G = make_group(so3(), "float")
    assert isinstance(G, SO3Group)
    rng = random.Random(5)
    R = G.sample(rng)
    assert np.allclose(G.mul(R, G.inv(R)), np.eye(3))
    x = np.array([0.3, -1.0, 2.0])
    # R hat(x) R^T = hat(R x): the adjoint action is R itself
    assert np.allclose(R @ G.hat(x) @ R.T, G.hat(R @ x))
    assert np.allclose(G.coadjoint(R), R)
