from fractions import Fraction

import pytest

from lie2kit.algebra import AlternatingMap, ce_differential
from lie2kit.catalog import abelian, get, heis3, so3
from lie2kit.constructions import QuadraticLieAlgebra, double, omni_lie, string_lie2
from lie2kit.errors import DimensionError, InvalidRep
from lie2kit.linalg import eye, zeros
from lie2kit.linfty import (
    check_linfty,
    extended_action,
    extract_quadruple,
    is_strict_class,
    jacobiator,
    nu_tilde_of_rep,
    semidirect,
    underlying_algebra,
)
from lie2kit.rep import TwoTermComplex, random_rep, rep_from_quadratic

FAMILIES = {"chain", "degree-one", "jacobiator", "mixed", "coherence"}


def test_report_families():
    rep = check_linfty(string_lie2(double(so3())))
    assert {c.name for c in rep.checks} == FAMILIES
    assert rep.ok


@pytest.mark.parametrize("name", ["so3", "heis3", "sl2"])
def test_random_semidirect(name):
    r = random_rep(get(name), TwoTermComplex.zero(1, 2), seed=5)
    assert check_linfty(semidirect(r)).ok


def test_l3_sign_matters_when_d_is_nonzero():
    _, L = omni_lie(2)
    assert check_linfty(L).ok
    flipped = check_linfty(L.with_l3(L.l3.scale(-1)))
    assert "jacobiator" in flipped.failed


def test_semidirect_l3_is_minus_nu():
    r = rep_from_quadratic(heis3())
    L = semidirect(r)
    n = 3
    # l3(e0, e1, xi_2) = -nu(e0, e1) xi_2
    assert L.l3.basis_value((0, 1, n + 2))[0] == -r.nu_basis(0, 1)[0, 2]


@pytest.mark.parametrize("sign", [1, -1])
def test_string_accepts_both_signs(sign):
    assert check_linfty(string_lie2(double(heis3()), sign=sign)).ok


def test_string_jacobiator_equals_d_of_l3():
    L = string_lie2(double(so3()))
    x, y, z = (zeros(6) for _ in range(3))
    x[0], y[1], z[2] = 1, 1, 1
    # l1 = 0, so the bracket on degree 0 is an honest Lie bracket
    assert list(jacobiator(L, x, y, z)) == [0] * 6


def test_semidirect_rejects_invalid_rep():
    r = rep_from_quadratic(heis3())
    bad = r.with_nu(AlternatingMap(2, 3, 3, {(0, 2): [1, 0, 0]}))
    with pytest.raises(InvalidRep):
        semidirect(bad)


def test_extract_quadruple_of_semidirect():
    r = rep_from_quadratic(heis3())
    L = semidirect(r)
    q = extract_quadruple(L)
    assert q.k1.dim == 6 and q.k2_dim == 1
    assert q.theta == nu_tilde_of_rep(r).scale(-1)
    k = underlying_algebra(L)
    assert ce_differential(k, q.phi, q.theta).is_zero()


def test_extended_action_is_an_action():
    from lie2kit.algebra import check_action

    r = random_rep(so3(), TwoTermComplex.zero(2, 1), seed=2)
    k = underlying_algebra(semidirect(r))
    assert check_action(k, extended_action(r)).ok


def test_strict_class_detection():
    assert is_strict_class(string_lie2(double(abelian(2))))
    # the Cartan 3-form of so3 itself carries the generator of H^3
    assert not is_strict_class(string_lie2(QuadraticLieAlgebra(so3(), eye(3))))
    # on the double the class vanishes
    assert is_strict_class(string_lie2(double(heis3())))
