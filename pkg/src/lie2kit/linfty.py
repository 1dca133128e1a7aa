"""2-term L-infinity algebras L1 --d--> L0 with brackets l2 and l3.

Conventions: L0 sits in degree 0, L1 in degree 1.  ``l2_01[x]`` is the matrix of
m -> l2(x, m) on L1, and graded symmetry gives l2(m, x) = -l2(x, m).  l2 of two
degree-1 elements and l3 with a degree-1 argument vanish for degree reasons.

Specialising the generalized Jacobi identities to this setting leaves, for
x, y, z, w in L0 and m, n in L1:

    chain           d(l2(x, m)) = l2(x, d m)
    degree-one      l2(d m, n) + l2(d n, m) = 0
    jacobiator      [[x,y],z] + [[y,z],x] + [[z,x],y] + d l3(x, y, z) = 0
    mixed           l2([x,y], m) - l2(x, l2(y, m)) + l2(y, l2(x, m)) + l3(x, y, d m) = 0
    coherence       sum over (2,2) unshuffles of sgn * l3(l2(a, b), c, e)
                    + sum over (3,1) unshuffles of sgn * l2(e, l3(a, b, c)) = 0

Every other arity and degree combination is empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .algebra import AlternatingMap, LieAlgebra, check_action, ce_differential, solve_coboundary
from .errors import DimensionError, InvalidLInfinity, InvalidRep, NotSkeletal
from .linalg import is_zero, max_abs, zeros
from .rep import RepUpToHomotopy, check_rep
from .report import Report, timed


@dataclass(frozen=True, eq=False)
class TwoTermLInfinity:
    l1_dim: int
    l0_dim: int
    d: np.ndarray
    l2_00: AlternatingMap
    l2_01: tuple
    l3: AlternatingMap
    name: str = ""

    def __post_init__(self):
        n0, n1 = self.l0_dim, self.l1_dim
        if np.size(self.d) != n0 * n1:
            raise DimensionError(f"d must have shape ({n0}, {n1})")
        object.__setattr__(self, "d", np.asarray(self.d, dtype=object).reshape(n0, n1))
        if (self.l2_00.arity, self.l2_00.source_dim, self.l2_00.target_dim) != (2, n0, n0):
            raise DimensionError("l2_00 must be an alternating map L0 x L0 -> L0")
        if (self.l3.arity, self.l3.source_dim, self.l3.target_dim) != (3, n0, n1):
            raise DimensionError("l3 must be an alternating map L0^3 -> L1")
        if len(self.l2_01) != n0:
            raise DimensionError("l2_01 needs one matrix per basis element of L0")
        mats = tuple(np.asarray(a, dtype=object).reshape(n1, n1) for a in self.l2_01)
        object.__setattr__(self, "l2_01", mats)

    @property
    def is_skeletal(self) -> bool:
        return is_zero(self.d)

    @property
    def bracket_tensor(self) -> np.ndarray:
        return self.l2_00.dense

    def l2(self, x, y) -> np.ndarray:
        return self.l2_00(x, y)

    def action(self, x) -> np.ndarray:
        out = zeros(self.l1_dim, self.l1_dim)
        for xi, a in zip(x, self.l2_01):
            if xi != 0:
                out = out + xi * a
        return out

    def l2m(self, x, m) -> np.ndarray:
        return self.action(x) @ np.asarray(m, dtype=object)

    def with_l3(self, l3: AlternatingMap) -> "TwoTermLInfinity":
        return TwoTermLInfinity(self.l1_dim, self.l0_dim, self.d, self.l2_00, self.l2_01, l3, self.name)


def _unit(n: int, i: int) -> np.ndarray:
    v = zeros(n)
    v[i] = 1
    return v


def jacobiator(L: TwoTermLInfinity, x, y, z) -> np.ndarray:
    br = L.l2
    return br(br(x, y), z) + br(br(y, z), x) + br(br(z, x), y)


RELATIONS = ("chain", "degree-one", "jacobiator", "mixed", "coherence")


def relation_residuals(L: TwoTermLInfinity):
    """Yield (family, basis tuple, residual vector) for every nonvacuous relation.

    Tuples: chain (x, m), degree-one (m, n) with m <= n, jacobiator (x, y, z),
    mixed (x, y, m) and coherence (a, b, c, e), L0 indices increasing.
    """
    n0, n1 = L.l0_dim, L.l1_dim
    B = L.bracket_tensor
    T = L.l3.dense
    A = L.l2_01
    d = L.d
    for i in range(n0):
        for a in range(n1):
            yield "chain", (i, a), d @ A[i][:, a] - np.tensordot(B[i], d[:, a], axes=([0], [0]))
    for a in range(n1):
        for b in range(a, n1):
            yield "degree-one", (a, b), L.action(d[:, a])[:, b] + L.action(d[:, b])[:, a]
    for i, j, k in combinations(range(n0), 3):
        yield "jacobiator", (i, j, k), B[i, j] @ B[:, k] + B[j, k] @ B[:, i] + B[k, i] @ B[:, j] + d @ T[i, j, k]
    for i, j in combinations(range(n0), 2):
        comm = L.action(B[i, j]) - A[i] @ A[j] + A[j] @ A[i]
        for a in range(n1):
            yield "mixed", (i, j, a), comm[:, a] + np.tensordot(T[i, j], d[:, a], axes=([0], [0]))
    for quad in combinations(range(n0), 4):
        yield "coherence", quad, coherence_defect(B, T, A, quad)


def check_linfty(L: TwoTermLInfinity) -> Report:
    """All nonvacuous relations on basis tuples, with exact residuals."""
    rep = Report("linfty", L.name)
    with timed(rep):
        for family in RELATIONS:
            rep.check(family)
        for family, where, val in relation_residuals(L):
            res = max_abs(val)
            rep[family].observe(res, res != 0, where)
    return rep


# (2,2) unshuffles of positions 0..3 with permutation signs; (3,1) likewise
_SHUFFLES_22 = [((0, 1), (2, 3), 1), ((0, 2), (1, 3), -1), ((0, 3), (1, 2), 1),
                ((1, 2), (0, 3), 1), ((1, 3), (0, 2), -1), ((2, 3), (0, 1), 1)]
_SHUFFLES_31 = [((0, 1, 2), 3, 1), ((0, 1, 3), 2, -1), ((0, 2, 3), 1, 1), ((1, 2, 3), 0, -1)]


def coherence_defect(B, T, A, quad) -> np.ndarray:
    q = quad
    out = 0
    for (a, b), (c, e), s in _SHUFFLES_22:
        out = out + s * (B[q[a], q[b]] @ T[:, q[c], q[e]])
    for (a, b, c), e, s in _SHUFFLES_31:
        out = out + s * (A[q[e]] @ T[q[a], q[b], q[c]])
    return out


# ---------------------------------------------------------------------------
# semidirect product with a representation up to homotopy


def semidirect(r: RepUpToHomotopy, validate: bool = True) -> TwoTermLInfinity:
    """L0 = g + V0, L1 = V1, brackets from the action and l3(X,Y,xi) = -nu(X,Y) xi (+ cyclic)."""
    if validate:
        rep = check_rep(r)
        if not rep.ok:
            raise InvalidRep(f"not a representation up to homotopy: failed {rep.failed}")
    g = r.g
    n, v0, v1 = g.dim, r.complex.v0, r.complex.v1
    n0 = n + v0
    c = g.structure_constants
    d = zeros(n0, v1)
    d[n:, :] = r.d
    l2 = {}
    for i, j in combinations(range(n), 2):
        val = zeros(n0)
        val[:n] = c[i, j]
        l2[(i, j)] = val
    for i in range(n):
        for a in range(v0):
            val = zeros(n0)
            val[n:] = r.mu0[i][:, a]
            l2[(i, n + a)] = val
    l2_00 = AlternatingMap(2, n0, n0, l2)
    l2_01 = tuple(r.mu1[i] for i in range(n)) + tuple(zeros(v1, v1) for _ in range(v0))
    l3 = {}
    for i, j in combinations(range(n), 2):
        nij = r.nu_basis(i, j)
        for a in range(v0):
            l3[(i, j, n + a)] = -nij[:, a]
    return TwoTermLInfinity(v1, n0, d, l2_00, l2_01, AlternatingMap(3, n0, v1, l3),
                            name=f"{g.name} semidirect")


def nu_tilde_of_rep(r: RepUpToHomotopy) -> AlternatingMap:
    """The 3-cochain (X1+xi1, X2+xi2, X3+xi3) -> nu(X1,X2) xi3 + c.p. on g + V0."""
    n, v0, v1 = r.g.dim, r.complex.v0, r.complex.v1
    vals = {}
    for i, j in combinations(range(n), 2):
        nij = r.nu_basis(i, j)
        for a in range(v0):
            vals[(i, j, n + a)] = nij[:, a]
    return AlternatingMap(3, n + v0, v1, vals)


def extended_action(r: RepUpToHomotopy) -> list[np.ndarray]:
    """mu1 on g extended by zero on V0."""
    v1 = r.complex.v1
    return list(r.mu1) + [zeros(v1, v1) for _ in range(r.complex.v0)]


# ---------------------------------------------------------------------------
# skeletal algebras and their quadruples


@dataclass(frozen=True, eq=False)
class SkeletalQuadruple:
    k1: LieAlgebra
    k2_dim: int
    phi: tuple
    theta: AlternatingMap


def underlying_algebra(L: TwoTermLInfinity) -> LieAlgebra:
    return LieAlgebra(L.bracket_tensor.copy(), name=L.name or "k1")


def extract_quadruple(L: TwoTermLInfinity) -> SkeletalQuadruple:
    """Skeletal L -> (k1, k2, phi, theta); raises if the invariants fail."""
    if not L.is_skeletal:
        raise NotSkeletal("d is nonzero")
    rep = check_linfty(L)
    if not rep["jacobiator"].passed:
        raise InvalidLInfinity("l2 on L0 does not satisfy the Jacobi identity")
    k1 = underlying_algebra(L)
    phi = tuple(L.l2_01)
    if not check_action(k1, phi).ok:
        raise InvalidLInfinity("x -> l2(x, .) is not a Lie algebra morphism")
    if not ce_differential(k1, phi, L.l3).is_zero():
        raise InvalidLInfinity("theta = l3 is not a 3-cocycle")
    return SkeletalQuadruple(k1, L.l1_dim, phi, L.l3)


def is_strict_class(L: TwoTermLInfinity) -> bool:
    """True iff theta is a coboundary, i.e. L is equivalent to a strict Lie 2-algebra."""
    q = extract_quadruple(L)
    return solve_coboundary(q.k1, q.phi, q.theta) is not None
