"""Concrete instances: quadratic Lie algebras, the coadjoint double g + g*, string Lie 2-algebras,
the canonical 3-cocycle on the double and the omni-Lie representation of gl(n) on R^n."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .algebra import (
    AlternatingMap,
    CoboundaryCertificate,
    LieAlgebra,
    coboundary_certificate,
    lie_bracket,
)
from .catalog import gl
from .errors import InvalidPairing, InvalidQuadratic
from .linalg import eye, qarray, zeros
from .linfty import TwoTermLInfinity, semidirect
from .rep import RepUpToHomotopy, TwoTermComplex, check_pairing

HALF = Fraction(1, 2)


@dataclass(frozen=True, eq=False)
class QuadraticLieAlgebra:
    """A Lie algebra with a nondegenerate ad-invariant symmetric form; validated on construction."""

    g: LieAlgebra
    pairing: np.ndarray

    def __post_init__(self):
        p = qarray(self.pairing)
        try:
            check_pairing(self.g, p)
        except InvalidPairing as exc:
            raise InvalidQuadratic(str(exc)) from None
        object.__setattr__(self, "pairing", p)

    @property
    def dim(self) -> int:
        return self.g.dim

    def pair(self, x, y):
        return np.asarray(x, dtype=object) @ self.pairing @ np.asarray(y, dtype=object)

    def cartan_form(self) -> AlternatingMap:
        """(x, y, z) -> <[x, y], z> as a real-valued 3-cochain."""
        g = self.g
        c = g.structure_constants
        return AlternatingMap.from_function(3, g.dim, 1, lambda i, j, k: [c[i, j] @ self.pairing[:, k]])


def double_algebra(g: LieAlgebra) -> LieAlgebra:
    """g + g* with [X+xi, Y+eta] = [X,Y] + ad*_X eta - ad*_Y xi; dual basis vectors come second."""
    n = g.dim
    c = zeros(2 * n, 2 * n, 2 * n)
    c[:n, :n, :n] = g.structure_constants
    for i in range(n):
        coad = g.coad_basis[i]
        for a in range(n):
            c[i, n + a, n:] = coad[:, a]
            c[n + a, i, n:] = -coad[:, a]
    labels = tuple(g.basis_labels) + tuple(f"{s}*" for s in g.basis_labels)
    return LieAlgebra(c, labels, f"double({g.name})")


def double_pairing(n: int) -> np.ndarray:
    """<X+xi, Y+eta> = (xi(Y) + eta(X)) / 2."""
    p = zeros(2 * n, 2 * n)
    p[:n, n:] = HALF * eye(n)
    p[n:, :n] = HALF * eye(n)
    return p


def double(g: LieAlgebra) -> QuadraticLieAlgebra:
    return QuadraticLieAlgebra(double_algebra(g), double_pairing(g.dim))


def string_lie2(q: QuadraticLieAlgebra, sign: int = 1) -> TwoTermLInfinity:
    """R --0--> k with l2 the bracket of k, l2(x, c) = 0 and l3(x, y, z) = sign * <[x, y], z>."""
    if not isinstance(q, QuadraticLieAlgebra):
        raise InvalidQuadratic("expected a QuadraticLieAlgebra")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    k = q.g
    n = k.dim
    l2 = AlternatingMap.from_function(2, n, n, lambda i, j: k.structure_constants[i, j])
    l3 = q.cartan_form().scale(sign)
    return TwoTermLInfinity(1, n, zeros(n, 1), l2, tuple(zeros(1, 1) for _ in range(n)), l3,
                            name=f"string({k.name})")


def nu_tilde(g: LieAlgebra) -> AlternatingMap:
    """3-cochain on g + g*: (X1+xi1, X2+xi2, X3+xi3) -> xi3([X1, X2]) / 2 + cyclic."""
    n = g.dim

    def value(u, v, w):
        X = [u[:n], v[:n], w[:n]]
        xi = [u[n:], v[n:], w[n:]]
        total = Fraction(0)
        for a, b, e in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            total += HALF * (xi[e] @ lie_bracket(g, X[a], X[b]))
        return total

    basis = eye(2 * n)
    return AlternatingMap.from_function(3, 2 * n, 1, lambda i, j, k: [value(basis[i], basis[j], basis[k])])


def nonexactness_certificate(g: LieAlgebra) -> CoboundaryCertificate:
    """Solve d(phi) = nu_tilde on the double with trivial coefficients."""
    return coboundary_certificate(double_algebra(g), None, nu_tilde(g))


def check_nonexactness(g: LieAlgebra) -> bool:
    """True when nu_tilde has a nonzero cohomology class."""
    return not nonexactness_certificate(g).exact


def double_primitive(g: LieAlgebra) -> AlternatingMap:
    """The 2-cochain (X+xi, Y+eta) -> (eta(X) - xi(Y)) / 2 on g + g*."""
    n = g.dim
    vals = {}
    for i in range(n):
        vals[(i, n + i)] = [HALF]
    return AlternatingMap(2, 2 * n, 1, vals)


# ---------------------------------------------------------------------------
# omni-Lie


def omni_lie(n: int) -> tuple[RepUpToHomotopy, TwoTermLInfinity]:
    """gl(n) on R^n --Id--> R^n with mu0 = mu1 = A/2 and nu(A, B) = [A, B]/4."""
    if n < 1:
        raise ValueError("n must be positive")
    g = gl(n)
    mats = []
    for i in range(n):
        for j in range(n):
            m = zeros(n, n)
            m[i, j] = Fraction(1)
            mats.append(m)
    mu = tuple(HALF * m for m in mats)
    quarter = Fraction(1, 4)
    nu = {}
    for a, b in combinations(range(n * n), 2):
        comm = mats[a] @ mats[b] - mats[b] @ mats[a]
        if any(v != 0 for v in comm.reshape(-1)):
            nu[(a, b)] = (quarter * comm).reshape(-1)
    r = RepUpToHomotopy(g, TwoTermComplex.identity(n), mu, mu, AlternatingMap(2, n * n, n * n, nu))
    return r, semidirect(r)
