"""Two-term complexes and representations up to homotopy of a Lie algebra."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .algebra import (
    AlternatingMap,
    LieAlgebra,
    cocycle_space,
    direct_sum_action,
    hom_action,
)
from .errors import DimensionError, InvalidPairing
from .linalg import det, is_zero, max_abs, qarray, zeros
from .report import Report, timed


@dataclass(frozen=True, eq=False)
class TwoTermComplex:
    """V1 --d--> V0; ``d`` has shape (v0, v1)."""

    v1: int
    v0: int
    d: np.ndarray

    def __post_init__(self):
        if self.v1 < 0 or self.v0 < 0:
            raise DimensionError("negative dimension")
        if np.size(self.d) != self.v0 * self.v1:
            raise DimensionError(f"d must have shape ({self.v0}, {self.v1})")
        object.__setattr__(self, "d", np.asarray(self.d, dtype=object).reshape(self.v0, self.v1))

    @classmethod
    def zero(cls, v1: int, v0: int) -> "TwoTermComplex":
        return cls(v1, v0, zeros(v0, v1))

    @classmethod
    def identity(cls, n: int) -> "TwoTermComplex":
        from .linalg import eye

        return cls(n, n, eye(n))

    @property
    def is_zero(self) -> bool:
        return is_zero(self.d)


@dataclass(frozen=True, eq=False)
class RepUpToHomotopy:
    """``nu`` takes values in Hom(V0, V1), each value a v1 x v0 matrix flattened row-major."""

    g: LieAlgebra
    complex: TwoTermComplex
    mu0: tuple
    mu1: tuple
    nu: AlternatingMap

    def __post_init__(self):
        n, v0, v1 = self.g.dim, self.complex.v0, self.complex.v1
        mu0 = tuple(np.asarray(m, dtype=object).reshape(v0, v0) for m in self.mu0)
        mu1 = tuple(np.asarray(m, dtype=object).reshape(v1, v1) for m in self.mu1)
        if len(mu0) != n or len(mu1) != n:
            raise DimensionError("mu0 and mu1 need one matrix per basis element")
        if (self.nu.arity, self.nu.source_dim, self.nu.target_dim) != (2, n, v1 * v0):
            raise DimensionError("nu must be an alternating 2-form on g with values in Hom(V0, V1)")
        object.__setattr__(self, "mu0", mu0)
        object.__setattr__(self, "mu1", mu1)

    @property
    def d(self) -> np.ndarray:
        return self.complex.d

    def nu_basis(self, i: int, j: int) -> np.ndarray:
        return self.nu.basis_value((i, j)).reshape(self.complex.v1, self.complex.v0)

    def nu_at(self, x, y) -> np.ndarray:
        return self.nu(x, y).reshape(self.complex.v1, self.complex.v0)

    def mu0_at(self, x) -> np.ndarray:
        return _combine(self.mu0, x, self.complex.v0)

    def mu1_at(self, x) -> np.ndarray:
        return _combine(self.mu1, x, self.complex.v1)

    @property
    def is_strict(self) -> bool:
        return self.nu.is_zero()

    def with_nu(self, nu: AlternatingMap) -> "RepUpToHomotopy":
        return RepUpToHomotopy(self.g, self.complex, self.mu0, self.mu1, nu)


def _combine(mats: Sequence[np.ndarray], x, size: int) -> np.ndarray:
    out = zeros(size, size)
    for xi, m in zip(x, mats):
        if xi != 0:
            out = out + xi * m
    return out


def nu_from_matrices(n: int, v0: int, v1: int, entries: dict) -> AlternatingMap:
    """``entries[(i, j)]`` is the v1 x v0 matrix of nu(e_i, e_j) for i < j."""
    return AlternatingMap(2, n, v1 * v0, {k: np.asarray(m, dtype=object).reshape(-1) for k, m in entries.items()})


def check_rep(r: RepUpToHomotopy) -> Report:
    """Exact check of the chain condition, both bracket defects and the 2-cocycle condition for nu.

    Families: ``chain`` d mu1 = mu0 d; ``mu0-defect`` mu0[X,Y] - [mu0 X, mu0 Y] = d nu(X,Y);
    ``mu1-defect`` mu1[X,Y] - [mu1 X, mu1 Y] = nu(X,Y) d; ``nu-cocycle``
    sum_cyc (mu1(X1) nu(X2,X3) - nu(X2,X3) mu0(X1)) = sum_cyc nu([X1,X2],X3).
    """
    g = r.g
    n = g.dim
    c = g.structure_constants
    d = r.d
    rep = Report("rep", g.name)
    with timed(rep):
        chain = rep.check("chain")
        for i in range(n):
            res = max_abs(d @ r.mu1[i] - r.mu0[i] @ d)
            chain.observe(res, res != 0, (i,))
        m0 = rep.check("mu0-defect")
        m1 = rep.check("mu1-defect")
        for i, j in combinations(range(n), 2):
            nij = r.nu_basis(i, j)
            br = c[i, j]
            a0 = r.mu0_at(br) - (r.mu0[i] @ r.mu0[j] - r.mu0[j] @ r.mu0[i]) - d @ nij
            a1 = r.mu1_at(br) - (r.mu1[i] @ r.mu1[j] - r.mu1[j] @ r.mu1[i]) - nij @ d
            res0, res1 = max_abs(a0), max_abs(a1)
            m0.observe(res0, res0 != 0, (i, j))
            m1.observe(res1, res1 != 0, (i, j))
        cyc = rep.check("nu-cocycle")
        for i, j, k in combinations(range(n), 3):
            total = zeros(r.complex.v1, r.complex.v0)
            for a, b, e in ((i, j, k), (j, k, i), (k, i, j)):
                nbe = r.nu_basis(b, e)
                total = total + r.mu1[a] @ nbe - nbe @ r.mu0[a]
                total = total - r.nu_at(c[a, b], g.basis_vector(e))
            res = max_abs(total)
            cyc.observe(res, res != 0, (i, j, k))
    return rep


def nu_differential(r: RepUpToHomotopy) -> AlternatingMap:
    """CE differential of nu for the action X . A = mu1(X) A - A mu0(X) on Hom(V0, V1)."""
    from .algebra import ce_differential

    return ce_differential(r.g, hom_action(r.mu0, r.mu1), r.nu)


# ---------------------------------------------------------------------------
# random valid instances


def _morphism_choices(g: LieAlgebra, m: int, rng: random.Random) -> list[np.ndarray]:
    """Direct sum of trivial, adjoint and coadjoint blocks of total size m."""
    n = g.dim
    blocks = []
    left = m
    while left > 0:
        kinds = ["trivial"]
        if left >= n:
            kinds += ["ad", "coad"]
        kind = rng.choice(kinds)
        if kind == "ad":
            blocks.append(list(g.ad_basis))
            left -= n
        elif kind == "coad":
            blocks.append(list(g.coad_basis))
            left -= n
        else:
            blocks.append([zeros(1, 1) for _ in range(n)])
            left -= 1
    if not blocks:
        return [zeros(0, 0) for _ in range(n)]
    return direct_sum_action(*blocks)


def random_rep(g: LieAlgebra, complex: TwoTermComplex, seed: int = 0, coeff: int = 3) -> RepUpToHomotopy:
    """Seeded valid instance with d = 0: catalog morphisms for mu0, mu1 and nu drawn from the cocycle kernel."""
    if not complex.is_zero:
        raise DimensionError("random_rep only samples complexes with d = 0")
    rng = random.Random(seed)
    mu0 = _morphism_choices(g, complex.v0, rng)
    mu1 = _morphism_choices(g, complex.v1, rng)
    target = complex.v1 * complex.v0
    if g.dim >= 2 and target > 0:
        basis = cocycle_space(g, hom_action(mu0, mu1), 2, target)
    else:
        basis = []
    nu = AlternatingMap.zero(2, g.dim, target)
    for b in basis:
        nu = nu + b.scale(rng.randint(-coeff, coeff))
    return RepUpToHomotopy(g, complex, tuple(mu0), tuple(mu1), nu)


# ---------------------------------------------------------------------------
# the representation attached to a quadratic structure


def check_pairing(g: LieAlgebra, pairing) -> None:
    """Raise InvalidPairing unless ``pairing`` is symmetric, nondegenerate and ad-invariant on g."""
    p = qarray(pairing)
    n = g.dim
    if p.shape != (n, n):
        raise InvalidPairing(f"pairing must be {n} x {n}, got {p.shape}")
    if not is_zero(p - p.T):
        raise InvalidPairing("pairing is not symmetric")
    if det(p) == 0:
        raise InvalidPairing("pairing is degenerate")
    for x in range(n):
        adx = g.ad_basis[x]
        inv = adx.T @ p + p @ adx
        if not is_zero(inv):
            raise InvalidPairing(f"pairing is not invariant under ad(e{x + 1})")


def rep_from_quadratic(g: LieAlgebra, pairing=None, half_pairing: bool = False) -> RepUpToHomotopy:
    """R --0--> g* with mu0 = ad*, mu1 = 0 and nu(X, Y)(xi) = s * xi([X, Y]), s = 1/2 with ``half_pairing``.

    ``pairing`` is optional and only validated: either an invariant form on g (n x n) or
    a form on g + g* (2n x 2n) invariant for the coadjoint semidirect bracket.
    """
    from fractions import Fraction

    n = g.dim
    if pairing is not None:
        p = qarray(pairing)
        if p.shape == (2 * n, 2 * n):
            from .constructions import double_algebra

            check_pairing(double_algebra(g), p)
        else:
            check_pairing(g, p)
    s = Fraction(1, 2) if half_pairing else Fraction(1)
    c = g.structure_constants
    nu = AlternatingMap.from_function(2, n, n, lambda i, j: s * c[i, j])
    return RepUpToHomotopy(g, TwoTermComplex.zero(1, n), tuple(g.coad_basis),
                           tuple(zeros(1, 1) for _ in range(n)), nu)

