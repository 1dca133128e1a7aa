"""Lie algebras from structure constants and Chevalley-Eilenberg cochains, over Q."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import factorial
from typing import Mapping, Sequence

import numpy as np

from .errors import DimensionError, NotACocycle
from .linalg import Echelon, Q, eye, is_zero, kron, max_abs, qarray, zeros
from .report import Report, timed


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    """``structure_constants[i, j, k]`` is the coefficient of e_k in [e_i, e_j]."""

    structure_constants: np.ndarray
    basis_labels: tuple = ()
    name: str = ""

    def __post_init__(self):
        c = self.structure_constants
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]) or c.shape[0] < 1:
            raise DimensionError(f"structure constants must have shape (n, n, n), got {c.shape}")
        if not self.basis_labels:
            object.__setattr__(self, "basis_labels", tuple(f"e{i + 1}" for i in range(c.shape[0])))
        elif len(self.basis_labels) != c.shape[0]:
            raise DimensionError("basis_labels length does not match dimension")

    @classmethod
    def from_brackets(cls, dim: int, brackets: Mapping, labels: Sequence[str] = (), name: str = "",
                      antisymmetrize: bool = True) -> "LieAlgebra":
        """Build from ``{(i, j): {k: coeff}}``; (j, i) is filled by antisymmetry unless told otherwise."""
        c = zeros(dim, dim, dim)
        for (i, j), coeffs in brackets.items():
            for k, v in coeffs.items():
                c[i, j, k] = Q(v)
                if antisymmetrize:
                    c[j, i, k] = -Q(v)
        return cls(c, tuple(labels), name)

    @property
    def dim(self) -> int:
        return self.structure_constants.shape[0]

    def bracket(self, x, y) -> np.ndarray:
        return lie_bracket(self, x, y)

    @cached_property
    def ad_basis(self) -> list[np.ndarray]:
        # ad(e_i)[k, j] = c[i, j, k]; column j is the image of e_j
        return [self.structure_constants[i].T.copy() for i in range(self.dim)]

    def ad(self, x) -> np.ndarray:
        out = zeros(self.dim, self.dim)
        for i, xi in enumerate(x):
            if xi != 0:
                out = out + xi * self.ad_basis[i]
        return out

    @cached_property
    def coad_basis(self) -> list[np.ndarray]:
        # ad*_X xi = -xi o ad_X
        return [-a.T for a in self.ad_basis]

    def coad(self, x) -> np.ndarray:
        return -self.ad(x).T

    def basis_vector(self, i: int) -> np.ndarray:
        v = zeros(self.dim)
        v[i] = Fraction(1)
        return v

    def __repr__(self):
        return f"LieAlgebra({self.name or 'unnamed'}, dim={self.dim})"


def _check_len(g: LieAlgebra, *vectors):
    for v in vectors:
        if len(v) != g.dim:
            raise DimensionError(f"vector of length {len(v)} for algebra of dimension {g.dim}")


def lie_bracket(g: LieAlgebra, x, y) -> np.ndarray:
    _check_len(g, x, y)
    x = np.asarray(x, dtype=object)
    y = np.asarray(y, dtype=object)
    return np.tensordot(np.tensordot(x, g.structure_constants, axes=([0], [0])), y, axes=([0], [0]))


def check_antisymmetry(g: LieAlgebra) -> Report:
    rep = Report("antisymmetry", g.name)
    chk = rep.check("antisymmetry")
    c = g.structure_constants
    n = g.dim
    with timed(rep):
        for i in range(n):
            for j in range(i, n):
                res = c[i, j] + c[j, i]
                for k in range(n):
                    chk.observe(abs(res[k]), res[k] != 0, (i, j, k))
    return rep


def check_jacobi(g: LieAlgebra) -> Report:
    """Exact Jacobi identity on every basis triple i < j < k; violations list (i, j, k, l)."""
    rep = Report("jacobi", g.name)
    chk = rep.check("jacobi")
    c = g.structure_constants
    n = g.dim
    with timed(rep):
        for i, j, k in combinations(range(n), 3):
            jac = c[i, j] @ c[:, k, :] + c[j, k] @ c[:, i, :] + c[k, i] @ c[:, j, :]
            bad = [l for l in range(n) if jac[l] != 0]
            chk.n_tested += 1
            for l in bad:
                chk.record((i, j, k, l), abs(jac[l]))
    return rep


def is_lie_algebra(g: LieAlgebra) -> bool:
    return check_antisymmetry(g).ok and check_jacobi(g).ok


def killing_form(g: LieAlgebra) -> np.ndarray:
    n = g.dim
    ad = g.ad_basis
    k = zeros(n, n)
    for i in range(n):
        for j in range(i, n):
            k[i, j] = k[j, i] = np.trace(ad[i] @ ad[j])
    return k


def is_semisimple(g: LieAlgebra) -> bool:
    from .linalg import det

    return det(killing_form(g)) != 0


def check_action(g: LieAlgebra, action: Sequence[np.ndarray]) -> Report:
    """[rho(e_i), rho(e_j)] == rho([e_i, e_j]) on all basis pairs."""
    rep = Report("morphism", g.name)
    chk = rep.check("morphism")
    with timed(rep):
        for i, j in combinations(range(g.dim), 2):
            lhs = action[i] @ action[j] - action[j] @ action[i]
            rhs = sum((g.structure_constants[i, j, k] * action[k] for k in range(g.dim)),
                      start=0 * action[0])
            res = max_abs(lhs - rhs)
            chk.observe(res, res != 0, (i, j))
    return rep


def lower_central_series(g: LieAlgebra) -> list[int]:
    """Dimensions of g = g^1 > g^2 = [g, g] > ... until it stabilises."""
    from .linalg import rank

    current = [g.basis_vector(i) for i in range(g.dim)]
    dims = [g.dim]
    while True:
        vecs = [lie_bracket(g, g.basis_vector(i), v) for i in range(g.dim) for v in current]
        if not vecs:
            dims.append(0)
            return dims
        r = rank(np.array(vecs, dtype=object))
        if r == dims[-1]:
            return dims
        dims.append(r)
        e = Echelon(g.dim)
        for v in vecs:
            e.add({k: Q(x) for k, x in enumerate(v) if x != 0})
        current = [qarray([row.get(k, 0) for k in range(g.dim)]) for row in e.pivots.values()]
        if r == 0:
            return dims


def nilpotency_class(g: LieAlgebra) -> int | None:
    """Smallest c with g^{c+1} = 0, or None if g is not nilpotent."""
    dims = lower_central_series(g)
    if dims[-1] != 0:
        return None
    return len(dims) - 1


def adjoint_action(g: LieAlgebra) -> list[np.ndarray]:
    return list(g.ad_basis)


def coadjoint_action(g: LieAlgebra) -> list[np.ndarray]:
    return list(g.coad_basis)


def trivial_action(g: LieAlgebra, m: int) -> list[np.ndarray]:
    return [zeros(m, m) for _ in range(g.dim)]


def direct_sum_action(*actions: Sequence[np.ndarray]) -> list[np.ndarray]:
    n = len(actions[0])
    out = []
    for i in range(n):
        blocks = [a[i] for a in actions]
        size = sum(b.shape[0] for b in blocks)
        m = zeros(size, size)
        off = 0
        for b in blocks:
            s = b.shape[0]
            m[off:off + s, off:off + s] = b
            off += s
        out.append(m)
    return out


def hom_action(mu0: Sequence[np.ndarray], mu1: Sequence[np.ndarray]) -> list[np.ndarray]:
    """A -> mu1(X) A - A mu0(X) on Hom(V0, V1), with A flattened row-major."""
    out = []
    for a0, a1 in zip(mu0, mu1):
        v0, v1 = a0.shape[0], a1.shape[0]
        out.append(kron(a1, eye(v0)) - kron(eye(v1), a0.T))
    return out


def nilpotent_exp(m: np.ndarray) -> np.ndarray:
    """exp of a nilpotent matrix as a finite sum; entries may be any ring elements."""
    n = m.shape[0]
    out = eye(n).astype(object)
    term = eye(n).astype(object)
    for k in range(1, n + 1):
        term = term @ m
        out = out + term * Fraction(1, factorial(k))
    return out


# ---------------------------------------------------------------------------
# alternating multilinear maps


def _sort_sign(idx: Sequence[int]) -> tuple[int, tuple]:
    """Sign of the sorting permutation, 0 if an index repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for a in range(len(idx)):
        for b in range(len(idx) - 1 - a):
            if idx[b] > idx[b + 1]:
                idx[b], idx[b + 1] = idx[b + 1], idx[b]
                sign = -sign
    return sign, tuple(idx)


@dataclass(frozen=True, eq=False)
class AlternatingMap:
    """Alternating p-linear map Q^n x ... x Q^n -> Q^m stored on increasing index tuples."""

    arity: int
    source_dim: int
    target_dim: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, val in self.values.items():
            key = tuple(key)
            if len(key) != self.arity or any(not 0 <= i < self.source_dim for i in key):
                raise DimensionError(f"bad index tuple {key} for arity {self.arity}")
            if list(key) != sorted(set(key)):
                raise DimensionError(f"index tuple {key} is not strictly increasing")
            v = np.asarray(val, dtype=object).reshape(-1)
            if v.shape[0] != self.target_dim:
                raise DimensionError(f"value of length {v.shape[0]}, expected {self.target_dim}")
            if not is_zero(v):
                clean[key] = v
        object.__setattr__(self, "values", clean)

    @classmethod
    def zero(cls, arity, source_dim, target_dim):
        return cls(arity, source_dim, target_dim, {})

    @classmethod
    def from_function(cls, arity, source_dim, target_dim, fn):
        """Tabulate ``fn(*basis_indices)`` on increasing tuples."""
        vals = {idx: fn(*idx) for idx in combinations(range(source_dim), arity)}
        return cls(arity, source_dim, target_dim, vals)

    def basis_value(self, idx: Sequence[int]) -> np.ndarray:
        sign, key = _sort_sign(idx)
        if sign == 0 or key not in self.values:
            return zeros(self.target_dim)
        return sign * self.values[key]

    def __call__(self, *vectors) -> np.ndarray:
        if len(vectors) != self.arity:
            raise DimensionError(f"expected {self.arity} arguments, got {len(vectors)}")
        for v in vectors:
            if len(v) != self.source_dim:
                raise DimensionError("argument length does not match source dimension")
        if self.arity == 0:
            return self.values.get((), zeros(self.target_dim)).copy()
        # multilinear expansion on the stored keys: phi(v_1..v_p) = sum_I det(V[I]) phi(e_I)
        total = zeros(self.target_dim)
        mat = np.array([list(v) for v in vectors], dtype=object)
        for key, val in self.values.items():
            sub = mat[:, list(key)]
            coeff = _det_small(sub)
            if coeff != 0:
                total = total + coeff * val
        return total

    @cached_property
    def dense(self) -> np.ndarray:
        shape = (self.source_dim,) * self.arity + (self.target_dim,)
        out = zeros(*shape)
        from itertools import permutations

        for key, val in self.values.items():
            for perm in permutations(range(self.arity)):
                sign, _ = _sort_sign(perm)
                out[tuple(key[p] for p in perm)] = sign * val
        return out

    def _coerce(self, other: "AlternatingMap"):
        if (self.arity, self.source_dim, self.target_dim) != (other.arity, other.source_dim, other.target_dim):
            raise DimensionError("incompatible alternating maps")

    def __add__(self, other):
        self._coerce(other)
        keys = set(self.values) | set(other.values)
        z = zeros(self.target_dim)
        return AlternatingMap(self.arity, self.source_dim, self.target_dim,
                              {k: self.values.get(k, z) + other.values.get(k, z) for k in keys})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return AlternatingMap(self.arity, self.source_dim, self.target_dim,
                              {k: s * v for k, v in self.values.items()})

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not self.values

    def __eq__(self, other):
        if not isinstance(other, AlternatingMap):
            return NotImplemented
        try:
            return (self - other).is_zero()
        except DimensionError:
            return False

    __hash__ = None

    def to_vector(self) -> list[Fraction]:
        out = []
        for key in combinations(range(self.source_dim), self.arity):
            out.extend(self.basis_value(key))
        return out

    @classmethod
    def from_vector(cls, arity, source_dim, target_dim, vec):
        vals = {}
        for pos, key in enumerate(combinations(range(source_dim), arity)):
            vals[key] = list(vec[pos * target_dim:(pos + 1) * target_dim])
        return cls(arity, source_dim, target_dim, vals)

    def __repr__(self):
        return f"AlternatingMap(arity={self.arity}, {self.source_dim}->{self.target_dim}, nonzero={len(self.values)})"


def _det_small(m: np.ndarray):
    n = m.shape[0]
    if n == 1:
        return m[0, 0]
    if n == 2:
        return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    total = 0
    for j in range(n):
        if m[0, j] != 0:
            minor = np.delete(np.delete(m, 0, axis=0), j, axis=1)
            total = total + (-1) ** j * m[0, j] * _det_small(minor)
    return total


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg complex


def _position_map(n: int, p: int) -> dict:
    return {key: pos for pos, key in enumerate(combinations(range(n), p))}


def differential_rows(g: LieAlgebra, action: Sequence[np.ndarray] | None, p: int, m: int) -> list[dict]:
    """Sparse matrix of d: C^p(g, W) -> C^{p+1}(g, W), dim W = m; one row per ((p+1)-tuple, k).

    (d phi)(x_0..x_p) = sum_a (-1)^a rho(x_a) phi(..^a..)
                        + sum_{a<b} (-1)^{a+b} phi([x_a, x_b], ..^a..^b..)
    """
    n = g.dim
    c = g.structure_constants
    cols = _position_map(n, p)
    rows = []
    for J in combinations(range(n), p + 1):
        block = [dict() for _ in range(m)]
        if action is not None:
            for a in range(p + 1):
                rest = J[:a] + J[a + 1:]
                col0 = cols[rest] * m
                sgn = -1 if a % 2 else 1
                rho = action[J[a]]
                for kk in range(m):
                    for k in range(m):
                        v = rho[kk, k]
                        if v != 0:
                            acc = block[kk]
                            acc[col0 + k] = acc.get(col0 + k, 0) + sgn * v
        for a, b in combinations(range(p + 1), 2):
            rest = tuple(J[t] for t in range(p + 1) if t != a and t != b)
            sgn = -1 if (a + b) % 2 else 1
            for l in range(n):
                cl = c[J[a], J[b], l]
                if cl == 0:
                    continue
                s2, key = _sort_sign((l,) + rest)
                if s2 == 0:
                    continue
                col0 = cols[key] * m
                for k in range(m):
                    acc = block[k]
                    acc[col0 + k] = acc.get(col0 + k, 0) + sgn * s2 * cl
        for acc in block:
            rows.append({k: Q(v) for k, v in acc.items() if v != 0})
    return rows


def _apply_rows(rows: list[dict], vec: Sequence) -> list[Fraction]:
    return [sum((v * vec[k] for k, v in row.items()), Fraction(0)) for row in rows]


def ce_differential(g: LieAlgebra, action: Sequence[np.ndarray] | None, cochain: AlternatingMap) -> AlternatingMap:
    """CE differential; ``action=None`` means trivial coefficients."""
    if cochain.source_dim != g.dim:
        raise DimensionError("cochain source dimension differs from the algebra dimension")
    m = cochain.target_dim
    if action is not None:
        if len(action) != g.dim or any(a.shape != (m, m) for a in action):
            raise DimensionError("action must give an m x m matrix per basis element")
    p = cochain.arity
    if p + 1 > g.dim:
        return AlternatingMap.zero(p + 1, g.dim, m)
    rows = differential_rows(g, action, p, m)
    out = _apply_rows(rows, cochain.to_vector())
    return AlternatingMap.from_vector(p + 1, g.dim, m, out)


@dataclass
class CoboundaryCertificate:
    """Outcome of solving d(phi) = target: ``phi`` if exact, otherwise the rank deficit."""

    phi: AlternatingMap | None
    rank_d: int
    rank_augmented: int
    unknowns: int

    @property
    def exact(self) -> bool:
        return self.phi is not None

    def describe(self) -> str:
        if self.exact:
            nz = {k: [str(x) for x in v] for k, v in self.phi.values.items()}
            return f"exact: phi = {nz}"
        return (f"not exact: rank(d) = {self.rank_d} < rank([d | target]) = {self.rank_augmented} "
                f"({self.unknowns} unknowns)")


def coboundary_certificate(g: LieAlgebra, action, target: AlternatingMap) -> CoboundaryCertificate:
    p = target.arity
    if p < 1:
        raise DimensionError("a 0-cochain cannot be a coboundary")
    if not ce_differential(g, action, target).is_zero():
        raise NotACocycle(f"target {p}-cochain is not closed")
    m = target.target_dim
    rows = differential_rows(g, action, p - 1, m)
    ncols = len(_position_map(g.dim, p - 1)) * m
    rhs = target.to_vector()
    plain = Echelon(ncols)
    aug = Echelon(ncols)
    for row, b in zip(rows, rhs):
        plain.add(row)
        aug.add(row, b)
    sol = aug.solution()
    phi = None if sol is None else AlternatingMap.from_vector(p - 1, g.dim, m, sol)
    rank_aug = plain.rank + (1 if aug.inconsistent else 0)
    return CoboundaryCertificate(phi, plain.rank, rank_aug, ncols)


def solve_coboundary(g: LieAlgebra, action, target: AlternatingMap) -> AlternatingMap | None:
    """Some phi with d(phi) = target (free variables zero), or None when [target] != 0."""
    return coboundary_certificate(g, action, target).phi


def cocycle_space(g: LieAlgebra, action, p: int, m: int) -> list[AlternatingMap]:
    """Basis of the exact kernel of d on p-cochains with values in an m-dimensional module."""
    rows = differential_rows(g, action, p, m) if p + 1 <= g.dim else []
    ncols = len(_position_map(g.dim, p)) * m
    e = Echelon(ncols)
    for row in rows:
        e.add(row)
    return [AlternatingMap.from_vector(p, g.dim, m, v) for v in e.nullspace()]
