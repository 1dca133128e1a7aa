"""Unital 2-term representations up to homotopy of a group and the 2-group they generate.

A representation is a pair of callables: ``F1(g) -> (M0, M1)`` acting on V0 and V1, and
``F2(g1, g2) -> v1 x v0`` matrix.  Required identities, with d: V1 -> V0:

    unit        F1(1) = Id
    chain       d M1(g) = M0(g) d
    defect      M0(g1) M0(g2) - M0(g1 g2) = d F2(g1, g2)
                M1(g1) M1(g2) - M1(g1 g2) = F2(g1, g2) d
    coherence   M1(g1) F2(g2, g3) - F2(g1 g2, g3) + F2(g1, g2 g3) - F2(g1, g2) M0(g3) = 0

The 2-group has objects (g, xi) in G x V0 and morphisms (g, xi, m): (g, xi) -> (g, xi + d m).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DimensionError, InvalidRep, NotAssociative, NotMorphism
from .linalg import max_abs
from .rep import TwoTermComplex
from .report import Report, timed

DEFAULT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class GroupRepUpToHomotopy:
    group: object
    complex: TwoTermComplex
    F1: Callable
    F2: Callable
    name: str = ""
    meta: dict = field(default_factory=dict)

    @property
    def d(self) -> np.ndarray:
        return self.complex.d

    @property
    def exact(self) -> bool:
        return self.group.mode != "float"

    def with_F2(self, F2: Callable, name: str | None = None) -> "GroupRepUpToHomotopy":
        return GroupRepUpToHomotopy(self.group, self.complex, self.F1, F2, name or self.name, dict(self.meta))


def strict_rep(group, complex: TwoTermComplex, F1: Callable, name: str = "") -> GroupRepUpToHomotopy:
    """F2 = 0; valid when F1 is a genuine morphism commuting with d."""
    v0, v1 = complex.v0, complex.v1
    zero = _zero_matrix(group, v1, v0)
    return GroupRepUpToHomotopy(group, complex, F1, lambda g1, g2: zero.copy(), name or "strict")


def coadjoint_rep(group) -> GroupRepUpToHomotopy:
    """R --0--> g* with F1 = (Ad*, 1) and F2 = 0."""
    n = group.dim
    one = _identity(group, 1)
    return strict_rep(group, TwoTermComplex.zero(1, n), lambda g: (group.coadjoint(g), one),
                      name=f"coadjoint({group.name})")


def identity_complex_rep(group, k: int, M: Callable, name: str = "") -> GroupRepUpToHomotopy:
    """V --Id--> V with F1(g) = (M(g), M(g)) and F2(g1, g2) = M(g1) M(g2) - M(g1 g2).

    Any M with M(1) = Id works, so this family exercises d != 0 with nontrivial F2.
    """
    def F1(g):
        m = M(g)
        return m, m

    def F2(g1, g2):
        return M(g1) @ M(g2) - M(group.mul(g1, g2))

    return GroupRepUpToHomotopy(group, TwoTermComplex.identity(k), F1, F2, name or f"Id complex on R^{k}")


def _identity(group, n: int) -> np.ndarray:
    if group.mode == "float":
        return np.eye(n)
    from .linalg import eye

    return eye(n)


def _zero_matrix(group, r: int, c: int) -> np.ndarray:
    if group.mode == "float":
        return np.zeros((r, c))
    from .linalg import zeros

    return zeros(r, c)


def _d(r, group=None) -> np.ndarray:
    d = r.complex.d
    if (group or r.group).mode == "float":
        return d.astype(float)
    return d


def _failed(res, tol) -> bool:
    return res != 0 if tol is None else res > tol


def _resolve_tol(group, tol):
    if group.mode == "float":
        return DEFAULT_TOL if tol is None else tol
    return None


def _pool(group, samples, seed: int) -> list:
    if isinstance(samples, int):
        rng = random.Random(seed)
        return [group.sample(rng) for _ in range(samples)]
    return list(samples)


def _tuples(n_pool: int, arity: int, samples, seed: int, count: int | None = None):
    """Random index tuples for an int ``samples``, every tuple for an explicit list."""
    if isinstance(samples, int):
        rng = random.Random(seed + 7919 * arity)
        return [tuple(rng.randrange(n_pool) for _ in range(arity)) for _ in range(count or samples)]
    import itertools

    return list(itertools.product(range(n_pool), repeat=arity))


def _start(name: str, r, group, seed, tol, pool) -> Report:
    rep = Report(name, r.name or getattr(group, "name", ""), mode="float" if group.mode == "float" else "exact",
                 seed=seed)
    if tol is not None:
        rep.extra["tol"] = tol
    rep.extra["samples"] = [group.describe(g) for g in pool]
    return rep


def check_group_rep(r: GroupRepUpToHomotopy, samples=64, seed: int = 0, tol=None) -> Report:
    """Unit, chain, both defect equations and the coherence equation on sampled tuples.

    ``samples`` is a count of random tuples (drawn from a seeded pool of that many
    elements) or an explicit list of elements, in which case every tuple is checked.
    """
    G = r.group
    tol = _resolve_tol(G, tol)
    v0, v1 = r.complex.v0, r.complex.v1
    d = _d(r)
    pool = _pool(G, samples, seed)
    if not pool:
        raise DimensionError("need at least one sample")
    rep = _start("group-rep", r, G, seed, tol, pool)
    with timed(rep):
        unit = rep.check("unit")
        M0, M1 = r.F1(G.identity())
        if M0.shape != (v0, v0) or M1.shape != (v1, v1):
            raise DimensionError("F1 has the wrong shape")
        res = max(max_abs(M0 - _identity(G, v0)), max_abs(M1 - _identity(G, v1)))
        unit.observe(res, _failed(res, tol), ("1",))

        F1 = {}

        def f1(i):
            if i not in F1:
                F1[i] = r.F1(pool[i])
            return F1[i]

        chain = rep.check("chain")
        for i in range(len(pool)):
            A0, A1 = f1(i)
            res = max_abs(d @ A1 - A0 @ d)
            chain.observe(res, _failed(res, tol), (i,))

        d0 = rep.check("defect-V0")
        d1 = rep.check("defect-V1")
        for i, j in _tuples(len(pool), 2, samples, seed):
            g12 = G.mul(pool[i], pool[j])
            A0, A1 = f1(i)
            B0, B1 = f1(j)
            C0, C1 = r.F1(g12)
            F = r.F2(pool[i], pool[j])
            if F.shape != (v1, v0):
                raise DimensionError("F2 must return a v1 x v0 matrix")
            res0 = max_abs(A0 @ B0 - C0 - d @ F)
            res1 = max_abs(A1 @ B1 - C1 - F @ d)
            d0.observe(res0, _failed(res0, tol), (i, j))
            d1.observe(res1, _failed(res1, tol), (i, j))

        coh = rep.check("coherence")
        for i, j, k in _tuples(len(pool), 3, samples, seed):
            res = max_abs(coherence_residual(r, pool[i], pool[j], pool[k]))
            coh.observe(res, _failed(res, tol), (i, j, k))
    return rep


def coherence_residual(r: GroupRepUpToHomotopy, g1, g2, g3) -> np.ndarray:
    G = r.group
    _, A1 = r.F1(g1)
    C0, _ = r.F1(g3)
    return (A1 @ r.F2(g2, g3) - r.F2(G.mul(g1, g2), g3) + r.F2(g1, G.mul(g2, g3))
            - r.F2(g1, g2) @ C0)


# ---------------------------------------------------------------------------
# the semidirect 2-group


class TwoGroup:
    """Structure maps of G x V0 <= G x V0 x V1; objects are (g, xi), morphisms (g, xi, m)."""

    def __init__(self, rep: GroupRepUpToHomotopy, tol=None):
        self.rep = rep
        self.G = rep.group
        self.tol = _resolve_tol(self.G, tol)
        self.d = _d(rep)

    # objects and morphisms
    def unit_object(self):
        G = self.G
        return (G.identity(), _zero_vec(G, self.rep.complex.v0))

    def identity(self, x):
        return (x[0], x[1], _zero_vec(self.G, self.rep.complex.v1))

    def source(self, f):
        return (f[0], f[1])

    def target(self, f):
        return (f[0], f[1] + self.d @ f[2])

    def compose(self, later, earlier):
        """later o earlier, plus the mismatch between t(earlier) and s(later)."""
        gap = self.object_distance(self.target(earlier), self.source(later))
        return (earlier[0], earlier[1], earlier[2] + later[2]), gap

    def v_inverse(self, f):
        return (f[0], f[1] + self.d @ f[2], -f[2])

    def mul_objects(self, x, y):
        M0, _ = self.rep.F1(x[0])
        return (self.G.mul(x[0], y[0]), x[1] + M0 @ y[1])

    def mul(self, f, h):
        M0, M1 = self.rep.F1(f[0])
        return (self.G.mul(f[0], h[0]), f[1] + M0 @ h[1], f[2] + M1 @ h[2])

    def inv_object(self, x):
        gi = self.G.inv(x[0])
        M0, _ = self.rep.F1(gi)
        return (gi, -(M0 @ x[1]))

    def inv(self, f):
        gi = self.G.inv(f[0])
        M0, M1 = self.rep.F1(gi)
        return (gi, -(M0 @ f[1]), -(M1 @ f[2]))

    def associator(self, x, y, z):
        """a: (x y) z -> x (y z) is (g1 g2 g3, xi + F1(g1) eta + F1(g1 g2) gamma, F2(g1, g2) gamma)."""
        g12 = self.G.mul(x[0], y[0])
        A0, _ = self.rep.F1(x[0])
        B0, _ = self.rep.F1(g12)
        return (self.G.mul(g12, z[0]), x[1] + A0 @ y[1] + B0 @ z[1], self.rep.F2(x[0], y[0]) @ z[1])

    def unit(self, x):
        """i_x: 1 -> x inv(x) is (1, 0, -F2(g, g^-1) xi)."""
        one, zero = self.unit_object()
        return (one, zero, -(self.rep.F2(x[0], self.G.inv(x[0])) @ x[1]))

    def counit(self, x):
        """e_x: inv(x) x -> 1 is an identity."""
        return self.identity(self.mul_objects(self.inv_object(x), x))

    # distances
    def object_distance(self, x, y):
        return max(_group_distance(self.G, x[0], y[0]), max_abs(x[1] - y[1]))

    def morphism_distance(self, f, h):
        return max(self.object_distance(f, h), max_abs(f[2] - h[2]))

    def random_object(self, rng: random.Random):
        return (self.G.sample(rng), _small_vec(self.G, self.rep.complex.v0, rng))

    def random_morphism(self, rng: random.Random):
        g, xi = self.random_object(rng)
        return (g, xi, _small_vec(self.G, self.rep.complex.v1, rng))


def _group_distance(G, a, b):
    return max_abs(np.asarray(a) - np.asarray(b))


def _zero_vec(G, n):
    return np.zeros(n) if G.mode == "float" else _zero_matrix(G, n, 1).reshape(n)


def _small_vec(G, n, rng):
    from fractions import Fraction

    vals = [Fraction(rng.randint(-3, 3), 2) for _ in range(n)]
    if G.mode == "float":
        return np.array([float(v) for v in vals])
    out = _zero_vec(G, n)
    out[:] = vals
    return out


def two_group(r: GroupRepUpToHomotopy, samples=16, seed: int = 0, tol=None) -> TwoGroup:
    """Build the 2-group after a sampled check of the representation axioms."""
    rep = check_group_rep(r, samples=samples, seed=seed, tol=tol)
    if not rep.ok:
        raise InvalidRep(f"not a representation up to homotopy: failed {rep.failed}")
    return TwoGroup(r, tol)


TWO_GROUP_CHECKS = ("source-target", "interchange", "associator-typed", "associator-natural",
                    "pentagon", "triangle", "zig-zag-1", "zig-zag-2", "unit-natural")


def check_two_group(t: TwoGroup, samples: int = 64, seed: int = 0) -> Report:
    """Every coherence family on ``samples`` random tuples; composites also report typing gaps."""
    G = t.G
    tol = t.tol
    rng = random.Random(seed)
    rep = Report("two-group", t.rep.name or G.name, mode="float" if G.mode == "float" else "exact", seed=seed)
    if tol is not None:
        rep.extra["tol"] = tol
    checks = {name: rep.check(name) for name in TWO_GROUP_CHECKS}

    def obs(name, res, where):
        checks[name].observe(res, _failed(res, tol), where)

    with timed(rep):
        for k in range(samples):
            f, h, l, w = (t.random_morphism(rng) for _ in range(4))
            x, y, z = t.source(f), t.source(h), t.source(l)
            fh = t.mul(f, h)

            res = max(t.object_distance(t.source(fh), t.mul_objects(x, y)),
                      t.object_distance(t.target(fh), t.mul_objects(t.target(f), t.target(h))))
            obs("source-target", res, (k,))

            # f2 o f and h2 o h composable by construction
            f2 = (f[0], t.target(f)[1], t.random_morphism(rng)[2])
            h2 = (h[0], t.target(h)[1], t.random_morphism(rng)[2])
            lhs, g1 = t.compose(t.mul(f2, h2), t.mul(f, h))
            c1, g2 = t.compose(f2, f)
            c2, g3 = t.compose(h2, h)
            obs("interchange", max(g1, g2, g3, t.morphism_distance(lhs, t.mul(c1, c2))), (k,))

            a = t.associator(x, y, z)
            res = max(t.object_distance(t.source(a), t.mul_objects(t.mul_objects(x, y), z)),
                      t.object_distance(t.target(a), t.mul_objects(x, t.mul_objects(y, z))))
            obs("associator-typed", res, (k,))

            a_t = t.associator(t.target(f), t.target(h), t.target(l))
            left, ga = t.compose(a_t, t.mul(t.mul(f, h), l))
            right, gb = t.compose(t.mul(f, t.mul(h, l)), a)
            obs("associator-natural", max(ga, gb, t.morphism_distance(left, right)), (k,))

            v = t.source(w)
            lhs, p1 = t.compose(t.associator(v, x, t.mul_objects(y, z)),
                                t.associator(t.mul_objects(v, x), y, z))
            rhs, p2 = t.compose(t.associator(v, t.mul_objects(x, y), z),
                                t.mul(t.associator(v, x, y), t.identity(z)))
            rhs, p3 = t.compose(t.mul(t.identity(v), t.associator(x, y, z)), rhs)
            obs("pentagon", max(p1, p2, p3, t.morphism_distance(lhs, rhs)), (k,))

            tri = t.associator(x, t.unit_object(), y)
            obs("triangle", t.morphism_distance(tri, t.identity(t.mul_objects(x, y))), (k,))

            xi = t.inv_object(x)
            z1, q1 = t.compose(t.associator(x, xi, x), t.mul(t.unit(x), t.identity(x)))
            z1, q2 = t.compose(t.mul(t.identity(x), t.counit(x)), z1)
            obs("zig-zag-1", max(q1, q2, t.morphism_distance(z1, t.identity(x))), (k,))

            a_inv = t.v_inverse(t.associator(xi, x, xi))
            z2, q1 = t.compose(a_inv, t.mul(t.identity(xi), t.unit(x)))
            z2, q2 = t.compose(t.mul(t.counit(x), t.identity(xi)), z2)
            obs("zig-zag-2", max(q1, q2, t.morphism_distance(z2, t.identity(xi))), (k,))

            lhs, u1 = t.compose(t.mul(f, t.inv(f)), t.unit(x))
            obs("unit-natural", max(u1, t.morphism_distance(lhs, t.unit(t.target(f)))), (k,))
    return rep


# ---------------------------------------------------------------------------
# the group 3-cocycle on G x| V0


def _require_morphism(r: GroupRepUpToHomotopy, pool, tol, err):
    G = r.group
    for a in pool:
        for b in pool[:8]:
            A0, A1 = r.F1(a)
            B0, B1 = r.F1(b)
            C0, C1 = r.F1(G.mul(a, b))
            res = max(max_abs(A0 @ B0 - C0), max_abs(A1 @ B1 - C1))
            if _failed(res, tol):
                raise err(f"F1 is not a group morphism: residual {res} at {G.describe(a)}, {G.describe(b)}")


def f2_tilde(r: GroupRepUpToHomotopy) -> Callable:
    """(x1, x2, x3) -> F2(g1, g2) xi3 for x_i = (g_i, xi_i) in G x| V0."""
    def value(x1, x2, x3):
        return r.F2(x1[0], x2[0]) @ x3[1]

    return value


def semidirect_mul(r: GroupRepUpToHomotopy, x, y):
    M0, _ = r.F1(x[0])
    return (r.group.mul(x[0], y[0]), x[1] + M0 @ y[1])


def group_differential(r: GroupRepUpToHomotopy, c: Callable, xs) -> np.ndarray:
    """(dc)(x1..x_{p+1}) for a p-cochain on G x| V0 with values in V1, acted on through F1 on V1."""
    p = len(xs) - 1
    _, M1 = r.F1(xs[0][0])
    total = M1 @ c(*xs[1:])
    for i in range(p):
        merged = list(xs[:i]) + [semidirect_mul(r, xs[i], xs[i + 1])] + list(xs[i + 2:])
        total = total + (-1) ** (i + 1) * c(*merged)
    total = total + (-1) ** (p + 1) * c(*xs[:p])
    return total


def check_group_3cocycle(r: GroupRepUpToHomotopy, samples: int = 64, seed: int = 0, tol=None) -> Report:
    """d F2~ = 0 on ``samples`` quadruples; F1 must be a morphism (d = 0 makes this part of the axioms)."""
    G = r.group
    tol = _resolve_tol(G, tol)
    rng = random.Random(seed)
    pool = [G.sample(rng) for _ in range(max(4, min(samples, 16)))]
    _require_morphism(r, pool, tol, NotAssociative)
    t = TwoGroup(r, tol)
    c = f2_tilde(r)
    rep = Report("group-3-cocycle", r.name or G.name, mode="float" if G.mode == "float" else "exact", seed=seed)
    if tol is not None:
        rep.extra["tol"] = tol
    with timed(rep):
        closed = rep.check("closed")
        norm = rep.check("normalized")
        for k in range(samples):
            xs = [t.random_object(rng) for _ in range(4)]
            res = max_abs(group_differential(r, c, xs))
            closed.observe(res, _failed(res, tol), (k,))
            one = t.unit_object()
            res = max(max_abs(c(one, xs[1], xs[2])), max_abs(c(xs[0], one, xs[2])), max_abs(c(xs[0], xs[1], one)))
            norm.observe(res, _failed(res, tol), (k,))
    return rep


# ---------------------------------------------------------------------------
# the Hom(V0, V1)-valued group cocycle behind F2


def conjugate(r: GroupRepUpToHomotopy, g, A) -> np.ndarray:
    """g . A = M1(g) A M0(g)^-1, with the inverse computed as M0(g^-1)."""
    _, M1 = r.F1(g)
    N0, _ = r.F1(r.group.inv(g))
    return M1 @ A @ N0


def coboundary_1(r: GroupRepUpToHomotopy, alpha: Callable) -> Callable:
    """(d alpha)(g1, g2) = g1 . alpha(g2) - alpha(g1 g2) + alpha(g1)."""
    G = r.group

    def value(g1, g2):
        return conjugate(r, g1, alpha(g2)) - alpha(G.mul(g1, g2)) + alpha(g1)

    return value


def f2_from_fbar(r: GroupRepUpToHomotopy, fbar: Callable) -> Callable:
    """F2(g1, g2) = Fbar(g1, g2) M0(g1 g2)."""
    G = r.group

    def value(g1, g2):
        M0, _ = r.F1(G.mul(g1, g2))
        return fbar(g1, g2) @ M0

    return value


def check_fbar_cocycle(r: GroupRepUpToHomotopy, fbar: Callable, samples: int = 64, seed: int = 0,
                       tol=None) -> Report:
    """Normalization and the 2-cocycle condition for Fbar with the conjugation action."""
    G = r.group
    tol = _resolve_tol(G, tol)
    rng = random.Random(seed)
    rep = Report("fbar-cocycle", r.name or G.name, mode="float" if G.mode == "float" else "exact", seed=seed)
    with timed(rep):
        norm = rep.check("normalized")
        closed = rep.check("closed")
        one = G.identity()
        for k in range(samples):
            g1, g2, g3 = (G.sample(rng) for _ in range(3))
            res = max(max_abs(fbar(one, g1)), max_abs(fbar(g1, one)))
            norm.observe(res, _failed(res, tol), (k,))
            val = (conjugate(r, g1, fbar(g2, g3)) - fbar(G.mul(g1, g2), g3) + fbar(g1, G.mul(g2, g3))
                   - fbar(g1, g2))
            res = max_abs(val)
            closed.observe(res, _failed(res, tol), (k,))
    return rep


def gauge(r: GroupRepUpToHomotopy, alpha: Callable, name: str | None = None) -> GroupRepUpToHomotopy:
    """Replace Fbar by Fbar + d alpha, i.e. F2 by F2 + (d alpha)(g1, g2) M0(g1 g2)."""
    extra = f2_from_fbar(r, coboundary_1(r, alpha))
    base = r.F2

    def F2(g1, g2):
        return base(g1, g2) + extra(g1, g2)

    out = r.with_F2(F2, name or f"{r.name} + d alpha")
    fbar = r.meta.get("fbar")
    if fbar is not None:
        dalpha = coboundary_1(r, alpha)
        out.meta["fbar"] = lambda g1, g2: fbar(g1, g2) + dalpha(g1, g2)
    return out


def exactness_transfer(alpha: Callable, r: GroupRepUpToHomotopy, samples: int = 64, seed: int = 0,
                       tol=None):
    """Build F2 from Fbar = d alpha and return (beta, report) with beta((g1,xi1),(g2,xi2)) = alpha(g1) M0(g1) xi2.

    Only ``r.group``, ``r.complex`` and ``r.F1`` are used; F1 must be a group morphism.
    """
    G = r.group
    tol = _resolve_tol(G, tol)
    rng = random.Random(seed)
    pool = [G.sample(rng) for _ in range(8)]
    _require_morphism(r, pool, tol, NotMorphism)
    built = r.with_F2(f2_from_fbar(r, coboundary_1(r, alpha)), name=f"{r.name} exact")
    c = f2_tilde(built)

    def beta(x1, x2):
        M0, _ = r.F1(x1[0])
        return alpha(x1[0]) @ (M0 @ x2[1])

    t = TwoGroup(built, tol)
    rep = Report("exactness-transfer", r.name or G.name, mode="float" if G.mode == "float" else "exact", seed=seed)
    with timed(rep):
        chk = rep.check("F2~ = d beta")
        for k in range(samples):
            xs = [t.random_object(rng) for _ in range(3)]
            res = max_abs(c(*xs) - group_differential(built, beta, xs))
            chk.observe(res, _failed(res, tol), (k,))
    return beta, rep
