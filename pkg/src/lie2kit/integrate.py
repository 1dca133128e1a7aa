"""Integration of a Lie algebra 2-cocycle to a polynomial group 2-cocycle, and differentiation back.

For nilpotent g the group is modelled in exponential coordinates, so every map in sight
is polynomial.  ``integrate_nilpotent`` writes Fbar(a, b) as a polynomial with
matrix coefficients in Hom(V0, V1), every monomial divisible by some a_i and some b_j
(hence normalized), and solves the cocycle equation

    M1(a) Fbar(b, c) M0(a)^-1 - Fbar(ab, c) + Fbar(a, bc) - Fbar(a, b) = 0

one total degree at a time, with the bilinear part pinned to nu / 2 and every free
coefficient set to zero.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations, product

import numpy as np

from .algebra import AlternatingMap, LieAlgebra
from .errors import InvalidRep, ModeUnsupported, NoSolution
from .group_rep import GroupRepUpToHomotopy, f2_from_fbar, f2_tilde
from .groups import Jet, NilpotentGroup, jet_vector
from .linalg import Echelon, Q, zeros
from .rep import RepUpToHomotopy, rep_from_quadratic


class PolyMap:
    """Polynomial map (R^n)^k -> Hom(V0, V1); ``terms`` maps an exponent tuple of length k*n to a v1 x v0 matrix."""

    def __init__(self, nargs: int, dim: int, v1: int, v0: int, terms: dict):
        self.nargs, self.dim, self.v1, self.v0 = nargs, dim, v1, v0
        self.terms = {tuple(e): np.asarray(m, dtype=object).reshape(v1, v0) for e, m in terms.items()
                      if any(v != 0 for v in np.asarray(m).reshape(-1))}

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __call__(self, *args) -> np.ndarray:
        coords = [v for a in args for v in a]
        float_mode = all(isinstance(v, float) for v in coords) and coords
        out = np.zeros((self.v1, self.v0)) if float_mode else zeros(self.v1, self.v0)
        powers = {}
        for exps, coeff in self.terms.items():
            mono = None
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                key = (i, e)
                if key not in powers:
                    powers[key] = coords[i] ** e if not isinstance(coords[i], Jet) else _jet_pow(coords[i], e)
                mono = powers[key] if mono is None else mono * powers[key]
            if mono is None:
                out = out + coeff
            else:
                out = out + coeff * mono
        return out

    def to_dict(self) -> dict:
        return {"nargs": self.nargs, "dim": self.dim, "v1": self.v1, "v0": self.v0,
                "terms": [[list(e), [str(v) for v in m.reshape(-1)]] for e, m in sorted(self.terms.items())]}

    def format(self, names=None) -> str:
        n = self.dim
        names = names or [f"{'abcdefgh'[k]}{i + 1}" for k in range(self.nargs) for i in range(n)]
        parts = []
        for exps, m in sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
            mono = "*".join(f"{names[i]}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e)
            parts.append(f"{mono} * [{', '.join(str(v) for v in m.reshape(-1))}]")
        return "\n".join(parts) if parts else "0"


def _jet_pow(x: Jet, e: int) -> Jet:
    out = Jet.const(Fraction(1))
    for _ in range(e):
        out = out * x
    return out


def _monomials(nvars: int, degree: int):
    """Exponent tuples of total degree exactly ``degree``."""
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    for first in range(degree, -1, -1):
        for rest in _monomials(nvars - 1, degree - first):
            yield (first,) + rest


def _fbar_monomials(n: int, degree: int):
    for e in _monomials(2 * n, degree):
        if sum(e[:n]) >= 1 and sum(e[n:]) >= 1:
            yield e


def default_datum(g: LieAlgebra) -> RepUpToHomotopy:
    """R --0--> g* with mu0 = ad*, mu1 = 0 and nu(X, Y)(xi) = xi([X, Y]) / 2."""
    return rep_from_quadratic(g, half_pairing=True)


class _Symbolic:
    """Polynomial images of the coordinates a, b, c of three group elements."""

    def __init__(self, g: LieAlgebra, r: RepUpToHomotopy):
        import flint

        n = g.dim
        self.n = n
        names = tuple(f"{s}{i + 1}" for s in "abc" for i in range(n))
        self.ctx = flint.fmpq_mpoly_ctx.get(names, "deglex")
        gens = self.ctx.gens()
        G = NilpotentGroup(g, "symbolic")
        self.G = G

        def vec(chunk):
            out = np.empty(n, dtype=object)
            out[:] = list(chunk)
            return out

        self.a, self.b, self.c = vec(gens[:n]), vec(gens[n:2 * n]), vec(gens[2 * n:])
        self.ab = G.mul(self.a, self.b)
        self.bc = G.mul(self.b, self.c)
        M0 = G.integrate(r.mu0)
        M1 = G.integrate(r.mu1)
        self.M1a = M1(self.a)
        self.M0inv = M0(-self.a)
        self._pow = {}

    def power(self, name: str, i: int, e: int):
        key = (name, i, e)
        if key not in self._pow:
            base = getattr(self, name)[i]
            self._pow[key] = base ** e
        return self._pow[key]

    def monomial(self, x: str, y: str, exps):
        n = self.n
        out = self.ctx.from_dict({(0,) * (3 * n): 1})
        for i, e in enumerate(exps[:n]):
            if e:
                out = out * self.power(x, i, e)
        for i, e in enumerate(exps[n:]):
            if e:
                out = out * self.power(y, i, e)
        return out

    def residual_of(self, exps, p: int, q: int, v1: int, v0: int) -> dict:
        """L(x^e E_pq) as {(r, s): polynomial}."""
        P1 = self.monomial("b", "c", exps)
        scalar = self.monomial("ab", "c", exps) - self.monomial("a", "bc", exps) + self.monomial("a", "b", exps)
        out = {}
        for r in range(v1):
            m1 = self.M1a[r, p]
            if m1 == 0 and r != p:
                continue
            for s in range(v0):
                val = P1 * m1 * self.M0inv[q, s]
                if r == p and s == q:
                    val = val - scalar
                if val != 0:
                    out[(r, s)] = val
        return out


def _by_degree(poly) -> dict:
    out = {}
    for exps, coeff in zip(poly.monoms(), poly.coeffs()):
        out.setdefault(sum(exps), []).append((tuple(exps), coeff))
    return out


def solve_fbar(r: RepUpToHomotopy, degree_bound: int | None = None) -> PolyMap:
    """Exact polynomial normalized 2-cocycle with bilinear part nu / 2; raises NoSolution."""
    g = r.g
    if not r.complex.is_zero:
        raise InvalidRep("integration is implemented for complexes with d = 0")
    G = NilpotentGroup(g)  # raises NotNilpotent
    n, v0, v1 = g.dim, r.complex.v0, r.complex.v1
    D = degree_bound if degree_bound is not None else 2 * G.nil_class
    if D < 2:
        raise ValueError("degree bound must be at least 2")
    sym = _Symbolic(g, r)
    zero = sym.ctx.from_dict({})
    total = {}  # (r, s) -> polynomial residual of the accepted terms
    terms = {}

    def accumulate(contrib: dict, coeff):
        import flint

        cq = flint.fmpq(coeff.numerator, coeff.denominator)
        for key, poly in contrib.items():
            total[key] = total.get(key, zero) + poly * cq

    half = Fraction(1, 2)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            val = half * r.nu_basis(i, j)
            exps = tuple(1 if k in (i, n + j) else 0 for k in range(2 * n))
            for p in range(v1):
                for q in range(v0):
                    if val[p, q] != 0:
                        terms.setdefault(exps, zeros(v1, v0))[p, q] = val[p, q]
                        accumulate(sym.residual_of(exps, p, q, v1, v0), val[p, q])

    for k in range(3, D + 1):
        unknowns = [(e, p, q) for e in _fbar_monomials(n, k) for p in range(v1) for q in range(v0)]
        if not unknowns:
            continue
        contribs = [sym.residual_of(e, p, q, v1, v0) for e, p, q in unknowns]
        rows = {}
        for col, contrib in enumerate(contribs):
            for key, poly in contrib.items():
                for exps, coeff in _by_degree(poly).get(k, []):
                    rows.setdefault((key, exps), {})[col] = Q(Fraction(int(coeff.p), int(coeff.q)))
        rhs = {}
        for key, poly in total.items():
            for exps, coeff in _by_degree(poly).get(k, []):
                rhs[(key, exps)] = -Fraction(int(coeff.p), int(coeff.q))
        ech = Echelon(len(unknowns))
        for eq in set(rows) | set(rhs):
            ech.add(rows.get(eq, {}), rhs.get(eq, Fraction(0)))
        sol = ech.solution()
        if sol is None:
            raise NoSolution(f"cocycle equation infeasible at degree {k}")
        for col, x in enumerate(sol):
            if x != 0:
                e, p, q = unknowns[col]
                terms.setdefault(e, zeros(v1, v0))[p, q] = x
                accumulate(contribs[col], x)

    leftover = [key for key, poly in total.items() if poly != 0]
    if leftover:
        worst = max(total[key].total_degree() for key in leftover)
        raise NoSolution(f"nonzero cocycle residual up to degree {worst} after degree bound {D}")
    return PolyMap(2, n, v1, v0, terms)


def integrate_nilpotent(g: LieAlgebra, rep: RepUpToHomotopy | None = None, mode: str = "exact",
                        degree_bound: int | None = None) -> GroupRepUpToHomotopy:
    """Group representation with F1 = exp(mu) and F2(g1, g2) = Fbar(g1, g2) M0(g1 g2)."""
    r = rep if rep is not None else default_datum(g)
    if r.g is not g and r.g.dim != g.dim:
        raise InvalidRep("representation is over a different algebra")
    fbar = solve_fbar(r, degree_bound)
    G = NilpotentGroup(g, mode)
    M0 = G.integrate(r.mu0)
    M1 = G.integrate(r.mu1)
    mats = (M0, M1)

    def F1(a):
        return mats[0](a), mats[1](a)

    if mode == "float":
        fl = PolyMap(2, g.dim, r.complex.v1, r.complex.v0,
                     {e: np.array(m, dtype=float) for e, m in fbar.terms.items()})
        fb = fl
    else:
        fb = fbar
    out = GroupRepUpToHomotopy(G, r.complex, F1, lambda g1, g2: None, name=f"integrated({g.name})",
                               meta={"fbar": fb, "fbar_exact": fbar, "datum": r})
    out = out.with_F2(f2_from_fbar(out, fb))
    out.meta.update({"fbar": fb, "fbar_exact": fbar, "datum": r})
    return out


# ---------------------------------------------------------------------------
# differentiation


def differentiate_3cocycle(r: GroupRepUpToHomotopy, mode: str = "jet", step: float = 1e-3,
                           cochain=None) -> AlternatingMap:
    """Antisymmetrized third mixed derivative at 0 of F2~ along the curves (exp(t X_i), t xi_i).

    ``jet`` computes it exactly with truncated polynomial arithmetic; ``fd`` uses the
    central-difference stencil sum s1 s2 s3 f(s1 h, s2 h, s3 h) / (8 h^3).
    """
    G = r.group
    n, v0, v1 = G.dim, r.complex.v0, r.complex.v1
    N = n + v0
    c = cochain or f2_tilde(r)
    if mode == "jet":
        if not getattr(G, "supports_jets", False) or G.mode == "float":
            raise ModeUnsupported("jet mode needs an exact polynomial group model")
    elif mode == "fd":
        if step <= 0:
            raise ValueError("step must be positive")
    else:
        raise ModeUnsupported(f"unknown mode {mode!r}")

    basis = np.eye(N, dtype=object)
    perms = [(p, _perm_sign(p)) for p in permutations(range(3))]
    values = {}
    for idx in combinations(range(N), 3):
        vecs = [np.array([Fraction(int(v)) for v in basis[i]], dtype=object) for i in idx]
        if mode == "jet":
            val = _jet_derivative(c, vecs, perms, n, G)
        else:
            val = _fd_derivative(c, vecs, perms, n, G, step)
        if any(v != 0 for v in val):
            values[idx] = val
    return AlternatingMap(3, N, v1, values)


def _perm_sign(p) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def _jet_derivative(c, vecs, perms, n, G):
    pts = []
    for i, x in enumerate(vecs):
        jx = jet_vector(x, i)
        pts.append((jx[:n], jx[n:]))
    total = None
    for p, s in perms:
        val = c(pts[p[0]], pts[p[1]], pts[p[2]])
        total = val * s if total is None else total + val * s
    return np.array([v.coeff(7) if isinstance(v, Jet) else Fraction(0) for v in total], dtype=object)


def _fd_derivative(c, vecs, perms, n, G, h):
    fl = [np.array([float(v) for v in x]) for x in vecs]
    acc = None
    for signs in product((1, -1), repeat=3):
        pts = [(_exp_float(G, x[:n] * (s * h)), x[n:] * (s * h)) for x, s in zip(fl, signs)]
        f = None
        for p, sp in perms:
            val = np.asarray(c(pts[p[0]], pts[p[1]], pts[p[2]]), dtype=float) * sp
            f = val if f is None else f + val
        term = f * (signs[0] * signs[1] * signs[2])
        acc = term if acc is None else acc + term
    return acc / (8 * h ** 3)


def _exp_float(G, X):
    # exponential coordinates need no conversion; matrix models exponentiate
    return X if isinstance(G, NilpotentGroup) else G.exp(X)


def derivative_error(a: AlternatingMap, b: AlternatingMap) -> float:
    """Largest entry of a - b over basis triples, as a float."""
    keys = set(a.values) | set(b.values)
    worst = 0.0
    for k in keys:
        diff = np.asarray(a.basis_value(k), dtype=float) - np.asarray(b.basis_value(k), dtype=float)
        worst = max(worst, float(np.max(np.abs(diff))) if diff.size else 0.0)
    return worst


# ---------------------------------------------------------------------------
# random polynomial 1-cochains


def random_alpha(g: LieAlgebra, v1: int, v0: int, seed: int = 0, degree: int = 3, density: float = 0.4,
                 coeff: int = 3) -> PolyMap:
    """Seeded polynomial G -> Hom(V0, V1) without constant term."""
    rng = random.Random(seed)
    n = g.dim
    terms = {}
    for k in range(1, degree + 1):
        for e in _monomials(n, k):
            if rng.random() < density:
                m = zeros(v1, v0)
                for p in range(v1):
                    for q in range(v0):
                        m[p, q] = Fraction(rng.randint(-coeff, coeff), rng.choice((1, 2)))
                terms[e] = m
    return PolyMap(1, n, v1, v0, terms)
