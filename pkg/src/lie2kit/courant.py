"""The standard Courant algebroid TM + T*M on polynomial sections over R^n, with exact coefficients.

Functions are python-flint multivariate polynomials over Q in graded lexicographic order.
Vector fields and 1-forms are tuples of such polynomials in the coordinate basis.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from flint import fmpq, fmpq_mpoly, fmpq_mpoly_ctx

from .errors import DimensionError
from .report import Report, timed

Poly = fmpq_mpoly
HALF = fmpq(1, 2)


@lru_cache(maxsize=None)
def poly_ring(n_vars: int):
    """(context, generators) for Q[x1..xn]."""
    if n_vars < 1:
        raise DimensionError("need at least one variable")
    ctx = fmpq_mpoly_ctx.get(tuple(f"x{i + 1}" for i in range(n_vars)), "deglex")
    return ctx, tuple(ctx.gens())


def _zero(p: Poly) -> Poly:
    return p.context().constant(0)


@dataclass(frozen=True)
class VectorField:
    comps: tuple

    @property
    def n_vars(self) -> int:
        return len(self.comps)

    def __add__(self, other):
        _same(self, other)
        return VectorField(tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other):
        _same(self, other)
        return VectorField(tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self):
        return VectorField(tuple(-a for a in self.comps))

    def scale(self, s):
        return VectorField(tuple(s * a for a in self.comps))

    def __call__(self, f: Poly) -> Poly:
        """X(f) = sum X_i df/dx_i."""
        if f.context().nvars() != self.n_vars:
            raise DimensionError("vector field and function live on different spaces")
        return sum((xi * f.derivative(i) for i, xi in enumerate(self.comps) if xi != 0), _zero(f))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.comps)


@dataclass(frozen=True)
class OneForm:
    comps: tuple

    @property
    def n_vars(self) -> int:
        return len(self.comps)

    def __add__(self, other):
        _same(self, other)
        return OneForm(tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other):
        _same(self, other)
        return OneForm(tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self):
        return OneForm(tuple(-a for a in self.comps))

    def scale(self, s):
        return OneForm(tuple(s * a for a in self.comps))

    def __call__(self, X: VectorField) -> Poly:
        """Contraction xi(X)."""
        _same(self, X)
        return sum((a * b for a, b in zip(self.comps, X.comps)), _zero(self.comps[0]))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.comps)


@dataclass(frozen=True)
class Section:
    vf: VectorField
    form: OneForm

    def __post_init__(self):
        _same(self.vf, self.form)

    @property
    def n_vars(self) -> int:
        return self.vf.n_vars

    def __add__(self, other):
        return Section(self.vf + other.vf, self.form + other.form)

    def __sub__(self, other):
        return Section(self.vf - other.vf, self.form - other.form)

    def __neg__(self):
        return Section(-self.vf, -self.form)

    def scale(self, s):
        return Section(self.vf.scale(s), self.form.scale(s))

    def is_zero(self) -> bool:
        return self.vf.is_zero() and self.form.is_zero()


def _same(a, b):
    if a.n_vars != b.n_vars:
        raise DimensionError(f"objects on R^{a.n_vars} and R^{b.n_vars} cannot be combined")


def zero_vf(n: int) -> VectorField:
    ctx, _ = poly_ring(n)
    return VectorField((ctx.constant(0),) * n)


def zero_form(n: int) -> OneForm:
    ctx, _ = poly_ring(n)
    return OneForm((ctx.constant(0),) * n)


def vf(*comps) -> VectorField:
    return VectorField(tuple(comps))


def form(*comps) -> OneForm:
    return OneForm(tuple(comps))


def sec(X: VectorField | None = None, xi: OneForm | None = None) -> Section:
    if X is None and xi is None:
        raise ValueError("need a vector field or a form")
    n = (X or xi).n_vars
    return Section(X if X is not None else zero_vf(n), xi if xi is not None else zero_form(n))


# ---------------------------------------------------------------------------
# calculus


def vf_bracket(X: VectorField, Y: VectorField) -> VectorField:
    _same(X, Y)
    return VectorField(tuple(X(b) - Y(a) for a, b in zip(X.comps, Y.comps)))


def dR(f: Poly) -> OneForm:
    return OneForm(tuple(f.derivative(i) for i in range(f.context().nvars())))


def interior_d(X: VectorField, xi: OneForm) -> OneForm:
    """i_X d(xi): component j is sum_i X_i (d_i xi_j - d_j xi_i)."""
    _same(X, xi)
    n = X.n_vars
    out = []
    for j in range(n):
        acc = _zero(xi.comps[0])
        for i in range(n):
            if X.comps[i] != 0 and i != j:
                acc += X.comps[i] * (xi.comps[j].derivative(i) - xi.comps[i].derivative(j))
        out.append(acc)
    return OneForm(tuple(out))


def lie_derivative(X: VectorField, xi: OneForm) -> OneForm:
    """Cartan formula: L_X xi = d(xi(X)) + i_X d xi."""
    return dR(xi(X)) + interior_d(X, xi)


def pairing(e1: Section, e2: Section) -> Poly:
    return HALF * (e1.form(e2.vf) + e2.form(e1.vf))


def courant_bracket(e1: Section, e2: Section) -> Section:
    X, xi = e1.vf, e1.form
    Y, eta = e2.vf, e2.form
    f = lie_derivative(X, eta) - lie_derivative(Y, xi) + dR(xi(Y) - eta(X)).scale(HALF)
    return Section(vf_bracket(X, Y), f)


def T3(e1: Section, e2: Section, e3: Section) -> Poly:
    third = fmpq(1, 3)
    return third * (pairing(courant_bracket(e1, e2), e3) + pairing(courant_bracket(e2, e3), e1)
                    + pairing(courant_bracket(e3, e1), e2))


def nu_closed_form(X: VectorField, Y: VectorField, xi: OneForm) -> Poly:
    """T(X, Y, xi) expanded: xi([X, Y]) / 2 + (Y(xi(X)) - X(xi(Y))) / 4."""
    return HALF * xi(vf_bracket(X, Y)) + fmpq(1, 4) * (Y(xi(X)) - X(xi(Y)))


def jacobi_defect(e1: Section, e2: Section, e3: Section) -> Section:
    cb = courant_bracket
    return cb(cb(e1, e2), e3) + cb(cb(e2, e3), e1) + cb(cb(e3, e1), e2)


# ---------------------------------------------------------------------------
# the representation up to homotopy on C^inf --d--> Omega^1, and its variants


@dataclass(frozen=True)
class CourantRep:
    """mu0(X) xi = L_X xi - a d(xi(X)), mu1(X) f = b X(f), nu(X, Y) xi = T(X, Y, xi).

    The correct values are a = b = 1/2; other values exist for mutation testing.
    """

    mu0_half: object = HALF
    mu1_half: object = HALF

    def mu0(self, X: VectorField, xi: OneForm) -> OneForm:
        return lie_derivative(X, xi) - dR(xi(X)).scale(self.mu0_half)

    def mu1(self, X: VectorField, f: Poly) -> Poly:
        return self.mu1_half * X(f)

    def nu(self, X: VectorField, Y: VectorField, xi: OneForm) -> Poly:
        return nu_closed_form(X, Y, xi)

    # brackets of the associated 2-term L-infinity algebra
    def l2(self, e1: Section, e2: Section) -> Section:
        X, xi, Y, eta = e1.vf, e1.form, e2.vf, e2.form
        return Section(vf_bracket(X, Y), self.mu0(X, eta) - self.mu0(Y, xi))

    def l2f(self, e: Section, f: Poly) -> Poly:
        return self.mu1(e.vf, f)

    def l3(self, e1: Section, e2: Section, e3: Section) -> Poly:
        return -(self.nu(e1.vf, e2.vf, e3.form) + self.nu(e2.vf, e3.vf, e1.form)
                 + self.nu(e3.vf, e1.vf, e2.form))


MUTATIONS = {None: CourantRep(), "mu1": CourantRep(mu1_half=fmpq(1)), "mu0": CourantRep(mu0_half=fmpq(1))}


def _rep_for(mutation):
    try:
        return MUTATIONS[mutation]
    except KeyError:
        raise ValueError(f"unknown mutation {mutation!r}; choose from {sorted(k for k in MUTATIONS if k)}") from None


# ---------------------------------------------------------------------------
# sampling


def sample_poly(n_vars: int, degree: int, rng: random.Random, coeffs=range(-2, 3)) -> Poly:
    ctx, _ = poly_ring(n_vars)
    terms = {}
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(n_vars), d):
            exp = [0] * n_vars
            for i in combo:
                exp[i] += 1
            c = rng.choice(coeffs)
            if c:
                terms[tuple(exp)] = c
    return ctx.from_dict(terms)


def sample_vf(n, degree, rng) -> VectorField:
    return VectorField(tuple(sample_poly(n, degree, rng) for _ in range(n)))


def sample_form(n, degree, rng) -> OneForm:
    return OneForm(tuple(sample_poly(n, degree, rng) for _ in range(n)))


def sample_section(n, degree, rng) -> Section:
    return Section(sample_vf(n, degree, rng), sample_form(n, degree, rng))


def constant_sample(n: int, rng: random.Random):
    """Constant vector fields, linear forms and quadratic functions."""
    return sample_vf(n, 0, rng), sample_form(n, 1, rng), sample_poly(n, 2, rng)


# ---------------------------------------------------------------------------
# residual bookkeeping


def poly_norm(p: Poly) -> Fraction:
    if p == 0:
        return Fraction(0)
    return max(Fraction(int(c.p), int(c.q)) for c in map(abs, p.coeffs()))


def _norm(obj) -> Fraction:
    if isinstance(obj, fmpq_mpoly):
        return poly_norm(obj)
    if isinstance(obj, (VectorField, OneForm)):
        return max((poly_norm(c) for c in obj.comps), default=Fraction(0))
    if isinstance(obj, Section):
        return max(_norm(obj.vf), _norm(obj.form))
    raise TypeError(type(obj))


def format_residual(obj) -> str:
    if isinstance(obj, fmpq_mpoly):
        return str(obj)
    if isinstance(obj, (VectorField, OneForm)):
        return "(" + ", ".join(str(c) for c in obj.comps) + ")"
    return f"vf={format_residual(obj.vf)} form={format_residual(obj.form)}"


def _observe(report: Report, name: str, trial: int, residual):
    chk = report.check(name)
    r = _norm(residual)
    if r != 0:
        chk.n_tested += 1
        chk.record((trial, format_residual(residual)), r)
    else:
        chk.n_tested += 1


def _samples(n_vars, degree, trials, seed, k_vf, k_form, k_fun):
    rng = random.Random(seed)
    for t in range(trials):
        if t == 0 and degree >= 1:
            # first trial uses the simplest data: constant fields, linear forms
            yield t, ([sample_vf(n_vars, 0, rng) for _ in range(k_vf)],
                      [sample_form(n_vars, 1, rng) for _ in range(k_form)],
                      [sample_poly(n_vars, 2, rng) for _ in range(k_fun)])
        else:
            yield t, ([sample_vf(n_vars, degree, rng) for _ in range(k_vf)],
                      [sample_form(n_vars, degree, rng) for _ in range(k_form)],
                      [sample_poly(n_vars, degree, rng) for _ in range(k_fun)])


# ---------------------------------------------------------------------------
# verification suites


def check_courant_rep(n_vars: int = 3, degree_bound: int = 3, trials: int = 50, seed: int = 0,
                      mutation: str | None = None) -> Report:
    """Representation up to homotopy of vector fields on C^inf --d--> Omega^1, checked on random polynomial data.

    Families: ``chain`` mu0(X) df = d(mu1(X) f); ``mu0-defect`` against dT;
    ``mu1-defect`` against T(X, Y, df); ``nu-cocycle`` the cyclic identity for nu;
    ``nu-is-T`` the expanded nu against T computed from Courant brackets;
    ``courant-jacobi`` the Jacobi defect equals dT; ``four-section`` the alternating
    identity between <e_i, dT(rest)> and T(<<e_i, e_j>>, rest).
    """
    if degree_bound < 1:
        raise ValueError("degree_bound must be at least 1")
    cr = _rep_for(mutation)
    rep = Report("courant-rep", f"R^{n_vars} degree<={degree_bound}", seed=seed)
    rep.extra["trials"] = trials
    if mutation:
        rep.extra["mutation"] = mutation
    with timed(rep):
        for t, (vfs, forms, funs) in _samples(n_vars, degree_bound, trials, seed, 3, 2, 1):
            X, Y, Z = vfs
            xi, eta = forms
            f = funs[0]
            _observe(rep, "nu-is-T", t, cr.nu(X, Y, xi) - T3(sec(X), sec(Y), sec(xi=xi)))
            _observe(rep, "chain", t, cr.mu0(X, dR(f)) - dR(cr.mu1(X, f)))

            lhs = cr.mu0(vf_bracket(X, Y), xi) - (cr.mu0(X, cr.mu0(Y, xi)) - cr.mu0(Y, cr.mu0(X, xi)))
            _observe(rep, "mu0-defect", t, lhs - dR(cr.nu(X, Y, xi)))

            lhs = cr.mu1(vf_bracket(X, Y), f) - (cr.mu1(X, cr.mu1(Y, f)) - cr.mu1(Y, cr.mu1(X, f)))
            _observe(rep, "mu1-defect", t, lhs - cr.nu(X, Y, dR(f)))

            total = _zero(f)
            for A, B, C in ((X, Y, Z), (Y, Z, X), (Z, X, Y)):
                total += cr.mu1(A, cr.nu(B, C, xi)) - cr.nu(B, C, cr.mu0(A, xi))
                total -= cr.nu(vf_bracket(A, B), C, xi)
            _observe(rep, "nu-cocycle", t, total)

            e = [sec(X, xi), sec(Y, eta), sec(Z, xi - eta)]
            _observe(rep, "courant-jacobi", t, jacobi_defect(*e) - sec(xi=dR(T3(*e))))

            quad = [sec(X, eta), sec(Y, xi), sec(Z), sec(xi=xi + eta)]
            _observe(rep, "four-section", t, four_section_defect(quad))
    return rep


def four_section_defect(e: list[Section]) -> Poly:
    """sum_i (-1)^i <e_i, dT(rest_i)> - sum_{i<j} (-1)^(i+j+1) T(<<e_i, e_j>>, rest_ij), 0-based."""
    lhs = _zero(e[0].vf.comps[0])
    for i in range(4):
        rest = [e[k] for k in range(4) if k != i]
        lhs += (-1) ** i * pairing(e[i], sec(xi=dR(T3(*rest))))
    rhs = _zero(lhs)
    for i in range(4):
        for j in range(i + 1, 4):
            rest = [e[k] for k in range(4) if k not in (i, j)]
            rhs += (-1) ** (i + j + 1) * T3(courant_bracket(e[i], e[j]), *rest)
    return lhs - rhs


def check_courant_linfty(n_vars: int = 3, degree_bound: int = 3, trials: int = 50, seed: int = 0,
                         mutation: str | None = None) -> Report:
    """2-term L-infinity relations on random sections, plus agreement with the Courant-bracket formulas.

    The brackets are the semidirect ones built from mu0, mu1, nu.  ``agree-l2``,
    ``agree-l2f`` and ``agree-l3`` compare them with <<e1, e2>>, <e, df> and -T(e1, e2, e3).
    """
    if degree_bound < 1:
        raise ValueError("degree_bound must be at least 1")
    cr = _rep_for(mutation)
    rep = Report("courant-linfty", f"R^{n_vars} degree<={degree_bound}", seed=seed)
    rep.extra["trials"] = trials
    if mutation:
        rep.extra["mutation"] = mutation
    with timed(rep):
        for t, (vfs, forms, funs) in _samples(n_vars, degree_bound, trials, seed, 4, 4, 2):
            e = [Section(X, xi) for X, xi in zip(vfs, forms)]
            f, h = funs
            df, dh = sec(xi=dR(f)), sec(xi=dR(h))

            _observe(rep, "chain", t, dR(cr.l2f(e[0], f)) - cr.l2(e[0], df).form)
            _observe(rep, "degree-one", t, cr.l2f(df, h) + cr.l2f(dh, f))

            jac = cr.l2(cr.l2(e[0], e[1]), e[2]) + cr.l2(cr.l2(e[1], e[2]), e[0]) + cr.l2(cr.l2(e[2], e[0]), e[1])
            _observe(rep, "jacobiator", t, jac + sec(xi=dR(cr.l3(e[0], e[1], e[2]))))

            mixed = (cr.l2f(cr.l2(e[0], e[1]), f) - cr.l2f(e[0], cr.l2f(e[1], f))
                     + cr.l2f(e[1], cr.l2f(e[0], f)) + cr.l3(e[0], e[1], df))
            _observe(rep, "mixed", t, mixed)

            _observe(rep, "coherence", t, _coherence(cr, e))

            _observe(rep, "agree-l2", t, cr.l2(e[0], e[1]) - courant_bracket(e[0], e[1]))
            _observe(rep, "agree-l2f", t, cr.l2f(e[0], f) - pairing(e[0], df))
            _observe(rep, "agree-l3", t, cr.l3(e[0], e[1], e[2]) + T3(e[0], e[1], e[2]))
    return rep


_SHUFFLES_22 = [((0, 1), (2, 3), 1), ((0, 2), (1, 3), -1), ((0, 3), (1, 2), 1),
                ((1, 2), (0, 3), 1), ((1, 3), (0, 2), -1), ((2, 3), (0, 1), 1)]
_SHUFFLES_31 = [((0, 1, 2), 3, 1), ((0, 1, 3), 2, -1), ((0, 2, 3), 1, 1), ((1, 2, 3), 0, -1)]


def _coherence(cr: CourantRep, e: list[Section]) -> Poly:
    out = _zero(e[0].vf.comps[0])
    for (a, b), (c, d), s in _SHUFFLES_22:
        out += s * cr.l3(cr.l2(e[a], e[b]), e[c], e[d])
    for (a, b, c), d, s in _SHUFFLES_31:
        out += s * cr.l2f(e[d], cr.l3(e[a], e[b], e[c]))
    return out


def check_id_complex_rep(n_vars: int = 3, degree_bound: int = 3, trials: int = 50, seed: int = 0,
                         mutation: str | None = None) -> Report:
    """Omega^1 --Id--> Omega^1 with mu0 = mu1 = <<X, .>> and nu(X, Y) xi = dT(X, Y, xi)."""
    if degree_bound < 1:
        raise ValueError("degree_bound must be at least 1")
    cr = _rep_for(mutation)
    rep = Report("courant-id-complex", f"R^{n_vars} degree<={degree_bound}", seed=seed)
    rep.extra["trials"] = trials
    if mutation:
        rep.extra["mutation"] = mutation

    def mu(X, xi):
        return cr.mu0(X, xi)

    def nu(X, Y, xi):
        return dR(cr.nu(X, Y, xi))

    with timed(rep):
        for t, (vfs, forms, _) in _samples(n_vars, degree_bound, trials, seed, 3, 1, 0):
            X, Y, Z = vfs
            xi = forms[0]
            # d = Id makes the chain condition mu0 = mu1, true by construction
            rep.check("chain").n_tested += 1
            defect = mu(vf_bracket(X, Y), xi) - (mu(X, mu(Y, xi)) - mu(Y, mu(X, xi))) - nu(X, Y, xi)
            _observe(rep, "mu0-defect", t, defect)
            _observe(rep, "mu1-defect", t, defect)
            total = zero_form(n_vars)
            for A, B, C in ((X, Y, Z), (Y, Z, X), (Z, X, Y)):
                total = total + mu(A, nu(B, C, xi)) - nu(B, C, mu(A, xi)) - nu(vf_bracket(A, B), C, xi)
            _observe(rep, "nu-cocycle", t, total)
    return rep
