"""Group models: simply connected nilpotent groups in exponential coordinates, and SO(3) as matrices.

Nilpotent group elements are coordinate vectors a with g = exp(a).  The product is the
Baker-Campbell-Hausdorff series, which terminates for nilpotency class <= 4.  All
operations use plain Python arithmetic on numpy object arrays, so coordinates may be
``Fraction`` (exact), ``float`` (floating mode) or ``Jet`` (formal derivatives).
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .algebra import LieAlgebra, nilpotency_class
from .errors import DimensionError, NotNilpotent
from .linalg import Q

MAX_CLASS = 4


class Jet:
    """Element of Q[t1, t2, t3] / (t1^2, t2^2, t3^2), keyed by the bitmask of the t's present."""

    __slots__ = ("c",)

    def __init__(self, coeffs=None):
        self.c = dict(coeffs or {})

    @classmethod
    def const(cls, v):
        return cls({0: v}) if v != 0 else cls()

    @classmethod
    def t(cls, i: int):
        return cls({1 << i: Fraction(1)})

    def _coerce(self, other):
        return other if isinstance(other, Jet) else Jet.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.c)
        for k, v in other.c.items():
            s = out.get(k, 0) + v
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return Jet(out)

    __radd__ = __add__

    def __neg__(self):
        return Jet({k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Jet):
            if other == 0:
                return Jet()
            return Jet({k: v * other for k, v in self.c.items()})
        out = {}
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                if k1 & k2:
                    continue
                k = k1 | k2
                out[k] = out.get(k, 0) + v1 * v2
        return Jet({k: v for k, v in out.items() if v != 0})

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        return (self - other).c == {}

    def __ne__(self, other):
        return not self == other

    __hash__ = None

    def coeff(self, mask: int):
        return self.c.get(mask, Fraction(0))

    def __repr__(self):
        return f"Jet({self.c})"


def jet_vector(vec, i: int) -> np.ndarray:
    """t_i * vec as an array of jets."""
    out = np.empty(len(vec), dtype=object)
    for k, v in enumerate(vec):
        out[k] = Jet.t(i) * Q(v) if v != 0 else Jet()
    return out


def _bracket(c_nz, n, x, y):
    out = [0] * n
    for (i, j), row in c_nz:
        xi = x[i]
        yj = y[j]
        if _zero(xi) or _zero(yj):
            continue
        p = xi * yj
        for k, v in row:
            out[k] = out[k] + v * p
    arr = np.empty(n, dtype=object)
    arr[:] = out
    return arr


def _smul(arr, s) -> np.ndarray:
    """Elementwise arr * s; numpy would try to broadcast sequence-like scalars such as flint polynomials."""
    arr = np.asarray(arr)
    if arr.dtype != object:
        return arr * s
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = v * s
    return out


def _zero(v) -> bool:
    if isinstance(v, Jet):
        return not v.c
    return v == 0


def _poly_exp(m: np.ndarray, order: int, conv=Q) -> np.ndarray:
    n = m.shape[0]
    out = _eye(n, conv)
    term = _eye(n, conv)
    for k in range(1, order + 1):
        term = _smul(term @ m, conv(Fraction(1, k)))
        out = out + term
    return out


def _eye(n: int, conv=Q) -> np.ndarray:
    out = np.empty((n, n), dtype=object)
    out.fill(conv(0))
    for i in range(n):
        out[i, i] = conv(1)
    return out


def _fmpq(v):
    import flint

    v = Q(v)
    return flint.fmpq(v.numerator, v.denominator)


_CONVERTERS = {"exact": Q, "float": float, "symbolic": _fmpq}


class NilpotentGroup:
    """Simply connected group of a nilpotent Lie algebra in exponential coordinates."""

    supports_jets = True

    def __init__(self, g: LieAlgebra, mode: str = "exact"):
        cls = nilpotency_class(g)
        if cls is None:
            raise NotNilpotent(f"{g.name or 'algebra'} is not nilpotent")
        if cls > MAX_CLASS:
            raise NotNilpotent(f"nilpotency class {cls} exceeds the supported {MAX_CLASS}")
        if mode not in _CONVERTERS:
            raise ValueError("mode must be 'exact', 'float' or 'symbolic'")
        self.g = g
        self.mode = mode
        self.nil_class = cls
        self.name = g.name
        n = g.dim
        c = g.structure_constants
        conv = self.conv = _CONVERTERS[mode]
        self._c_nz = []
        for i in range(n):
            for j in range(n):
                row = [(k, conv(c[i, j, k])) for k in range(n) if c[i, j, k] != 0]
                if row:
                    self._c_nz.append(((i, j), row))
        self._ad = [_convert(a, conv) for a in g.ad_basis]

    @property
    def dim(self) -> int:
        return self.g.dim

    def scalar(self, v):
        return self.conv(v)

    def element(self, coords) -> np.ndarray:
        if len(coords) != self.dim:
            raise DimensionError("wrong number of coordinates")
        out = np.empty(self.dim, dtype=object)
        for i, v in enumerate(coords):
            out[i] = v if self.mode == "symbolic" and not isinstance(v, (int, Fraction)) else self.conv(v)
        return out.astype(float) if self.mode == "float" else out

    def identity(self) -> np.ndarray:
        return self.element([0] * self.dim)

    def bracket(self, x, y) -> np.ndarray:
        return _bracket(self._c_nz, self.dim, x, y)

    def mul(self, a, b) -> np.ndarray:
        """BCH: a + b + [a,b]/2 + ([a,[a,b]] - [b,[a,b]])/12 - [b,[a,[a,b]]]/24."""
        br = self.bracket
        k = self.conv
        out = a + b
        if self.nil_class >= 2:
            ab = br(a, b)
            out = out + _smul(ab, k(Fraction(1, 2)))
            if self.nil_class >= 3:
                aab = br(a, ab)
                bab = br(b, ab)
                out = out + _smul(aab - bab, k(Fraction(1, 12)))
                if self.nil_class >= 4:
                    out = out - _smul(br(b, aab), k(Fraction(1, 24)))
        if self.mode == "float" and out.dtype == object and _is_float_vec(out):
            out = out.astype(float)
        return out

    def inv(self, a) -> np.ndarray:
        return -a

    def exp(self, X) -> np.ndarray:
        return self.element(list(X))

    def ad(self, x) -> np.ndarray:
        return _combine(self._ad, x, self.dim, self.conv)

    def Ad(self, a) -> np.ndarray:
        return _poly_exp(self.ad(a), self.nil_class, self.conv)

    def coadjoint(self, a) -> np.ndarray:
        """Ad*_g = (Ad_{g^-1})^T on g*."""
        return self.Ad(-a).T

    def integrate(self, mats) -> "NilpotentAction":
        return NilpotentAction(self, mats)

    def sample(self, rng: random.Random) -> np.ndarray:
        """exp of a small-integer vector scaled by 1/2."""
        return self.element([Fraction(rng.randint(-2, 2), 2) for _ in range(self.dim)])

    def equal(self, a, b, tol=None) -> bool:
        diff = np.asarray(a) - np.asarray(b)
        if tol is None:
            return all(v == 0 for v in diff)
        return all(abs(v) <= tol for v in diff)

    def describe(self, a) -> str:
        return "(" + ", ".join(str(v) for v in a) + ")"

    def __repr__(self):
        return f"NilpotentGroup({self.name}, class={self.nil_class}, mode={self.mode})"


def _is_float_vec(x) -> bool:
    return all(isinstance(v, float) for v in x)


def associative_nilpotency(mats, size: int) -> int | None:
    """Smallest k with every product of k matrices from ``mats`` zero, or None if none exists."""
    if size == 0 or all(all(v == 0 for v in np.asarray(m).reshape(-1)) for m in mats):
        return 1
    current = [np.asarray(m, dtype=object) for m in mats]
    for k in range(2, size + 2):
        nxt = []
        for p in current:
            for m in mats:
                q = p @ m
                if any(v != 0 for v in q.reshape(-1)):
                    nxt.append(q)
        if not nxt:
            return k
        # keep a spanning set small
        nxt = _span_basis(nxt)
        current = nxt
    return None


def _span_basis(mats):
    from .linalg import Echelon

    if not mats:
        return []
    size = mats[0].size
    e = Echelon(size)
    keep = []
    for m in mats:
        row = {k: Q(v) for k, v in enumerate(m.reshape(-1)) if v != 0}
        if e.add(row):
            keep.append(m)
    return keep


def _convert(m, conv) -> np.ndarray:
    m = np.asarray(m, dtype=object)
    out = np.empty(m.shape, dtype=object)
    for idx, v in np.ndenumerate(m):
        out[idx] = conv(v)
    return out


def _combine(mats, x, size: int, conv) -> np.ndarray:
    out = np.empty((size, size), dtype=object)
    out.fill(conv(0))
    for xi, mu in zip(x, mats):
        if not _zero(xi):
            out = out + _smul(mu, xi)
    return out


class NilpotentAction:
    """g -> exp(mu(a)) for a Lie algebra action whose image is nilpotent."""

    def __init__(self, group: NilpotentGroup, mats):
        self.group = group
        raw = [np.asarray(m, dtype=object) for m in mats]
        size = raw[0].shape[0] if raw else 0
        k = associative_nilpotency(raw, size)
        if k is None:
            raise NotNilpotent("action is not nilpotent; exp(mu) is not a finite sum")
        self.mats = [_convert(m, group.conv) for m in raw]
        self.order = max(k - 1, 0)
        self.size = size

    def __call__(self, a) -> np.ndarray:
        return _poly_exp(_combine(self.mats, a, self.size, self.group.conv), self.order, self.group.conv)


class SO3Group:
    """SO(3) as 3 x 3 rotation matrices, floating point only; the algebra is so3 in the cross-product basis."""

    supports_jets = False
    mode = "float"

    def __init__(self, g: LieAlgebra | None = None):
        from .catalog import so3

        self.g = g or so3()
        self.name = "SO3"
        self.nil_class = None

    @property
    def dim(self) -> int:
        return 3

    @staticmethod
    def hat(x) -> np.ndarray:
        x = [float(v) for v in x]
        return np.array([[0.0, -x[2], x[1]], [x[2], 0.0, -x[0]], [-x[1], x[0], 0.0]])

    def exp(self, X) -> np.ndarray:
        from scipy.linalg import expm

        return expm(self.hat(X))

    def identity(self) -> np.ndarray:
        return np.eye(3)

    def mul(self, a, b) -> np.ndarray:
        return a @ b

    def inv(self, a) -> np.ndarray:
        return a.T

    def Ad(self, a) -> np.ndarray:
        return a

    def coadjoint(self, a) -> np.ndarray:
        # Ad on so3 is R itself in this basis, so Ad*_R = (R^-1)^T = R
        return a

    def integrate(self, mats):
        raise NotImplementedError("only the coadjoint and trivial actions are modelled on SO(3)")

    def sample(self, rng: random.Random) -> np.ndarray:
        return self.exp([rng.randint(-2, 2) / 2 for _ in range(3)])

    def equal(self, a, b, tol=None) -> bool:
        return float(np.max(np.abs(a - b))) <= (tol if tol is not None else 1e-10)

    def describe(self, a) -> str:
        return np.array2string(np.asarray(a, dtype=float), precision=4).replace("\n", "")

    def __repr__(self):
        return "SO3Group(float)"


def make_group(g: LieAlgebra, mode: str = "exact"):
    if g.name == "so3" and nilpotency_class(g) is None:
        if mode != "float":
            raise NotNilpotent("so3 has no exact polynomial model; use floating mode")
        return SO3Group(g)
    return NilpotentGroup(g, mode)

