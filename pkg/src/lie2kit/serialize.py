"""JSON documents for algebras, representations, 2-term L-infinity algebras and integrated group data.

One flat document carries whichever blocks an instance needs:

    name, dim, basis, brackets              the Lie algebra; brackets are {i, j, coeffs: [[k, "p/q"], ...]}
    pairing                                 optional invariant form
    complex, mu0, mu1, nu                   a representation up to homotopy (nu as {i, j, matrix})
    l1_dim, l0_dim, d, l2_00, l2_01, l3     a 2-term L-infinity algebra
    group                                   {"mode", "fbar"} for an integrated group representation

A bracket given only for (i, j) is extended to (j, i) by antisymmetry; a pair listed
both ways is taken literally, so broken antisymmetry survives a round trip.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations

import numpy as np

from .algebra import AlternatingMap, LieAlgebra
from .errors import DocumentError, Lie2Error
from .linalg import zeros
from .linfty import TwoTermLInfinity
from .rep import RepUpToHomotopy, TwoTermComplex

FORMAT = "lie2kit"


# ---------------------------------------------------------------------------
# scalars and matrices


def rational_to_str(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise DocumentError(f"expected a rational, got {value!r}", where)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"malformed rational {value!r}", where) from None
    if isinstance(value, float):
        raise DocumentError("floating-point literal; write rationals as strings \"p/q\"", where)
    raise DocumentError(f"expected a rational, got {type(value).__name__}", where)


def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=object)
    return [[rational_to_str(v) for v in row] for row in m]


def vector_to_json(v) -> list:
    return [rational_to_str(x) for x in np.asarray(v, dtype=object).reshape(-1)]


def parse_matrix(value, rows: int, cols: int, where: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != rows:
        raise DocumentError(f"expected {rows} rows", where)
    out = zeros(rows, cols)
    for r, row in enumerate(value):
        if not isinstance(row, list) or len(row) != cols:
            raise DocumentError(f"expected {cols} entries", f"{where}[{r}]")
        for c, v in enumerate(row):
            out[r, c] = parse_rational(v, f"{where}[{r}][{c}]")
    return out


def parse_vector(value, n: int, where: str) -> np.ndarray:
    if not isinstance(value, list) or len(value) != n:
        raise DocumentError(f"expected a list of {n} rationals", where)
    out = zeros(n)
    for i, v in enumerate(value):
        out[i] = parse_rational(v, f"{where}[{i}]")
    return out


def _int(doc: dict, key: str, where: str = "", minimum: int = 0) -> int:
    path = f"{where}.{key}" if where else key
    if key not in doc:
        raise DocumentError("missing field", path)
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int) or v < minimum:
        raise DocumentError(f"expected an integer >= {minimum}", path)
    return v


def _index(v, n: int, where: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
        raise DocumentError(f"index out of range 0..{n - 1}", where)
    return v


# ---------------------------------------------------------------------------
# Lie algebras


def algebra_to_json(g: LieAlgebra) -> dict:
    c = g.structure_constants
    n = g.dim
    antisym = all(c[i, j, k] == -c[j, i, k] for i in range(n) for j in range(n) for k in range(n))
    pairs = combinations(range(n), 2) if antisym else ((i, j) for i in range(n) for j in range(n))
    brackets = []
    for i, j in pairs:
        coeffs = [[k, rational_to_str(c[i, j, k])] for k in range(n) if c[i, j, k] != 0]
        if coeffs:
            brackets.append({"i": i, "j": j, "coeffs": coeffs})
    return {"format": FORMAT, "name": g.name, "dim": n, "basis": list(g.basis_labels), "brackets": brackets}


def parse_algebra(doc: dict) -> LieAlgebra:
    n = _int(doc, "dim", minimum=1)
    labels = doc.get("basis", [])
    if labels and (not isinstance(labels, list) or len(labels) != n or not all(isinstance(s, str) for s in labels)):
        raise DocumentError(f"expected {n} basis labels", "basis")
    entries = doc.get("brackets", [])
    if not isinstance(entries, list):
        raise DocumentError("expected a list", "brackets")
    explicit = {}
    for e, entry in enumerate(entries):
        where = f"brackets[{e}]"
        if not isinstance(entry, dict):
            raise DocumentError("expected an object {i, j, coeffs}", where)
        i = _index(entry.get("i"), n, f"{where}.i")
        j = _index(entry.get("j"), n, f"{where}.j")
        coeffs = entry.get("coeffs", [])
        if not isinstance(coeffs, list):
            raise DocumentError("expected a list of [k, value] pairs", f"{where}.coeffs")
        vec = explicit.setdefault((i, j), zeros(n))
        for t, pair in enumerate(coeffs):
            pw = f"{where}.coeffs[{t}]"
            if not isinstance(pair, list) or len(pair) != 2:
                raise DocumentError("expected [k, value]", pw)
            k = _index(pair[0], n, f"{pw}[0]")
            vec[k] = vec[k] + parse_rational(pair[1], f"{pw}[1]")
    c = zeros(n, n, n)
    for (i, j), vec in explicit.items():
        c[i, j] = vec
        if (j, i) not in explicit and i != j:
            c[j, i] = -vec
    return LieAlgebra(c, tuple(labels), str(doc.get("name", "")))


# ---------------------------------------------------------------------------
# representations up to homotopy


def rep_to_json(r: RepUpToHomotopy) -> dict:
    doc = algebra_to_json(r.g)
    v1, v0 = r.complex.v1, r.complex.v0
    doc["complex"] = {"v1": v1, "v0": v0, "d": matrix_to_json(r.d)}
    doc["mu0"] = [matrix_to_json(m) for m in r.mu0]
    doc["mu1"] = [matrix_to_json(m) for m in r.mu1]
    doc["nu"] = [{"i": i, "j": j, "matrix": matrix_to_json(np.asarray(val).reshape(v1, v0))}
                 for (i, j), val in sorted(r.nu.values.items())]
    return doc


def parse_rep(doc: dict, g: LieAlgebra | None = None) -> RepUpToHomotopy:
    g = g or parse_algebra(doc)
    n = g.dim
    cx = doc.get("complex")
    if not isinstance(cx, dict):
        raise DocumentError("missing object", "complex")
    v1 = _int(cx, "v1", "complex")
    v0 = _int(cx, "v0", "complex")
    d = parse_matrix(cx.get("d", [[0] * v1 for _ in range(v0)]), v0, v1, "complex.d")
    mus = []
    for key, size in (("mu0", v0), ("mu1", v1)):
        mats = doc.get(key)
        if not isinstance(mats, list) or len(mats) != n:
            raise DocumentError(f"expected {n} matrices", key)
        mus.append(tuple(parse_matrix(m, size, size, f"{key}[{a}]") for a, m in enumerate(mats)))
    vals = {}
    entries = doc.get("nu", [])
    if not isinstance(entries, list):
        raise DocumentError("expected a list", "nu")
    for e, entry in enumerate(entries):
        where = f"nu[{e}]"
        if not isinstance(entry, dict):
            raise DocumentError("expected an object {i, j, matrix}", where)
        i = _index(entry.get("i"), n, f"{where}.i")
        j = _index(entry.get("j"), n, f"{where}.j")
        if i == j:
            raise DocumentError("nu is alternating; i and j must differ", where)
        m = parse_matrix(entry.get("matrix"), v1, v0, f"{where}.matrix").reshape(-1)
        key, sign = ((i, j), 1) if i < j else ((j, i), -1)
        vals[key] = vals.get(key, zeros(v1 * v0)) + sign * m
    nu = AlternatingMap(2, n, v1 * v0, vals)
    return RepUpToHomotopy(g, TwoTermComplex(v1, v0, d), mus[0], mus[1], nu)


# ---------------------------------------------------------------------------
# 2-term L-infinity algebras


def linfty_to_json(L: TwoTermLInfinity, base: dict | None = None) -> dict:
    doc = dict(base) if base else {"format": FORMAT, "name": L.name}
    doc.update({
        "l1_dim": L.l1_dim,
        "l0_dim": L.l0_dim,
        "d": matrix_to_json(L.d),
        "l2_00": [{"i": i, "j": j, "value": vector_to_json(v)} for (i, j), v in sorted(L.l2_00.values.items())],
        "l2_01": [matrix_to_json(m) for m in L.l2_01],
        "l3": [{"i": i, "j": j, "k": k, "value": vector_to_json(v)} for (i, j, k), v in sorted(L.l3.values.items())],
    })
    return doc


def _alternating(entries, arity: int, n: int, m: int, key: str) -> AlternatingMap:
    from .algebra import _sort_sign

    if not isinstance(entries, list):
        raise DocumentError("expected a list", key)
    names = "ijk"[:arity]
    vals = {}
    for e, entry in enumerate(entries):
        where = f"{key}[{e}]"
        if not isinstance(entry, dict):
            raise DocumentError(f"expected an object with {', '.join(names)} and value", where)
        idx = [_index(entry.get(c), n, f"{where}.{c}") for c in names]
        sign, sorted_idx = _sort_sign(idx)
        if sign == 0:
            raise DocumentError("repeated index in an alternating map", where)
        v = parse_vector(entry.get("value"), m, f"{where}.value")
        vals[sorted_idx] = vals.get(sorted_idx, zeros(m)) + sign * v
    return AlternatingMap(arity, n, m, vals)


def parse_linfty(doc: dict) -> TwoTermLInfinity:
    n1 = _int(doc, "l1_dim")
    n0 = _int(doc, "l0_dim", minimum=1)
    d = parse_matrix(doc.get("d", [[0] * n1 for _ in range(n0)]), n0, n1, "d")
    l2 = _alternating(doc.get("l2_00", []), 2, n0, n0, "l2_00")
    mats = doc.get("l2_01")
    if not isinstance(mats, list) or len(mats) != n0:
        raise DocumentError(f"expected {n0} matrices", "l2_01")
    l2_01 = tuple(parse_matrix(m, n1, n1, f"l2_01[{a}]") for a, m in enumerate(mats))
    l3 = _alternating(doc.get("l3", []), 3, n0, n1, "l3")
    return TwoTermLInfinity(n1, n0, d, l2, l2_01, l3, name=str(doc.get("name", "")))


# ---------------------------------------------------------------------------
# integrated group data


def group_to_json(r_group, base: dict | None = None) -> dict:
    """Document for an integrated representation: its Lie algebra datum plus the Fbar polynomial."""
    datum = r_group.meta["datum"]
    doc = rep_to_json(datum) if base is None else dict(base)
    fbar = r_group.meta["fbar_exact"]
    doc["group"] = {"model": "nilpotent", "mode": "exact",
                    "fbar": [{"exponents": list(e), "matrix": matrix_to_json(m)}
                             for e, m in sorted(fbar.terms.items())]}
    return doc


def parse_group(doc: dict, mode: str = "exact"):
    """Rebuild the integrated representation from its datum and Fbar; no solving takes place."""
    from .group_rep import GroupRepUpToHomotopy, f2_from_fbar
    from .groups import NilpotentGroup
    from .integrate import PolyMap

    r = parse_rep(doc)
    block = doc.get("group")
    if not isinstance(block, dict):
        raise DocumentError("missing object", "group")
    n, v1, v0 = r.g.dim, r.complex.v1, r.complex.v0
    terms = {}
    entries = block.get("fbar", [])
    if not isinstance(entries, list):
        raise DocumentError("expected a list", "group.fbar")
    for e, entry in enumerate(entries):
        where = f"group.fbar[{e}]"
        if not isinstance(entry, dict):
            raise DocumentError("expected an object {exponents, matrix}", where)
        exps = entry.get("exponents")
        if (not isinstance(exps, list) or len(exps) != 2 * n
                or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in exps)):
            raise DocumentError(f"expected {2 * n} nonnegative integers", f"{where}.exponents")
        terms[tuple(exps)] = parse_matrix(entry.get("matrix"), v1, v0, f"{where}.matrix")
    fbar = PolyMap(2, n, v1, v0, terms)
    try:
        G = NilpotentGroup(r.g, mode)
        M0, M1 = G.integrate(r.mu0), G.integrate(r.mu1)
    except Lie2Error as exc:
        raise DocumentError(str(exc), "group") from None

    def F1(a):
        return M0(a), M1(a)

    out = GroupRepUpToHomotopy(G, r.complex, F1, lambda g1, g2: None, name=f"integrated({r.g.name})")
    out = out.with_F2(f2_from_fbar(out, fbar))
    out.meta.update({"fbar": fbar, "fbar_exact": fbar, "datum": r})
    return out


# ---------------------------------------------------------------------------
# text


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2)


def loads(text: str) -> dict:
    if not text.strip():
        raise DocumentError("empty document", "line 1")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise DocumentError("top level must be an object", "$")
    return doc


def load(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as exc:
        raise DocumentError(exc.strerror or str(exc), path) from None
