"""Named Lie algebras: ``abelian:n``, ``so3``, ``sl2``, ``heis3``, ``gl:n`` and direct sums ``a+b``."""

from __future__ import annotations

from .algebra import LieAlgebra
from .errors import DimensionError
from .linalg import zeros


def abelian(n: int) -> LieAlgebra:
    if n < 1:
        raise DimensionError("abelian algebra needs n >= 1")
    return LieAlgebra(zeros(n, n, n), name=f"abelian:{n}")


def so3() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}},
                                    labels=("e1", "e2", "e3"), name="so3")


def sl2() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}},
                                    labels=("h", "e", "f"), name="sl2")


def heis3() -> LieAlgebra:
    return LieAlgebra.from_brackets(3, {(0, 1): {2: 1}}, labels=("x", "y", "z"), name="heis3")


def gl(n: int) -> LieAlgebra:
    """Basis E_ij in row-major order; [E_ij, E_kl] = delta_jk E_il - delta_li E_kj."""
    if n < 1:
        raise DimensionError("gl(n) needs n >= 1")
    dim = n * n
    c = zeros(dim, dim, dim)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    a, b = i * n + j, k * n + l
                    if j == k:
                        c[a, b, i * n + l] += 1
                    if l == i:
                        c[a, b, k * n + j] -= 1
    labels = tuple(f"E{i + 1}{j + 1}" for i in range(n) for j in range(n))
    return LieAlgebra(c, labels, f"gl:{n}")


def direct_sum(a: LieAlgebra, b: LieAlgebra) -> LieAlgebra:
    n, m = a.dim, b.dim
    c = zeros(n + m, n + m, n + m)
    c[:n, :n, :n] = a.structure_constants
    c[n:, n:, n:] = b.structure_constants
    labels = tuple(a.basis_labels) + tuple(f"{s}'" if s in a.basis_labels else s for s in b.basis_labels)
    return LieAlgebra(c, labels, f"{a.name}+{b.name}")


def catalog_names() -> list[str]:
    return ["abelian:1", "abelian:2", "abelian:3", "so3", "sl2", "heis3", "gl:1", "gl:2", "gl:3"]


def get(name: str) -> LieAlgebra:
    """Resolve a catalog name; ``+`` builds direct sums left to right."""
    name = name.strip()
    if "+" in name:
        parts = [get(p) for p in name.split("+")]
        out = parts[0]
        for p in parts[1:]:
            out = direct_sum(out, p)
        return out
    if name == "so3":
        return so3()
    if name == "sl2":
        return sl2()
    if name == "heis3":
        return heis3()
    kind, _, arg = name.partition(":")
    if kind in ("abelian", "gl") and arg:
        try:
            n = int(arg)
        except ValueError:
            raise KeyError(name) from None
        return abelian(n) if kind == "abelian" else gl(n)
    raise KeyError(f"unknown algebra {name!r}")
