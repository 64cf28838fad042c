"""Built-in algebras: gl(m|n), osp(1|2), abelian superalgebras, parabolics."""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Tuple

from .core import InputError, LieSuperalgebra, SubalgebraEmbedding

__all__ = ["gl", "osp12", "abelian", "catalog_algebra", "catalog_parabolic", "even_part"]


def _gl_label(i, j, size):
    return f"E{i}{j}" if size <= 9 else f"E{i}_{j}"


def gl(m: int, n: int) -> LieSuperalgebra:
    """gl(m|n) in the basis of matrix units.

    Even units (both diagonal blocks) come first, then odd units, each in
    row-major order.
    """
    if m < 0 or n < 0:
        raise InputError("gl(m|n) needs m, n >= 0")
    size = m + n
    par = [0] * m + [1] * n
    units = [(i, j) for i in range(size) for j in range(size)]
    even = [u for u in units if (par[u[0]] + par[u[1]]) % 2 == 0]
    odd = [u for u in units if (par[u[0]] + par[u[1]]) % 2 == 1]
    order = even + odd
    pos = {u: k for k, u in enumerate(order)}
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for (i, j) in order:
        for (k, l) in order:
            v: Dict[int, Fraction] = {}
            if j == k:
                v[pos[(i, l)]] = v.get(pos[(i, l)], 0) + 1
            if l == i:
                s = -1 if (par[i] + par[j]) * (par[k] + par[l]) % 2 else 1
                key = pos[(k, j)]
                v[key] = v.get(key, 0) - s
            v = {c: Fraction(x) for c, x in v.items() if x}
            if v:
                table[(pos[(i, j)], pos[(k, l)])] = v
    labels = [_gl_label(i + 1, j + 1, size) for (i, j) in order]
    parities = [0] * len(even) + [1] * len(odd)
    alg = LieSuperalgebra(labels, parities, table, name=f"gl({m}|{n})")
    alg._cache["gl_units"] = {u: pos[u] for u in order}
    alg._cache["gl_dims"] = (m, n)
    return alg


def osp12() -> LieSuperalgebra:
    """osp(1|2) with even h, e, f and odd x, y."""
    return LieSuperalgebra.from_brackets(
        [("h", 0), ("e", 0), ("f", 0), ("x", 1), ("y", 1)],
        {
            ("h", "e"): {"e": 2},
            ("h", "f"): {"f": -2},
            ("e", "f"): {"h": 1},
            ("h", "x"): {"x": 1},
            ("h", "y"): {"y": -1},
            ("e", "y"): {"x": -1},
            ("f", "x"): {"y": -1},
            ("x", "x"): {"e": 2},
            ("y", "y"): {"f": -2},
            ("x", "y"): {"h": 1},
        },
        name="osp(1|2)",
    )


def abelian(n_even: int, n_odd: int) -> LieSuperalgebra:
    if n_even < 0 or n_odd < 0:
        raise InputError("abelian dimensions must be >= 0")
    labels = [f"Z{i + 1}" for i in range(n_even)] + [f"X{i + 1}" for i in range(n_odd)]
    return LieSuperalgebra(labels, [0] * n_even + [1] * n_odd, {}, name=f"C^{{{n_even}|{n_odd}}}")


def catalog_algebra(name: str, *params: int) -> LieSuperalgebra:
    if name == "gl":
        if len(params) != 2:
            raise InputError("gl takes two parameters m n")
        return gl(*params)
    if name == "osp12":
        if params:
            raise InputError("osp12 takes no parameters")
        return osp12()
    if name == "abelian":
        if len(params) != 2:
            raise InputError("abelian takes two parameters: even and odd dimension")
        return abelian(*params)
    raise InputError(f"unknown catalog algebra {name!r}")


def catalog_parabolic(alg: LieSuperalgebra, r: int, s: int) -> SubalgebraEmbedding:
    """Stabilizer in gl(m|n) of the coordinate subspace spanned by the first
    r even and the first s odd basis vectors (block upper triangular)."""
    if "gl_units" not in alg._cache:
        raise InputError("parabolics are only defined for catalog gl(m|n)")
    m, n = alg._cache["gl_dims"]
    if not (0 <= r <= m and 0 <= s <= n):
        raise InputError(f"flag ({r},{s}) out of range for gl({m}|{n})")
    lead = set(range(r)) | set(range(m, m + s))
    units = alg._cache["gl_units"]
    keep = [idx for (i, j), idx in units.items() if j not in lead or i in lead]
    return SubalgebraEmbedding(
        alg, [{k: Fraction(1)} for k in sorted(keep)], name=f"p({r}|{s})"
    )


def even_part(alg: LieSuperalgebra) -> SubalgebraEmbedding:
    return SubalgebraEmbedding(alg, [{i: Fraction(1)} for i in alg.even_indices], name="g0")
