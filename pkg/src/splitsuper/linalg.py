"""Sparse exact linear algebra over the rationals.

Vectors are plain dicts mapping a column key to a nonzero ``Fraction``.
Column keys are anything orderable; pivots are always chosen as the
smallest remaining key so every basis produced here is reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

Vec = Dict[Hashable, Fraction]

__all__ = [
    "Vec",
    "Echelon",
    "vadd",
    "vscale",
    "vsub",
    "axpy",
    "clean",
    "rank",
    "kernel",
    "solve_affine",
    "in_span",
]


def clean(v: dict) -> Vec:
    return {k: Fraction(c) for k, c in v.items() if c}


def axpy(y: dict, a, x: dict) -> None:
    """In place ``y += a*x`` dropping zeros."""
    if not a:
        return
    for k, c in x.items():
        s = y.get(k, 0) + a * c
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def vadd(u: dict, v: dict) -> Vec:
    out = dict(u)
    axpy(out, 1, v)
    return out


def vsub(u: dict, v: dict) -> Vec:
    out = dict(u)
    axpy(out, -1, v)
    return out


def vscale(a, v: dict) -> Vec:
    if not a:
        return {}
    return {k: a * c for k, c in v.items()}


class Echelon:
    """Incremental row reduction.

    Rows are added one at a time; each is reduced against the pivots seen
    so far and, if something survives, becomes a new pivot row normalised
    to leading coefficient 1 at its smallest column.
    """

    def __init__(self, key=None):
        self._key = key
        self.order: List[Hashable] = []  # pivot columns, insertion order
        self.rows: Dict[Hashable, Vec] = {}

    def _lead(self, row):
        return min(row, key=self._key) if self._key else min(row)

    def reduce(self, row: dict) -> Vec:
        r = dict(row)
        for p in self.order:
            c = r.get(p)
            if c:
                axpy(r, -c, self.rows[p])
        return r

    def add(self, row: dict) -> Optional[Hashable]:
        """Add a row; return its pivot column or None if it was dependent."""
        r = self.reduce(row)
        if not r:
            return None
        p = self._lead(r)
        inv = 1 / Fraction(r[p])
        self.rows[p] = {k: c * inv for k, c in r.items()}
        self.order.append(p)
        return p

    def __len__(self):
        return len(self.order)

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def reduced(self) -> List[Tuple[Hashable, Vec]]:
        """Reduced row echelon form as ``(pivot, row)`` sorted by pivot."""
        full: Dict[Hashable, Vec] = {}
        for p in reversed(self.order):
            r = dict(self.rows[p])
            for q in list(r):
                if q != p and q in full:
                    axpy(r, -r[q], full[q])
            full[p] = r
        keys = sorted(full, key=self._key) if self._key else sorted(full)
        return [(p, full[p]) for p in keys]


def rank(rows: Iterable[dict]) -> int:
    e = Echelon()
    for r in rows:
        e.add(r)
    return len(e)


def in_span(vectors: Iterable[dict], v: dict) -> bool:
    e = Echelon()
    for r in vectors:
        e.add(r)
    return e.contains(v)


def kernel(rows: Iterable[dict], columns: Sequence[Hashable]) -> List[Vec]:
    """Basis of {x : row . x = 0 for every row}, x indexed by ``columns``.

    ``columns`` fixes both the variable set and the pivot order; one basis
    vector per free column, in column order.
    """
    pos = {c: i for i, c in enumerate(columns)}
    e = Echelon(key=pos.__getitem__)
    for r in rows:
        if r:
            e.add(r)
    rref = dict(e.reduced())
    basis = []
    for f in columns:
        if f in rref:
            continue
        v = {f: Fraction(1)}
        for p, r in rref.items():
            c = r.get(f)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


_RHS = object()


def solve_affine(
    rows: Sequence[Tuple[dict, Fraction]], columns: Sequence[Hashable]
) -> Tuple[Optional[Vec], List[Vec]]:
    """Solve ``row . x = rhs`` for all given ``(row, rhs)`` pairs.

    Returns ``(particular, homogeneous_basis)``; ``particular`` is None when
    the system is inconsistent. The particular solution sets every free
    variable to zero.
    """
    pos = {c: i for i, c in enumerate(columns)}
    big = len(columns)
    e = Echelon(key=lambda c: big if c is _RHS else pos[c])
    consistent = True
    for r, b in rows:
        row = dict(r)
        if b:
            row[_RHS] = Fraction(b)
        if not row:
            continue
        if e.add(row) is _RHS:
            consistent = False
    rref = dict(e.reduced())
    hom_rows = [{k: c for k, c in r.items() if k is not _RHS} for r in rref.values()]
    basis = kernel(hom_rows, columns)
    if not consistent:
        return None, basis
    part = {}
    for p, r in rref.items():
        c = r.get(_RHS)
        if c:
            part[p] = c
    return part, basis
