"""Structure-constant Lie superalgebras and their subalgebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .linalg import Echelon, Vec, axpy, kernel

__all__ = [
    "InputError",
    "LieSuperalgebra",
    "SubalgebraEmbedding",
    "SubspaceReport",
    "Violation",
    "validate_superalgebra",
    "validate_subalgebra",
    "gr_superalgebra",
    "adjoint_kernel_on_odd",
    "largest_ideal_in",
    "quotient_basis",
    "span_of_brackets",
]


class InputError(ValueError):
    """Malformed algebraic input (unknown labels, dependent generators...)."""


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise InputError(f"floating point coefficient {x!r} is not exact")
    try:
        return Fraction(x)
    except (ValueError, TypeError) as exc:
        raise InputError(f"not an exact rational: {x!r}") from exc


class LieSuperalgebra:
    """Finite dimensional Lie superalgebra given by structure constants.

    ``table[(a, b)]`` is the sparse vector ``[T_a, T_b]``; absent pairs are
    zero. Instances are treated as immutable; a few expensive derived
    objects (PBW engine, action matrices) are cached on first use.
    """

    def __init__(self, labels, parities, table, name: str = ""):
        labels = tuple(labels)
        parities = tuple(int(p) for p in parities)
        if len(labels) != len(parities):
            raise InputError("labels and parities differ in length")
        if len(set(labels)) != len(labels):
            raise InputError("duplicate basis labels")
        if any(p not in (0, 1) for p in parities):
            raise InputError("parities must be 0 or 1")
        if list(parities) != sorted(parities):
            raise InputError("even basis elements must precede odd ones")
        n = len(labels)
        clean_table: Dict[Tuple[int, int], Vec] = {}
        for (a, b), vec in table.items():
            if not (0 <= a < n and 0 <= b < n):
                raise InputError(f"bracket index out of range: {(a, b)}")
            v = {}
            for c, coef in vec.items():
                if not 0 <= c < n:
                    raise InputError(f"bracket value index out of range: {c}")
                coef = _frac(coef)
                if coef:
                    v[c] = coef
            if v:
                clean_table[(a, b)] = v
        self.name = name
        self.labels = labels
        self.parities = parities
        self._table = clean_table
        self._index = {l: i for i, l in enumerate(labels)}
        self._cache: dict = {}

    @classmethod
    def from_brackets(cls, basis, brackets, name: str = "", complete: bool = True):
        """Build from ``[(label, parity)]`` and ``{(l1, l2): {l3: coef}}``.

        With ``complete`` the bracket of a reversed pair is filled in by
        super-antisymmetry whenever it is not given explicitly.
        """
        labels = [b[0] for b in basis]
        parities = [b[1] for b in basis]
        index = {l: i for i, l in enumerate(labels)}

        def idx(label):
            try:
                return index[label]
            except KeyError:
                raise InputError(f"unknown basis label {label!r}") from None

        table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for (x, y), vec in brackets.items():
            table[(idx(x), idx(y))] = {idx(z): _frac(c) for z, c in vec.items()}
        if complete:
            for (a, b), vec in list(table.items()):
                if (b, a) not in table:
                    s = 1 if parities[a] and parities[b] else -1
                    table[(b, a)] = {c: s * v for c, v in vec.items()}
        return cls(labels, parities, table, name=name)

    # basic data

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def n_even(self) -> int:
        return self.parities.count(0)

    @property
    def n_odd(self) -> int:
        return self.parities.count(1)

    @property
    def even_indices(self) -> range:
        return range(self.n_even)

    @property
    def odd_indices(self) -> range:
        return range(self.n_even, self.dim)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise InputError(f"unknown basis label {label!r}") from None

    @property
    def table(self) -> Mapping[Tuple[int, int], Vec]:
        return self._table

    def bracket(self, a: int, b: int) -> Vec:
        return self._table.get((a, b), {})

    def bracket_vec(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vec:
        out: Vec = {}
        for a, ca in u.items():
            for b, cb in v.items():
                br = self._table.get((a, b))
                if br:
                    axpy(out, ca * cb, br)
        return out

    def basis_vector(self, i: int) -> Vec:
        return {i: Fraction(1)}

    def parity_of(self, v: Mapping[int, Fraction]) -> Optional[int]:
        """Parity of a homogeneous vector; None for mixed, 0 for zero."""
        ps = {self.parities[i] for i in v}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def format_vector(self, v: Mapping[int, Fraction]) -> str:
        if not v:
            return "0"
        parts = []
        for i in sorted(v):
            parts.append(f"{v[i]}*{self.labels[i]}")
        return " + ".join(parts)

    def __repr__(self):
        name = self.name or "LieSuperalgebra"
        return f"<{name} dim={self.n_even}|{self.n_odd}>"

    def same_as(self, other: "LieSuperalgebra") -> bool:
        return (
            self.labels == other.labels
            and self.parities == other.parities
            and self._table == other._table
        )


@dataclass(frozen=True)
class Violation:
    kind: str
    witness: Tuple[str, ...]
    residual: Dict[int, Fraction] = field(default_factory=dict)

    def describe(self, alg: LieSuperalgebra) -> str:
        return f"{self.kind} at ({', '.join(self.witness)}): residual {alg.format_vector(self.residual)}"


def validate_superalgebra(alg: LieSuperalgebra) -> List[Violation]:
    """Exhaustively check super-antisymmetry, parity and super Jacobi."""
    n = alg.dim
    p = alg.parities
    lab = alg.labels
    out: List[Violation] = []
    for a in range(n):
        for b in range(a, n):
            res = dict(alg.bracket(a, b))
            # [a,b] + (-1)^{|a||b|} [b,a]
            axpy(res, -1 if p[a] and p[b] else 1, alg.bracket(b, a))
            if res:
                out.append(Violation("antisymmetry", (lab[a], lab[b]), res))
    for (a, b), vec in alg.table.items():
        bad = {c: v for c, v in vec.items() if p[c] != (p[a] + p[b]) % 2}
        if bad:
            out.append(Violation("parity", (lab[a], lab[b]), bad))
    for a, b, c in product(range(n), repeat=3):
        res: Vec = {}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            inner = alg.bracket(y, z)
            if not inner:
                continue
            s = -1 if p[x] and p[z] else 1
            for k, ck in inner.items():
                br = alg.bracket(x, k)
                if br:
                    axpy(res, s * ck, br)
        if res:
            out.append(Violation("jacobi", (lab[a], lab[b], lab[c]), res))
    return out


def gr_superalgebra(alg: LieSuperalgebra) -> LieSuperalgebra:
    """Same superspace with every odd-odd bracket set to zero."""
    p = alg.parities
    table = {k: v for k, v in alg.table.items() if not (p[k[0]] and p[k[1]])}
    name = f"gr({alg.name})" if alg.name else ""
    return LieSuperalgebra(alg.labels, alg.parities, table, name=name)


@dataclass
class SubspaceReport:
    """A subspace of ``alg`` together with verified structural flags."""

    alg: LieSuperalgebra
    basis: List[Vec]
    is_ideal: bool
    is_subalgebra: bool
    note: str = ""

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Mapping[int, Fraction]) -> bool:
        e = Echelon()
        for b in self.basis:
            e.add(b)
        return e.contains(v)


def _echelon_basis(vectors) -> List[Vec]:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return [r for _, r in e.reduced()]


def _is_subalgebra(alg, basis) -> bool:
    e = Echelon()
    for b in basis:
        e.add(b)
    return all(e.contains(alg.bracket_vec(u, v)) for u in basis for v in basis)


def _is_ideal(alg, basis) -> bool:
    e = Echelon()
    for b in basis:
        e.add(b)
    return all(
        e.contains(alg.bracket_vec(alg.basis_vector(i), v))
        for i in range(alg.dim)
        for v in basis
    )


def make_report(alg, vectors, note="") -> SubspaceReport:
    basis = _echelon_basis(vectors)
    return SubspaceReport(alg, basis, _is_ideal(alg, basis), _is_subalgebra(alg, basis), note)


class SubalgebraEmbedding:
    """A subalgebra h of ``parent`` spanned by coordinate vectors.

    The complement is chosen greedily among standard basis vectors in
    declared order, which makes the quotient g/h and its projection
    deterministic.
    """

    def __init__(self, parent: LieSuperalgebra, vectors: Sequence[Mapping[int, Fraction]], name=""):
        vecs = []
        for v in vectors:
            d = {}
            for i, c in v.items():
                if not 0 <= i < parent.dim:
                    raise InputError(f"coordinate index {i} out of range")
                c = _frac(c)
                if c:
                    d[i] = c
            vecs.append(d)
        e = Echelon()
        for v in vecs:
            if e.add(v) is None:
                raise InputError("subalgebra spanning set is linearly dependent")
        self.parent = parent
        self.vectors: Tuple[Vec, ...] = tuple(vecs)
        self.name = name
        self._span = e
        comp = []
        for j in range(parent.dim):
            if e.add({j: Fraction(1)}) is not None:
                comp.append(j)
        self.complement: Tuple[int, ...] = tuple(comp)
        # rows of h with pivots forced onto the non-complement columns
        nonc = [j for j in range(parent.dim) if j not in set(comp)]
        order = {c: i for i, c in enumerate(nonc + comp)}
        he = Echelon(key=order.__getitem__)
        for v in vecs:
            he.add(v)
        self._hrows = dict(he.reduced())
        self._cpos = {c: i for i, c in enumerate(comp)}

    @classmethod
    def from_labels(cls, parent, labels, name=""):
        return cls(parent, [{parent.index(l): Fraction(1)} for l in labels], name=name)

    @property
    def dim(self) -> int:
        return len(self.vectors)

    @property
    def codim(self) -> int:
        return len(self.complement)

    def even_vectors(self) -> List[Vec]:
        return [v for v in self.vectors if v and self.parent.parity_of(v) == 0]

    def odd_vectors(self) -> List[Vec]:
        return [v for v in self.vectors if v and self.parent.parity_of(v) == 1]

    @property
    def dim_even(self) -> int:
        return len(self.even_vectors())

    @property
    def dim_odd(self) -> int:
        return len(self.odd_vectors())

    def contains(self, v: Mapping[int, Fraction]) -> bool:
        r = dict(v)
        for p, row in self._hrows.items():
            c = r.get(p)
            if c:
                axpy(r, -c, row)
        return not r

    def project(self, v: Mapping[int, Fraction]) -> Dict[int, Fraction]:
        """Coordinates of the image of ``v`` in g/h (indexed by complement slot)."""
        r = dict(v)
        for p, row in self._hrows.items():
            c = r.get(p)
            if c:
                axpy(r, -c, row)
        return {self._cpos[j]: c for j, c in r.items()}

    def projection_matrix(self) -> List[List[Fraction]]:
        q, n = self.codim, self.parent.dim
        m = [[Fraction(0)] * n for _ in range(q)]
        for i in range(n):
            for k, c in self.project({i: Fraction(1)}).items():
                m[k][i] = c
        return m

    def quotient_parities(self) -> Tuple[int, ...]:
        return tuple(self.parent.parities[j] for j in self.complement)

    def __repr__(self):
        return f"<SubalgebraEmbedding {self.name or ''} dim={self.dim_even}|{self.dim_odd} in {self.parent!r}>"


def validate_subalgebra(alg: LieSuperalgebra, h: SubalgebraEmbedding) -> List[Violation]:
    if not alg.same_as(h.parent):
        raise InputError("subalgebra belongs to a different algebra")
    out: List[Violation] = []
    for k, v in enumerate(h.vectors):
        if alg.parity_of(v) is None:
            out.append(Violation("homogeneity", (f"h[{k}]",), dict(v)))
    for i, u in enumerate(h.vectors):
        for j in range(i, len(h.vectors)):
            br = alg.bracket_vec(u, h.vectors[j])
            if not h.contains(br):
                out.append(Violation("closure", (f"h[{i}]", f"h[{j}]"), br))
    return out


def quotient_basis(alg: LieSuperalgebra, h: SubalgebraEmbedding):
    """Complement basis (as standard basis indices) and projection g -> g/h."""
    return list(h.complement), h.projection_matrix()


def adjoint_kernel_on_odd(alg: LieSuperalgebra) -> SubspaceReport:
    """{Z in g0 : [Z, X] = 0 for all X in g1}."""
    even = list(alg.even_indices)
    rows = []
    for j in alg.odd_indices:
        # row per output coordinate k: sum_i c_i [e_i, e_j]_k
        per_k: Dict[int, Vec] = {}
        for i in even:
            for k, c in alg.bracket(i, j).items():
                per_k.setdefault(k, {})[i] = c
        rows.extend(per_k.values())
    basis = kernel(rows, even)
    return make_report(alg, basis, note="Ker(ad|g1)")


def _restricted_subspace(alg, candidates: List[Vec], ambient: List[Vec]) -> List[Vec]:
    """{X in span(candidates) : [T, X] in span(ambient) for every basis T}."""
    if not candidates:
        return []
    e = Echelon()
    for v in ambient:
        e.add(v)
    cols = list(range(len(candidates)))
    rows = []
    for t in range(alg.dim):
        per: Dict[object, Vec] = {}
        for k, v in enumerate(candidates):
            for coord, c in e.reduce(alg.bracket_vec({t: Fraction(1)}, v)).items():
                per.setdefault(coord, {})[k] = c
        rows.extend(per.values())
    out = []
    for s in kernel(rows, cols):
        x: Vec = {}
        for k, c in s.items():
            axpy(x, c, candidates[k])
        out.append(x)
    return out


def largest_ideal_in(alg: LieSuperalgebra, h: SubalgebraEmbedding) -> SubspaceReport:
    """Largest ideal of g contained in h.

    Iterates a_{k+1} = {X in a_k : [g, X] in a_k} from a_0 = h. Even and
    odd candidates are solved separately so the basis stays homogeneous.
    """
    even = _echelon_basis(h.even_vectors())
    odd = _echelon_basis(h.odd_vectors())
    while True:
        cur = even + odd
        even2 = _echelon_basis(_restricted_subspace(alg, even, cur))
        odd2 = _echelon_basis(_restricted_subspace(alg, odd, cur))
        if len(even2) + len(odd2) == len(cur):
            break
        even, odd = even2, odd2
    return make_report(alg, even + odd, note="largest ideal of g inside h (effectiveness ideal)")


def span_of_brackets(alg: LieSuperalgebra, us, vs) -> List[Vec]:
    return _echelon_basis(alg.bracket_vec(u, v) for u in us for v in vs)
