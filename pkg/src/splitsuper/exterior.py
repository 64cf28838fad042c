"""Left-invariant functions Lambda(g1*) and fields Lambda(g1*) (x) V.

A left-invariant function f is identified with a linear form on Lambda(g1)
through f(gamma(omega)) = <f, omega>, and the basis monomial eps_A
(``A`` a mask, factors in increasing order) pairs to 1 with X_A and to 0
with every other mask monomial.

A generator Y acts on such functions by

    <Y(f), omega> = (-1)^{|Y|} f(gamma(omega) Y).

Evaluating f on an element u of U(g) only needs the class of u modulo
g0 U(g) (left-invariant functions are constants on G0, so even left
factors contribute only through the counit), so the action is computed in
that quotient: a right U(g)-module with basis the odd mask monomials.
``pair_at_identity`` and ``field_action_reference`` do the same thing
through full PBW decomposition and serve as an independent cross-check.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from .core import InputError, LieSuperalgebra, SubalgebraEmbedding
from .linalg import Echelon, Vec, axpy, kernel
from .pbw import (
    PBWElement,
    decompose_left_even,
    engine,
    gamma_symmetrize,
    mask_indices,
    popcount,
    augmentation,
)

__all__ = [
    "FULL",
    "QUOTIENT",
    "ExteriorPoly",
    "ExteriorField",
    "wedge_sign",
    "product_sign",
    "pair_at_identity",
    "field_action",
    "field_action_reference",
    "field_matrix",
    "module_action",
    "derivation_apply",
    "invariant_subspace",
    "split_model_ranks",
    "even_annihilator",
    "mask_order",
    "precompute_actions",
]

FULL = "full"
QUOTIENT = "quotient"


def wedge_sign(a: int, b: int) -> int:
    """Sign of eps_a ^ eps_b relative to eps_{a|b}; 0 if they overlap."""
    if a & b:
        return 0
    swaps = 0
    for j in mask_indices(b):
        swaps += popcount(a >> (j + 1))
    return -1 if swaps % 2 else 1


def mask_order(m: int) -> List[int]:
    """All masks over m odd generators, by (popcount, value)."""
    return sorted(range(1 << m), key=lambda x: (popcount(x), x))


def product_sign(a: int, b: int) -> int:
    """Sign of the function product of the dual basis elements for a and b.

    The basis element for mask A is the functional dual to X_A. Products of
    functions come from the coproduct of U(g), which on gamma-images is the
    shuffle coproduct of Lambda(g1); with the graded sign rule this makes
    dual(A) * dual(B) = (-1)^{|A||B|} wedge_sign(A, B) dual(A|B).
    """
    return wedge_sign(b, a)


class ExteriorPoly:
    """Element of Lambda(g1*) as a sparse map mask -> coefficient.

    ``terms[A]`` is the coefficient of the functional dual to X_A under the
    determinant pairing. ``*`` is the product of functions.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms: Optional[Mapping[int, Fraction]] = None):
        self.m = m
        self.terms: Dict[int, Fraction] = {k: Fraction(c) for k, c in (terms or {}).items() if c}
        for k in self.terms:
            if k >> m:
                raise InputError(f"mask {k:b} exceeds odd dimension {m}")

    @classmethod
    def basis(cls, m: int, *indices: int):
        """Basis functional dual to X_{i1} ... X_{ik} (odd indices from 0)."""
        mask = 0
        for i in indices:
            if mask >> i & 1:
                raise InputError("repeated odd index")
            mask |= 1 << i
        return cls(m, {mask: 1})

    def __add__(self, other):
        t = dict(self.terms)
        axpy(t, 1, other.terms)
        return ExteriorPoly(self.m, t)

    def __sub__(self, other):
        t = dict(self.terms)
        axpy(t, -1, other.terms)
        return ExteriorPoly(self.m, t)

    def __neg__(self):
        return ExteriorPoly(self.m, {k: -c for k, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, ExteriorPoly):
            out: Dict[int, Fraction] = {}
            for a, ca in self.terms.items():
                for b, cb in other.terms.items():
                    s = product_sign(a, b)
                    if s:
                        axpy(out, s * ca * cb, {a | b: 1})
            return ExteriorPoly(self.m, out)
        c = Fraction(other)
        return ExteriorPoly(self.m, {k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, ExteriorPoly):
            return self.m == other.m and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def component(self, degree: int) -> "ExteriorPoly":
        return ExteriorPoly(self.m, {k: c for k, c in self.terms.items() if popcount(k) == degree})

    @property
    def parity(self) -> Optional[int]:
        ps = {popcount(k) % 2 for k in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda x: (popcount(x), x)):
            mono = "^".join(f"e{i + 1}" for i in mask_indices(k)) or "1"
            parts.append(f"{self.terms[k]}*{mono}")
        return " + ".join(parts)


class ExteriorField:
    """Element of Lambda(g1*) (x) g (FULL) or Lambda(g1*) (x) g/h (QUOTIENT).

    ``terms`` maps (mask, target) to a coefficient; for QUOTIENT the target
    is a slot of ``h.complement``.
    """

    __slots__ = ("alg", "tag", "h", "terms")

    def __init__(self, alg: LieSuperalgebra, tag: str, terms=None, h: Optional[SubalgebraEmbedding] = None):
        if tag not in (FULL, QUOTIENT):
            raise InputError(f"unknown field tag {tag!r}")
        if tag == QUOTIENT and h is None:
            raise InputError("a QUOTIENT field needs its subalgebra")
        self.alg = alg
        self.tag = tag
        self.h = h if tag == QUOTIENT else None
        width = self.target_dim
        t: Dict[Tuple[int, int], Fraction] = {}
        for (mask, tgt), c in (terms or {}).items():
            if not 0 <= tgt < width:
                raise InputError(f"target index {tgt} out of range for {tag} field")
            if mask >> alg.n_odd:
                raise InputError(f"mask {mask:b} exceeds odd dimension")
            if c:
                t[(mask, tgt)] = Fraction(c)
        self.terms = t

    @property
    def target_dim(self) -> int:
        return self.alg.dim if self.tag == FULL else self.h.codim

    def target_parity(self, t: int) -> int:
        if self.tag == FULL:
            return self.alg.parities[t]
        return self.alg.parities[self.h.complement[t]]

    def target_label(self, t: int) -> str:
        if self.tag == FULL:
            return self.alg.labels[t]
        return self.alg.labels[self.h.complement[t]] + "+h"

    def like(self, terms) -> "ExteriorField":
        return ExteriorField(self.alg, self.tag, terms, self.h)

    def _check(self, other):
        if self.tag != other.tag or (self.tag == QUOTIENT and self.h is not other.h):
            raise InputError("fields live in different spaces")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        axpy(t, 1, other.terms)
        return self.like(t)

    def __sub__(self, other):
        self._check(other)
        t = dict(self.terms)
        axpy(t, -1, other.terms)
        return self.like(t)

    def __neg__(self):
        return self.like({k: -c for k, c in self.terms.items()})

    def __mul__(self, c):
        c = Fraction(c)
        return self.like({k: c * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, ExteriorField):
            return self.tag == other.tag and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    @property
    def parity(self) -> Optional[int]:
        ps = {(popcount(m) + self.target_parity(t)) % 2 for m, t in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def coefficient(self, t: int) -> ExteriorPoly:
        return ExteriorPoly(self.alg.n_odd, {m: c for (m, tt), c in self.terms.items() if tt == t})

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kc: (popcount(kc[0][0]), kc[0][0], kc[0][1]))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (mask, t), c in self.sorted_terms():
            mono = "^".join(f"e{i + 1}" for i in mask_indices(mask)) or "1"
            parts.append(f"{c}*{mono}(x){self.target_label(t)}")
        return " + ".join(parts)


# -- action data ----------------------------------------------------------


class _ActionData:
    """Right action of U(g) on U(g)/g0U(g) and the induced field matrices."""

    def __init__(self, alg: LieSuperalgebra):
        self.alg = alg
        self.m = alg.n_odd
        self.order = mask_order(self.m)
        self._gamma: Dict[int, Vec] = {0: {0: Fraction(1)}}
        self._fields: Dict[int, Dict[int, Vec]] = {}

    def _mask_word(self, mask: int) -> Tuple[int, ...]:
        ne = self.alg.n_even
        return tuple(ne + k for k in mask_indices(mask))

    def right(self, vec: Mapping[int, Fraction], g: int) -> Vec:
        """(class of vec) * T_g, in the mask basis of the quotient."""
        rw = engine(self.alg).coset
        out: Vec = {}
        for mask, c in vec.items():
            for w, cw in rw.times_letter(self._mask_word(mask), g).items():
                axpy(out, c * cw, {self._word_mask(w): 1})
        return out

    def _word_mask(self, w) -> int:
        ne = self.alg.n_even
        mask = 0
        for g in w:
            mask |= 1 << (g - ne)
        return mask

    def gamma_class(self, mask: int) -> Vec:
        hit = self._gamma.get(mask)
        if hit is not None:
            return hit
        idx = mask_indices(mask)
        r = len(idx)
        out: Vec = {}
        # group the signed permutations by their last letter
        for pos, k in enumerate(idx):
            sign = -1 if (r - 1 - pos) % 2 else 1
            prev = self.gamma_class(mask & ~(1 << k))
            axpy(out, Fraction(sign, r), self.right(prev, self.alg.n_even + k))
        self._gamma[mask] = out
        return out

    def gamma_coords(self, vec: Mapping[int, Fraction]) -> Vec:
        """Coordinates of a quotient class in the basis {gamma(omega)}."""
        rem = dict(vec)
        out: Vec = {}
        for mask in reversed(self.order):
            c = rem.get(mask)
            if c:
                out[mask] = c
                axpy(rem, -c, self.gamma_class(mask))
        return out

    def field(self, g: int) -> Dict[int, Vec]:
        """T_g(eps_in) = sum_out M[in][out] eps_out, returned as M."""
        hit = self._fields.get(g)
        if hit is not None:
            return hit
        sign = -1 if self.alg.parities[g] else 1
        mat: Dict[int, Vec] = {}
        for omega in self.order:
            coords = self.gamma_coords(self.right(self.gamma_class(omega), g))
            for src, c in coords.items():
                mat.setdefault(src, {})[omega] = sign * c
        self._fields[g] = mat
        return mat


def _data(alg: LieSuperalgebra) -> _ActionData:
    d = alg._cache.get("action")
    if d is None:
        d = alg._cache["action"] = _ActionData(alg)
    return d


def precompute_actions(alg: LieSuperalgebra, threads: int = 1) -> None:
    """Fill the per-generator field matrices, optionally on a thread pool.

    Results are keyed by generator so the outcome does not depend on
    scheduling.
    """
    d = _data(alg)
    for mask in d.order:
        d.gamma_class(mask)
    gens = range(alg.dim)
    if threads <= 1:
        for g in gens:
            d.field(g)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        list(pool.map(d.field, gens))


def field_matrix(alg: LieSuperalgebra, g: int) -> Dict[int, Vec]:
    return _data(alg).field(g)


def _as_vector(alg: LieSuperalgebra, Y) -> Vec:
    if isinstance(Y, str):
        return {alg.index(Y): Fraction(1)}
    if isinstance(Y, int):
        if not 0 <= Y < alg.dim:
            raise InputError(f"generator index {Y} out of range")
        return {Y: Fraction(1)}
    return {int(i): Fraction(c) for i, c in Y.items() if c}


# -- pairing and actions ---------------------------------------------------


def pair_at_identity(f: ExteriorPoly, u: PBWElement) -> Fraction:
    """f(u) at the identity, via the decomposition u = sum c z gamma(omega)."""
    total = Fraction(0)
    for z, mask, c in decompose_left_even(u):
        fc = f.terms.get(mask)
        if fc:
            total += c * augmentation(z) * fc
    return total


def field_action_reference(alg: LieSuperalgebra, Y, f: ExteriorPoly) -> ExteriorPoly:
    """The defining formula evaluated with full PBW arithmetic (slow)."""
    yv = _as_vector(alg, Y)
    out: Dict[int, Fraction] = {}
    for omega in mask_order(alg.n_odd):
        g = gamma_symmetrize(alg, {omega: 1})
        val = Fraction(0)
        for i, c in yv.items():
            sign = -1 if alg.parities[i] else 1
            val += sign * c * pair_at_identity(f, g * PBWElement.generator(alg, i))
        if val:
            out[omega] = val
    return ExteriorPoly(alg.n_odd, out)


def field_action(alg: LieSuperalgebra, Y, f: ExteriorPoly) -> ExteriorPoly:
    """Action of the left-invariant field Y (generator, label or vector) on f."""
    if f.m != alg.n_odd:
        raise InputError("exterior polynomial over the wrong odd dimension")
    d = _data(alg)
    out: Dict[int, Fraction] = {}
    for i, ci in _as_vector(alg, Y).items():
        mat = d.field(i)
        for src, c in f.terms.items():
            row = mat.get(src)
            if row:
                axpy(out, ci * c, row)
    return ExteriorPoly(alg.n_odd, out)


def _target_vector(w: ExteriorField, t: int) -> Vec:
    if w.tag == FULL:
        return {t: Fraction(1)}
    return {w.h.complement[t]: Fraction(1)}


def _to_target(w: ExteriorField, v: Vec) -> Vec:
    if w.tag == FULL:
        return v
    return w.h.project(v)


def module_action(Y, w: ExteriorField) -> ExteriorField:
    """Y . (sum f^a (x) T_a) = sum Y(f^a) (x) T_a + (-1)^{|Y||f^a|} f^a (x) pi[Y, T_a].

    For a QUOTIENT field the target T_a is the complement lift, so the
    result is only independent of that choice for Y in h.
    """
    alg = w.alg
    d = _data(alg)
    yv = _as_vector(alg, Y)
    out: Dict[Tuple[int, int], Fraction] = {}
    br_cache: Dict[Tuple[int, int], Vec] = {}
    for (mask, t), c in w.terms.items():
        for i, ci in yv.items():
            row = d.field(i).get(mask)
            if row:
                for om, co in row.items():
                    axpy(out, ci * c * co, {(om, t): 1})
            key = (i, t)
            img = br_cache.get(key)
            if img is None:
                img = br_cache[key] = _to_target(w, alg.bracket_vec({i: Fraction(1)}, _target_vector(w, t)))
            if img:
                s = -1 if alg.parities[i] and popcount(mask) % 2 else 1
                for tt, cb in img.items():
                    axpy(out, s * ci * c * cb, {(mask, tt): 1})
    return w.like(out)


def derivation_apply(w: ExteriorField, f: ExteriorPoly) -> ExteriorPoly:
    """Apply the FULL field sum f^a T_a to a function: sum f^a * T_a(f)."""
    if w.tag != FULL:
        raise InputError("only FULL fields act as derivations of Lambda(g1*)")
    alg = w.alg
    out = ExteriorPoly(alg.n_odd)
    for t in sorted({t for _, t in w.terms}):
        out = out + w.coefficient(t) * field_action(alg, t, f)
    return out


def _field_columns(alg, tag, h, degrees: Optional[Set[int]], parity: Optional[int]):
    width = alg.dim if tag == FULL else h.codim
    tpar = alg.parities if tag == FULL else h.quotient_parities()
    cols = []
    for mask in mask_order(alg.n_odd):
        k = popcount(mask)
        if degrees is not None and k not in degrees:
            continue
        for t in range(width):
            if parity is not None and (k + tpar[t]) % 2 != parity:
                continue
            cols.append((mask, t))
    return cols


def _stacked_rows(actors: Sequence[Vec], columns, tag, alg, h) -> List[Vec]:
    """Rows of the joint linear map w -> (Y . w)_Y restricted to ``columns``."""
    rows: Dict[Tuple[int, int, int], Vec] = {}
    for yi, y in enumerate(actors):
        for col in columns:
            img = module_action(y, ExteriorField(alg, tag, {col: 1}, h))
            for out, c in img.terms.items():
                rows.setdefault((yi,) + out, {})[col] = c
    return [rows[k] for k in sorted(rows)]


def invariant_subspace(
    alg: LieSuperalgebra,
    h: SubalgebraEmbedding,
    space: str = FULL,
    degree_filter: Optional[Iterable[int]] = None,
    parity_filter: Optional[int] = None,
    under: str = "h",
) -> List[ExteriorField]:
    """Basis of {w in the filtered space : Y . w = 0 for Y in a basis of h}.

    ``under="h0"`` uses only the even part of h (connected H0 assumed).
    The basis comes from the reduced echelon form over masks ordered by
    (popcount, value) and then targets.
    """
    degrees = set(degree_filter) if degree_filter is not None else None
    cols = _field_columns(alg, space, h, degrees, parity_filter)
    actors = h.even_vectors() if under == "h0" else list(h.vectors)
    rows = _stacked_rows(actors, cols, space, alg, h)
    return [ExteriorField(alg, space, v, h) for v in kernel(rows, cols)]


def split_model_ranks(alg: LieSuperalgebra, h: SubalgebraEmbedding) -> List[int]:
    """dim Lambda^p(g1) - dim(Lambda^{p-1}(g1) ^ h1) for p = 0..dim g1."""
    m = alg.n_odd
    ne = alg.n_even
    h1 = [{i - ne: c for i, c in v.items()} for v in h.odd_vectors()]
    ranks = []
    for p in range(m + 1):
        e = Echelon()
        if p >= 1:
            for a in (x for x in range(1 << m) if popcount(x) == p - 1):
                for y in h1:
                    vec: Vec = {}
                    for k, c in y.items():
                        s = wedge_sign(a, 1 << k)
                        if s:
                            axpy(vec, s * c, {a | 1 << k: 1})
                    e.add(vec)
        ranks.append(comb(m, p) - len(e))
    return ranks


def even_annihilator(alg: LieSuperalgebra) -> List[Vec]:
    """Even Z with Z(f) = 0 for every f in Lambda(g1*)."""
    d = _data(alg)
    rows: Dict[Tuple[int, int], Vec] = {}
    for i in alg.even_indices:
        for src, row in d.field(i).items():
            for dst, c in row.items():
                rows.setdefault((src, dst), {})[i] = c
    return kernel([rows[k] for k in sorted(rows)], list(alg.even_indices))
