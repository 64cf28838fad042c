"""The universal enveloping superalgebra U(g) in PBW normal form.

A normal monomial is ``z * X_{i1} ... X_{iq}`` with ``z`` an ordered
monomial in the even generators and ``i1 < ... < iq`` odd indices. It is
stored as ``(exponents, mask)``; bit ``k`` of ``mask`` stands for the
k-th odd generator.

Products are brought to normal form by the rewriting rules

    X Y = (-1)^{|X||Y|} Y X + [X, Y]      (X after Y in the basis order)
    X X = 1/2 [X, X]                      (X odd)

applied to the rightmost letter as it is inserted into an already normal
word. The same engine also works modulo the right ideal g0 U(g), where any
word starting with an even letter is zero; that quotient is what the
exterior module uses.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .core import InputError, LieSuperalgebra
from .linalg import axpy

__all__ = [
    "PBWElement",
    "OddMultivector",
    "engine",
    "pbw_normal_form",
    "multiply",
    "gamma_symmetrize",
    "gamma_of_vectors",
    "antipode",
    "filtration_degree",
    "augmentation",
    "decompose_left_even",
    "mask_indices",
    "popcount",
]

Key = Tuple[Tuple[int, ...], int]
Word = Tuple[int, ...]
OddMultivector = Dict[int, Fraction]


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_indices(mask: int) -> List[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


class _Rewriter:
    """Memoised insertion of one generator into a normal word."""

    def __init__(self, alg: LieSuperalgebra, coset: bool):
        self.alg = alg
        self.coset = coset
        self.n_even = alg.n_even
        self._memo: Dict[Tuple[Word, int], Dict[Word, Fraction]] = {}

    def _dead(self, word: Word) -> bool:
        return self.coset and bool(word) and word[0] < self.n_even

    def times_letter(self, word: Word, g: int) -> Dict[Word, Fraction]:
        key = (word, g)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        par = self.alg.parities
        res: Dict[Word, Fraction] = {}
        if not word or word[-1] < g or (word[-1] == g and not par[g]):
            w = word + (g,)
            if not self._dead(w):
                res[w] = Fraction(1)
        else:
            a = word[-1]
            prefix = word[:-1]
            if a == g:
                for c, coef in self.alg.bracket(a, a).items():
                    axpy(res, coef / 2, self.times_letter(prefix, c))
            else:
                sign = -1 if par[a] and par[g] else 1
                for w, cw in self.times_letter(prefix, g).items():
                    axpy(res, sign * cw, self.times_letter(w, a))
                for c, coef in self.alg.bracket(a, g).items():
                    axpy(res, coef, self.times_letter(prefix, c))
        self._memo[key] = res
        return res

    def word(self, letters: Iterable[int], start: Word = ()) -> Dict[Word, Fraction]:
        cur: Dict[Word, Fraction] = {} if self._dead(start) else {start: Fraction(1)}
        for g in letters:
            nxt: Dict[Word, Fraction] = {}
            for w, c in cur.items():
                axpy(nxt, c, self.times_letter(w, g))
            cur = nxt
        return cur


class _Engine:
    def __init__(self, alg: LieSuperalgebra):
        self.alg = alg
        self.full = _Rewriter(alg, coset=False)
        self.coset = _Rewriter(alg, coset=True)
        self._gamma: Dict[int, "PBWElement"] = {}

    def key_to_word(self, key: Key) -> Word:
        exps, mask = key
        w: List[int] = []
        for i, e in enumerate(exps):
            w.extend([i] * e)
        ne = self.alg.n_even
        w.extend(ne + k for k in mask_indices(mask))
        return tuple(w)

    def word_to_key(self, word: Word) -> Key:
        ne = self.alg.n_even
        exps = [0] * ne
        mask = 0
        for g in word:
            if g < ne:
                exps[g] += 1
            else:
                mask |= 1 << (g - ne)
        return tuple(exps), mask


def engine(alg: LieSuperalgebra) -> _Engine:
    eng = alg._cache.get("pbw")
    if eng is None:
        eng = alg._cache["pbw"] = _Engine(alg)
    return eng


class PBWElement:
    """Element of U(g): sparse map from normal monomials to rationals."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: LieSuperalgebra, terms: Optional[Mapping[Key, Fraction]] = None):
        self.alg = alg
        self.terms: Dict[Key, Fraction] = {k: Fraction(c) for k, c in (terms or {}).items() if c}

    # constructors

    @classmethod
    def zero(cls, alg):
        return cls(alg)

    @classmethod
    def one(cls, alg):
        return cls(alg, {((0,) * alg.n_even, 0): Fraction(1)})

    @classmethod
    def scalar(cls, alg, c):
        return cls(alg, {((0,) * alg.n_even, 0): Fraction(c)})

    @classmethod
    def generator(cls, alg, i: int):
        return pbw_normal_form(alg, (i,))

    @classmethod
    def from_vector(cls, alg, v: Mapping[int, Fraction]):
        out = cls(alg)
        for i, c in v.items():
            out = out + cls.generator(alg, i) * c
        return out

    @classmethod
    def odd_monomial(cls, alg, mask: int):
        return cls(alg, {((0,) * alg.n_even, mask): Fraction(1)})

    # arithmetic

    def _check(self, other):
        if other.alg is not self.alg and not other.alg.same_as(self.alg):
            raise InputError("PBW elements belong to different algebras")

    def __add__(self, other):
        if not isinstance(other, PBWElement):
            other = PBWElement.scalar(self.alg, other)
        self._check(other)
        t = dict(self.terms)
        axpy(t, 1, other.terms)
        return PBWElement(self.alg, t)

    __radd__ = __add__

    def __neg__(self):
        return PBWElement(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return multiply(self, other)
        other = Fraction(other)
        return PBWElement(self.alg, {k: c * other for k, c in self.terms.items()})

    def __rmul__(self, other):
        other = Fraction(other)
        return PBWElement(self.alg, {k: other * c for k, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, PBWElement):
            return self.alg.same_as(other.alg) and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    @property
    def parity(self) -> Optional[int]:
        ps = set()
        for exps, mask in self.terms:
            ps.add(popcount(mask) % 2)
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def words(self) -> Dict[Word, Fraction]:
        eng = engine(self.alg)
        return {eng.key_to_word(k): c for k, c in self.terms.items()}

    def sorted_terms(self) -> List[Tuple[Key, Fraction]]:
        return sorted(self.terms.items(), key=lambda kc: (popcount(kc[0][1]), kc[0][1], kc[0][0]))

    def __repr__(self):
        if not self.terms:
            return "0"
        lab = self.alg.labels
        parts = []
        for key, c in self.sorted_terms():
            word = engine(self.alg).key_to_word(key)
            mono = "*".join(lab[g] for g in word) or "1"
            parts.append(f"{c}*{mono}" if c != 1 else mono)
        return " + ".join(parts)


def pbw_normal_form(alg: LieSuperalgebra, word: Sequence) -> PBWElement:
    """Normal form of the product of the given generators (indices or labels)."""
    idx = tuple(alg.index(g) if isinstance(g, str) else int(g) for g in word)
    for g in idx:
        if not 0 <= g < alg.dim:
            raise InputError(f"generator index {g} out of range")
    eng = engine(alg)
    res = eng.full.word(idx)
    return PBWElement(alg, {eng.word_to_key(w): c for w, c in res.items()})


def multiply(u: PBWElement, v: PBWElement) -> PBWElement:
    u._check(v)
    eng = engine(u.alg)
    out: Dict[Key, Fraction] = {}
    vwords = [(eng.key_to_word(k), c) for k, c in v.terms.items()]
    for ku, cu in u.terms.items():
        wu = eng.key_to_word(ku)
        for wv, cv in vwords:
            for w, c in eng.full.word(wv, start=wu).items():
                axpy(out, cu * cv * c, {eng.word_to_key(w): 1})
    return PBWElement(u.alg, out)


def _gamma_mask(alg: LieSuperalgebra, mask: int) -> PBWElement:
    eng = engine(alg)
    hit = eng._gamma.get(mask)
    if hit is not None:
        return hit
    idx = mask_indices(mask)
    r = len(idx)
    if r <= 1:
        res = PBWElement.odd_monomial(alg, mask) if r else PBWElement.one(alg)
    else:
        # group the signed permutations by their first letter
        res = PBWElement.zero(alg)
        for pos, k in enumerate(idx):
            term = PBWElement.generator(alg, alg.n_even + k) * _gamma_mask(alg, mask & ~(1 << k))
            res = res + term * (Fraction(1, r) if pos % 2 == 0 else Fraction(-1, r))
    eng._gamma[mask] = res
    return res


def gamma_symmetrize(alg: LieSuperalgebra, mv: Mapping[int, Fraction]) -> PBWElement:
    """Signed symmetrization Lambda(g1) -> U(g), extended linearly.

    ``X_1 ^ ... ^ X_r  ->  1/r! sum_sigma sign(sigma) X_s(1) ... X_s(r)``.
    """
    out = PBWElement.zero(alg)
    for mask, c in mv.items():
        if mask >> alg.n_odd:
            raise InputError(f"mask {mask:b} exceeds the odd dimension")
        out = out + _gamma_mask(alg, mask) * c
    return out


def gamma_of_vectors(alg: LieSuperalgebra, vectors: Sequence[Mapping[int, Fraction]]) -> PBWElement:
    """gamma(v_1 ^ ... ^ v_r) for odd vectors given in g-coordinates."""
    mv: Dict[int, Fraction] = {0: Fraction(1)}
    ne = alg.n_even
    for v in vectors:
        nxt: Dict[int, Fraction] = {}
        for mask, c in mv.items():
            for i, ci in v.items():
                if alg.parities[i] != 1:
                    raise InputError("gamma is defined on odd vectors only")
                k = i - ne
                if mask >> k & 1:
                    continue
                # moving X_k past the higher set bits of mask
                sign = -1 if popcount(mask >> (k + 1)) % 2 else 1
                axpy(nxt, sign * c * ci, {mask | 1 << k: 1})
        mv = nxt
    return gamma_symmetrize(alg, mv)


def antipode(u: PBWElement) -> PBWElement:
    """Antipode: -1 on generators, super anti-multiplicative."""
    eng = engine(u.alg)
    par = u.alg.parities
    out: Dict[Key, Fraction] = {}
    for key, c in u.terms.items():
        word = eng.key_to_word(key)
        q = sum(par[g] for g in word)
        sign = (-1) ** len(word) * (-1) ** (q * (q - 1) // 2)
        for w, cw in eng.full.word(tuple(reversed(word))).items():
            axpy(out, sign * c * cw, {eng.word_to_key(w): 1})
    return PBWElement(u.alg, out)


def filtration_degree(u: PBWElement) -> int:
    if not u.terms:
        return -1
    return max(popcount(mask) for _, mask in u.terms)


def augmentation(u: PBWElement) -> Fraction:
    return u.terms.get(((0,) * u.alg.n_even, 0), Fraction(0))


def decompose_left_even(u: PBWElement) -> List[Tuple[PBWElement, int, Fraction]]:
    """Write ``u = sum c * z * gamma(omega)`` with z even PBW monomials.

    Returns ``(z, mask, c)`` triples sorted by (popcount, mask, z).
    """
    alg = u.alg
    rem = dict(u.terms)
    found: Dict[Key, Fraction] = {}
    while rem:
        top = max(popcount(m) for _, m in rem)
        for key in sorted(k for k in rem if popcount(k[1]) == top):
            c = rem.get(key)
            if not c:
                continue
            exps, mask = key
            z = PBWElement(alg, {(exps, 0): Fraction(1)})
            axpy(rem, -c, (z * _gamma_mask(alg, mask)).terms)
            axpy(found, c, {key: 1})
    out = []
    for (exps, mask), c in sorted(found.items(), key=lambda kc: (popcount(kc[0][1]), kc[0][1], kc[0][0])):
        out.append((PBWElement(alg, {(exps, 0): Fraction(1)}), mask, c))
    return out
