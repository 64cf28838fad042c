"""Shared fixtures and brute-force oracles for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

from splitsuper import (
    ExteriorField,
    ExteriorPoly,
    LieSuperalgebra,
    PBWElement,
    SubalgebraEmbedding,
    abelian,
    gl,
    osp12,
)
from splitsuper.linalg import Echelon

F = Fraction


def gl11_named():
    """gl(1|1) with the a, b | x, y labels used in the worked examples."""
    return LieSuperalgebra.from_brackets(
        [("a", 0), ("b", 0), ("x", 1), ("y", 1)],
        {
            ("a", "x"): {"x": 1},
            ("b", "x"): {"x": -1},
            ("a", "y"): {"y": -1},
            ("b", "y"): {"y": 1},
            ("x", "y"): {"a": 1, "b": 1},
        },
        name="gl(1|1)",
    )


def small_catalog():
    return [abelian(0, 2), abelian(1, 3), gl(1, 1), osp12(), gl(2, 1)]


def full_catalog():
    return [abelian(0, k) for k in range(1, 5)] + [gl(1, 1), gl(2, 1), gl(2, 2), osp12()]


def span_of(vectors):
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e


def random_homogeneous(alg, rng, parity, density=0.5):
    idx = alg.even_indices if parity == 0 else alg.odd_indices
    while True:
        v = {i: F(rng.randint(-2, 2)) for i in idx if rng.random() < density}
        v = {i: c for i, c in v.items() if c}
        if v:
            return v


def closure(alg, gens):
    """Homogeneous basis of the subalgebra generated by homogeneous ``gens``."""
    even, odd = Echelon(), Echelon()
    basis = []

    def push(v):
        p = alg.parity_of(v)
        target = even if p == 0 else odd
        if v and target.add(v) is not None:
            basis.append(v)
            return True
        return False

    for g in gens:
        push(g)
    k = 0
    while k < len(basis):
        for j in range(k + 1):
            br = alg.bracket_vec(basis[k], basis[j])
            if br:
                for part in (0, 1):
                    piece = {i: c for i, c in br.items() if alg.parities[i] == part}
                    if piece:
                        push(piece)
        k += 1
    return basis


def random_subalgebra(alg, rng, n_gens=None, odd=True, max_dim=None):
    """Subalgebra generated by a few random homogeneous elements."""
    for _ in range(50):
        k = n_gens or rng.randint(1, 2)
        gens = []
        for _ in range(k):
            parity = rng.choice([0, 1]) if odd and alg.n_odd else 0
            if parity == 0 and not alg.n_even:
                parity = 1
            gens.append(random_homogeneous(alg, rng, parity))
        vecs = closure(alg, gens)
        if max_dim is None or len(vecs) <= max_dim:
            return SubalgebraEmbedding(alg, vecs, name="random")
    return SubalgebraEmbedding(alg, [], name="zero")


def random_pbw(alg, rng, terms=3, max_len=3):
    u = PBWElement.zero(alg)
    for _ in range(terms):
        word = [rng.randrange(alg.dim) for _ in range(rng.randint(0, max_len))]
        u = u + PBWElement.scalar(alg, rng.randint(-3, 3)) * word_element(alg, word)
    return u


def word_element(alg, word):
    u = PBWElement.one(alg)
    for i in word:
        u = u * PBWElement.generator(alg, i)
    return u


def random_poly(m, rng, density=0.4):
    return ExteriorPoly(m, {k: rng.randint(-3, 3) for k in range(1 << m) if rng.random() < density})


def random_field(alg, rng, tag="full", h=None, density=0.15):
    width = alg.dim if tag == "full" else h.codim
    terms = {}
    for mask in range(1 << alg.n_odd):
        for t in range(width):
            if rng.random() < density:
                terms[(mask, t)] = rng.randint(-3, 3)
    return ExteriorField(alg, tag, terms, h)


def gamma_brute_force(alg, odd_slots):
    """(1/r!) sum over permutations of sign * product, straight from the definition."""
    r = len(odd_slots)
    total = PBWElement.zero(alg)
    count = 0
    for perm in permutations(range(r)):
        inv = sum(1 for i in range(r) for j in range(i + 1, r) if perm[i] > perm[j])
        word = [alg.n_even + odd_slots[k] for k in perm]
        total = total + PBWElement.scalar(alg, (-1) ** inv) * word_element(alg, word)
        count += 1
    return total * F(1, count)


def rng_for(name):
    return random.Random(f"splitsuper:{name}")
