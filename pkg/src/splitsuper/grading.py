"""Left-invariant compatible split gradings on G/H and splitness verdicts.

Every left-invariant split grading operator on G is ``v + chi`` with
``v = sum_i eps^i (x) X_i`` and chi an even field whose coefficients have
exterior degree >= 2 (>= 3 on odd targets). Compatibility with G/H is a
linear condition on the image of ``v + chi`` in Lambda(g1*) (x) g/h, so
the set of compatible operators is an affine space that can be solved for
exactly. Group-level invariance under H0 is replaced by h0-invariance,
i.e. H0 (and G0) are assumed connected.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .core import (
    LieSuperalgebra,
    SubalgebraEmbedding,
    SubspaceReport,
    adjoint_kernel_on_odd,
    largest_ideal_in,
    make_report,
    span_of_brackets,
)
from .exterior import (
    FULL,
    QUOTIENT,
    ExteriorField,
    _field_columns,
    module_action,
)
from .linalg import Echelon, Vec, axpy, kernel, solve_affine
from .pbw import popcount

__all__ = [
    "Verdict",
    "GradingSolutionSpace",
    "SufficientSplitReport",
    "SplitVerdict",
    "canonical_operator",
    "project_field",
    "lift_field",
    "is_left_invariant_grading_form",
    "check_compatibility",
    "solve_compatible_gradings",
    "strict_invariance_solve",
    "check_sufficient_split",
    "full_verdict",
]


class Verdict(str, enum.Enum):
    SPLIT_BY_SUFFICIENT_CONDITION = "SPLIT_BY_SUFFICIENT_CONDITION"
    SPLIT_BY_GRADING = "SPLIT_BY_GRADING"
    NO_COMPATIBLE_LEFT_INVARIANT_GRADING = "NO_COMPATIBLE_LEFT_INVARIANT_GRADING"


@dataclass
class GradingSolutionSpace:
    feasible: bool
    particular: Optional[ExteriorField]
    basis: List[ExteriorField]
    n_unknowns: int = 0
    n_equations: int = 0
    lift: Optional[ExteriorField] = None

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass
class SufficientSplitReport:
    holds: bool
    brackets: List[Vec]  # basis of [g1, h1]
    target: List[Vec]  # basis of h0 cap Ker(ad|g1)
    adjoint_kernel: SubspaceReport
    effectiveness_ideal: SubspaceReport

    @property
    def effective(self) -> bool:
        return self.effectiveness_ideal.dim == 0


@dataclass
class SplitVerdict:
    verdict: Verdict
    sufficient: SufficientSplitReport
    solution: Optional[GradingSolutionSpace] = None
    assumptions: Dict[str, object] = field(default_factory=dict)

    @property
    def inconclusive(self) -> bool:
        # the criteria used here can only certify splitness
        return self.verdict is Verdict.NO_COMPATIBLE_LEFT_INVARIANT_GRADING


def canonical_operator(alg: LieSuperalgebra) -> ExteriorField:
    """v = sum_i eps^i (x) X_i over the odd basis."""
    ne = alg.n_even
    return ExteriorField(alg, FULL, {(1 << k, ne + k): 1 for k in range(alg.n_odd)})


def project_field(w: ExteriorField, h: SubalgebraEmbedding) -> ExteriorField:
    if w.tag != FULL:
        raise ValueError("project_field expects a FULL field")
    out: Dict[Tuple[int, int], Fraction] = {}
    for (mask, t), c in w.terms.items():
        for slot, cp in h.project({t: Fraction(1)}).items():
            axpy(out, c * cp, {(mask, slot): 1})
    return ExteriorField(w.alg, QUOTIENT, out, h)


def lift_field(w: ExteriorField) -> ExteriorField:
    """Preimage of a QUOTIENT field through the complement inclusion."""
    if w.tag != QUOTIENT:
        raise ValueError("lift_field expects a QUOTIENT field")
    comp = w.h.complement
    return ExteriorField(w.alg, FULL, {(m, comp[t]): c for (m, t), c in w.terms.items()})


def is_left_invariant_grading_form(w: ExteriorField) -> Tuple[bool, List[str]]:
    """Is ``w - v`` an even field of exterior degree >= 3 (odd targets) / >= 2 (even)?"""
    if w.tag != FULL:
        return False, ["field must be FULL"]
    chi = w - canonical_operator(w.alg)
    problems = []
    for (mask, t), c in chi.sorted_terms():
        k = popcount(mask)
        tp = w.target_parity(t)
        label = f"{c} eps{mask:b} (x) {w.target_label(t)}"
        if (k + tp) % 2:
            problems.append(f"odd term {label}")
        elif tp == 1 and k < 3:
            problems.append(f"odd target with degree {k} < 3: {label}")
        elif tp == 0 and k < 2:
            problems.append(f"even target with degree {k} < 2: {label}")
    return not problems, problems


def check_compatibility(w: ExteriorField, h: SubalgebraEmbedding) -> Tuple[bool, List[Tuple[int, ExteriorField]]]:
    """Does the image of w in Lambda(g1*) (x) g/h vanish under every basis Y of h?

    Returns the verdict and ``(index into h.vectors, residual)`` for each
    violating Y.
    """
    wbar = project_field(w, h) if w.tag == FULL else w
    bad = []
    for k, y in enumerate(h.vectors):
        r = module_action(y, wbar)
        if r:
            bad.append((k, r))
    return not bad, bad


def _affine_solve(alg, h, tag) -> GradingSolutionSpace:
    """Solve for even chi (degree >= 2) with h0 . chi = 0 and h . (v + chi) = 0."""
    v = canonical_operator(alg)
    base = project_field(v, h) if tag == QUOTIENT else v
    cols = _field_columns(alg, tag, h, set(range(2, alg.n_odd + 1)), 0)
    hh = h if tag == QUOTIENT else None

    blocks = [(k, y, True) for k, y in enumerate(h.even_vectors())]
    blocks += [(k, y, False) for k, y in enumerate(h.vectors)]
    rows: Dict[tuple, Vec] = {}
    rhs: Dict[tuple, Fraction] = {}
    for bi, (k, y, homogeneous) in enumerate(blocks):
        for col in cols:
            img = module_action(y, ExteriorField(alg, tag, {col: 1}, hh))
            for out, c in img.terms.items():
                rows.setdefault((bi,) + out, {})[col] = c
        if not homogeneous:
            for out, c in module_action(y, base).terms.items():
                rhs[(bi,) + out] = -c
                rows.setdefault((bi,) + out, {})
    system = [(rows[key], rhs.get(key, Fraction(0))) for key in sorted(rows)]
    part, hom = solve_affine(system, cols)
    basis = [ExteriorField(alg, tag, b, hh) for b in hom]
    if part is None:
        return GradingSolutionSpace(False, None, basis, len(cols), len(system))
    w = base + ExteriorField(alg, tag, part, hh)
    lift = (v + lift_field(ExteriorField(alg, tag, part, hh))) if tag == QUOTIENT else w
    return GradingSolutionSpace(True, w, basis, len(cols), len(system), lift)


def solve_compatible_gradings(alg: LieSuperalgebra, h: SubalgebraEmbedding) -> GradingSolutionSpace:
    """Affine space of images w-bar of compatible left-invariant grading operators.

    Unknowns are even chi-bar in the degree >= 2 part of Lambda(g1*) (x) g/h;
    constraints are h0-invariance of chi-bar and h-invariance of v-bar + chi-bar.
    """
    return _affine_solve(alg, h, QUOTIENT)


def strict_invariance_solve(alg: LieSuperalgebra, h: SubalgebraEmbedding) -> GradingSolutionSpace:
    """Same unknowns, but with the un-projected constraints h . (v + chi) = 0 in
    Lambda(g1*) (x) g. Infeasible as soon as h has odd elements."""
    return _affine_solve(alg, h, FULL)


def _intersection(u: List[Vec], v: List[Vec]) -> List[Vec]:
    e = Echelon()
    for x in v:
        e.add(x)
    rows: Dict[object, Vec] = {}
    for k, x in enumerate(u):
        for coord, c in e.reduce(x).items():
            rows.setdefault(coord, {})[k] = c
    out = []
    for s in kernel(list(rows.values()), list(range(len(u)))):
        x: Vec = {}
        for k, c in s.items():
            axpy(x, c, u[k])
        out.append(x)
    return out


def check_sufficient_split(alg: LieSuperalgebra, h: SubalgebraEmbedding) -> SufficientSplitReport:
    """Test [g1, h1] inside h0 cap Ker(ad|g1), and report the effectiveness ideal."""
    g1 = [{i: Fraction(1)} for i in alg.odd_indices]
    brackets = span_of_brackets(alg, g1, h.odd_vectors())
    ker = adjoint_kernel_on_odd(alg)
    target = _intersection(ker.basis, h.even_vectors())
    e = Echelon()
    for t in target:
        e.add(t)
    holds = all(e.contains(b) for b in brackets)
    return SufficientSplitReport(holds, brackets, target, ker, largest_ideal_in(alg, h))


def full_verdict(alg: LieSuperalgebra, h: SubalgebraEmbedding) -> SplitVerdict:
    suff = check_sufficient_split(alg, h)
    assumptions = {
        "connected_groups": True,
        "effectiveness_ideal_dim": suff.effectiveness_ideal.dim,
        "effective": suff.effective,
        "effectiveness_interpretation": "largest ideal of g contained in h",
    }
    if suff.holds:
        return SplitVerdict(Verdict.SPLIT_BY_SUFFICIENT_CONDITION, suff, None, assumptions)
    sol = solve_compatible_gradings(alg, h)
    if sol.feasible:
        return SplitVerdict(Verdict.SPLIT_BY_GRADING, suff, sol, assumptions)
    return SplitVerdict(Verdict.NO_COMPATIBLE_LEFT_INVARIANT_GRADING, suff, sol, assumptions)
