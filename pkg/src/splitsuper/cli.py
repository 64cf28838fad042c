"""Command line front end.

Exit codes: 0 when the operation ran (an infeasible system is a result,
not a failure), 2 for malformed input, 3 for internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import __version__
from .catalog import catalog_algebra, catalog_parabolic, even_part
from .core import (
    InputError,
    LieSuperalgebra,
    SubalgebraEmbedding,
    gr_superalgebra,
    validate_subalgebra,
    validate_superalgebra,
)
from .document import (
    AlgebraDocument,
    ReportDocument,
    SubalgebraDocument,
    format_rational,
    parse_algebra,
    parse_subalgebra,
    print_report,
)
from .exterior import FULL, QUOTIENT, ExteriorField, invariant_subspace, precompute_actions, split_model_ranks
from .grading import full_verdict, strict_invariance_solve
from .pbw import PBWElement, antipode, engine, filtration_degree, gamma_of_vectors, mask_indices, pbw_normal_form

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3


def _vec(alg: LieSuperalgebra, v) -> List[List[str]]:
    return [[alg.labels[i], format_rational(v[i])] for i in sorted(v)]


def _pbw(u: PBWElement) -> List[dict]:
    alg = u.alg
    out = []
    for (exps, mask), c in u.sorted_terms():
        out.append(
            {
                "even": [[alg.labels[i], e] for i, e in enumerate(exps) if e],
                "odd": [alg.labels[alg.n_even + k] for k in mask_indices(mask)],
                "coef": format_rational(c),
            }
        )
    return out


def _field(w: Optional[ExteriorField]):
    if w is None:
        return None
    alg = w.alg
    return [
        {
            "mask": [alg.labels[alg.n_even + k] for k in mask_indices(mask)],
            "target": w.target_label(t),
            "coef": format_rational(c),
        }
        for (mask, t), c in w.sorted_terms()
    ]


def _solution(sol) -> dict:
    return {
        "feasible": sol.feasible,
        "dimension": sol.dimension,
        "unknowns": sol.n_unknowns,
        "equations": sol.n_equations,
        "particular": _field(sol.particular),
        "lift": _field(sol.lift),
        "homogeneous_basis": [_field(b) for b in sol.basis],
    }


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _load_algebra(args) -> LieSuperalgebra:
    if args.algebra and args.catalog:
        raise InputError("give either --algebra or --catalog, not both")
    if args.algebra:
        return parse_algebra(_read(args.algebra)).build()
    if args.catalog:
        name, _, params = args.catalog.partition(":")
        try:
            nums = [int(p) for p in params.split(",") if p.strip()]
        except ValueError:
            raise InputError(f"bad catalog parameters {params!r}") from None
        return catalog_algebra(name, *nums)
    raise InputError("an algebra is required (--algebra FILE or --catalog NAME[:p,q])")


def _load_subalgebra(args, alg, required=True) -> Optional[SubalgebraEmbedding]:
    chosen = [x for x in (args.subalgebra, args.parabolic, args.h0 or None, args.whole or None) if x]
    if len(chosen) > 1:
        raise InputError("give only one of --subalgebra, --parabolic, --h0, --whole")
    if args.subalgebra:
        return parse_subalgebra(_read(args.subalgebra)).build(alg)
    if args.parabolic:
        try:
            r, s = (int(x) for x in args.parabolic.split(","))
        except ValueError:
            raise InputError("--parabolic expects R,S") from None
        return catalog_parabolic(alg, r, s)
    if args.h0:
        return even_part(alg)
    if args.whole:
        return SubalgebraEmbedding(alg, [{i: Fraction(1)} for i in range(alg.dim)], name="g")
    if required:
        raise InputError("a subalgebra is required (--subalgebra FILE, --parabolic R,S, --h0 or --whole)")
    return None


def _require_valid(alg, h=None):
    bad = validate_superalgebra(alg)
    if bad:
        raise InputError("algebra fails the axioms: " + bad[0].describe(alg))
    if h is not None:
        bad = validate_subalgebra(alg, h)
        if bad:
            raise InputError("subalgebra is invalid: " + bad[0].describe(alg))


def _echo(args, alg, h) -> dict:
    out = {"algebra": {"name": alg.name, "dim_even": alg.n_even, "dim_odd": alg.n_odd}}
    if h is not None:
        out["subalgebra"] = {
            "name": h.name,
            "dim_even": h.dim_even,
            "dim_odd": h.dim_odd,
            "vectors": [_vec(alg, v) for v in h.vectors],
        }
    return out


def cmd_validate(args):
    alg = _load_algebra(args)
    h = _load_subalgebra(args, alg, required=False)
    viol = validate_superalgebra(alg)
    res = {
        "valid": not viol,
        "violations": [
            {"kind": v.kind, "witness": list(v.witness), "residual": _vec(alg, v.residual)} for v in viol
        ],
    }
    if h is not None:
        hv = validate_subalgebra(alg, h)
        res["subalgebra_valid"] = not hv
        res["subalgebra_violations"] = [
            {"kind": v.kind, "witness": list(v.witness), "residual": _vec(alg, v.residual)} for v in hv
        ]
    return alg, h, res, {}


def cmd_gr(args):
    alg = _load_algebra(args)
    _require_valid(alg)
    g = gr_superalgebra(alg)
    return alg, None, {"algebra": AlgebraDocument.from_algebra(g).to_json()}, {}


def cmd_envelope(args):
    alg = _load_algebra(args)
    _require_valid(alg)
    word = [w for w in args.word.split(",") if w.strip()] if args.word else []
    for w in word:
        alg.index(w.strip())
    word = [w.strip() for w in word]
    if args.mode == "normal":
        u = pbw_normal_form(alg, word)
    elif args.mode == "gamma":
        vecs = []
        for w in word:
            i = alg.index(w)
            if alg.parities[i] != 1:
                raise InputError(f"gamma needs odd generators, {w} is even")
            vecs.append({i: Fraction(1)})
        u = gamma_of_vectors(alg, vecs)
    else:
        u = antipode(pbw_normal_form(alg, word))
    res = {"mode": args.mode, "word": word, "element": _pbw(u), "filtration_degree": filtration_degree(u)}
    return alg, None, res, {}


def cmd_invariants(args):
    alg = _load_algebra(args)
    h = _load_subalgebra(args, alg)
    _require_valid(alg, h)
    precompute_actions(alg, args.threads)
    degrees = None
    if args.degrees:
        try:
            degrees = [int(x) for x in args.degrees.split(",")]
        except ValueError:
            raise InputError("--degrees expects a comma separated list of integers") from None
    parity = {"even": 0, "odd": 1, "any": None}[args.parity]
    space = FULL if args.space == "full" else QUOTIENT
    basis = invariant_subspace(alg, h, space, degrees, parity, under=args.under)
    res = {"space": args.space, "under": args.under, "dimension": len(basis), "basis": [_field(b) for b in basis]}
    return alg, h, res, {"connected_groups": True}


def cmd_ranks(args):
    alg = _load_algebra(args)
    h = _load_subalgebra(args, alg)
    _require_valid(alg, h)
    ranks = split_model_ranks(alg, h)
    return alg, h, {"ranks": ranks, "total": sum(ranks)}, {}


def cmd_split_check(args):
    alg = _load_algebra(args)
    h = _load_subalgebra(args, alg)
    _require_valid(alg, h)
    precompute_actions(alg, args.threads)
    v = full_verdict(alg, h)
    s = v.sufficient
    res = {
        "verdict": v.verdict.value,
        "inconclusive_about_splitness": v.inconclusive,
        "sufficient_condition": {
            "holds": s.holds,
            "brackets_g1_h1": [_vec(alg, b) for b in s.brackets],
            "h0_cap_ker_ad": [_vec(alg, b) for b in s.target],
            "ker_ad_on_g1": [_vec(alg, b) for b in s.adjoint_kernel.basis],
        },
        "effectiveness_ideal": {
            "basis": [_vec(alg, b) for b in s.effectiveness_ideal.basis],
            "interpretation": "largest ideal of g contained in h",
        },
        "solution": _solution(v.solution) if v.solution is not None else None,
    }
    return alg, h, res, dict(v.assumptions)


def cmd_strict(args):
    alg = _load_algebra(args)
    h = _load_subalgebra(args, alg)
    _require_valid(alg, h)
    precompute_actions(alg, args.threads)
    sol = strict_invariance_solve(alg, h)
    return alg, h, {"solution": _solution(sol)}, {"connected_groups": True}


COMMANDS = {
    "validate": cmd_validate,
    "gr": cmd_gr,
    "envelope": cmd_envelope,
    "invariants": cmd_invariants,
    "ranks": cmd_ranks,
    "split-check": cmd_split_check,
    "strict-invariance": cmd_strict,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", help="algebra document (JSON)")
    common.add_argument("--catalog", help="catalog algebra: gl:M,N | osp12 | abelian:P,Q")
    common.add_argument("--subalgebra", help="subalgebra document (JSON)")
    common.add_argument("--parabolic", help="parabolic R,S of a catalog gl(m|n)")
    common.add_argument("--h0", action="store_true", help="use the even part g0 as h")
    common.add_argument("--whole", action="store_true", help="use h = g")
    common.add_argument("--format", choices=["machine", "human"], default="machine")
    common.add_argument(
        "--assume-connected",
        dest="assume_connected",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="treat H0 and G0 as connected (required)",
    )
    common.add_argument("--threads", type=int, default=1, help="worker threads for action assembly")

    parser = argparse.ArgumentParser(prog="splitsuper", description=__doc__)
    parser.add_argument("--version", action="version", version=f"splitsuper {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check the superalgebra (and subalgebra) axioms")
    sub.add_parser("gr", parents=[common], help="print gr(g): odd-odd brackets set to zero")
    env = sub.add_parser("envelope", parents=[common], help="PBW normal form, gamma or antipode of a word")
    env.add_argument("--word", default="", help="comma separated generator labels")
    env.add_argument("--mode", choices=["normal", "gamma", "antipode"], default="normal")
    inv = sub.add_parser("invariants", parents=[common], help="invariant fields in Lambda(g1*) (x) V")
    inv.add_argument("--space", choices=["full", "quotient"], default="quotient")
    inv.add_argument("--degrees", help="comma separated exterior degrees")
    inv.add_argument("--parity", choices=["even", "odd", "any"], default="any")
    inv.add_argument("--under", choices=["h", "h0"], default="h")
    sub.add_parser("ranks", parents=[common], help="ranks of the split model of gr(G/H)")
    sub.add_parser("split-check", parents=[common], help="full splitness verdict for G/H")
    sub.add_parser("strict-invariance", parents=[common], help="H-invariant grading operators on G")
    return parser


def _human(report: ReportDocument) -> str:
    lines = [f"operation: {report.operation}", f"splitsuper {report.version}"]
    for k, v in report.inputs.items():
        lines.append(f"input {k}: {json.dumps(v, sort_keys=True)}")
    for k, v in report.result.items():
        lines.append(f"{k}: {json.dumps(v, sort_keys=True)}")
    for k, v in report.assumptions.items():
        lines.append(f"assumption {k}: {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if not args.assume_connected:
            raise InputError("only connected H0/G0 are supported; drop --no-assume-connected")
        if args.threads < 1:
            raise InputError("--threads must be >= 1")
        alg, h, result, assumptions = COMMANDS[args.command](args)
        assumptions = dict(assumptions)
        assumptions["assume_connected"] = True
        report = ReportDocument(args.command, _echo(args, alg, h), result, assumptions, __version__)
    except InputError as exc:
        print(f"splitsuper: input error: {exc}", file=stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        print(f"splitsuper: internal error: {type(exc).__name__}: {exc}", file=stderr)
        return EXIT_INTERNAL
    stdout.write(print_report(report) if args.format == "machine" else _human(report))
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
