"""Assemble the compatible-grading system for gl(2|2) / p(1|1) as plain rows.

Used to record and re-check the rank fixture: the system is infeasible
exactly when appending the right-hand side raises the rank.
"""


from splitsuper import QUOTIENT, ExteriorField, canonical_operator, catalog_parabolic, gl, module_action, project_field
from splitsuper.linalg import rank

# sorts after every (mask, target) column
RHS = (1 << 30, 0)


def assemble():
    g = gl(2, 2)
    h = catalog_parabolic(g, 1, 1)
    qpar = h.quotient_parities()
    cols = [
        (mask, t)
        for mask in range(1 << g.n_odd)
        for t in range(h.codim)
        if bin(mask).count("1") >= 2 and (bin(mask).count("1") + qpar[t]) % 2 == 0
    ]
    vbar = project_field(canonical_operator(g), h)
    rows, rhs = {}, {}
    actors = [(y, True) for y in h.even_vectors()] + [(y, False) for y in h.vectors]
    for k, (y, homogeneous) in enumerate(actors):
        for col in cols:
            for out, c in module_action(y, ExteriorField(g, QUOTIENT, {col: 1}, h)).terms.items():
                rows.setdefault((k,) + out, {})[col] = c
        if not homogeneous:
            for out, c in module_action(y, vbar).terms.items():
                rhs[(k,) + out] = -c
                rows.setdefault((k,) + out, {})
    keys = sorted(rows)
    coeff = [rows[k] for k in keys]
    augmented = [{**rows[k], RHS: rhs[k]} if k in rhs else rows[k] for k in keys]
    return {
        "unknowns": len(cols),
        "equations": len(keys),
        "rank": rank(coeff),
        "augmented_rank": rank(augmented),
    }


if __name__ == "__main__":
    import json

    print(json.dumps(assemble(), indent=2, sort_keys=True))
