from fractions import Fraction as F

from hypothesis import given, settings
from hypothesis import strategies as st

from splitsuper.linalg import Echelon, axpy, in_span, kernel, rank, solve_affine

small = st.integers(min_value=-3, max_value=3)
rows_st = st.lists(st.dictionaries(st.integers(0, 4), small, max_size=5), max_size=6)


def apply(row, x):
    return sum(c * x.get(k, 0) for k, c in row.items())


def test_axpy_drops_cancelled_entries():
    y = {0: F(1), 1: F(2)}
    axpy(y, -1, {0: 1})
    assert y == {1: 2}


def test_echelon_membership():
    e = Echelon()
    assert e.add({0: 1, 1: 1}) == 0
    assert e.add({0: 2, 1: 2}) is None
    assert e.contains({0: 3, 1: 3})
    assert not e.contains({1: 1})
    assert len(e) == 1


def test_kernel_of_single_equation():
    ker = kernel([{"a": 1, "b": -1}], ["a", "b", "c"])
    assert len(ker) == 2
    for v in ker:
        assert apply({"a": 1, "b": -1}, v) == 0


def test_solve_affine_inconsistent():
    part, hom = solve_affine([({0: 1}, F(1)), ({0: 2}, F(3))], [0])
    assert part is None


def test_solve_affine_particular():
    part, hom = solve_affine([({0: 1, 1: 1}, F(2))], [0, 1])
    assert apply({0: 1, 1: 1}, part) == 2
    assert len(hom) == 1


@settings(max_examples=60, deadline=None)
@given(rows_st)
def test_rank_nullity(rows):
    cols = list(range(5))
    rows = [{k: F(c) for k, c in r.items() if c} for r in rows]
    ker = kernel(rows, cols)
    assert rank(rows) + len(ker) == len(cols)
    for v in ker:
        assert all(apply(r, v) == 0 for r in rows)
    assert rank(ker) == len(ker)


@settings(max_examples=60, deadline=None)
@given(rows_st, st.lists(small, min_size=5, max_size=5))
def test_affine_solution_satisfies_system(rows, x0):
    rows = [{k: F(c) for k, c in r.items() if c} for r in rows]
    x = {i: F(c) for i, c in enumerate(x0) if c}
    system = [(r, apply(r, x)) for r in rows]
    part, hom = solve_affine(system, list(range(5)))
    assert part is not None
    assert all(apply(r, part) == b for r, b in system)
    diff = dict(x)
    axpy(diff, -1, part)
    assert not diff or in_span(hom, diff)
