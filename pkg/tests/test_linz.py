import itertools
import random
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from liehopf.errors import DimensionError
from liehopf.linz import (
    IntMatrix,
    Witness,
    check_witness,
    hermite_normal_form,
    kernel_basis,
    rank,
    smith_normal_form,
    solve_integer,
)


def M(rows, cols=None):
    return IntMatrix.from_rows(rows, cols=cols)


def test_hermite_identity():
    h = hermite_normal_form(IntMatrix.identity(2))
    assert h.h == IntMatrix.identity(2)
    assert h.u == IntMatrix.identity(2)


def test_hermite_single_entry():
    h = hermite_normal_form(M([[2]]))
    assert h.h == M([[2]]) and h.u == M([[1]])


def test_hermite_small_example_equations():
    a = M([[2, 4], [1, 3]])
    h = hermite_normal_form(a)
    assert a @ h.u == h.h
    assert abs(h.u.det()) == 1
    assert h.u @ h.u_inv == IntMatrix.identity(2)


def test_smith_examples():
    assert smith_normal_form(IntMatrix.diagonal([6, 4])).s == IntMatrix.diagonal([2, 12])
    assert smith_normal_form(IntMatrix.zeros(2, 3)).s == IntMatrix.zeros(2, 3)
    assert smith_normal_form(IntMatrix.identity(2)).s == IntMatrix.identity(2)


def test_solve_unsolvable_scalar():
    res = solve_integer(M([[2]]), [-1])
    assert not res.solvable
    assert (res.witness.g, res.witness.r) == (2, -1)
    assert check_witness(M([[2]]), [-1], res.witness)


def test_solve_scalar():
    res = solve_integer(M([[1]]), [-1])
    assert res.solvable and list(res.particular) == [-1] and not res.kernel_basis


def test_solve_degree_six_shape():
    # the two equations α+β = -3, 3γ = 6 of a three-unknown system
    m = M([[1, 1, 0], [0, 0, 3]])
    res = solve_integer(m, [-3, 6])
    assert res.solvable
    assert list(res.particular) == [-3, 0, 2]
    assert [abs(x) for x in res.kernel_basis[0]] == [1, 1, 0]
    assert len(res.kernel_basis) == 1


def test_solve_stacked_rows():
    m = M([[1, 1, 0], [2, 2, 3]])
    res = solve_integer(m, [-3, 0])
    assert res.solvable and list(res.particular) == [-3, 0, 2]
    res = solve_integer(m, [-3, -6])
    assert res.solvable and list(res.particular) == [-3, 0, 0]


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        solve_integer(M([[1, 2]]), [1, 2])


def test_rational_inconsistency_witness():
    m = M([[1, 1], [1, 1]])
    res = solve_integer(m, [1, 2])
    assert not res.solvable
    assert check_witness(m, [1, 2], res.witness)


def test_bad_witness_rejected():
    assert not check_witness(M([[2]]), [-2], Witness((1,), 2, -2))
    assert not check_witness(M([[2]]), [-1], Witness((1,), 3, -1))


def test_zero_columns():
    m = IntMatrix.zeros(2, 0)
    assert solve_integer(m, [0, 0]).solvable
    res = solve_integer(m, [0, 1])
    assert not res.solvable and check_witness(m, [0, 1], res.witness)


def test_zero_rows():
    res = solve_integer(IntMatrix.zeros(0, 2), [])
    assert res.solvable and res.particular == (0, 0)
    assert sorted(res.kernel_basis) == [(0, 1), (1, 0)]


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r).map(
            lambda rows: M(rows, cols=c)
        )
    )
)


@settings(max_examples=150, deadline=None, derandomize=True)
@given(matrices)
def test_hermite_properties(a):
    h = hermite_normal_form(a)
    assert a @ h.u == h.h
    assert h.u.is_unimodular()
    assert h.u @ h.u_inv == IntMatrix.identity(a.cols)
    # staircase: pivot of column j strictly below pivot of column j-1,
    # positive, entries left of a pivot reduced into [0, pivot)
    last = -1
    for j, i in enumerate(h.pivot_rows):
        assert i > last
        last = i
        p = h.h[i, j]
        assert p > 0
        assert all(h.h[k, j] == 0 for k in range(i))
        assert all(0 <= h.h[i, jj] < p for jj in range(j))
    for j in range(len(h.pivot_rows), a.cols):
        assert all(h.h[k, j] == 0 for k in range(a.rows))


def _minors_gcd(a: IntMatrix, k: int) -> int:
    g = 0
    for rs in itertools.combinations(range(a.rows), k):
        for cs in itertools.combinations(range(a.cols), k):
            g = gcd(g, M([[a[i, j] for j in cs] for i in rs]).det())
    return g


@settings(max_examples=120, deadline=None, derandomize=True)
@given(matrices)
def test_smith_properties(a):
    s = smith_normal_form(a)
    assert s.u @ a @ s.v == s.s
    assert s.u.is_unimodular() and s.v.is_unimodular()
    assert s.u @ s.u_inv == IntMatrix.identity(a.rows)
    d = s.diagonal
    for i in range(a.rows):
        for j in range(a.cols):
            if i != j:
                assert s.s[i, j] == 0
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert d[: len(nz)] == nz
    for x, y in zip(nz, nz[1:]):
        assert y % x == 0
    assert rank(a) == len(nz)
    prod = 1
    for k in range(1, min(3, a.rows, a.cols) + 1):
        prod *= d[k - 1]
        assert abs(prod) == _minors_gcd(a, k)


@settings(max_examples=80, deadline=None, derandomize=True)
@given(matrices)
def test_kernel_basis_spans_integer_kernel(a):
    ker = kernel_basis(a)
    for v in ker:
        assert a @ list(v) == [0] * a.rows
    assert len(ker) == a.cols - rank(a)
    if ker:
        # saturated: the kernel basis extends to a unimodular basis, i.e. its
        # k×k minors have gcd 1
        kb = IntMatrix.from_columns(ker, rows=a.cols)
        assert _minors_gcd(kb, len(ker)) == 1


# boxed brute force oracle on random 3×4 systems

B = 10
GRID = np.array(list(itertools.product(range(-B, B + 1), repeat=4)), dtype=np.int64).T  # 4 × 21^4


def _brute(m_rows, b):
    vals = np.array(m_rows, dtype=np.int64) @ GRID
    hit = np.all(vals == np.array(b, dtype=np.int64)[:, None], axis=0)
    return GRID[:, hit].T


def _in_lattice(x, base, ker):
    diff = [xi - pi for xi, pi in zip(x, base)]
    if not ker:
        return not any(diff)
    km = IntMatrix.from_columns(ker, rows=len(x))
    return solve_integer(km, diff).solvable


def run_solver_oracle(trials: int, seed: int) -> int:
    """Compare solve_integer with the box search; returns the number of systems checked."""
    rng = random.Random(seed)
    for _ in range(trials):
        rows = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(3)]
        if rng.random() < 0.5:
            x0 = [rng.randint(-3, 3) for _ in range(4)]
            b = [sum(r[j] * x0[j] for j in range(4)) for r in rows]
        else:
            b = [rng.randint(-6, 6) for _ in range(3)]
        m = M(rows)
        res = solve_integer(m, b)
        found = _brute(rows, b)
        if res.solvable:
            assert m @ list(res.particular) == b
            for v in res.kernel_basis:
                assert m @ list(v) == [0, 0, 0]
            assert len(res.kernel_basis) == 4 - rank(m)
            if len(found) == 0:
                # the solution coset must genuinely miss the box
                ker = [list(v) for v in res.kernel_basis]
                assert len(ker) <= 2
                for t in itertools.product(range(-40, 41), repeat=len(ker)):
                    x = [res.particular[i] + sum(tk * k[i] for tk, k in zip(t, ker)) for i in range(4)]
                    assert max(abs(v) for v in x) > B
            for x in found[:50]:
                assert _in_lattice([int(t) for t in x], res.particular, [list(v) for v in res.kernel_basis])
        else:
            assert len(found) == 0
            assert check_witness(m, b, res.witness)
    return trials


def test_solver_matches_box_search():
    assert run_solver_oracle(150, seed=7) == 150
