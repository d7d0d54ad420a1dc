"""Exact rational linear algebra."""

import random
from fractions import Fraction

from wavesym.linalg import nullspace, nullspace_incremental, rank, solve


def F(n, d=1):
    return Fraction(n, d)


def test_rank():
    assert rank([[F(1), F(2)], [F(2), F(4)]]) == 1
    assert rank([[F(1), F(0)], [F(0), F(1)]]) == 2
    assert rank([[F(0), F(0)]]) == 0


def test_nullspace_simple():
    ns = nullspace([[F(1), F(1), F(0)], [F(0), F(0), F(1)]])
    assert len(ns) == 1
    v = ns[0]
    assert v[0] + v[1] == 0 and v[2] == 0


def test_nullspace_empty():
    assert nullspace([[F(1), F(0)], [F(0), F(1)]]) == []


def test_solve():
    x = solve([[F(2), F(1)], [F(1), F(-1)]], [F(5), F(1)])
    assert x == [F(2), F(1)]
    assert solve([[F(1), F(1)], [F(1), F(1)]], [F(0), F(1)]) is None


def test_solve_underdetermined_free_vars_zero():
    x = solve([[F(1), F(1), F(1)]], [F(3)])
    assert x is not None
    assert sum(x) == 3


def test_incremental_matches_bareiss():
    rng = random.Random(12)
    for _ in range(30):
        rows = rng.randint(1, 10)
        cols = rng.randint(1, 6)
        m = [
            [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(cols)]
            for _ in range(rows)
        ]
        a = nullspace([row[:] for row in m])
        b = nullspace_incremental([row[:] for row in m], cols)
        # same dimension and each basis vector of one annihilated by the other
        assert len(a) == len(b) == cols - rank(m)
        for v in b:
            for row in m:
                assert sum(c * x for c, x in zip(row, v)) == 0


def test_big_entries_exact():
    big = Fraction(10**40 + 1, 10**17 + 9)
    m = [[big, F(1)], [F(1), big]]
    assert rank(m) == 2
    assert nullspace(m) == []
