"""Exact rational linear algebra: fraction-free elimination, rank,
nullspace, and linear-system solving over Fraction matrices."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

__all__ = ["rank", "nullspace", "nullspace_incremental", "solve", "row_echelon_int", "integerize"]


def integerize(rows):
    """Scale each row by the lcm of denominators; returns int rows."""
    out = []
    for row in rows:
        lcm = 1
        for v in row:
            d = v.denominator if isinstance(v, Fraction) else 1
            lcm = lcm * d // gcd(lcm, d)
        out.append([int(v * lcm) if isinstance(v, Fraction) else v * lcm for v in row])
    return out


def row_echelon_int(m):
    """Fraction-free (Bareiss) elimination in place on integer rows.

    Returns (pivot_cols, rank); m ends in row-echelon form with exact
    integer arithmetic throughout.
    """
    if not m:
        return [], 0
    n_rows = len(m)
    n_cols = len(m[0])
    piv_cols = []
    r = 0
    prev = 1
    for c in range(n_cols):
        p = None
        for i in range(r, n_rows):
            if m[i][c]:
                p = i
                break
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        for i in range(r + 1, n_rows):
            if not any(m[i][c:]):
                continue
            pivot = m[r][c]
            mic = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c, n_cols):
                row_i[j] = (row_i[j] * pivot - mic * row_r[j]) // prev
        prev = m[r][c]
        piv_cols.append(c)
        r += 1
        if r == n_rows:
            break
    return piv_cols, r


def rank(rows) -> int:
    m = integerize(rows)
    _, r = row_echelon_int(m)
    return r


def _normalize_vec(v):
    lcm = 1
    for q in v:
        lcm = lcm * q.denominator // gcd(lcm, q.denominator)
    ints = [int(q * lcm) for q in v]
    g = 0
    for n in ints:
        g = gcd(g, abs(n))
    if g > 1:
        ints = [n // g for n in ints]
    for n in ints:
        if n != 0:
            if n < 0:
                ints = [-k for k in ints]
            break
    return [Fraction(n) for n in ints]


def nullspace(rows):
    """Exact right-nullspace basis of the matrix, as normalized vectors."""
    if not rows:
        return []
    n_cols = len(rows[0])
    m = integerize(rows)
    piv_cols, r = row_echelon_int(m)
    free_cols = [c for c in range(n_cols) if c not in piv_cols]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        # back-substitute pivot variables from bottom to top
        for i in range(r - 1, -1, -1):
            pc = piv_cols[i]
            s = Fraction(0)
            for j in range(pc + 1, n_cols):
                if m[i][j]:
                    s += Fraction(m[i][j]) * v[j]
            v[pc] = -s / m[i][pc]
        basis.append(_normalize_vec(v))
    return basis


def nullspace_incremental(rows, n_cols):
    """Nullspace by incremental projection: keep a basis of the current
    solution space and cut it with one constraint row at a time.

    Equivalent to the one-shot elimination but far cheaper for the tall,
    low-rank systems the symmetry solver produces: once the solution space
    has stabilized, every further row costs only a few dot products.
    """
    basis = [
        [Fraction(1) if i == j else Fraction(0) for j in range(n_cols)]
        for i in range(n_cols)
    ]
    for row in rows:
        if not basis:
            break
        r = [v if isinstance(v, Fraction) else Fraction(v) for v in row]
        dots = []
        for v in basis:
            s = Fraction(0)
            for a, b in zip(r, v):
                if a and b:
                    s += a * b
            dots.append(s)
        pivot = None
        for j, dv in enumerate(dots):
            if dv:
                pivot = j
                break
        if pivot is None:
            continue
        pv = basis[pivot]
        pd = dots[pivot]
        new_basis = []
        for j, (v, dv) in enumerate(zip(basis, dots)):
            if j == pivot:
                continue
            if dv:
                c = dv / pd
                v = _normalize_vec([a - c * b for a, b in zip(v, pv)])
            new_basis.append(v)
        basis = new_basis
    return [_normalize_vec(v) for v in basis]


def solve(rows, rhs):
    """One exact solution of A x = b, or None if inconsistent.

    Free variables are set to zero.
    """
    if not rows:
        return None
    n_cols = len(rows[0])
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    m = integerize(aug)
    piv_cols, r = row_echelon_int(m)
    if n_cols in piv_cols:
        return None  # pivot in the rhs column: inconsistent
    x = [Fraction(0)] * n_cols
    for i in range(r - 1, -1, -1):
        pc = piv_cols[i]
        s = Fraction(m[i][n_cols])
        for j in range(pc + 1, n_cols):
            if m[i][j]:
                s -= Fraction(m[i][j]) * x[j]
        x[pc] = s / m[i][pc]
    return x
