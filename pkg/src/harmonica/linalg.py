"""Exact linear algebra over Q(i): reduced row echelon form, kernels, subspaces.

Vectors are plain lists of GaussianRational.  Reduced echelon form with
leading coefficient 1 is a unique normal form, so subspace equality is
literal comparison of echelon bases.
"""

from __future__ import annotations

from .scalars import GaussianRational

Vector = list

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


def rref(rows: list[Vector]) -> list[Vector]:
    """Reduced row echelon form; returns the nonzero rows, pivots normalized to 1."""
    m = [list(r) for r in rows if any(not x.is_zero() for x in r)]
    if not m:
        return []
    ncols = len(m[0])
    out: list[Vector] = []
    pivot_cols: list[int] = []
    rows_left = m
    for col in range(ncols):
        pivot_row = None
        for r in rows_left:
            if not r[col].is_zero():
                pivot_row = r
                break
        if pivot_row is None:
            continue
        rows_left.remove(pivot_row)
        inv = _ONE / pivot_row[col]
        pivot_row = [x * inv for x in pivot_row]
        next_rows = []
        for r in rows_left:
            if not r[col].is_zero():
                f = r[col]
                r = [a - f * b for a, b in zip(r, pivot_row)]
            if any(not x.is_zero() for x in r):
                next_rows.append(r)
        rows_left = next_rows
        # clear the pivot column in the rows already placed
        for i, r in enumerate(out):
            if not r[col].is_zero():
                f = r[col]
                out[i] = [a - f * b for a, b in zip(r, pivot_row)]
        out.append(pivot_row)
        pivot_cols.append(col)
        if not rows_left:
            break
    order = sorted(range(len(out)), key=lambda i: pivot_cols[i])
    return [out[i] for i in order]


def rank(rows: list[Vector]) -> int:
    return len(rref(rows))


def right_kernel(rows: list[Vector], ncols: int) -> list[Vector]:
    """Echelon basis of {x : A x = 0} for the matrix with the given rows."""
    reduced = rref(rows)
    pivots = []
    for r in reduced:
        for j, x in enumerate(r):
            if not x.is_zero():
                pivots.append(j)
                break
    pivot_set = set(pivots)
    free_cols = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [_ZERO] * ncols
        v[fc] = _ONE
        for r, pc in zip(reduced, pivots):
            v[pc] = -r[fc]
        basis.append(v)
    return rref(basis)


def in_span(vector: Vector, basis: list[Vector]) -> bool:
    if all(x.is_zero() for x in vector):
        return True
    if not basis:
        return False
    return rank(list(basis) + [vector]) == rank(basis)


def subspace_equal(a: list[Vector], b: list[Vector]) -> bool:
    return rref(a) == rref(b)


def subspace_sum(a: list[Vector], b: list[Vector]) -> list[Vector]:
    return rref(list(a) + list(b))


def subspace_intersection(a: list[Vector], b: list[Vector]) -> list[Vector]:
    """Echelon basis of span(a) ∩ span(b)."""
    if not a or not b:
        return []
    ncols = len(a[0])
    # columns of the stacked system are the a-rows then b-rows; a kernel
    # element (x, y) means sum x_i a_i = sum y_j b_j, an intersection vector.
    stacked_rows = []
    for col in range(ncols):
        stacked_rows.append([r[col] for r in a] + [-r[col] for r in b])
    kernel = right_kernel(stacked_rows, len(a) + len(b))
    vectors = []
    for k in kernel:
        v = [_ZERO] * ncols
        for x, row in zip(k[: len(a)], a):
            v = [vi + x * ri for vi, ri in zip(v, row)]
        vectors.append(v)
    return rref(vectors)


def is_direct_sum(parts: list[list[Vector]]) -> bool:
    """True when the spans meet pairwise in 0 and ranks add up."""
    total = []
    dim_sum = 0
    for p in parts:
        dim_sum += rank(p)
        total.extend(p)
    return rank(total) == dim_sum
