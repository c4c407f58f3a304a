"""Exact integer-matrix utilities backed by sympy normal forms.

All matrices here are small (8x8 or 8x16) and computed once per partition
build, so the exact-but-slow sympy routines are fine.
"""

from __future__ import annotations

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_decomp


def snf_with_left_transform(a_rows):
    """Smith data for integer matrix A: diag d and unimodular P with P@A@Q = D.

    Returns (d, P, Pinv) as plain int lists; d has one entry per row of A
    (zero-padded if A has fewer invariant factors).
    """
    a = Matrix(a_rows)
    d_mat, p, q = smith_normal_decomp(a, domain=ZZ)
    n = a.rows
    d = [abs(int(d_mat[i, i])) if i < min(d_mat.rows, d_mat.cols) else 0 for i in range(n)]
    pinv = p.inv()
    assert all(x == int(x) for x in pinv), "left SNF transform must be unimodular"
    to_list = lambda m: [[int(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]
    return d, to_list(p), to_list(pinv)


def column_lattice_index(a_rows) -> int:
    """Index of the column span of A in Z^n, or 0 if the span has lower rank."""
    h = hermite_normal_form(Matrix(a_rows))
    if h.rows != h.cols:
        return 0
    return abs(int(h.det()))


def solve_integer(a_rows, b) -> list[int] | None:
    """One integer solution y of A @ y = b, or None if none exists."""
    a = Matrix(a_rows)
    d_mat, p, q = smith_normal_decomp(a, domain=ZZ)
    c = p * Matrix(b)
    rank = min(d_mat.rows, d_mat.cols)
    z = [0] * a.cols
    for i in range(a.rows):
        di = int(d_mat[i, i]) if i < rank else 0
        ci = int(c[i])
        if di == 0:
            if ci != 0:
                return None
        else:
            if ci % di != 0:
                return None
            z[i] = ci // di
    y = q * Matrix(z)
    return [int(y[i]) for i in range(a.cols)]


def exact_inverse_times_det(a_rows):
    """(adjugate, det) of an integer matrix, both exact."""
    a = Matrix(a_rows)
    det = int(a.det())
    adj = a.adjugate()
    rows = [[int(adj[i, j]) for j in range(adj.cols)] for i in range(adj.rows)]
    return rows, det


def integral_coords(basis_rows, target_cols) -> list[list[int]] | None:
    """Solve basis @ X = target exactly; None unless X is integral.

    Used for sublattice containment: the columns of ``target_cols`` are
    expressed over the columns of ``basis_rows``.
    """
    basis = Matrix(basis_rows)
    target = Matrix(target_cols)
    try:
        x = basis.LUsolve(target)
    except Exception:
        return None
    out = []
    for i in range(x.rows):
        row = []
        for j in range(x.cols):
            v = x[i, j]
            if v != int(v):
                return None
            row.append(int(v))
        out.append(row)
    return out
