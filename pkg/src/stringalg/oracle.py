"""Exact linear-algebra oracle for Hom dimensions between representations.

A morphism between representations U and V is a tuple of matrices
``f_x`` with ``f_{e(a)} U_a = V_a f_{s(a)}`` for every arrow ``a``.  The
solution space dimension is computed by fraction-free integer elimination
(Bareiss), never floating point.  All coefficients here are 0 or +-1, so
the rank is the same over any field of characteristic 0; a characteristic
32003 recomputation is available as a sanity mode.
"""

from __future__ import annotations

from .quiver import QuiverError
from .words import Representation

SANITY_PRIME = 32003


def _intertwiner_matrix(U: Representation, V: Representation) -> tuple[list[list[int]], int]:
    """Rows of the linear system in the unknowns f_x[r][c], x in Q0."""
    q = U.quiver
    if V.quiver is not q and V.quiver.structure_key() != q.structure_key():
        raise QuiverError("representations live over different quivers")
    offset: dict[str, int] = {}
    nvars = 0
    for x in q.vertices:
        offset[x] = nvars
        nvars += V.dims[x] * U.dims[x]

    def var(x: str, r: int, c: int) -> int:
        return offset[x] + r * U.dims[x] + c

    rows: list[list[int]] = []
    for a in q.arrows:
        s, t = a.src, a.tgt
        Ua, Va = U.mats[a.name], V.mats[a.name]
        # (f_t U_a - V_a f_s)[r][c] = 0 for r < V.dims[t], c < U.dims[s]
        for r in range(V.dims[t]):
            for c in range(U.dims[s]):
                row = [0] * nvars
                for k in range(U.dims[t]):
                    if Ua[k][c]:
                        row[var(t, r, k)] += Ua[k][c]
                for k in range(V.dims[s]):
                    if Va[r][k]:
                        row[var(s, k, c)] -= Va[r][k]
                if any(row):
                    rows.append(row)
    return rows, nvars


def _rank_bareiss(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free Gaussian elimination."""
    if not rows:
        return 0
    m = [row[:] for row in rows]
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        pivot_row = None
        for r in range(rank, n_rows):
            if m[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        piv = m[rank][col]
        for r in range(rank + 1, n_rows):
            mr, mp = m[r], m[rank]
            frr = mr[col]
            if frr == 0 and prev == 1:
                continue
            for c in range(col, n_cols):
                mr[c] = (mr[c] * piv - frr * mp[c]) // prev
        rank += 1
        prev = piv
        if rank == n_rows:
            break
    return rank


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    if not rows:
        return 0
    m = [[x % p for x in row] for row in rows]
    n_rows, n_cols = len(m), len(m[0])
    rank = 0
    for col in range(n_cols):
        pivot_row = None
        for r in range(rank, n_rows):
            if m[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [(x * inv) % p for x in m[rank]]
        for r in range(n_rows):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == n_rows:
            break
    return rank


def hom_dim_linear(U: Representation, V: Representation, sanity: bool = False) -> int:
    """dim Hom(U, V) as the corank of the intertwiner system."""
    rows, nvars = _intertwiner_matrix(U, V)
    rank = _rank_bareiss(rows)
    if sanity:
        rank_p = _rank_mod_p(rows, SANITY_PRIME)
        if rank_p != rank:
            raise ArithmeticError(
                f"rank disagreement: {rank} over Q vs {rank_p} mod {SANITY_PRIME}"
            )
    return nvars - rank


def end_dim_linear(U: Representation, sanity: bool = False) -> int:
    return hom_dim_linear(U, U, sanity=sanity)
