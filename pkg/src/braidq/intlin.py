"""
Exact solution of integer linear systems ``A x = b`` over Z.

Two phases: unimodular row reduction of the sparse augmented system (which shrinks thousands of
redundant equations to at most one per unknown), then unimodular column reduction of what is
left to lower echelon form ``A V = L``. Solving ``L y = b`` by forward substitution and setting
the free coordinates of ``y`` to zero gives ``x = V y``.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

Row = dict[int, int]


class _Unsolvable(Exception):
    pass


def _row_echelon(rows: list[tuple[Row, int]], ncols: int) -> list[tuple[Row, int]]:
    """Unimodular row reduction of sparse rows (coefficients, rhs); returns the pivot rows.

    Raises _Unsolvable on a row 0 = nonzero."""
    active = [(dict(r), b) for r, b in rows if r or b]
    pivots: list[tuple[Row, int]] = []
    for col in range(ncols):
        hit = [i for i, (r, _) in enumerate(active) if r.get(col)]
        if not hit:
            continue
        group = [active[i] for i in hit]
        rest = [active[i] for i in range(len(active)) if not active[i][0].get(col)]
        while len(group) > 1:
            group.sort(key=lambda rb: abs(rb[0][col]))
            pr, pb = group[0]
            pv = pr[col]
            nxt = [group[0]]
            for r, b in group[1:]:
                q = r[col] // pv
                for c, v in pr.items():
                    nv = r.get(c, 0) - q * v
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
                b -= q * pb
                if r.get(col):
                    nxt.append((r, b))
                elif r:
                    rest.append((r, b))
                elif b:
                    raise _Unsolvable
            group = nxt
        pivots.append(group[0])
        active = rest
    if any(b for r, b in active):
        raise _Unsolvable
    return pivots


def solve_integer(rows: Iterable[tuple[Mapping[int, int], int]], ncols: int) -> list[int] | None:
    """
    An integer solution of the sparse system, or None when none exists.

    Deterministic: the same system (rows in the same order) always gives the same solution.

    >>> solve_integer([({0: 2, 1: 4}, 6)], 2)
    [3, 0]
    >>> solve_integer([({0: 2}, 3)], 1) is None
    True
    """
    rows = [(dict(r), int(b)) for r, b in rows]
    try:
        piv = _row_echelon(rows, ncols)
    except _Unsolvable:
        return None
    m = len(piv)
    A = [[r.get(c, 0) for c in range(ncols)] for r, _ in piv]
    rhs = [b for _, b in piv]
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def col_op(dst: int, src: int, q: int) -> None:
        # column dst -= q * column src
        for row in A:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    def swap(c1: int, c2: int) -> None:
        for row in A:
            row[c1], row[c2] = row[c2], row[c1]
        for row in V:
            row[c1], row[c2] = row[c2], row[c1]

    # column echelon: after processing, row i has its pivot at column p_i and zeros to the right
    pivot_cols: list[tuple[int, int]] = []   # (row, column)
    c0 = 0
    for i in range(m):
        if c0 >= ncols:
            break
        while True:
            nz = [c for c in range(c0, ncols) if A[i][c]]
            if not nz:
                break
            c = min(nz, key=lambda c: (abs(A[i][c]), c))
            if len(nz) == 1:
                break
            for d in nz:
                if d != c:
                    col_op(d, c, A[i][d] // A[i][c])
        nz = [c for c in range(c0, ncols) if A[i][c]]
        if nz:
            swap(c0, nz[0])
            pivot_cols.append((i, c0))
            c0 += 1

    y = [0] * ncols
    done = 0
    for i in range(m):
        acc = sum(A[i][c] * y[c] for c in range(done))
        if done < len(pivot_cols) and pivot_cols[done][0] == i:
            _, c = pivot_cols[done]
            diff = rhs[i] - acc
            if diff % A[i][c]:
                return None
            y[c] = diff // A[i][c]
            done += 1
        elif acc != rhs[i]:
            return None
    return [sum(V[r][c] * y[c] for c in range(ncols)) for r in range(ncols)]


def check_solution(rows: Sequence[tuple[Mapping[int, int], int]], x: Sequence[int]) -> bool:
    return all(sum(v * x[c] for c, v in r.items()) == b for r, b in rows)
