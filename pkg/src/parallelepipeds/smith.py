"""Invariant factors of integer matrices (Smith normal form).

Elimination runs on a sparse row/column index with Python integers, so
entries never overflow. Pivots are chosen by minimal absolute value; the
resulting diagonal is then brought into divisibility order by gcd/lcm
exchanges.
"""
from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence


def _sparse(M) -> tuple[dict[int, dict[int, int]], dict[int, set[int]]]:
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for i, row in enumerate(M):
        for j, v in enumerate(row):
            v = int(v)
            if v:
                rows.setdefault(i, {})[j] = v
                cols.setdefault(j, set()).add(i)
    return rows, cols


def _find_pivot(rows) -> tuple[int, int]:
    best = None
    for r, row in rows.items():
        for c, v in row.items():
            a = abs(v)
            if a == 1:
                return r, c
            if best is None or a < best[0]:
                best = (a, r, c)
    return best[1], best[2]


def _add_row(rows, cols, dst: int, src: int, k: int) -> None:
    """row[dst] += k * row[src]"""
    target = rows[dst]
    for c, v in rows[src].items():
        nv = target.get(c, 0) + k * v
        if nv:
            if c not in target:
                cols[c].add(dst)
            target[c] = nv
        else:
            target.pop(c, None)
            cols[c].discard(dst)


def diagonal_entries(M) -> list[int]:
    """Absolute values of the pivots left after unimodular elimination."""
    rows, cols = _sparse(M)
    diag = []
    while rows:
        r, c = _find_pivot(rows)
        while True:
            p = rows[r][c]
            moved = False
            # clear column c below/above the pivot with row operations
            for r2 in sorted(cols[c] - {r}):
                q = rows[r2][c] // p
                _add_row(rows, cols, r2, r, -q)
                if rows[r2].get(c, 0):
                    r, moved = r2, True
                    break
            if moved:
                continue
            # clear row r with column operations; column c now only meets row r
            for c2 in sorted(set(rows[r]) - {c}):
                v = rows[r][c2]
                q = v // p
                nv = v - q * p
                if nv:
                    rows[r][c2] = nv
                    c, moved = c2, True
                    break
                del rows[r][c2]
                cols[c2].discard(r)
            if not moved:
                break
        diag.append(abs(rows[r][c]))
        del rows[r]
        cols[c].discard(r)
        for cc in [cc for cc, s in cols.items() if not s]:
            del cols[cc]
        for rr in [rr for rr, row in rows.items() if not row]:
            del rows[rr]
    return diag


def divisibility_chain(values: Iterable[int]) -> list[int]:
    """Turn a diagonal into invariant factors d1 | d2 | ... (zeros dropped)."""
    d = sorted(abs(int(v)) for v in values if v)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] // g * d[j]
    return d


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Nonzero invariant factors of an integer matrix, in divisibility order.

    >>> smith_normal_form([[2, 0], [0, 3]])
    (1, 6)
    >>> smith_normal_form([[0, 0], [0, 0]])
    ()
    """
    return tuple(divisibility_chain(diagonal_entries(M)))


def integer_rank(M) -> int:
    return len(diagonal_entries(M))
