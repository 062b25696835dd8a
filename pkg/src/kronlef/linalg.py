"""Exact linear algebra on sparse integer/rational matrices.

Matrices are lists of rows; a row is a ``dict`` mapping column index to a
nonzero entry.  Three rank routes are provided: dense Bareiss (fraction-free,
reference), sparse integer elimination with content removal, and rank modulo
random 31-bit primes.  ``rank`` combines the last two: several primes must
agree, otherwise it falls back to exact elimination.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Sequence

Row = dict[int, int]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_primes(count: int, bits: int = 31, rng: random.Random | None = None) -> list[int]:
    rng = rng or random.Random()
    out: list[int] = []
    while len(out) < count:
        c = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if c not in out and is_prime(c):
            out.append(c)
    return out


def bareiss_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Rank of a dense integer matrix by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in matrix]
    if not M:
        return 0
    nrows, ncols = len(M), len(M[0])
    rank, prev = 0, 1
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][c]
        for i in range(rank + 1, nrows):
            a = M[i][c]
            row_i, row_r = M[i], M[rank]
            for j in range(c, ncols):
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def _lead(row: dict) -> int:
    return min(row)


def rank_mod_p(rows: Sequence[Row], p: int, ncols: int | None = None) -> int:
    pivots: dict[int, dict[int, int]] = {}
    for src in rows:
        if ncols is not None and len(pivots) == ncols:
            break
        r = {c: v % p for c, v in src.items() if v % p}
        while r:
            c = _lead(r)
            P = pivots.get(c)
            if P is None:
                inv = pow(r[c], -1, p)
                pivots[c] = {j: v * inv % p for j, v in r.items()}
                break
            f = r[c]
            for j, v in P.items():
                nv = (r.get(j, 0) - f * v) % p
                if nv:
                    r[j] = nv
                else:
                    r.pop(j, None)
    return len(pivots)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {j: v // g for j, v in row.items()} if g > 1 else row


def exact_rank(rows: Sequence[Row], ncols: int | None = None) -> int:
    """Rank over Q by sparse integer elimination (content removed each step)."""
    pivots: dict[int, dict[int, int]] = {}
    for src in rows:
        if ncols is not None and len(pivots) == ncols:
            break
        r = {c: v for c, v in src.items() if v}
        while r:
            c = _lead(r)
            P = pivots.get(c)
            if P is None:
                pivots[c] = _primitive(r)
                break
            a, b = P[c], r[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {j: a * v for j, v in r.items()}
            for j, v in P.items():
                nv = new.get(j, 0) - b * v
                if nv:
                    new[j] = nv
                else:
                    new.pop(j, None)
            r = _primitive(new)
    return len(pivots)


def rank(rows: Sequence[Row], method: str = "auto", primes: int = 3,
         rng: random.Random | None = None, ncols: int | None = None) -> int:
    """Exact rank.

    ``method``: ``"exact"`` (integer elimination), ``"modular"`` (agreement of
    ``primes`` random 31-bit primes, exact fallback on disagreement), or
    ``"auto"`` (modular).
    """
    if method == "exact":
        return exact_rank(rows, ncols)
    if method not in ("auto", "modular"):
        raise ValueError(f"unknown rank method {method!r}")
    ranks = {rank_mod_p(rows, p, ncols) for p in random_primes(primes, rng=rng)}
    if len(ranks) == 1:
        return ranks.pop()
    return exact_rank(rows, ncols)


def transpose(rows: Sequence[dict], ncols: int | None = None) -> list[dict]:
    if ncols is None:
        ncols = 1 + max((max(r) for r in rows if r), default=-1)
    out: list[dict] = [{} for _ in range(ncols)]
    for i, r in enumerate(rows):
        for j, v in r.items():
            out[j][i] = v
    return out


def rref(rows: Sequence[dict]) -> dict[int, dict[int, Fraction]]:
    """Reduced row echelon form over Q, as ``{pivot column: row}``."""
    pivots: dict[int, dict[int, Fraction]] = {}
    for src in rows:
        r = {c: Fraction(v) for c, v in src.items() if v}
        while r:
            c = _lead(r)
            P = pivots.get(c)
            if P is None:
                inv = 1 / r[c]
                pivots[c] = {j: v * inv for j, v in r.items()}
                break
            f = r[c]
            for j, v in P.items():
                nv = r.get(j, 0) - f * v
                if nv:
                    r[j] = nv
                else:
                    r.pop(j, None)
    for c in sorted(pivots, reverse=True):
        P = pivots[c]
        for c2 in [j for j in P if j != c and j in pivots]:
            f = P[c2]
            for j, v in pivots[c2].items():
                nv = P.get(j, 0) - f * v
                if nv:
                    P[j] = nv
                else:
                    P.pop(j, None)
    return pivots


def nullspace(rows: Sequence[dict], ncols: int) -> tuple[list[dict[int, Fraction]], list[int]]:
    """Basis of the right kernel over Q.

    Returns ``(vectors, free_columns)``; vector i has entry 1 at
    ``free_columns[i]`` and 0 at every other free column.
    """
    R = rref(rows)
    free = [j for j in range(ncols) if j not in R]
    by_free: dict[int, list[tuple[int, Fraction]]] = {f: [] for f in free}
    for c, P in R.items():
        for j, v in P.items():
            if j != c:
                by_free[j].append((c, v))
    vectors = []
    for f in free:
        v = {f: Fraction(1)}
        for c, a in by_free[f]:
            v[c] = -a
        vectors.append(v)
    return vectors, free


def mat_vec(rows: Sequence[dict], v: dict) -> dict:
    out = {}
    for i, r in enumerate(rows):
        s = sum(a * v[j] for j, a in r.items() if j in v)
        if s:
            out[i] = s
    return out
