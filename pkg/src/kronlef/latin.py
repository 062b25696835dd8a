"""Partial Latin hypercubes and Alon-Tarsi numbers.

A partial Latin hypercube of type T (a magic set of magnitude n) assigns values
in [n] to the cells of T so that every slice of [k]^d sees each value once.
Its sign is the product, over all d*k slices, of the sign of the permutation
read off the slice in lexicographic cell order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .cube import CubeSet, CubeError, cell_coords, magnitude
from .cayley import perm_sign

DEFAULT_CELL_BUDGET = 32


class NotMagic(CubeError):
    pass


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class PartialLatinHypercube:
    type: CubeSet
    values: tuple[int, ...]  # aligned with type.cells

    def value_map(self) -> dict[tuple[int, ...], int]:
        return dict(zip(self.type.cells, self.values))


@dataclass(frozen=True)
class SignedCount:
    positive: int = 0
    negative: int = 0

    @property
    def at(self) -> int:
        return self.positive - self.negative

    def __add__(self, other: "SignedCount") -> "SignedCount":
        return SignedCount(self.positive + other.positive, self.negative + other.negative)

    def to_json(self, T: CubeSet | None = None) -> dict:
        out = {"positive": str(self.positive), "negative": str(self.negative),
               "at": str(self.at)}
        if T is not None:
            out = {"type": T.to_json(), **out}
        return out


def _prepare(T: CubeSet, budget: int | None):
    n = magnitude(T)
    if n is None:
        raise NotMagic(f"{T!r} is not a magic set")
    if budget is not None and len(T) > budget:
        raise BudgetExceeded(f"type has {len(T)} cells, budget is {budget}")
    d, k = T.d, T.k
    ranks = T.ranks
    cell_slices = []
    for r in ranks:
        c = cell_coords(r, d, k)
        cell_slices.append(tuple(j * k + c[j] - 1 for j in range(d)))
    return n, cell_slices


def enumerate_latin(T: CubeSet, budget: int | None = DEFAULT_CELL_BUDGET
                    ) -> Iterator[PartialLatinHypercube]:
    """All partial Latin hypercubes of type T; cells in lex order, values ascending."""
    n, cell_slices = _prepare(T, budget)
    used = [0] * (T.d * T.k)
    values = [0] * len(cell_slices)

    def rec(pos):
        if pos == len(cell_slices):
            yield PartialLatinHypercube(T, tuple(values))
            return
        sl = cell_slices[pos]
        busy = 0
        for s in sl:
            busy |= used[s]
        for v in range(1, n + 1):
            bit = 1 << v
            if busy & bit:
                continue
            for s in sl:
                used[s] |= bit
            values[pos] = v
            yield from rec(pos + 1)
            for s in sl:
                used[s] ^= bit

    yield from rec(0)


def sign(C: PartialLatinHypercube) -> int:
    """Product of the slice-permutation signs, computed from scratch."""
    T = C.type
    by_slice: dict[tuple[int, int], list[int]] = {}
    for cell, v in zip(T.cells, C.values):  # cells are in lex order
        for j, x in enumerate(cell):
            by_slice.setdefault((j, x), []).append(v)
    sgn = 1
    for seq in by_slice.values():
        sgn *= perm_sign([v - 1 for v in seq])
    return sgn


def at_number(T: CubeSet, budget: int | None = DEFAULT_CELL_BUDGET) -> SignedCount:
    """Signed count AT(T) of partial Latin hypercubes of type T.

    Backtracking with per-slice used-value bitmasks; the sign is tracked
    incrementally: appending value v to a slice adds the number of larger
    values already present there to that slice's inversion count.
    """
    n, cell_slices = _prepare(T, budget)
    used = [0] * (T.d * T.k)
    total = len(cell_slices)
    pos_count = neg_count = 0

    def rec(pos, parity):
        nonlocal pos_count, neg_count
        if pos == total:
            if parity:
                neg_count += 1
            else:
                pos_count += 1
            return
        sl = cell_slices[pos]
        busy = 0
        for s in sl:
            busy |= used[s]
        for v in range(1, n + 1):
            bit = 1 << v
            if busy & bit:
                continue
            p = parity
            for s in sl:
                p += (used[s] >> (v + 1)).bit_count()
                used[s] |= bit
            rec(pos + 1, p & 1)
            for s in sl:
                used[s] ^= bit

    rec(0, 0)
    return SignedCount(pos_count, neg_count)


def alon_tarsi(d: int, k: int, budget: int | None = DEFAULT_CELL_BUDGET) -> SignedCount:
    """AT_d(k) = AT([k]^d)."""
    return at_number(CubeSet.full(d, k), budget)
