"""Cells and subsets of the cube [k]^d.

A cell ``(x_1, ..., x_d)`` with ``1 <= x_j <= k`` is encoded by its mixed-radix
rank ``sum (x_j - 1) k^(d-j)``, so integer order is lexicographic order on
coordinates.  A subset is stored as a bitmask over ranks (Python ints, so there
is no 64-cell ceiling); its sorted rank sequence is the lexicographic reading
used for the basis vectors ``e_X`` of the exterior algebra.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Cell = tuple[int, ...]
Marginals = tuple[tuple[int, ...], ...]


class CubeError(ValueError):
    pass


def cell_rank(coords: Sequence[int], k: int) -> int:
    r = 0
    for x in coords:
        if not 1 <= x <= k:
            raise CubeError(f"coordinate {x} outside [1, {k}] in cell {tuple(coords)}")
        r = r * k + (x - 1)
    return r


def cell_coords(rank: int, d: int, k: int) -> Cell:
    out = [0] * d
    for j in range(d - 1, -1, -1):
        rank, x = divmod(rank, k)
        out[j] = x + 1
    return tuple(out)


def all_cells(d: int, k: int) -> list[Cell]:
    return list(itertools.product(range(1, k + 1), repeat=d))


def mask_ranks(mask: int) -> list[int]:
    """Set bit positions of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def ranks_mask(ranks: Iterable[int]) -> int:
    m = 0
    for r in ranks:
        m |= 1 << r
    return m


@dataclass(frozen=True)
class CubeSet:
    """A subset of [k]^d, stored as a bitmask of cell ranks."""

    d: int
    k: int
    mask: int = 0

    def __post_init__(self):
        if self.d < 1 or self.k < 1:
            raise CubeError(f"invalid cube dimensions d={self.d}, k={self.k}")
        if self.mask < 0 or self.mask >> (self.k**self.d):
            raise CubeError("mask has bits outside the cube")

    @classmethod
    def from_cells(cls, d: int, k: int, cells: Iterable[Sequence[int]]) -> "CubeSet":
        cells = list(cells)
        mask = ranks_mask(cell_rank(c, k) for c in cells)
        for c in cells:
            if len(c) != d:
                raise CubeError(f"cell {tuple(c)} is not {d}-dimensional")
        if mask.bit_count() != len(cells):
            raise CubeError("repeated cells")
        return cls(d, k, mask)

    @classmethod
    def full(cls, d: int, k: int) -> "CubeSet":
        return cls(d, k, (1 << k**d) - 1)

    @property
    def ranks(self) -> list[int]:
        return mask_ranks(self.mask)

    @property
    def cells(self) -> list[Cell]:
        return [cell_coords(r, self.d, self.k) for r in self.ranks]

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells)

    def __contains__(self, cell: Sequence[int]) -> bool:
        return bool(self.mask >> cell_rank(cell, self.k) & 1)

    def __lt__(self, other: "CubeSet") -> bool:
        return self.ranks < other.ranks

    def complement(self) -> "CubeSet":
        return CubeSet(self.d, self.k, ((1 << self.k**self.d) - 1) ^ self.mask)

    def to_text(self) -> str:
        """Digit-string form, e.g. ``111,222``; only defined for k <= 9."""
        if self.k > 9:
            raise CubeError("text form needs k <= 9")
        return ",".join("".join(map(str, c)) for c in self.cells)

    @classmethod
    def from_text(cls, d: int, k: int, text: str) -> "CubeSet":
        text = text.strip().strip("{}")
        if not text:
            return cls(d, k, 0)
        if "(" in text:  # "(1,1,1),(2,2,2)"
            chunks = re.findall(r"\(([^)]*)\)", text)
            cells = [tuple(int(x) for x in ch.split(",")) for ch in chunks]
        else:
            cells = [tuple(int(ch) for ch in chunk.strip()) for chunk in text.split(",")]
        return cls.from_cells(d, k, cells)

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self.cells]

    @classmethod
    def from_json(cls, d: int, k: int, data: list) -> "CubeSet":
        return cls.from_cells(d, k, [tuple(c) for c in data])

    def __repr__(self) -> str:
        body = self.to_text() if self.k <= 9 else str(self.cells)
        return f"CubeSet(d={self.d}, k={self.k}, {{{body}}})"


def marginals(X: CubeSet) -> Marginals:
    """Slice counts ``s_l(X, i)`` for every direction l and slice index i."""
    d, k = X.d, X.k
    counts = [[0] * k for _ in range(d)]
    for r in X.ranks:
        for j in range(d - 1, -1, -1):
            r, x = divmod(r, k)
            counts[j][x] += 1
    return tuple(tuple(row) for row in counts)


def magnitude(X: CubeSet) -> int | None:
    """Common slice count if ``X`` is magic, else ``None``."""
    values = {v for row in marginals(X) for v in row}
    return values.pop() if len(values) == 1 else None


def is_magic(X: CubeSet) -> bool:
    return magnitude(X) is not None


def slice_set(d: int, k: int, direction: int, index: int) -> CubeSet:
    """The ``index``-th slice in direction ``direction`` (both 1-based)."""
    cells = [c for c in all_cells(d, k) if c[direction - 1] == index]
    return CubeSet.from_cells(d, k, cells)


def _cell_slices(d: int, k: int) -> list[tuple[int, ...]]:
    """For each rank, the flat slice ids ``l*k + (x_l - 1)``."""
    out = []
    for r in range(k**d):
        c = cell_coords(r, d, k)
        out.append(tuple(j * k + c[j] - 1 for j in range(d)))
    return out


def subsets_with_marginals(d: int, k: int, weight: Sequence[Sequence[int]],
                           limit: int | None = None) -> list[int]:
    """All subsets of [k]^d with the given marginals, as masks, in canonical order.

    Depth-first over cells in lexicographic order, trying "include" first, with
    pruning on slice capacities.  Canonical order is lexicographic on the sorted
    cell-rank sequence.  Raises ``CubeError`` if more than ``limit`` sets exist.
    """
    if len(weight) != d or any(len(w) != k for w in weight):
        raise CubeError(f"weight must be {d} vectors of length {k}")
    if any(x < 0 for w in weight for x in w):
        raise CubeError("weight entries must be nonnegative")
    totals = {sum(w) for w in weight}
    if len(totals) != 1:
        raise CubeError(f"weight components have different sums: {weight}")
    m = totals.pop()
    N = k**d
    slices = _cell_slices(d, k)
    need = [x for w in weight for x in w]
    # remaining[c][s]: cells of slice s at positions >= c
    remaining = [[0] * (d * k) for _ in range(N + 1)]
    for c in range(N - 1, -1, -1):
        remaining[c] = remaining[c + 1][:]
        for s in slices[c]:
            remaining[c][s] += 1
    if any(need[s] > remaining[0][s] for s in range(d * k)):
        return []

    out: list[int] = []

    def rec(c: int, left: int, mask: int):
        if left == 0:
            out.append(mask)
            if limit is not None and len(out) > limit:
                raise CubeError(f"more than {limit} sets with weight {weight}")
            return
        if N - c < left:
            return
        sl = slices[c]
        rem_next = remaining[c + 1]
        if all(need[s] > 0 for s in sl):
            for s in sl:
                need[s] -= 1
            if all(need[s] <= rem_next[s] for s in sl):
                rec(c + 1, left - 1, mask | (1 << c))
            for s in sl:
                need[s] += 1
        if all(need[s] <= rem_next[s] for s in sl):
            rec(c + 1, left, mask)

    rec(0, m, 0)
    return out


def enumerate_magic_sets(d: int, k: int, n: int) -> list[CubeSet]:
    """B_{d,k}(n): magic sets of magnitude ``n`` in [k]^d, in canonical order."""
    if not 0 <= n <= k ** (d - 1):
        raise CubeError(f"magnitude {n} outside [0, {k ** (d - 1)}]")
    weight = [(n,) * k] * d
    return [CubeSet(d, k, m) for m in subsets_with_marginals(d, k, weight)]


def magic_counts(d: int, k: int) -> list[int]:
    """b_{d,k}(n) for n = 0 .. k^(d-1)."""
    return [len(subsets_with_marginals(d, k, [(n,) * k] * d))
            for n in range(k ** (d - 1) + 1)]


def direct_sum(T1: CubeSet, T2: CubeSet) -> CubeSet:
    """``T1 (+) T2``: T1 together with T2 shifted by k1 in every coordinate."""
    if T1.d != T2.d:
        raise CubeError(f"dimension mismatch: {T1.d} != {T2.d}")
    n1, n2 = magnitude(T1), magnitude(T2)
    if n1 is None or n2 is None:
        raise CubeError("direct sum needs magic sets")
    if n1 != n2:
        raise CubeError(f"magnitude mismatch: {n1} != {n2}")
    k1, k = T1.k, T1.k + T2.k
    cells = T1.cells + [tuple(x + k1 for x in c) for c in T2.cells]
    return CubeSet.from_cells(T1.d, k, cells)


def direct_power(T: CubeSet, times: int) -> CubeSet:
    out = T
    for _ in range(times - 1):
        out = direct_sum(out, T)
    return out
