"""Weight spaces, raising operators and highest weight vectors of the exterior
algebra of V = (C^k)^(tensor d) under GL(k)^d.

The public functions take Kronecker labels (d-tuples of partitions); the
weight of the corresponding highest weight space is the tuple of conjugate
partitions, padded to length k.  A Kronecker coefficient g(lam) is the
dimension of that highest weight space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cube import CubeSet, cell_coords, subsets_with_marginals, mask_ranks, CubeError
from .exterior import Multivector
from . import linalg
from .partitions import (PartitionTuple, as_partition_tuple, common_size, conjugate,
                         pad, PartitionError)

DEFAULT_BUDGET = 20_000

Weight = tuple[tuple[int, ...], ...]


class BudgetExceeded(RuntimeError):
    """Weight space larger than the configured budget; use the character backend."""


@dataclass
class WeightSpaceBasis:
    d: int
    k: int
    weight: Weight
    basis: list[int]  # subset masks, canonical order
    index: dict[int, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {m: i for i, m in enumerate(self.basis)}

    def __len__(self) -> int:
        return len(self.basis)

    def cubesets(self) -> list[CubeSet]:
        return [CubeSet(self.d, self.k, m) for m in self.basis]

    def vector(self, coords: dict[int, Fraction] | Sequence) -> Multivector:
        if not isinstance(coords, dict):
            coords = dict(enumerate(coords))
        return Multivector(self.d, self.k, {self.basis[i]: c for i, c in coords.items()})


@dataclass
class HwvBasis:
    ambient: WeightSpaceBasis
    vectors: list[dict[int, Fraction]]  # sparse coordinates in the ambient basis
    free_columns: list[int]

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def multivectors(self) -> list[Multivector]:
        return [self.ambient.vector(v) for v in self.vectors]

    def coordinates(self, v: Multivector) -> list[Fraction] | None:
        """Coordinates of ``v`` in this basis, or ``None`` if ``v`` is outside the span."""
        idx = self.ambient.index
        amb: dict[int, Fraction] = {}
        for mask, c in v.terms.items():
            i = idx.get(mask)
            if i is None:
                return None
            amb[i] = c
        coords = [Fraction(amb.get(f, 0)) for f in self.free_columns]
        recon: dict[int, Fraction] = {}
        for a, vec in zip(coords, self.vectors):
            if a:
                for i, x in vec.items():
                    recon[i] = recon.get(i, 0) + a * x
        recon = {i: x for i, x in recon.items() if x}
        return coords if recon == amb else None


def weight_of(lam: PartitionTuple, k: int) -> Weight:
    """Conjugate of each partition, padded to length k."""
    return tuple(pad(conjugate(p), k) for p in lam)


def check_label(lam: Sequence[Sequence[int]], d: int, k: int) -> PartitionTuple:
    lam = as_partition_tuple(lam)
    if len(lam) != d:
        raise PartitionError(f"expected a {d}-tuple of partitions, got {len(lam)}")
    common_size(lam)
    for p in lam:
        if p and p[0] > k:
            raise PartitionError(f"partition {p} has a part larger than k={k}")
        if len(p) > k ** (d - 1):
            raise PartitionError(f"partition {p} is longer than k^(d-1)={k ** (d - 1)}")
    return lam


def enumerate_weight_basis(d: int, k: int, weight: Sequence[Sequence[int]],
                           budget: int | None = DEFAULT_BUDGET) -> WeightSpaceBasis:
    """Basis ``{e_X}`` of the weight space: all X whose marginals equal ``weight``."""
    weight = tuple(tuple(w) for w in weight)
    try:
        masks = subsets_with_marginals(d, k, weight, limit=budget)
    except CubeError as exc:
        if "more than" in str(exc):
            raise BudgetExceeded(str(exc)) from exc
        raise
    return WeightSpaceBasis(d, k, weight, masks)


def raise_mask(mask: int, d: int, k: int, direction: int, i: int) -> list[tuple[int, int]]:
    """Raising operator E_{i,i+1} on tensor factor ``direction`` applied to e_X.

    Acts as a derivation: each cell x of X with x_direction = i+1 is replaced by
    the cell with that coordinate lowered to i (zero if already in X); the sign
    is (-1)^(number of cells of X strictly between the two).
    Returns ``[(new_mask, sign), ...]``.
    """
    stride = k ** (d - direction)
    out = []
    for r in mask_ranks(mask):
        if (r // stride) % k != i:  # coordinate value i+1 is digit i
            continue
        r2 = r - stride
        bit2 = 1 << r2
        if mask & bit2:
            continue
        between = ((mask >> (r2 + 1)) & ((1 << (r - r2 - 1)) - 1)).bit_count()
        out.append(((mask ^ (1 << r)) | bit2, -1 if between % 2 else 1))
    return out


def apply_raising(v: Multivector, direction: int, i: int) -> Multivector:
    out: dict[int, Fraction] = {}
    for mask, c in v.terms.items():
        for new, s in raise_mask(mask, v.d, v.k, direction, i):
            out[new] = out.get(new, 0) + s * c
    return Multivector(v.d, v.k, out)


def is_highest_weight(v: Multivector) -> bool:
    """True iff every raising operator kills ``v``."""
    return all(apply_raising(v, j, i).is_zero()
               for j in range(1, v.d + 1) for i in range(1, v.k))


def _raised_weight(weight: Weight, direction: int, i: int) -> Weight | None:
    w = [list(x) for x in weight]
    w[direction - 1][i - 1] += 1
    w[direction - 1][i] -= 1
    if w[direction - 1][i] < 0:
        return None
    return tuple(tuple(x) for x in w)


def raising_matrix(basis: WeightSpaceBasis, direction: int, i: int,
                   budget: int | None = DEFAULT_BUDGET
                   ) -> tuple[WeightSpaceBasis, list[dict[int, int]]]:
    """Integer matrix of E_{i,i+1} on factor ``direction`` from ``basis`` to the raised weight.

    Returns ``(target_basis, rows)``; ``rows[t]`` maps source index to entry.
    """
    d, k = basis.d, basis.k
    if not 1 <= direction <= d or not 1 <= i <= k - 1:
        raise IndexError(f"raising operator ({direction}, {i}) out of range")
    tw = _raised_weight(basis.weight, direction, i)
    if tw is None:
        return WeightSpaceBasis(d, k, basis.weight, []), []
    target = enumerate_weight_basis(d, k, tw, budget)
    rows: list[dict[int, int]] = [{} for _ in range(len(target))]
    for col, mask in enumerate(basis.basis):
        for new, s in raise_mask(mask, d, k, direction, i):
            t = target.index[new]
            rows[t][col] = rows[t].get(col, 0) + s
    return target, [{c: v for c, v in r.items() if v} for r in rows]


def _stacked_rows(basis: WeightSpaceBasis) -> list[dict[int, int]]:
    d, k = basis.d, basis.k
    rows = []
    for direction in range(1, d + 1):
        for i in range(1, k):
            block: dict[int, dict[int, int]] = {}
            for col, mask in enumerate(basis.basis):
                for new, s in raise_mask(mask, d, k, direction, i):
                    r = block.setdefault(new, {})
                    r[col] = r.get(col, 0) + s
            rows.extend({c: v for c, v in r.items() if v} for r in block.values())
    return [r for r in rows if r]


def hwv_space(d: int, k: int, weight: Sequence[Sequence[int]],
              budget: int | None = DEFAULT_BUDGET) -> HwvBasis:
    """Joint kernel of all raising operators on the weight space of ``weight``."""
    basis = enumerate_weight_basis(d, k, weight, budget)
    vectors, free = linalg.nullspace(_stacked_rows(basis), len(basis))
    return HwvBasis(basis, vectors, free)


def hwv_basis(lam: Sequence[Sequence[int]], d: int, k: int,
              budget: int | None = DEFAULT_BUDGET) -> HwvBasis:
    """Exact rational basis of HWV_{lam'} of the m-th exterior power."""
    lam = check_label(lam, d, k)
    return hwv_space(d, k, weight_of(lam, k), budget)


def kronecker_hwv(lam: Sequence[Sequence[int]], d: int, k: int,
                  budget: int | None = DEFAULT_BUDGET, rank_method: str = "auto") -> int:
    """g(lam) as the dimension of the highest weight space of weight lam'."""
    lam = check_label(lam, d, k)
    basis = enumerate_weight_basis(d, k, weight_of(lam, k), budget)
    if not basis.basis:
        return 0
    rows = _stacked_rows(basis)
    return len(basis) - linalg.rank(rows, method=rank_method, ncols=len(basis))


def complementary_weight(weight: Weight, d: int, k: int) -> Weight:
    """Weight of HWVs obtained from Hodge duality: (k^(d-1) - w_k, ..., k^(d-1) - w_1)."""
    top = k ** (d - 1)
    return tuple(tuple(top - x for x in reversed(w)) for w in weight)


def reverse_labels(v: Multivector) -> Multivector:
    """Action of the longest Weyl element: i -> k+1-i in every tensor factor.

    Reversing every coordinate reverses the lexicographic order of cells, so a
    set of size n picks up the sign of the order-reversing permutation.
    """
    N = v.k**v.d
    out = {}
    for mask, c in v.terms.items():
        new = 0
        for r in mask_ranks(mask):
            new |= 1 << (N - 1 - r)
        n = mask.bit_count()
        out[new] = -c if (n * (n - 1) // 2) % 2 else c
    return Multivector(v.d, v.k, out)


def cells_of(mask: int, d: int, k: int) -> list[tuple[int, ...]]:
    return [cell_coords(r, d, k) for r in mask_ranks(mask)]
