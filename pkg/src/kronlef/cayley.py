"""The Cayley form omega_{d,k} and related vectors.

``omega = sum over (pi_1, ..., pi_d) in S_k^d of sgn(pi_1 ... pi_d)
wedge_i e_{pi_1(i)} (x) ... (x) e_{pi_d(i)}``, normalized by 1/k! so that each
subset of cells occurs with coefficient +-1.  For odd d every reordering of the
wedge factors contributes with the same sign, so this is the same as fixing
pi_1 to the identity; for even d the sum vanishes.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .cube import CubeSet, cell_rank, all_cells
from .exterior import Multivector, wedge, wedge_sign

_FULL_ENUMERATION_LIMIT = 200_000


def perm_sign(p: Sequence[int]) -> int:
    p = list(p)
    sgn = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sgn = -sgn
    return sgn


@dataclass(frozen=True)
class CayleyForm:
    d: int
    k: int
    body: Multivector

    def __post_init__(self):
        if self.body.grade not in (self.k, 0) or (self.body.grade == 0 and self.body):
            raise ValueError("Cayley form must be homogeneous of grade k")


def _sum_over_tuples(d: int, k: int, fix_first: bool) -> dict[int, int]:
    perms = [(p, perm_sign(p)) for p in itertools.permutations(range(k))]
    ident = tuple(range(k))
    first = [(ident, 1)] if fix_first else perms
    terms: dict[int, int] = {}
    for head in first:
        for rest in itertools.product(perms, repeat=d - 1):
            tup = (head,) + rest
            sgn = 1
            for _, s in tup:
                sgn *= s
            ranks = []
            for i in range(k):
                ranks.append(cell_rank([p[i] + 1 for p, _ in tup], k))
            # sign of sorting the wedge factors into lexicographic order
            inv = sum(1 for a in range(k) for b in range(a + 1, k) if ranks[a] > ranks[b])
            if inv % 2:
                sgn = -sgn
            mask = 0
            for r in ranks:
                mask |= 1 << r
            terms[mask] = terms.get(mask, 0) + sgn
    return terms


def _pairing_terms(d: int) -> dict[int, int]:
    """k = 2: sum over i with an even number of 2s of e_i ^ e_ibar."""
    terms = {}
    for c in all_cells(d, 2):
        if sum(x - 1 for x in c) % 2 == 0:
            cbar = tuple(3 - x for x in c)
            a, b = 1 << cell_rank(c, 2), 1 << cell_rank(cbar, 2)
            terms[a | b] = wedge_sign(a, b)
    return terms


def build_cayley(d: int, k: int, method: str = "auto") -> CayleyForm:
    """Cayley form omega_{d,k}.

    ``method``: ``"full"`` sums over all (k!)^d permutation tuples and divides by
    k!; ``"reduced"`` fixes the first permutation; ``"pairing"`` (k = 2 only) is
    the closed form sum of e_i ^ e_ibar; ``"auto"`` uses full enumeration when it
    is small and the reduced sum otherwise.
    """
    if d < 1 or k < 1:
        raise ValueError("need d >= 1 and k >= 1")
    if method == "auto":
        method = "full" if math.factorial(k) ** d <= _FULL_ENUMERATION_LIMIT else "reduced"
    if method == "full":
        raw = _sum_over_tuples(d, k, fix_first=False)
        kf = math.factorial(k)
        if any(c % kf for c in raw.values()):
            raise ArithmeticError("Cayley sum not divisible by k!")
        terms = {m: c // kf for m, c in raw.items()}
    elif method == "reduced":
        if d % 2 == 0:
            terms = {}
        else:
            terms = _sum_over_tuples(d, k, fix_first=True)
    elif method == "pairing":
        if k != 2:
            raise ValueError("pairing form exists only for k = 2")
        terms = _pairing_terms(d) if d % 2 else {}
    else:
        raise ValueError(f"unknown method {method!r}")
    return CayleyForm(d, k, Multivector(d, k, terms))


def cayley(d: int, k: int) -> Multivector:
    return build_cayley(d, k).body


def omega_power(d: int, k: int, n: int, omega: Multivector | None = None) -> Multivector:
    """omega^n by iterated wedge; zero once n exceeds k^(d-1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > k ** (d - 1):
        return Multivector.zero(d, k)
    w = omega if omega is not None else cayley(d, k)
    out = Multivector.scalar(d, k)
    for _ in range(n):
        out = wedge(w, out)
        if not out:
            break
    return out


def embed_cells(v: Multivector, ell: int,
                index_sets: Sequence[Sequence[int]] | None = None) -> Multivector:
    """Relabel a multivector on [k]^d into [ell]^d.

    Coordinate i in direction j goes to the i-th smallest element of
    ``index_sets[j]`` (default ``[k]`` in every direction, the corner subcube).
    """
    d, k = v.d, v.k
    if index_sets is None:
        index_sets = [list(range(1, k + 1))] * d
    maps = _check_index_sets(d, k, ell, index_sets)
    relabel = {}
    for c in all_cells(d, k):
        new = tuple(maps[j][c[j] - 1] for j in range(d))
        relabel[cell_rank(c, k)] = cell_rank(new, ell)
    out = {}
    for mask, coeff in v.terms.items():
        new_ranks = []
        m = mask
        while m:
            low = m & -m
            new_ranks.append(relabel[low.bit_length() - 1])
            m ^= low
        # the relabeling is order preserving per direction but not globally
        inv = sum(1 for a in range(len(new_ranks)) for b in range(a + 1, len(new_ranks))
                  if new_ranks[a] > new_ranks[b])
        new_mask = 0
        for r in new_ranks:
            new_mask |= 1 << r
        out[new_mask] = -coeff if inv % 2 else coeff
    return Multivector(d, ell, out)


def _check_index_sets(d, k, ell, index_sets):
    if len(index_sets) != d:
        raise ValueError(f"need {d} index sets")
    maps = []
    for I in index_sets:
        s = sorted(set(I))
        if len(s) != k or len(I) != k or s[0] < 1 or s[-1] > ell:
            raise ValueError(f"index set {I} is not a {k}-subset of [1, {ell}]")
        maps.append(s)
    return maps


def embed_omega(d: int, ell: int, index_sets: Sequence[Sequence[int]]) -> Multivector:
    """omega_I: the copy of omega_{d,k} on the subcube I_1 x ... x I_d of [ell]^d."""
    k = len(index_sets[0])
    return embed_cells(cayley(d, k), ell, index_sets)


def slice_vector(d: int, k: int, direction: int = 1, index: int = 1) -> Multivector:
    """Basis vector of a full slice, e.g. the wedge of all e_{1 i} for direction 1."""
    cells = [c for c in all_cells(d, k) if c[direction - 1] == index]
    return Multivector.basis(CubeSet.from_cells(d, k, cells))
