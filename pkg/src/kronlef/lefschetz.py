"""Lefschetz maps v -> omega ^ v on highest weight spaces, and the sl(2) triple for k = 2."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm
from typing import Sequence

from . import linalg
from .cayley import cayley, embed_cells, embed_omega, slice_vector
from .charkron import kronecker_characters
from .cube import CubeSet, enumerate_magic_sets
from .exterior import Multivector, basis_of_grade, interior, wedge
from .hwv import (DEFAULT_BUDGET, BudgetExceeded, HwvBasis, check_label, hwv_basis,
                  is_highest_weight)
from .partitions import PartitionTuple, format_partition_tuple
from .seqlab import k_complementary, rho, sequence_range

Matrix = list[dict[int, Fraction]]


class MembershipError(ArithmeticError):
    """omega ^ v left the target highest weight space; a sign convention is broken."""


@dataclass
class LefschetzMapMatrix:
    source: HwvBasis
    target: HwvBasis
    matrix: Matrix  # rows indexed by target basis, columns by source basis
    rank: int

    @property
    def shape(self) -> tuple[int, int]:
        return self.target.dim, self.source.dim

    @property
    def injective(self) -> bool:
        return self.rank == self.source.dim

    @property
    def surjective(self) -> bool:
        return self.rank == self.target.dim


def map_in_coordinates(source: HwvBasis, target: HwvBasis, omega: Multivector) -> Matrix:
    """Matrix of v -> omega ^ v, with membership of every image verified."""
    rows: Matrix = [{} for _ in range(target.dim)]
    for j, v in enumerate(source.multivectors()):
        img = wedge(omega, v)
        coords = target.coordinates(img)
        if coords is None:
            raise MembershipError(f"image of source vector {j} is not in the target span")
        for i, c in enumerate(coords):
            if c:
                rows[i][j] = c
    return rows


def _rank(rows: Matrix, ncols: int) -> int:
    return linalg.exact_rank(_integral(rows), ncols)


def _integral(rows: Matrix) -> list[dict[int, int]]:
    out = []
    for r in rows:
        den = lcm(*(Fraction(v).denominator for v in r.values()))
        out.append({j: int(v * den) for j, v in r.items()})
    return out


def lefschetz_matrix(lam: Sequence[Sequence[int]], d: int, k: int,
                     budget: int | None = DEFAULT_BUDGET,
                     omega: Multivector | None = None) -> LefschetzMapMatrix:
    """L : HWV_{lam'} -> HWV_{(rho_k lam)'}."""
    lam = check_label(lam, d, k)
    src = hwv_basis(lam, d, k, budget)
    tgt = hwv_basis(rho(lam, k, 1), d, k, budget)
    return _map(src, tgt, omega if omega is not None else cayley(d, k))


def _map(src: HwvBasis, tgt: HwvBasis, omega: Multivector) -> LefschetzMapMatrix:
    rows = map_in_coordinates(src, tgt, omega)
    return LefschetzMapMatrix(src, tgt, rows, _rank(rows, src.dim))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """a @ b for sparse row matrices."""
    out = []
    for row in a:
        acc: dict[int, Fraction] = {}
        for j, x in row.items():
            for c, y in b[j].items():
                acc[c] = acc.get(c, 0) + x * y
        out.append({c: v for c, v in acc.items() if v})
    return out


# ----------------------------------------------------------------- verdicts

@dataclass
class LpVerdict:
    lam: PartitionTuple
    d: int
    k: int
    indices: list[int]
    dims: list[int]
    ranks: list[int]  # ranks[i]: map from indices[i] to indices[i] + 1
    pivot: int | None
    holds: bool
    kind: str = "lp"
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"kind": self.kind, "lambda": format_partition_tuple(self.lam),
                "k": self.k, "d": self.d, "indices": self.indices,
                "dims": [str(x) for x in self.dims], "ranks": [str(x) for x in self.ranks],
                "pivot": self.pivot, "holds": self.holds, **self.details}


def lp_pivot(dims: Sequence[int], ranks: Sequence[int], start: int) -> tuple[int, bool]:
    """Smallest n0 after which every map is surjective; holds iff all maps before are injective."""
    n_maps = len(ranks)
    i0 = n_maps
    while i0 > 0 and ranks[i0 - 1] == dims[i0]:
        i0 -= 1
    holds = all(ranks[i] == dims[i] for i in range(i0))
    return start + i0, holds


def _chain(lam, d, k, budget):
    lo, hi = sequence_range(lam, d, k)
    omega = cayley(d, k)
    bases = {n: hwv_basis(rho(lam, k, n), d, k, budget) for n in range(lo, hi + 1)}
    maps = {n: _map(bases[n], bases[n + 1], omega) for n in range(lo, hi)}
    return lo, hi, bases, maps


def check_lp(lam: Sequence[Sequence[int]], d: int, k: int,
             budget: int | None = DEFAULT_BUDGET) -> LpVerdict:
    lam = check_label(lam, d, k)
    lo, hi, bases, maps = _chain(lam, d, k, budget)
    dims = [bases[n].dim for n in range(lo, hi + 1)]
    ranks = [maps[n].rank for n in range(lo, hi)]
    pivot, holds = lp_pivot(dims, ranks, lo)
    return LpVerdict(lam, d, k, list(range(lo, hi + 1)), dims, ranks, pivot, holds)


def check_hlp(lam: Sequence[Sequence[int]], d: int, k: int,
              budget: int | None = DEFAULT_BUDGET) -> LpVerdict:
    """For every pair n <= n* with n + n* = k^(d-1) - 2m/k: equal dims and L^(n*-n) bijective."""
    lam = check_label(lam, d, k)
    if not k_complementary(lam, d, k):
        raise ValueError(f"{format_partition_tuple(lam)} is not {k}-complementary")
    lo, hi, bases, maps = _chain(lam, d, k, budget)
    m = sum(lam[0]) if lam else 0
    total = k ** (d - 1) - 2 * m // k
    dims = [bases[n].dim for n in range(lo, hi + 1)]
    ranks = [maps[n].rank for n in range(lo, hi)]
    pairs = []
    holds = True
    for n in range(lo, hi + 1):
        ns = total - n
        if ns < n or ns > hi:
            continue
        mat: Matrix | None = None
        for s in range(n, ns):
            mat = maps[s].matrix if mat is None else mat_mul(maps[s].matrix, mat)
        dim_n, dim_ns = bases[n].dim, bases[ns].dim
        r = dim_n if mat is None else _rank(mat, dim_n)
        ok = dim_n == dim_ns and r == dim_n
        holds &= ok
        pairs.append({"n": n, "n_star": ns, "power": ns - n, "dims": [dim_n, dim_ns],
                      "rank": r, "isomorphism": ok})
    pivot, _ = lp_pivot(dims, ranks, lo)
    return LpVerdict(lam, d, k, list(range(lo, hi + 1)), dims, ranks, pivot, holds,
                     kind="hlp", details={"pairs": pairs})


def iterated_map_direct(lam, d, k, power, budget=DEFAULT_BUDGET) -> Matrix:
    """Matrix of v -> omega^power ^ v computed in one step (cross-check for chained maps)."""
    from .cayley import omega_power
    lam = check_label(lam, d, k)
    src = hwv_basis(lam, d, k, budget)
    tgt = hwv_basis(rho(lam, k, power), d, k, budget)
    return map_in_coordinates(src, tgt, omega_power(d, k, power))


@dataclass
class FullLpVerdict:
    d: int
    k: int
    holds: bool
    method: str  # "ranks" or "witness"
    degrees: list[dict] = field(default_factory=list)
    witnesses: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"kind": "lp-full", "d": self.d, "k": self.k, "holds": self.holds,
                "method": self.method, "degrees": self.degrees, "witnesses": self.witnesses}


FULL_RANK_MAX_DIM = 5000


def full_map_rank(d: int, k: int, n: int, omega: Multivector | None = None) -> tuple[int, int, int]:
    """(rank, dim source, dim target) of omega ^ - : grade n -> grade n + k on the whole algebra."""
    N = k**d
    omega = omega if omega is not None else cayley(d, k)
    rows_by_target: dict[int, dict[int, int]] = {}
    for col, mask in enumerate(basis_of_grade(d, k, n)):
        img = wedge(omega, Multivector(d, k, {mask: 1}))
        for t, c in img.terms.items():
            rows_by_target.setdefault(t, {})[col] = c
    src, tgt = comb(N, n), comb(N, n + k)
    return linalg.rank(list(rows_by_target.values()), ncols=src), src, tgt


def check_lp_full(d: int, k: int, max_dim: int = FULL_RANK_MAX_DIM) -> FullLpVerdict:
    """Full-rank property of omega ^ - between all grades n and n + k.

    Exact ranks when the largest grade has dimension at most ``max_dim``;
    otherwise an explicit nonzero vector below the middle with zero image is
    exhibited (omega itself for odd k, the slice vector for k > 2).
    """
    N = k**d
    if comb(N, N // 2) <= max_dim:
        omega = cayley(d, k)
        degrees = []
        holds = True
        for n in range(0, N - k + 1):
            r, s, t = full_map_rank(d, k, n, omega)
            ok = r == min(s, t)
            holds &= ok
            degrees.append({"n": n, "rank": r, "source": s, "target": t, "full": ok})
        return FullLpVerdict(d, k, holds, "ranks", degrees)
    found = lp_full_witnesses(d, k)
    if not found:
        raise BudgetExceeded(f"no witness for ({d}, {k}) and ambient too large for exact ranks")
    return FullLpVerdict(d, k, False, "witness", witnesses=found)


def lp_full_witnesses(d: int, k: int) -> list[dict]:
    """Nonzero vectors v of grade n < (k^d - k)/2 with omega ^ v = 0, verified exactly.

    Candidates: omega itself (odd k) and the slice vector (k > 2).
    """
    N = k**d
    omega = cayley(d, k)
    candidates = []
    if k % 2 and omega:
        candidates.append(("omega", omega))
    if k > 2:
        candidates.append(("slice", slice_vector(d, k)))
    found = []
    for name, v in candidates:
        n = v.grade
        if v and 2 * n < N - k and wedge(omega, v).is_zero():
            found.append({"vector": name, "grade": n, "terms": len(v), "image_zero": True,
                          "highest_weight": is_highest_weight(v)})
    return found


# ---------------------------------------------------------------------- sl2

@dataclass
class Sl2Triple:
    """X = omega ^ -, Y = omega* -| -, H = (grade - k^(d-1)) on each grade."""

    d: int
    k: int = 2
    signed: bool = True
    omega: Multivector = field(init=False, repr=False)

    def __post_init__(self):
        self.omega = cayley(self.d, self.k)

    def X(self, v: Multivector) -> Multivector:
        return wedge(self.omega, v)

    def Y(self, v: Multivector) -> Multivector:
        return interior(self.omega, v, signed=self.signed)

    def H(self, v: Multivector) -> Multivector:
        mid = self.k ** (self.d - 1)
        return Multivector(v.d, v.k, {m: c * (m.bit_count() - mid) for m, c in v.terms.items()})

    def bracket_xy(self, v):
        return self.X(self.Y(v)) - self.Y(self.X(v))

    def bracket_hx(self, v):
        return self.H(self.X(v)) - self.X(self.H(v))

    def bracket_hy(self, v):
        return self.H(self.Y(v)) - self.Y(self.H(v))

    def failures(self, v: Multivector) -> list[str]:
        out = []
        if self.bracket_xy(v) != self.H(v):
            out.append("[X,Y]=H")
        if self.bracket_hx(v) != 2 * self.X(v):
            out.append("[H,X]=2X")
        if self.bracket_hy(v) != -2 * self.Y(v):
            out.append("[H,Y]=-2Y")
        return out


@dataclass
class Sl2Report:
    d: int
    checked: int
    failures: list[dict]
    exhaustive: bool

    @property
    def holds(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"d": self.d, "holds": self.holds, "checked": self.checked,
                "exhaustive": self.exhaustive, "failures": self.failures[:20]}


def sl2_check(d: int, samples: int = 500, seed: int = 0, signed: bool = True) -> Sl2Report:
    """All three relations on every basis vector (2^d <= 8) or on a sample plus magic-set vectors."""
    tri = Sl2Triple(d, 2, signed)
    N = 2**d
    exhaustive = N <= 8
    if exhaustive:
        masks = range(1 << N)
    else:
        rng = random.Random(seed)
        chosen = {rng.getrandbits(N) for _ in range(samples)}
        for n in (0, 1, 2):
            chosen.update(X.mask for X in enumerate_magic_sets(d, 2, n))
        masks = sorted(chosen)
    failures = []
    count = 0
    for mask in masks:
        count += 1
        bad = tri.failures(Multivector(d, 2, {mask: 1}))
        if bad:
            failures.append({"cells": CubeSet(d, 2, mask).to_json(), "relations": bad})
    return Sl2Report(d, count, failures, exhaustive)


def commutator_control(signed: bool = True, d: int = 3, k: int = 4,
                       cells: Sequence[Sequence[int]] = ((1, 1, 1), (2, 2, 2))) -> Multivector:
    """[X, Y](e_T) with the Cayley form omega_{d,k}; not a multiple of e_T once k > 2."""
    tri = Sl2Triple(d, k, signed)
    return tri.bracket_xy(Multivector.basis(CubeSet.from_cells(d, k, cells)))


# --------------------------------------------------------- primitive classes

def _y_rows(d: int, n: int, signed: bool = True) -> tuple[list[int], list[dict[int, int]]]:
    omega = cayley(d, 2)
    src = basis_of_grade(d, 2, n)
    rows: dict[int, dict[int, int]] = {}
    for col, mask in enumerate(src):
        img = interior(omega, Multivector(d, 2, {mask: 1}), signed=signed)
        for t, c in img.terms.items():
            rows.setdefault(t, {})[col] = c
    return src, list(rows.values())


def primitive_basis(d: int, n: int) -> list[Multivector]:
    """Basis of P^n = ker(Y) in grade n (k = 2)."""
    if not 0 <= n <= 2**d:
        raise ValueError(f"grade {n} outside [0, {2**d}]")
    src, rows = _y_rows(d, n)
    vecs, _ = linalg.nullspace(rows, len(src))
    return [Multivector(d, 2, {src[i]: c for i, c in v.items()}) for v in vecs]


def primitive_dim(d: int, n: int) -> int:
    if not 0 <= n <= 2**d:
        return 0
    src, rows = _y_rows(d, n)
    return len(src) - linalg.rank(rows, ncols=len(src))


def lefschetz_decomposition_dims(d: int, n: int) -> list[tuple[int, int]]:
    """``[(i, dim P^{n-2i})]`` for the summands X^i P^{n-2i} that survive in grade n."""
    mid = 2 ** (d - 1)
    out = []
    for i in range(n // 2 + 1):
        j = n - 2 * i
        if j <= mid and i <= mid - j:
            out.append((i, primitive_dim(d, j)))
    return out


# ------------------------------------------------------- stable injectivity

@dataclass
class StableInjectivity:
    lam: PartitionTuple
    d: int
    k: int
    ell: int
    dim: int
    rank_k: int
    rank_ell: int
    embedded_highest_weight: bool
    g_lam: int
    g_rho: int

    @property
    def source_injective(self) -> bool:
        return self.rank_k == self.dim

    @property
    def embedded_injective(self) -> bool:
        return self.rank_ell == self.dim

    @property
    def holds(self) -> bool:
        return (not self.source_injective) or (self.embedded_injective and self.g_lam <= self.g_rho)

    def to_json(self) -> dict:
        return {"lambda": format_partition_tuple(self.lam), "d": self.d, "k": self.k,
                "ell": self.ell, "dim": self.dim, "rank_k": self.rank_k,
                "rank_ell": self.rank_ell, "source_injective": self.source_injective,
                "embedded_injective": self.embedded_injective,
                "embedded_highest_weight": self.embedded_highest_weight,
                "g": str(self.g_lam), "g_rho_ell": str(self.g_rho), "holds": self.holds}


def _vectors_rank(vectors: Sequence[Multivector]) -> int:
    cols: dict[int, int] = {}
    rows = []
    for v in vectors:
        row = {}
        den = lcm(*(Fraction(c).denominator for c in v.terms.values()))
        for mask, c in v.terms.items():
            row[cols.setdefault(mask, len(cols))] = int(c * den)
        rows.append(row)
    return linalg.exact_rank(rows, len(cols))


def stable_injectivity_check(lam: Sequence[Sequence[int]], k: int, ell: int, d: int = 3,
                             budget: int | None = DEFAULT_BUDGET) -> StableInjectivity:
    """Rank of L_k on HWV_{lam'}(V_k) versus L_ell on the same vectors inside V_ell."""
    if ell <= k:
        raise ValueError("need ell > k")
    lam = check_label(lam, d, k)
    src = hwv_basis(lam, d, k, budget)
    vecs = src.multivectors()
    om_k, om_l = cayley(d, k), cayley(d, ell)
    rank_k = _vectors_rank([wedge(om_k, v) for v in vecs])
    embedded = [embed_cells(v, ell) for v in vecs]
    rank_l = _vectors_rank([wedge(om_l, v) for v in embedded])
    hw = all(is_highest_weight(v) for v in embedded)
    g_lam = kronecker_characters(lam)
    g_rho = kronecker_characters(rho(lam, ell, 1))
    return StableInjectivity(lam, d, k, ell, src.dim, rank_k, rank_l, hw, g_lam, g_rho)


def decomposition_terms(v: Multivector, ell: int) -> list[tuple[tuple, Multivector]]:
    """The summands omega_I ^ omega_Ibar ^ v (I_1 = [k]) of omega_{d,ell} ^ v, v in V_k."""
    d, k = v.d, v.k
    ve = embed_cells(v, ell)
    full = list(range(1, ell + 1))
    first = list(range(1, k + 1))
    out = []
    for rest in itertools.product(itertools.combinations(full, k), repeat=d - 1):
        I = (tuple(first),) + rest
        Ibar = tuple(tuple(x for x in full if x not in s) for s in I)
        term = wedge(embed_omega(d, ell, I), ve)
        if ell - k:
            term = wedge(embed_omega(d, ell, Ibar), term)
        out.append((I, term))
    return out


def supports_pairwise_disjoint(terms: Sequence[tuple[tuple, Multivector]]) -> bool:
    seen: set[int] = set()
    for _, t in terms:
        s = set(t.terms)
        if s & seen:
            return False
        seen |= s
    return True

