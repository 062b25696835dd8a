"""Kronecker coefficients from symmetric-group characters.

    g(lam) = (1/m!) * sum over cycle types mu of |C_mu| * prod_i chi^{lam_i}(mu)

Two evaluation routes are provided.  ``"classes"`` evaluates each character
with the Murnaghan-Nakayama rule and sums over all p(m) classes; it is the
reference and feeds the character cache.  ``"engine"`` walks the cycle types
depth-first, largest part first, carrying for each partition lam_i the signed
vector of intermediate shapes reached by stripping rim hooks.  Shared prefixes
are computed once and a branch is cut as soon as any vector vanishes; the tail
of 1-cycles is closed off with skew standard tableaux counts.  Entries are
replaced by their conjugate when that has fewer rows (chi^{lam'} = sgn * chi^lam),
so shapes stay small.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .cache import Caches, default_caches
from .partitions import (Partition, PartitionError, PartitionTuple, as_partition,
                         as_partition_tuple, canonical_key, class_size, common_size,
                         conjugate, partitions)

CLASS_SUM_MAX_M = 12


@dataclass(frozen=True)
class ConjugacyClass:
    cycle_type: Partition
    size: int


def conjugacy_classes(m: int) -> list[ConjugacyClass]:
    if m < 0:
        raise ValueError("m must be nonnegative")
    return [ConjugacyClass(mu, class_size(mu)) for mu in partitions(m)]


# ---------------------------------------------------------------- characters

def _beta(lam: Partition, r: int) -> tuple[int, ...]:
    lam = lam + (0,) * (r - len(lam))
    return tuple(lam[i] + r - 1 - i for i in range(r))


def _from_beta(beta: Sequence[int]) -> Partition:
    r = len(beta)
    b = sorted(beta, reverse=True)
    return tuple(x for x in (b[i] - (r - 1 - i) for i in range(r)) if x)


def remove_rim_hooks(lam: Partition, h: int) -> list[tuple[Partition, int]]:
    """All ``(lam minus a rim hook of length h, (-1)^height)``."""
    beta = _beta(lam, len(lam))
    bs = set(beta)
    out = []
    for b in beta:
        nb = b - h
        if nb < 0 or nb in bs:
            continue
        height = sum(1 for c in beta if nb < c < b)
        out.append((_from_beta([nb if c == b else c for c in beta]),
                    -1 if height % 2 else 1))
    return out


@lru_cache(maxsize=1 << 18)
def _mn(lam: Partition, mu: Partition) -> int:
    if not mu:
        return 1
    h, rest = mu[0], mu[1:]
    return sum(s * _mn(nl, rest) for nl, s in remove_rim_hooks(lam, h))


def mn_character(lam: Sequence[int], mu: Sequence[int],
                 caches: Caches | None = None) -> int:
    """chi^lam(mu) by the Murnaghan-Nakayama rule (memoized, optionally disk cached)."""
    lam = as_partition(lam)
    mu = tuple(sorted(as_partition(sorted(mu, reverse=True)), reverse=True))
    if sum(lam) != sum(mu):
        raise PartitionError(f"|{lam}| != |{mu}|")
    if caches is None:
        return _mn(lam, mu)
    key = (sum(lam), lam, mu)
    v = caches.characters.get(key)
    if v is None:
        v = _mn(lam, mu)
        caches.characters.put(key, v)
    return v


def character_row(lam: Sequence[int], caches: Caches | None = None) -> dict[Partition, int]:
    lam = as_partition(lam)
    return {mu: mn_character(lam, mu, caches) for mu in partitions(sum(lam))}


def kronecker_class_sum(lam: PartitionTuple, caches: Caches | None = None) -> int:
    """Reference route: explicit sum over all conjugacy classes."""
    m = common_size(lam)
    total = 0
    for mu in partitions(m):
        term = class_size(mu)
        for p in lam:
            term *= mn_character(p, mu, caches)
            if not term:
                break
        total += term
    q, r = divmod(total, math.factorial(m))
    if r:
        raise ArithmeticError(f"class sum for {lam} not divisible by {m}!")
    return q


# -------------------------------------------------------------------- engine

def _subshapes(tau: Partition) -> list[Partition]:
    r = len(tau)
    out: list[tuple[int, ...]] = []

    def rec(i, prev, cur):
        if i == r:
            out.append(tuple(cur))
            return
        for x in range(min(prev, tau[i]) + 1):
            cur.append(x)
            rec(i + 1, x, cur)
            cur.pop()

    rec(0, tau[0], [])
    return out


class _Target:
    """Shapes nu inside tau with rim-hook addition tables and f(tau/nu)."""

    def __init__(self, tau: Partition, m: int):
        r = len(tau)
        shapes = _subshapes(tau)
        index = {s: i for i, s in enumerate(shapes)}
        self.start = index[(0,) * r]
        self.trans: dict[int, list[list[tuple[int, int]]]] = {}
        betas = [[s[i] + r - 1 - i for i in range(r)] for s in shapes]
        for h in range(2, m + 1):
            table = []
            for beta in betas:
                bs = set(beta)
                moves = []
                for i in range(r):
                    nb = beta[i] + h
                    if nb in bs:
                        continue
                    new = sorted([b for j, b in enumerate(beta) if j != i] + [nb],
                                 reverse=True)
                    ns = tuple(new[j] - (r - 1 - j) for j in range(r))
                    if all(ns[j] <= tau[j] for j in range(r)):
                        between = sum(1 for b in beta if beta[i] < b < nb)
                        moves.append((index[ns], -1 if between % 2 else 1))
                table.append(moves)
            self.trans[h] = table
        f = [0] * len(shapes)
        for i in sorted(range(len(shapes)), key=lambda i: -sum(shapes[i])):
            s = shapes[i]
            if s == tau:
                f[i] = 1
                continue
            tot = 0
            for j in range(r):
                if s[j] < tau[j] and (j == 0 or s[j - 1] > s[j]):
                    ns = list(s)
                    ns[j] += 1
                    tot += f[index[tuple(ns)]]
            f[i] = tot
        self.f = f


def _apply(vec: dict[int, int], table) -> dict[int, int]:
    out: dict[int, int] = {}
    for s, c in vec.items():
        for t, sg in table[s]:
            out[t] = out.get(t, 0) + (c if sg > 0 else -c)
    return {t: c for t, c in out.items() if c}


class CharacterEngine:
    """m! * g(lam), split into independent branches by the largest cycle length."""

    def __init__(self, lam: PartitionTuple):
        self.lam = lam
        self.m = m = common_size(lam)
        counts: dict[Partition, int] = {}
        self.sign_exp = 0
        for p in lam:
            cp = conjugate(p)
            if len(cp) < len(p):
                p = cp
                self.sign_exp += 1
            counts[p] = counts.get(p, 0) + 1
        self.targets = [(_Target(t, m), e) for t, e in counts.items()] if m else []
        self.nodes = 0

    def branches(self) -> list[int]:
        """Largest cycle lengths; 1 stands for the identity class alone."""
        return list(range(self.m, 0, -1)) if self.m else []

    def _leaf(self, vecs, weight, R, nparts) -> int:
        prod = weight // math.factorial(R)
        for (tg, e), v in zip(self.targets, vecs):
            x = 0
            f = tg.f
            for s, c in v.items():
                x += c * f[s]
            if not x:
                return 0
            prod *= x**e
        if self.sign_exp % 2 and (self.m - nparts - R) % 2:
            prod = -prod
        return prod

    def _dfs(self, j, maxpart, vecs, weight, nparts) -> int:
        self.nodes += 1
        m = self.m
        R = m - j
        total = self._leaf(vecs, weight, R, nparts)
        for r in range(min(maxpart, R), 1, -1):
            total += self._part(r, j, vecs, weight, nparts)
        return total

    def _part(self, r, j, vecs, weight, nparts) -> int:
        # cycle types continuing with exactly c >= 1 cycles of length r
        total = 0
        cur = vecs
        for c in range(1, (self.m - j) // r + 1):
            cur = [_apply(v, tg.trans[r]) for (tg, _), v in zip(self.targets, cur)]
            if any(not v for v in cur):
                break
            total += self._dfs(j + r * c, r - 1, cur,
                               weight // (r**c * math.factorial(c)), nparts + c)
        return total

    def branch(self, r: int) -> int:
        """Contribution (times m!) of the cycle types whose largest part is r."""
        start = [{tg.start: 1} for tg, _ in self.targets]
        if r == 1:
            return self._leaf(start, math.factorial(self.m), self.m, 0)
        return self._part(r, 0, start, math.factorial(self.m), 0)


_WORKER_ENGINES: dict[PartitionTuple, CharacterEngine] = {}


def _branch_worker(args) -> tuple[int, int]:
    lam, r = args
    eng = _WORKER_ENGINES.get(lam)
    if eng is None:
        eng = _WORKER_ENGINES[lam] = CharacterEngine(lam)
    return r, eng.branch(r)


Progress = Callable[[int, int, int], None]


def coefficient_key(lam: PartitionTuple) -> str:
    return f"d={len(lam)}:{canonical_key(lam)}"


def kronecker_characters(lam: Sequence[Sequence[int]], method: str = "auto",
                         jobs: int = 1, caches: Caches | None = None,
                         use_cache: bool = True, reuse_coefficient: bool = True,
                         progress: Progress | None = None) -> int:
    """Kronecker coefficient g(lam) of a d-tuple of partitions of a common m.

    ``method``: ``"classes"`` (explicit class sum), ``"engine"`` (branch and
    prune over cycle types), ``"auto"`` (class sum for m <= 12).  With a cache,
    finished coefficients are stored, and the engine checkpoints each
    largest-part branch so an interrupted run resumes where it stopped.
    ``reuse_coefficient=False`` recomputes from (possibly cached) characters.
    ``progress(done, total, part)`` is called after each branch.
    """
    lam = as_partition_tuple(lam)
    if not lam:
        raise PartitionError("need at least one partition")
    m = common_size(lam)
    if method not in ("auto", "classes", "engine"):
        raise ValueError(f"unknown method {method!r}")
    if use_cache and caches is None:
        caches = default_caches()
    if not use_cache:
        caches = None
    key = coefficient_key(lam)
    if caches is not None and reuse_coefficient:
        hit = caches.coefficients.get(key)
        if hit is not None:
            return hit
    if m == 0:
        value = 1
    elif method == "classes" or (method == "auto" and m <= CLASS_SUM_MAX_M):
        value = kronecker_class_sum(lam, caches)
    else:
        value = _run_engine(lam, jobs, caches, key, progress)
    if value < 0:
        raise ArithmeticError(f"negative Kronecker coefficient for {lam}: internal error")
    if caches is not None:
        caches.coefficients.put(key, value)
    return value


def _run_engine(lam, jobs, caches, key, progress) -> int:
    m = common_size(lam)
    parts = list(range(m, 0, -1))
    done: dict[int, int] = {}
    if caches is not None:
        for r in parts:
            rec = caches.checkpoints.get((key, r))
            if rec is not None:
                done[r] = rec[1]
    todo = [r for r in parts if r not in done]

    def record(r, v):
        done[r] = v
        if caches is not None:
            caches.checkpoints.put((key, r), (r, v))
        if progress is not None:
            progress(len(done), len(parts), r)

    if jobs is None or jobs <= 0:
        jobs = os.cpu_count() or 1
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            # largest parts prune fastest; submit the expensive small ones first
            for r, v in ex.map(_branch_worker, [(lam, r) for r in sorted(todo)]):
                record(r, v)
    else:
        eng = CharacterEngine(lam)
        for r in todo:
            record(r, eng.branch(r))
    total = sum(done.values())
    q, rem = divmod(total, math.factorial(m))
    if rem:
        raise ArithmeticError(f"character sum for {lam} not divisible by {m}!")
    return q


def timed_kronecker(lam, **kw) -> tuple[int, float]:
    t = time.perf_counter()
    v = kronecker_characters(lam, **kw)
    return v, time.perf_counter() - t
