"""Kronecker sequences along rho_k and their shape verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from . import charkron, hwv
from .partitions import (PartitionError, PartitionTuple, as_partition_tuple, common_size,
                         complement_in_rectangle, format_partition_tuple, partitions)

BACKENDS = ("auto", "hwv", "characters", "both")
# "auto" only tries hwv on weight spaces this small; exact rank cost grows
# quickly with fill-in (a 7k-column space already takes minutes)
AUTO_HWV_BUDGET = 2_000


class BackendMismatch(AssertionError):
    pass


def rho(lam: Sequence[Sequence[int]], k: int, n: int = 1) -> PartitionTuple:
    """Prepend n parts equal to k to every entry (remove |n| of them if n < 0)."""
    lam = as_partition_tuple(lam)
    out = []
    for p in lam:
        if p and p[0] > k:
            raise PartitionError(f"{p} has a part larger than {k}")
        if n >= 0:
            out.append((k,) * n + p)
        else:
            if p[:-n] != (k,) * (-n):
                raise PartitionError(f"cannot remove {-n} parts equal to {k} from {p}")
            out.append(p[-n:])
    return tuple(out)


def sequence_range(lam: Sequence[Sequence[int]], d: int, k: int) -> tuple[int, int]:
    """``(-b, k^(d-1) - a)``: a is the longest length, b the fewest parts equal to k."""
    lam = as_partition_tuple(lam)
    a = max((len(p) for p in lam), default=0)
    b = min((sum(1 for x in p if x == k) for p in lam), default=0)
    return -b, k ** (d - 1) - a


def k_complementary(lam: Sequence[Sequence[int]], d: int, k: int) -> bool:
    if k % 2:
        raise ValueError("k-complementarity is defined for even k only")
    lam = as_partition_tuple(lam)
    m = common_size(lam)
    if any(p and p[0] > k for p in lam):
        raise PartitionError(f"parts must be at most {k}")
    if (2 * m) % k:
        return False
    top = k ** (d - 1)
    shift = top - 2 * m // k
    if shift < 0 or any(len(p) > top for p in lam):
        return False
    return all((k,) * shift + p == complement_in_rectangle(p, top, k) for p in lam)


@dataclass
class KroneckerSequence:
    base: PartitionTuple
    d: int
    k: int
    start: int
    stop: int
    values: list[int]
    backends: list[str] = field(default_factory=list)

    @property
    def indices(self) -> list[int]:
        return list(range(self.start, self.stop + 1))

    def to_json(self) -> dict:
        rep = shape_report(self.values)
        return {"tuple": format_partition_tuple(self.base), "k": self.k, "d": self.d,
                "range": [self.start, self.stop],
                "values": [str(v) for v in self.values],
                "backends": self.backends,
                "unimodal": rep.unimodal, "symmetric": rep.symmetric,
                "logconcave": rep.log_concave_at}


def auto_limit(budget: int | None, auto_budget: int | None) -> int | None:
    if budget is None or auto_budget is None:
        return auto_budget if budget is None else budget
    return min(budget, auto_budget)


def _coefficient(lam, d, k, backend, budget, jobs) -> tuple[int, str]:
    if backend in ("hwv", "both", "auto"):
        try:
            h = hwv.kronecker_hwv(lam, d, k, budget=budget)
        except hwv.BudgetExceeded:
            if backend != "auto":
                raise
        else:
            if backend != "both":
                return h, "hwv"
            c = charkron.kronecker_characters(lam, jobs=jobs)
            if c != h:
                raise BackendMismatch(f"{format_partition_tuple(lam)}: hwv {h} vs characters {c}")
            return h, "both"
    return charkron.kronecker_characters(lam, jobs=jobs), "characters"


def build_sequence(lam: Sequence[Sequence[int]], d: int, k: int, backend: str = "auto",
                   budget: int | None = hwv.DEFAULT_BUDGET, jobs: int = 1,
                   indices: Sequence[int] | None = None,
                   auto_budget: int | None = AUTO_HWV_BUDGET,
                   progress: Callable[[int, int], None] | None = None) -> KroneckerSequence:
    """The values g(rho_k^n lam) over the declared range (or over ``indices``)."""
    if backend not in BACKENDS:
        raise ValueError(f"backend must be one of {BACKENDS}")
    lam = hwv.check_label(lam, d, k)
    lo, hi = sequence_range(lam, d, k)
    idx = list(range(lo, hi + 1)) if indices is None else list(indices)
    if idx and idx != list(range(idx[0], idx[-1] + 1)):
        raise ValueError("indices must be consecutive")
    if backend == "auto":
        budget = auto_limit(budget, auto_budget)
    values, tags = [], []
    for n in idx:
        if not lo <= n <= hi:
            raise ValueError(f"index {n} outside [{lo}, {hi}]")
        v, tag = _coefficient(rho(lam, k, n), d, k, backend, budget, jobs)
        values.append(v)
        tags.append(tag)
        if progress:
            progress(n, v)
    start = idx[0] if idx else lo
    return KroneckerSequence(lam, d, k, start, start + len(values) - 1, values, tags)


@dataclass(frozen=True)
class ShapeReport:
    unimodal: bool
    symmetric: bool
    log_concave_at: list[int]  # positions i (0-based) with x_i^2 >= x_{i-1} x_{i+1}

    def to_json(self) -> dict:
        return {"unimodal": self.unimodal, "symmetric": self.symmetric,
                "log_concave_at": self.log_concave_at}


def is_unimodal(xs: Sequence[int]) -> bool:
    i, n = 0, len(xs)
    while i + 1 < n and xs[i] <= xs[i + 1]:
        i += 1
    while i + 1 < n and xs[i] >= xs[i + 1]:
        i += 1
    return i >= n - 1


def shape_report(seq: KroneckerSequence | Sequence[int]) -> ShapeReport:
    xs = list(seq.values if isinstance(seq, KroneckerSequence) else seq)
    if not xs:
        raise ValueError("empty sequence")
    lc = [i for i in range(1, len(xs) - 1) if xs[i] ** 2 >= xs[i - 1] * xs[i + 1]]
    return ShapeReport(is_unimodal(xs), xs == xs[::-1], lc)


def sweep(d: int, k: int, max_m: int, backend: str = "hwv",
          budget: int | None = hwv.DEFAULT_BUDGET) -> Iterator[tuple[PartitionTuple, ShapeReport]]:
    """Bounded sweep: sequences for all sorted tuples of partitions of m <= max_m with parts <= k."""
    for m in range(max_m + 1):
        parts = [p for p in partitions(m, max_part=k) if len(p) <= k ** (d - 1)]
        for lam in _sorted_tuples(parts, d):
            yield lam, shape_report(build_sequence(lam, d, k, backend, budget))


def _sorted_tuples(items, d, start=0):
    if d == 0:
        yield ()
        return
    for i in range(start, len(items)):
        for rest in _sorted_tuples(items, d - 1, i):
            yield (items[i],) + rest
