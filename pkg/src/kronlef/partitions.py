"""Integer partitions and d-tuples of partitions.

Partitions are plain tuples of weakly decreasing positive integers; the empty
partition is ``()``.  Tuples of partitions (Kronecker labels) are tuples of
such tuples.
"""

from __future__ import annotations

import math
from collections import Counter
from typing import Iterator, Sequence

Partition = tuple[int, ...]
PartitionTuple = tuple[Partition, ...]


class PartitionError(ValueError):
    pass


def as_partition(parts: Sequence[int]) -> Partition:
    """Validate and normalize ``parts``; trailing zeros are dropped."""
    p = tuple(int(x) for x in parts)
    while p and p[-1] == 0:
        p = p[:-1]
    if any(x <= 0 for x in p):
        raise PartitionError(f"partition parts must be positive: {parts!r}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise PartitionError(f"partition must be weakly decreasing: {parts!r}")
    return p


def as_partition_tuple(entries: Sequence[Sequence[int]]) -> PartitionTuple:
    return tuple(as_partition(e) for e in entries)


def size(p: Partition) -> int:
    return sum(p)


def conjugate(p: Partition) -> Partition:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x > i) for i in range(p[0]))


def partitions(m: int, max_part: int | None = None,
               max_length: int | None = None) -> Iterator[Partition]:
    """Partitions of ``m`` in reverse lexicographic order.

    >>> list(partitions(4))
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if m < 0:
        return
    if max_part is None:
        max_part = m
    if max_length is None:
        max_length = m

    def rec(rest, cap, length):
        if rest == 0:
            yield ()
            return
        if length == 0:
            return
        for first in range(min(cap, rest), 0, -1):
            if first * length < rest:
                break
            for tail in rec(rest - first, first, length - 1):
                yield (first,) + tail

    yield from rec(m, max_part, max_length)


def count_partitions(m: int) -> int:
    """Number of partitions of ``m`` (Euler's pentagonal recurrence)."""
    p = [1] + [0] * m
    for n in range(1, m + 1):
        total, j = 0, 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > n:
                break
            sgn = 1 if j % 2 else -1
            total += sgn * p[n - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= n:
                total += sgn * p[n - g2]
            j += 1
        p[n] = total
    return p[m]


def class_size(mu: Partition) -> int:
    """Size of the conjugacy class of cycle type ``mu`` in S_|mu|."""
    return math.factorial(sum(mu)) // centralizer_order(mu)


def centralizer_order(mu: Partition) -> int:
    z = 1
    for part, mult in Counter(mu).items():
        z *= part**mult * math.factorial(mult)
    return z


def class_sign(mu: Partition) -> int:
    return -1 if (sum(mu) - len(mu)) % 2 else 1


def pad(p: Partition, length: int) -> tuple[int, ...]:
    if len(p) > length:
        raise PartitionError(f"partition {p} has more than {length} parts")
    return p + (0,) * (length - len(p))


def complement_in_rectangle(p: Partition, rows: int, width: int) -> Partition:
    """``rows x width - p`` = (width - p_rows, ..., width - p_1)."""
    if p and p[0] > width:
        raise PartitionError(f"{p} does not fit in a {rows}x{width} rectangle")
    q = pad(p, rows)
    return as_partition(tuple(width - x for x in reversed(q)))


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if not text:
        return ()
    try:
        return as_partition([int(x) for x in text.split(",")])
    except ValueError as exc:
        raise PartitionError(f"cannot parse partition {text!r}") from exc


def parse_partition_tuple(text: str) -> PartitionTuple:
    """Parse ``"4,2;2,2,2;3,2,1"``; empty entries are empty partitions."""
    return tuple(parse_partition(chunk) for chunk in text.split(";"))


def format_partition_tuple(lam: PartitionTuple) -> str:
    return ";".join(",".join(str(x) for x in p) for p in lam)


def canonical_key(lam: PartitionTuple) -> str:
    """Order-independent text key; Kronecker coefficients are symmetric."""
    return format_partition_tuple(tuple(sorted(lam, reverse=True)))


def common_size(lam: PartitionTuple) -> int:
    sizes = {sum(p) for p in lam}
    if len(sizes) > 1:
        raise PartitionError(f"partitions of unequal sizes: {lam}")
    return sizes.pop() if sizes else 0
