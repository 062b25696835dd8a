"""Sparse exact multivectors in the exterior algebra of (C^k)^(tensor d).

Basis vectors ``e_X`` are indexed by subsets X of [k]^d read in lexicographic
order; a multivector maps subset bitmasks to nonzero exact coefficients
(``int`` by default, ``Fraction`` where rational coordinates are needed).

Sign conventions:

* ``e_A ^ e_B = (-1)^inv(A, B) e_{A u B}`` where inv counts pairs a in A, b in B
  with a > b (the inversions of the concatenation A then B).
* the interior product is the adjoint of left multiplication:
  ``<e*_A -| w, x> = <w, e_A ^ x>``.  Passing ``signed=False`` drops the sign
  and reproduces the unsigned contraction some hand computations use.
* ``star(e_X) = e*_X -| vol`` with ``vol = e_{[k]^d}``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from .cube import CubeSet, mask_ranks


class DimensionMismatch(ValueError):
    pass


def wedge_sign(a: int, b: int) -> int:
    """Sign of ``e_A ^ e_B`` relative to ``e_{A u B}``; 0 if A and B meet."""
    if a & b:
        return 0
    parity = 0
    while b:
        low = b & -b
        parity += (a >> low.bit_length()).bit_count()
        b ^= low
    return -1 if parity & 1 else 1


def contraction_sign(a: int, b: int) -> int:
    """Sign of ``e*_A -| e_B`` relative to ``e_{B \\ A}``; 0 unless A is in B."""
    if a & b != a:
        return 0
    return wedge_sign(a, b ^ a)


class Multivector:
    """Immutable sparse linear combination of basis vectors ``e_X``."""

    __slots__ = ("d", "k", "terms")

    def __init__(self, d: int, k: int, terms: Mapping[int, Rational] | None = None):
        self.d = d
        self.k = k
        clean = {}
        if terms:
            top = 1 << k**d
            for mask, c in terms.items():
                if c:
                    if mask < 0 or mask >= top:
                        raise ValueError(f"basis index {mask} outside [{k}]^{d}")
                    clean[mask] = c
        self.terms: dict[int, Rational] = clean

    # constructors
    @classmethod
    def zero(cls, d: int, k: int) -> "Multivector":
        return cls(d, k)

    @classmethod
    def scalar(cls, d: int, k: int, c: Rational = 1) -> "Multivector":
        return cls(d, k, {0: c})

    @classmethod
    def basis(cls, X: CubeSet, c: Rational = 1) -> "Multivector":
        return cls(X.d, X.k, {X.mask: c})

    @classmethod
    def volume(cls, d: int, k: int) -> "Multivector":
        return cls(d, k, {(1 << k**d) - 1: 1})

    # inspection
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Multivector):
            return (self.d, self.k) == (other.d, other.k) and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.d, self.k, frozenset(self.terms.items())))

    def grades(self) -> set[int]:
        return {m.bit_count() for m in self.terms}

    @property
    def grade(self) -> int | None:
        """Common grade of all terms; ``None`` if mixed, 0 for the zero vector."""
        g = self.grades()
        if not g:
            return 0
        return g.pop() if len(g) == 1 else None

    def homogeneous_part(self, n: int) -> "Multivector":
        return Multivector(self.d, self.k,
                           {m: c for m, c in self.terms.items() if m.bit_count() == n})

    def coefficient(self, X: CubeSet | int) -> Rational:
        mask = X.mask if isinstance(X, CubeSet) else X
        return self.terms.get(mask, 0)

    def support(self) -> list[CubeSet]:
        return [CubeSet(self.d, self.k, m) for m in sorted(self.terms, key=mask_ranks)]

    def items(self) -> Iterable[tuple[CubeSet, Rational]]:
        for m in sorted(self.terms, key=mask_ranks):
            yield CubeSet(self.d, self.k, m), self.terms[m]

    # linear structure
    def _check(self, other: "Multivector"):
        if (self.d, self.k) != (other.d, other.k):
            raise DimensionMismatch(
                f"([{self.k}]^{self.d}) vs ([{other.k}]^{other.d})")

    def __add__(self, other: "Multivector") -> "Multivector":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Multivector(self.d, self.k, out)

    def __neg__(self) -> "Multivector":
        return Multivector(self.d, self.k, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Multivector") -> "Multivector":
        return self + (-other)

    def __mul__(self, s: Rational) -> "Multivector":
        return Multivector(self.d, self.k, {m: c * s for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other: "Multivector") -> "Multivector":
        return wedge(self, other)

    def __repr__(self) -> str:
        shown = list(self.items())[:6]
        body = " + ".join(f"{c}*e{{{X.to_text() if X.k <= 9 else X.ranks}}}" for X, c in shown)
        more = "" if len(self.terms) <= 6 else f" + ... ({len(self.terms)} terms)"
        return f"Multivector(d={self.d}, k={self.k}: {body or '0'}{more})"

    # serialization
    def to_json(self) -> list[dict]:
        out = []
        for X, c in self.items():
            out.append({"cells": X.to_json(), "coefficient": str(c)})
        return out

    @classmethod
    def from_json(cls, d: int, k: int, data: list[dict] | str) -> "Multivector":
        if isinstance(data, str):
            data = json.loads(data)
        terms = {}
        for rec in data:
            X = CubeSet.from_json(d, k, rec["cells"])
            c = Fraction(rec["coefficient"])
            terms[X.mask] = int(c) if c.denominator == 1 else c
        return cls(d, k, terms)


def wedge(u: Multivector, v: Multivector) -> Multivector:
    """Exterior product, bilinear over the term maps."""
    u._check(v)
    out: dict[int, Rational] = {}
    for a, ca in u.terms.items():
        for b, cb in v.terms.items():
            if a & b:
                continue
            s = wedge_sign(a, b)
            key = a | b
            out[key] = out.get(key, 0) + (ca * cb if s > 0 else -ca * cb)
    return Multivector(u.d, u.k, out)


def wedge_all(factors: Iterable[Multivector], d: int, k: int) -> Multivector:
    out = Multivector.scalar(d, k)
    for f in factors:
        out = wedge(out, f)
    return out


def interior(u_dual: Multivector, v: Multivector, signed: bool = True) -> Multivector:
    """Left interior product ``u* -| v`` (adjoint of left wedge by ``u``)."""
    u_dual._check(v)
    out: dict[int, Rational] = {}
    for a, ca in u_dual.terms.items():
        for b, cb in v.terms.items():
            if a & b != a:
                continue
            s = wedge_sign(a, b ^ a) if signed else 1
            key = b ^ a
            out[key] = out.get(key, 0) + (ca * cb if s > 0 else -ca * cb)
    return Multivector(v.d, v.k, out)


def pairing(u: Multivector, v: Multivector) -> Rational:
    """Dual pairing ``<u, v>``: the basis ``e_X`` is orthonormal."""
    u._check(v)
    if len(u.terms) > len(v.terms):
        u, v = v, u
    return sum(c * v.terms.get(m, 0) for m, c in u.terms.items())


def hodge_star(v: Multivector) -> Multivector:
    """``star(v) = v* -| vol``; requires a homogeneous input."""
    if v.grade is None:
        raise ValueError("hodge_star needs a homogeneous multivector")
    full = (1 << v.k**v.d) - 1
    out = {}
    for a, c in v.terms.items():
        rest = full ^ a
        out[rest] = c if wedge_sign(a, rest) > 0 else -c
    return Multivector(v.d, v.k, out)


def basis_of_grade(d: int, k: int, n: int) -> list[int]:
    """All subset masks of size ``n`` in canonical (lexicographic) order."""
    from itertools import combinations
    return [sum(1 << r for r in combo) for combo in combinations(range(k**d), n)]
