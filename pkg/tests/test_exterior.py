import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kronlef.cayley import cayley, omega_power
from kronlef.cube import CubeSet
from kronlef.exterior import (DimensionMismatch, Multivector, hodge_star, interior, pairing,
                              wedge, wedge_sign)


def e(text, d=3, k=2):
    return Multivector.basis(CubeSet.from_text(d, k, text))


def naive_sign(a, b):
    """Sign of the permutation sorting ranks(a) followed by ranks(b)."""
    seq = [r for r in range(64) if a >> r & 1] + [r for r in range(64) if b >> r & 1]
    inv = sum(1 for i, j in itertools.combinations(range(len(seq)), 2) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


def test_wedge_examples():
    assert wedge(e("111"), e("111")).is_zero()
    assert wedge(e("111"), e("222")) == e("111,222")
    assert wedge(e("222"), e("111")) == -e("111,222")


def test_wedge_sign_matches_inversion_count():
    rng = random.Random(1)
    for _ in range(300):
        a, b = rng.getrandbits(12), rng.getrandbits(12)
        b &= ~a
        assert wedge_sign(a, b) == naive_sign(a, b)


def test_interior_examples():
    assert interior(e("111"), e("111")) == Multivector.scalar(3, 2)
    assert interior(e("111"), e("222")).is_zero()
    w = cayley(3, 2)
    assert interior(w, w) == Multivector.scalar(3, 2, 4)


def test_unsigned_contraction_differs_only_in_sign():
    u, v = e("122"), e("111,122,212")
    assert interior(u, v, signed=False) == e("111,212")
    assert interior(u, v) == -e("111,212")


def test_hodge_examples():
    assert hodge_star(Multivector.scalar(3, 2)) == Multivector.volume(3, 2)
    assert hodge_star(Multivector.volume(3, 2)) == Multivector.scalar(3, 2)
    with pytest.raises(ValueError):
        hodge_star(e("111") + e("111,222"))


@pytest.mark.parametrize("d,k", [(3, 2), (2, 2), (1, 5), (2, 3)])
def test_star_star_on_every_basis_vector(d, k):
    N = k**d
    for mask in range(1 << N):
        v = Multivector(d, k, {mask: 1})
        n = mask.bit_count()
        assert hodge_star(hodge_star(v)) == (-1) ** (n * (N - n)) * v


def test_omega_squared_by_wedge_matches_power():
    w = cayley(3, 2)
    assert wedge(w, w) == omega_power(3, 2, 2)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        wedge(e("111"), e("11", d=2))


def test_json_round_trip():
    v = e("111,222") * Fraction(3, 2) - e("112")
    assert Multivector.from_json(3, 2, v.to_json()) == v


masks = st.integers(0, (1 << 8) - 1)


def mv(draw_masks, coeffs):
    return Multivector(3, 2, dict(zip(draw_masks, coeffs)))


@st.composite
def homogeneous(draw, n=None):
    n = draw(st.integers(0, 4)) if n is None else n
    pool = [m for m in range(256) if m.bit_count() == n]
    ms = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=4, unique=True))
    cs = draw(st.lists(st.integers(-3, 3), min_size=len(ms), max_size=len(ms)))
    return mv(ms, cs)


@settings(max_examples=60, deadline=None)
@given(homogeneous(), homogeneous(), homogeneous())
def test_wedge_associative(u, v, w):
    assert wedge(wedge(u, v), w) == wedge(u, wedge(v, w))


@settings(max_examples=60, deadline=None)
@given(homogeneous(), homogeneous())
def test_graded_anticommutative(u, v):
    p, q = u.grade, v.grade
    assert wedge(u, v) == (-1) ** (p * q) * wedge(v, u)


@settings(max_examples=200, deadline=None)
@given(masks, masks, masks)
def test_interior_is_adjoint_of_wedge(a, b, c):
    u, w, x = (Multivector(3, 2, {m: 1}) for m in (a, b, c))
    assert pairing(interior(u, w), x) == pairing(w, wedge(u, x))
