import itertools

import pytest
from hypothesis import given, settings, strategies as st

from kronlef.cayley import perm_sign
from kronlef.cube import CubeSet, direct_sum, enumerate_magic_sets
from kronlef.latin import (BudgetExceeded, NotMagic, SignedCount, alon_tarsi, at_number,
                           enumerate_latin, sign)


def brute_latin(T):
    """Every map T -> [n] that is a bijection on each nonempty slice."""
    n = len(T) // T.k if T.mask else 0
    cells = T.cells
    out = []
    for vals in itertools.product(range(1, n + 1), repeat=len(cells)):
        ok = True
        for j in range(T.d):
            for x in range(1, T.k + 1):
                got = sorted(v for c, v in zip(cells, vals) if c[j] == x)
                if got != list(range(1, n + 1)):
                    ok = False
        if ok:
            out.append(vals)
    return out


def test_trivial_types():
    empty = CubeSet(3, 2, 0)
    assert [C.values for C in enumerate_latin(empty)] == [()]
    pair = CubeSet.from_text(3, 2, "111,222")
    hyper = list(enumerate_latin(pair))
    assert [C.values for C in hyper] == [(1, 1)]
    assert sign(hyper[0]) == 1
    assert at_number(pair) == SignedCount(1, 0)


def test_full_2_cube_all_positive():
    cubes = list(enumerate_latin(CubeSet.full(3, 2)))
    assert len(cubes) == 24
    assert all(sign(C) == 1 for C in cubes)
    at = alon_tarsi(3, 2)
    assert (at.positive, at.negative, at.at) == (24, 0, 24)


def test_latin_squares():
    # d = 2 gives Latin squares; AT_2(k) is the even-minus-odd count
    assert alon_tarsi(2, 2).at == 2
    assert alon_tarsi(2, 3) == SignedCount(6, 6)
    sq4 = alon_tarsi(2, 4)
    assert sq4.positive + sq4.negative == 576 and sq4.at == 576


def test_odd_k_vanishes_from_magnitude_two():
    # swapping two values flips d*k slice signs; with one value there is nothing to swap
    assert all(at_number(T).at == 0 for T in enumerate_magic_sets(3, 3, 2))
    assert all(at_number(T).at == 1 for T in enumerate_magic_sets(3, 3, 1))
    assert alon_tarsi(2, 3).at == 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_enumeration_matches_brute_force(n):
    for T in enumerate_magic_sets(3, 2, n):
        got = sorted(C.values for C in enumerate_latin(T))
        assert got == sorted(brute_latin(T))


def test_incremental_sign_matches_definition():
    for T in enumerate_magic_sets(2, 4, 2)[:30] + enumerate_magic_sets(3, 3, 1):
        cs = list(enumerate_latin(T))
        pos = sum(1 for C in cs if sign(C) > 0)
        assert at_number(T) == SignedCount(pos, len(cs) - pos)


def test_slice_order_irrelevant_for_sign():
    T = CubeSet.full(2, 3)
    for C in enumerate_latin(T):
        vm = C.value_map()
        signs = []
        for order in (range(2), reversed(range(2))):
            s = 1
            for j in order:
                for x in (3, 1, 2):
                    seq = [vm[c] - 1 for c in T.cells if c[j] == x]
                    s *= perm_sign(seq)
            signs.append(s)
        assert signs[0] == signs[1] == sign(C)


def test_errors():
    with pytest.raises(NotMagic):
        at_number(CubeSet.from_text(3, 2, "111"))
    with pytest.raises(BudgetExceeded):
        at_number(CubeSet.full(3, 4))


def test_direct_sum_of_cubes_squares():
    T = direct_sum(CubeSet.full(3, 2), CubeSet.full(3, 2))
    assert at_number(T).at == 24**2


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(1, 2), (2, 2), (2, 1), (1, 3), (3, 1)]), st.integers(0, 1), st.data())
def test_multiplicative_under_direct_sum(ks, n, data):
    k1, k2 = ks
    T1 = data.draw(st.sampled_from(enumerate_magic_sets(3, k1, n)))
    T2 = data.draw(st.sampled_from(enumerate_magic_sets(3, k2, n)))
    assert at_number(direct_sum(T1, T2)).at == at_number(T1).at * at_number(T2).at
