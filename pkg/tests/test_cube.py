import itertools

import pytest
from hypothesis import given, settings, strategies as st

from kronlef.cube import (CubeError, CubeSet, all_cells, cell_coords, cell_rank, direct_sum,
                          enumerate_magic_sets, is_magic, magic_counts, magnitude, marginals)


def brute_magic(d, k, n):
    out = []
    for combo in itertools.combinations(range(k**d), n * k):
        X = CubeSet(d, k, sum(1 << r for r in combo))
        if all(row == (n,) * k for row in marginals(X)):
            out.append(X)
    return out


def test_rank_is_lexicographic():
    cells = all_cells(3, 3)
    assert cells == sorted(cells)
    assert [cell_rank(c, 3) for c in cells] == list(range(27))
    assert cell_coords(cell_rank((2, 1, 3), 3), 3, 3) == (2, 1, 3)
    with pytest.raises(CubeError):
        cell_rank((0, 1, 1), 2)


def test_marginals_examples():
    assert marginals(CubeSet(3, 2, 0)) == ((0, 0),) * 3
    assert marginals(CubeSet.from_text(3, 2, "111,222")) == ((1, 1),) * 3
    assert marginals(CubeSet.full(3, 2)) == ((4, 4),) * 3


def test_text_round_trip():
    X = CubeSet.from_text(3, 2, "{(1,1,1),(2,2,2)}")
    assert X.to_text() == "111,222"
    assert CubeSet.from_json(3, 2, X.to_json()) == X
    with pytest.raises(CubeError):
        CubeSet.from_text(3, 2, "111,111")


def test_magic_counts_small():
    assert [len(enumerate_magic_sets(3, 2, n)) for n in range(5)] == [1, 4, 8, 4, 1]
    assert enumerate_magic_sets(3, 2, 0) == [CubeSet(3, 2, 0)]
    for X in enumerate_magic_sets(3, 2, 1):
        a, b = X.cells
        assert tuple(3 - x for x in a) == b


@pytest.mark.parametrize("d,k,n", [(3, 2, 2), (2, 3, 2), (3, 3, 1), (2, 4, 2)])
def test_magic_matches_brute_force(d, k, n):
    got = enumerate_magic_sets(d, k, n)
    assert got == brute_magic(d, k, n)
    assert got == sorted(got)


def test_magic_range_error():
    with pytest.raises(CubeError):
        enumerate_magic_sets(3, 2, 5)


def test_magic_complement_symmetry():
    for d, k in [(3, 2), (2, 3), (3, 3)]:
        top = k ** (d - 1)
        counts = magic_counts(d, k)
        assert counts == counts[::-1]
        for n in range(min(top, 2) + 1):
            comp = {X.complement() for X in enumerate_magic_sets(d, k, n)}
            assert comp == set(enumerate_magic_sets(d, k, top - n))


def test_direct_sum_of_cubes():
    T = direct_sum(CubeSet.full(3, 2), CubeSet.full(3, 2))
    assert len(T) == 16 and magnitude(T) == 4
    assert marginals(T) == ((4, 4, 4, 4),) * 3
    assert all(set(c) <= {1, 2} or set(c) <= {3, 4} for c in T.cells)
    assert direct_sum(CubeSet(3, 1, 0), CubeSet(3, 2, 0)) == CubeSet(3, 3, 0)


def test_direct_sum_errors():
    with pytest.raises(CubeError):
        direct_sum(CubeSet.full(3, 2), CubeSet(3, 2, 0))
    with pytest.raises(CubeError):
        direct_sum(CubeSet.full(2, 2), CubeSet.full(3, 2))


@st.composite
def cube_sets(draw, d=3, k=3):
    return CubeSet(d, k, draw(st.integers(0, (1 << k**d) - 1)))


@given(cube_sets())
def test_marginal_rows_sum_to_size(X):
    for row in marginals(X):
        assert sum(row) == len(X)
        assert min(row) >= 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2), st.data())
def test_direct_sum_is_magic(i, j, data):
    n = data.draw(st.integers(0, 1))
    A = enumerate_magic_sets(3, i + 1, n)
    B = enumerate_magic_sets(3, j + 1, n)
    T1, T2 = data.draw(st.sampled_from(A)), data.draw(st.sampled_from(B))
    T = direct_sum(T1, T2)
    assert len(T) == len(T1) + len(T2)
    assert is_magic(T) and (magnitude(T) == n or not T)
