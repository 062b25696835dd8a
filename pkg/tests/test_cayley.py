import pytest

from kronlef.cayley import (build_cayley, cayley, embed_cells, embed_omega, omega_power,
                            perm_sign, slice_vector)
from kronlef.cube import (CubeSet, all_cells, enumerate_magic_sets, is_magic, magnitude,
                          marginals)
from kronlef.exterior import Multivector, wedge
from kronlef.hwv import is_highest_weight
from kronlef.latin import alon_tarsi, at_number
from kronlef.lefschetz import Sl2Triple


def test_perm_sign():
    assert perm_sign((0, 1, 2)) == 1
    assert perm_sign((1, 0, 2)) == -1
    assert perm_sign((1, 2, 0)) == 1


def test_omega_3_2_is_the_pairing_form():
    # sum over cells i with an even number of 2s of e_i ^ e_ibar, each with coefficient +1
    w = cayley(3, 2)
    paired = Multivector.zero(3, 2)
    for c in all_cells(3, 2):
        if sum(x - 1 for x in c) % 2 == 0:
            cbar = tuple(3 - x for x in c)
            paired = paired + wedge(Multivector.basis(CubeSet.from_cells(3, 2, [c])),
                                    Multivector.basis(CubeSet.from_cells(3, 2, [cbar])))
    assert w == paired and len(w) == 4


def test_fast_path_agrees_with_definition():
    for d in (1, 2, 3, 4):
        assert build_cayley(d, 2, "pairing").body == build_cayley(d, 2, "full").body
    for d, k in [(3, 3), (1, 4), (3, 2)]:
        assert build_cayley(d, k, "reduced").body == build_cayley(d, k, "full").body


@pytest.mark.parametrize("d,k,terms", [(3, 2, 4), (3, 3, 36), (1, 3, 1)])
def test_term_counts_and_weights(d, k, terms):
    w = cayley(d, k)
    assert len(w) == terms
    assert all(marginals(X) == ((1,) * k,) * d for X, _ in w.items())


def test_even_d_form_vanishes():
    assert cayley(2, 2).is_zero() and cayley(2, 3).is_zero()


def test_omega_3_3_squares_to_zero():
    w = cayley(3, 3)
    assert w and wedge(w, w).is_zero()


@pytest.mark.parametrize("d,k", [(3, 2), (3, 3), (2, 4)])
def test_omega_is_highest_weight(d, k):
    assert is_highest_weight(cayley(d, k))


def test_top_power_is_alon_tarsi_volume():
    top = omega_power(3, 2, 4)
    vol = CubeSet.full(3, 2)
    assert list(top.terms) == [vol.mask]
    assert abs(top.coefficient(vol)) == alon_tarsi(3, 2).at == 24
    assert omega_power(3, 2, 5).is_zero()


@pytest.mark.parametrize("n", range(5))
def test_power_coefficients_are_alon_tarsi_numbers(n):
    p = omega_power(3, 2, n)
    magic = enumerate_magic_sets(3, 2, n)
    assert {X.mask for X, _ in p.items()} <= {T.mask for T in magic}
    for T in magic:
        assert abs(p.coefficient(T)) == abs(at_number(T).at)


def test_powers_are_magic_weight_vectors():
    for n in range(3):
        for X, _ in omega_power(3, 3, n).items():
            assert is_magic(X) and magnitude(X) == n


def test_power_equals_iterated_raising_operator():
    tri = Sl2Triple(3)
    v = omega_power(3, 2, 0)
    for n in range(5):
        assert v == omega_power(3, 2, n)
        v = tri.X(v)


def test_embed_identity_and_marginals():
    w = cayley(3, 2)
    assert embed_omega(3, 2, ([1, 2], [1, 2], [1, 2])) == w
    wi = embed_omega(3, 4, ([1, 3], [2, 4], [1, 4]))
    for X, _ in wi.items():
        assert marginals(X) == ((1, 0, 1, 0), (0, 1, 0, 1), (1, 0, 0, 1))
    assert len(wi) == len(w)
    with pytest.raises(ValueError):
        embed_omega(3, 3, ([1, 4], [1, 2], [1, 2]))


def test_embedding_preserves_wedge():
    a = cayley(3, 2)
    b = slice_vector(3, 2)
    assert embed_cells(wedge(a, b), 3) == wedge(embed_cells(a, 3), embed_cells(b, 3))


def test_slice_vector_is_highest_weight_and_killed_by_omega():
    v = slice_vector(3, 4)
    assert len(next(iter(v.support()))) == 16
    assert is_highest_weight(v)
    assert wedge(cayley(3, 4), v).is_zero()


def test_direct_sum_witness_value():
    from kronlef.cube import direct_sum
    T = direct_sum(CubeSet.full(3, 2), CubeSet.full(3, 2))
    assert at_number(T).at == alon_tarsi(3, 2).at ** 2
