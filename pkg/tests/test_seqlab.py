import itertools

import pytest
from hypothesis import given, settings, strategies as st

from kronlef import charkron, seqlab
from kronlef.partitions import PartitionError, complement_in_rectangle, partitions


def test_rho_examples():
    assert seqlab.rho(((), (), ()), 2, 3) == ((2, 2, 2),) * 3
    assert seqlab.rho(((4, 2),), 4, 13) == (complement_in_rectangle((4, 2), 16, 4),)
    lam = ((2, 1), (1, 1, 1), (3,))
    assert seqlab.rho(seqlab.rho(lam, 3, 2), 3, -2) == lam
    with pytest.raises(PartitionError):
        seqlab.rho(lam, 3, -1)
    with pytest.raises(PartitionError):
        seqlab.rho(((5,),), 4, 1)


def test_range():
    assert seqlab.sequence_range(((), (), ()), 3, 4) == (0, 16)
    assert seqlab.sequence_range(((4, 2), (2, 2, 2), (3, 2, 1)), 3, 4) == (0, 13)
    assert seqlab.sequence_range(((2, 2, 1), (2, 1, 1, 1), (2, 2, 1)), 3, 2) == (-1, 0)


def test_k_complementary_examples():
    assert seqlab.k_complementary(((4, 2), (2, 2, 2), (3, 2, 1)), 3, 4)
    assert not seqlab.k_complementary(((3, 2), (2, 2, 1), (4, 1)), 3, 4)
    for m in range(5):
        for lam in itertools.product([p for p in partitions(m, max_part=2) if len(p) <= 4],
                                     repeat=3):
            assert seqlab.k_complementary(lam, 3, 2)
    with pytest.raises(ValueError):
        seqlab.k_complementary(((1,), (1,), (1,)), 3, 3)


def test_shape_report_examples():
    assert not seqlab.is_unimodal([1, 0, 1])
    assert seqlab.is_unimodal([1, 2, 2, 1]) and seqlab.is_unimodal([3])
    rep = seqlab.shape_report([1, 8, 54, 281, 1027, 2531, 4179, 4584, 3331, 1613, 521, 114,
                               18, 2])
    assert rep.unimodal and not rep.symmetric
    rep = seqlab.shape_report([1, 2, 4, 3, 1])
    assert rep.log_concave_at == [1, 2, 3]
    with pytest.raises(ValueError):
        seqlab.shape_report([])


def test_short_sequences():
    s = seqlab.build_sequence(((3, 2), (2, 2, 1), (3, 1, 1)), 3, 3, backend="characters")
    assert s.values == [1, 4, 7, 7, 5, 3, 1] and s.indices == list(range(7))
    s = seqlab.build_sequence(((), (), ()), 3, 4, indices=range(6))
    assert s.values == [1, 1, 1, 2, 5, 6] and s.backends[:2] == ["hwv"] * 2


def test_both_backends_and_tags():
    s = seqlab.build_sequence(((1,), (1,), (1,)), 3, 2, backend="both")
    assert s.values == [1, 1, 1, 1] and set(s.backends) == {"both"}
    s = seqlab.build_sequence(((2, 2),) * 3, 3, 2, backend="auto", budget=3)
    assert "characters" in s.backends


def test_index_errors():
    with pytest.raises(ValueError):
        seqlab.build_sequence(((), (), ()), 3, 2, indices=[0, 2])
    with pytest.raises(ValueError):
        seqlab.build_sequence(((), (), ()), 3, 2, indices=[5])
    with pytest.raises(ValueError):
        seqlab.build_sequence(((), (), ()), 3, 2, backend="magic")


def test_values_vanish_beyond_range():
    for lam in [((2, 1), (2, 1), (1, 1, 1)), ((3, 1), (2, 2), (2, 1, 1))]:
        lo, hi = seqlab.sequence_range(lam, 3, 3)
        assert charkron.kronecker_characters(seqlab.rho(lam, 3, hi + 1)) == 0


def test_example_tail_ends():
    s = seqlab.build_sequence(((1,), (1,), (1,)), 3, 4, backend="characters",
                              indices=range(0, 4))
    assert s.values == [1, 1, 2, 6]


def test_k2_sequences_symmetric_unimodal():
    for m in range(7):
        ps = [p for p in partitions(m, max_part=2) if len(p) <= 4]
        for lam in seqlab._sorted_tuples(ps, 3):
            rep = seqlab.shape_report(seqlab.build_sequence(lam, 3, 2))
            assert rep.unimodal and rep.symmetric, lam


def test_sweep_covers_sorted_tuples():
    out = list(seqlab.sweep(3, 2, 2))
    assert len(out) == 1 + 1 + 4
    assert all(rep.unimodal for _, rep in out)


def test_sequence_json():
    s = seqlab.build_sequence(((1,), (1,), (1,)), 3, 2)
    js = s.to_json()
    assert js["values"] == ["1", "1", "1", "1"] and js["range"] == [0, 3]
    assert js["symmetric"] and js["unimodal"]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 8), st.data())
def test_k_complementary_gives_symmetry(m, data):
    ps = [p for p in partitions(m, max_part=4) if len(p) <= 4]
    lam = tuple(data.draw(st.sampled_from(ps)) for _ in range(2))
    if seqlab.k_complementary(lam, 2, 4):
        assert seqlab.shape_report(seqlab.build_sequence(lam, 2, 4)).symmetric



def test_auto_skips_large_weight_spaces():
    # the n = 3 space for the empty tuple, k = 3, has 7392 basis vectors
    seq = seqlab.build_sequence(((), (), ()), 3, 3, indices=range(4))
    assert seq.backends == ["hwv", "hwv", "hwv", "characters"]
    forced = seqlab.build_sequence(((), (), ()), 3, 3, indices=range(3), backend="auto", auto_budget=None)
    assert forced.backends == ["hwv"] * 3
    assert seqlab.auto_limit(None, 5) == 5 and seqlab.auto_limit(7, 5) == 5
