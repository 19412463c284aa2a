import itertools

import pytest

from src.models.intervals import (
    ElemInterval,
    axis_for_cell,
    axis_from_word,
    cell_index,
    classify,
    contains,
    expected_total,
    least_prime_level,
    log_volume,
    partition_1d,
    prime_intervals,
    refine,
)
from src.models.numeration import BaseSpec, compare, fib, g_value, Order
from src.utils.errors import DimensionError, UnsupportedBaseError

Q1_BASES = [BaseSpec(p, 1) for p in range(1, 5)]


def test_phi_level_one(phi):
    cells = partition_1d(phi, 1)
    assert [(c.itype, c.anchor) for c in cells] == [(0, 0), (1, 0)]
    assert cells[0].left_value() == 0.0
    assert cells[0].right_value() == pytest.approx(1 / phi.gamma)
    assert cells[1].right is None


def test_level_zero_is_the_unit_interval(phi):
    (cell,) = partition_1d(phi, 0)
    assert cell.left_value() == 0.0 and cell.right_value() == 1.0
    assert cell.prime and cell.log_length == 0


def test_phi_level_five_type_counts(phi):
    cells = partition_1d(phi, 5)
    counts = [sum(1 for c in cells if c.itype == i) for i in range(3)]
    assert len(cells) == 13
    assert counts == [5, 5, 3]


@pytest.mark.parametrize("m", range(1, 15))
def test_phi_type_count_law(phi, m):
    cells = partition_1d(phi, m)
    counts = [sum(1 for c in cells if c.itype == i) for i in range(3)]
    assert counts == [fib(m - 2), fib(m - 2), fib(m - 3)]


@pytest.mark.parametrize("base", Q1_BASES, ids=str)
def test_partition_tiles_unit_interval(base):
    top = 14 if base.is_phi else 6
    for m in range(top + 1):
        cells = partition_1d(base, m)
        assert len(cells) == g_value(base, m)
        assert sum(c.length() for c in cells) == pytest.approx(1.0, abs=1e-12)
        for left, right in zip(cells, cells[1:]):
            assert left.right == right.left
            assert left.right_value() == pytest.approx(left.left_value() + left.length(), abs=1e-12)


def test_q_above_one_is_unsupported():
    with pytest.raises(UnsupportedBaseError):
        partition_1d(BaseSpec(2, 2), 3)


def test_classify_by_trailing_digits(phi):
    assert classify(phi, axis_from_word(phi, (0, 0, 0))) == (0, True)
    assert classify(phi, axis_from_word(phi, (0, 0, 1))) == (1, True)
    assert classify(phi, axis_from_word(phi, (0, 1, 0))) == (2, False)


def test_refine_examples(phi):
    zero, one = partition_1d(phi, 1)
    children = refine(phi, zero)
    assert [(c.itype, c.level) for c in children] == [(0, 2), (1, 2)]
    assert children[0].right_value() == pytest.approx(phi.gamma**-2)
    (same,) = refine(phi, one)
    assert same.itype == 2
    assert same.left == one.left and same.right == one.right


@pytest.mark.parametrize("m", range(0, 13))
def test_refinement_reproduces_next_level(phi, m):
    flat = [child for cell in partition_1d(phi, m) for child in refine(phi, cell)]
    assert flat == partition_1d(phi, m + 1)


def test_refine_is_phi_only(silver):
    with pytest.raises(UnsupportedBaseError):
        refine(silver, partition_1d(silver, 1)[0])


@pytest.mark.parametrize("base", Q1_BASES, ids=str)
def test_prime_rule_matches_least_level(base):
    for m in range(1, 8 if base.is_phi else 5):
        for cell in partition_1d(base, m):
            least = least_prime_level(base, cell)
            assert cell.prime == (least == m)


def test_type_two_equals_type_one_one_level_up(phi):
    for cell in partition_1d(phi, 6):
        if cell.itype == 2:
            up = axis_from_word(phi, cell.left.digits[:-1], 5)
            assert up.itype == 1
            assert up.left == cell.left and up.right == cell.right


def test_prime_intervals_level_one_square(phi):
    intervals = prime_intervals(phi, (1, 1))
    assert len(intervals) == 4
    assert sorted(log_volume(i) for i in intervals) == [2, 3, 3, 4]


def test_prime_intervals_trivial(phi):
    (whole,) = prime_intervals(phi, (0,))
    assert whole.volume() == 1.0


def test_prime_count_at_level_three(phi):
    primes = prime_intervals(phi, (3,))
    assert len(primes) == 2 * fib(1) == 4
    assert {i.axes[0].itype for i in primes} == {0, 1}


@pytest.mark.parametrize("kvec", [(1, 1), (2, 3), (4, 0), (3, 2, 1)])
def test_volume_matches_log_volume(phi, kvec):
    for interval in prime_intervals(phi, kvec):
        assert interval.volume() == pytest.approx(phi.gamma ** -log_volume(interval), rel=1e-12)


def test_log_volume_examples(phi):
    i00, i10 = partition_1d(phi, 1)
    assert log_volume(ElemInterval((i00, i00))) == 2
    assert log_volume(ElemInterval((i10, i10))) == 4
    for m in range(1, 8):
        type_one = next(c for c in partition_1d(phi, m) if c.itype == 1)
        assert type_one.log_length == m + 1


def test_contains_is_half_open(phi, word):
    i0, i1 = partition_1d(phi, 1)
    square = ElemInterval((i0, i0))
    assert contains(square, (word(""), word("")))
    assert not contains(ElemInterval((i0,)), (word("10"),))
    second = partition_1d(phi, 2)[1]
    assert second.itype == 1
    assert not contains(ElemInterval((second,)), (word("0010"),))
    with pytest.raises(DimensionError):
        contains(square, (word(""),))


def test_cell_index_agrees_with_contains(phi):
    words = [c.left for c in partition_1d(phi, 7)]
    for k in range(0, 6):
        cells = partition_1d(phi, k)
        for w in words:
            l = cell_index(phi, w, k)
            assert contains(ElemInterval((cells[l],)), (w,))
            assert compare(phi, cells[l].left, w) != Order.GREATER


@pytest.mark.parametrize("base", Q1_BASES, ids=str)
def test_required_counts_add_up(base):
    floor = -2 if base.is_phi else -1
    top = 10 if base.is_phi else 6
    for m in range(top + 1):
        for s in (1, 2, 3):
            for kvec in itertools.product(range(m + 2), repeat=s):
                rho = sum(kvec) + sum(1 for k in kvec if k)
                if m - rho < floor:
                    continue
                assert expected_total(base, m, kvec) == g_value(base, m)


def test_axis_for_cell_roundtrip(silver):
    for l, cell in enumerate(partition_1d(silver, 4)):
        assert axis_for_cell(silver, 4, l) == cell
        assert cell.index == l
