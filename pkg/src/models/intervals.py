"""
Elementary Intervals for Irrational Base Nets

The level-m partition of [0,1) in base gamma (q = 1) has G_m cells
[n_l / gamma^m, n_(l+1) / gamma^m) with n_l running through Gamma^R_m.
A cell is read from the trailing digits of its numerator:

    last digit d0 < p   -> length gamma^-m
    last digit d0 = p   -> length gamma^-m-1
    second-to-last = p  -> the cell already occurs one level up (not prime)
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

from .numeration import (
    FRACTIONAL,
    INTEGER,
    SIDE_R,
    DigitWord,
    Order,
    compare,
    enumerate_words,
    g_counts,
    g_value,
    index_of,
)
from ..utils.errors import DimensionError, UnsupportedBaseError


def _require_q1(base):
    if base is None or base.q != 1:
        raise UnsupportedBaseError(f"Elementary intervals are developed for q=1 only, got base {base}")


@dataclass(frozen=True)
class AxisInterval:
    """
    One cell I_i(a; m) of a level-m partition.

    `index` is the position l of the cell, `anchor` the index of its numerator
    with the trailing block zeroed. In base phi index = anchor + itype.
    `right` is None for the last cell, whose right end is 1.
    """

    level: int
    index: int
    anchor: int
    itype: int
    left: DigitWord
    right: Optional[DigitWord]

    @property
    def base(self):
        return self.left.base

    @property
    def last_digit(self):
        return self.left.digits[-1] if self.level >= 1 else 0

    @property
    def second_last_digit(self):
        return self.left.digits[-2] if self.level >= 2 else 0

    @property
    def prime(self):
        return self.second_last_digit != self.base.p

    @property
    def extra(self):
        """1 when the cell is the short one (last digit p)."""
        return int(self.level >= 1 and self.last_digit == self.base.p)

    @property
    def log_length(self):
        return self.level + self.extra

    def length(self):
        return self.base.q ** self.extra * self.base.gamma ** (-self.log_length)

    def left_value(self):
        return self.left.value()

    def right_value(self):
        return 1.0 if self.right is None else self.right.value()


@dataclass(frozen=True)
class ElemInterval:
    """A product of axis intervals; its volume is gamma^-|I|."""

    axes: Tuple[AxisInterval, ...]

    @property
    def dimension(self):
        return len(self.axes)

    @property
    def levels(self):
        return tuple(axis.level for axis in self.axes)

    @property
    def logvol(self):
        return sum(axis.log_length for axis in self.axes)

    @property
    def prime(self):
        return all(axis.prime for axis in self.axes)

    def volume(self):
        vol = 1.0
        for axis in self.axes:
            vol *= axis.length()
        return vol

    def describe(self):
        parts = [f"I_{a.itype}({a.anchor};{a.level})" for a in self.axes]
        return " x ".join(parts)


@dataclass(frozen=True)
class LevelTable:
    """Per-cell facts of one partition level, indexed by cell position."""

    words: Tuple[Tuple[int, ...], ...]
    prime: Tuple[bool, ...]
    extra: Tuple[int, ...]
    itype: Tuple[int, ...]


@lru_cache(maxsize=None)
def level_table(base, k):
    _require_q1(base)
    p = base.p
    words, prime, extra, itype = [], [], [], []
    for word in enumerate_words(base, k, SIDE_R):
        ds = word.digits
        d0 = ds[-1] if k >= 1 else 0
        d1 = ds[-2] if k >= 2 else 0
        words.append(ds)
        prime.append(d1 != p)
        extra.append(int(k >= 1 and d0 == p))
        itype.append(p + 1 if d1 == p else d0)
    return LevelTable(tuple(words), tuple(prime), tuple(extra), tuple(itype))


def _type_and_anchor(base, digits):
    p = base.p
    k = len(digits)
    d0 = digits[-1] if k >= 1 else 0
    d1 = digits[-2] if k >= 2 else 0
    if d1 == p:
        anchor_digits = digits[:-2] + (0, 0)
        itype = p + 1
    else:
        anchor_digits = digits[:-1] + (0,) if k >= 1 else ()
        itype = d0
    anchor = index_of(DigitWord(anchor_digits, base, INTEGER, SIDE_R))
    return itype, anchor


def axis_from_word(base, digits, level=None):
    """The level-`level` cell whose left endpoint has the given fractional digits."""
    _require_q1(base)
    level = len(digits) if level is None else level
    digits = tuple(digits) + (0,) * (level - len(digits))
    left = DigitWord(digits, base, FRACTIONAL, SIDE_R)
    index = index_of(DigitWord(digits, base, INTEGER, SIDE_R))
    itype, anchor = _type_and_anchor(base, digits)
    table = level_table(base, level)
    right = None
    if index + 1 < len(table.words):
        right = DigitWord(table.words[index + 1], base, FRACTIONAL, SIDE_R)
    return AxisInterval(level, index, anchor, itype, left, right)


def axis_for_cell(base, level, index):
    return axis_from_word(base, level_table(base, level).words[index], level)


def partition_1d(base, m):
    """
    The level-m partition of [0,1), left to right.

    Returns:
        list: G_m AxisIntervals
    """
    _require_q1(base)
    table = level_table(base, m)
    return [axis_for_cell(base, m, l) for l in range(len(table.words))]


def classify(base, axis):
    """(type, prime) read from the numerator's trailing digits."""
    _require_q1(base)
    itype, _ = _type_and_anchor(base, axis.left.digits)
    digits = axis.left.digits
    d1 = digits[-2] if len(digits) >= 2 else 0
    return itype, d1 != base.p


def refine(base, axis):
    """
    Children of a base-phi cell one level down.

    Type 0 splits into types 0 and 1, type 1 becomes a type-2 cell covering the
    same set, type 2 splits into types 0 and 1 at anchor a (.) phi + 3.
    """
    if base is None or not base.is_phi:
        raise UnsupportedBaseError(f"refine is written for base phi, got {base}")
    digits = axis.left.digits
    level = axis.level + 1
    if axis.level >= 1 and digits[-1] == base.p:
        return [axis_from_word(base, digits + (0,), level)]
    return [axis_from_word(base, digits + (d,), level) for d in range(base.p + 1)]


def prime_cells(base, k):
    table = level_table(base, k)
    return [axis_for_cell(base, k, l) for l, ok in enumerate(table.prime) if ok]


def prime_intervals(base, kvec):
    """All prime elementary kvec-intervals (every axis prime)."""
    _require_q1(base)
    per_axis = [prime_cells(base, k) for k in kvec]
    return [ElemInterval(tuple(axes)) for axes in itertools.product(*per_axis)]


def log_volume(interval):
    """|I| = sum over axes of level + [last digit = p]"""
    return interval.logvol


def contains(interval, point):
    """Half-open membership, decided by exact digit comparison."""
    if len(point) != interval.dimension:
        raise DimensionError(f"point has {len(point)} coordinates, interval has {interval.dimension}")
    for axis, x in zip(interval.axes, point):
        base = axis.base
        if compare(base, axis.left, x) == Order.GREATER:
            return False
        if axis.right is not None and compare(base, x, axis.right) != Order.LESS:
            return False
    return True


def cell_index(base, word, k):
    """
    Position of the level-k cell holding a fractional word.

    For q = 1 the cell is fixed by the first k digits: the tail that follows
    is worth less than the gap to the next numerator.
    """
    counts = g_counts(base, max(k, 0)).G
    return prefix_index(word.digits, k, counts)


def prefix_index(digits, k, counts):
    idx = 0
    for j in range(min(k, len(digits))):
        idx += digits[j] * counts[k - 1 - j]
    return idx


def least_prime_level(base, axis):
    """Least level at which the set of `axis` is a partition cell."""
    left = axis.left.normalized()
    right = None if axis.right is None else axis.right.normalized()
    for j in range(len(left), axis.level + 1):
        candidate = axis_from_word(base, left, j)
        cand_right = None if candidate.right is None else candidate.right.normalized()
        if cand_right == right:
            return j
    return axis.level


def level_histogram(base, k):
    """{log length: number of cells} at level k."""
    table = level_table(base, k)
    hist = {}
    for extra in table.extra:
        hist[k + extra] = hist.get(k + extra, 0) + 1
    return hist


def expected_total(base, m, kvec):
    """
    Sum of the required counts G_(m-|I|) over the whole kvec-partition.

    Equals G_m whenever every index stays within the G_-2 convention.
    """
    dist = {0: 1}
    for k in kvec:
        step = {}
        for v, c in dist.items():
            for w, n in level_histogram(base, k).items():
                step[v + w] = step.get(v + w, 0) + c * n
        dist = step
    return sum(c * g_value(base, m - v) for v, c in dist.items())


def interval_row(axis):
    """CSV row: level, anchor_index, type, left_float, right_float, prime"""
    return [
        axis.level,
        axis.anchor,
        axis.itype,
        f"{axis.left_value():.17g}",
        f"{axis.right_value():.17g}",
        int(axis.prime),
    ]
