"""
Point Set Generators for Irrational Base Nets
"""

import logging
from collections import defaultdict

from ..models.intervals import level_table, prefix_index
from ..models.numeration import (
    FRACTIONAL,
    SIDE_L,
    SIDE_R,
    BaseSpec,
    DigitWord,
    enumerate_words,
    g_counts,
    g_value,
    level_for_index,
    to_digits,
    word_at,
)
from ..models.point_set import PointSet
from .equidist import NetVerifier
from .errors import (
    ConstructionError,
    DomainError,
    PreconditionError,
    UnsupportedBaseError,
)


def _strip(word):
    return DigitWord(word.normalized(), word.base, FRACTIONAL, SIDE_R)


def vdc(base, i):
    """
    i-th van der Corput term: the i-th L-admissible integer word read backwards
    after the radix point.
    """
    if i < 0:
        raise DomainError(f"index must be non-negative, got {i}")
    word = word_at(base, i, level_for_index(base, i), SIDE_L)
    return _strip(word.reversed())


def vdc_terms(base, count):
    """The first `count` van der Corput terms."""
    if count <= 0:
        return []
    m = level_for_index(base, count - 1)
    words = enumerate_words(base, m, SIDE_L)[:count]
    return [_strip(w.reversed()) for w in words]


def hammersley(base, m):
    """
    The m-digit Hammersley set: the i-th point pairs the i-th van der Corput term
    with n_i / gamma^m, n_i the i-th element of Gamma^R_m. Both coordinates keep m digits.
    """
    if m < 0:
        raise DomainError(f"m must be non-negative, got {m}")
    left = enumerate_words(base, m, SIDE_L)
    right = enumerate_words(base, m, SIDE_R)
    points = [(l.reversed(), r.as_fraction()) for l, r in zip(left, right)]
    return PointSet(base, 2, m, points)


def lift_to_net(base, seq, m):
    """
    Prepend n / phi^m to the first F^m terms of a sequence.

    Args:
        base (BaseSpec): must be phi
        seq (list): terms, each a word or a tuple of words
        m (int): size index
    """
    if not base.is_phi:
        raise UnsupportedBaseError(f"the sequence-to-net lift is written for base phi, got {base}")
    size = g_value(base, m)
    if len(seq) < size:
        raise DomainError(f"need {size} terms to lift to level {m}, got {len(seq)}")
    words = enumerate_words(base, m, SIDE_R)
    points = []
    for word, term in zip(words, seq[:size]):
        term = term if isinstance(term, tuple) else (term,)
        points.append((word.as_fraction(),) + term)
    return PointSet(base, len(points[0]), m, points)


def hammersley_dyadic(m):
    """Classical base-2 Hammersley set (i / 2^m, bit reversal of i / 2^m)."""
    if m < 0:
        raise DomainError(f"m must be non-negative, got {m}")
    points = []
    for i in range(2**m):
        bits = to_digits(i, 2, m)
        points.append((
            DigitWord(bits, None, FRACTIONAL),
            DigitWord(tuple(reversed(bits)), None, FRACTIONAL),
        ))
    return PointSet(None, 2, m, points)


class WeakSequenceBuilder:
    """
    Grows a weak (1,2)-sequence in base phi, F^(m-1) points per step.

    The set S_m handed to `extend` must have F^m points, be a (1,m,2)-net, be
    strongly (m-1-k,k)-equidistributed for 0 <= k <= m-1 and put one point in
    every level-m cell of each axis. The union returned satisfies the same at m+1.
    """

    def __init__(self, debug=logging):
        self.debug = debug
        self.base = BaseSpec.phi()
        self.verifier = NetVerifier(debug)

    def _require(self, report, what):
        if not report.passed:
            first = report.failures[0]
            raise PreconditionError(
                f"{what} fails on {first.interval}: expected {first.expected}, found {first.actual}",
                partition=report.kvec,
            )

    def check_hypotheses(self, point_set):
        if point_set.base != self.base or point_set.s != 2:
            raise UnsupportedBaseError("weak (1,2)-sequences are built for planar sets in base phi")
        m = point_set.m
        if not self.verifier.is_net(point_set, 1):
            witness = self.verifier.net_t(point_set).worst
            self._require(witness, f"(1,{m},2)-net property")
        for k in range(m):
            self._require(self.verifier.check_strong(point_set, (m - 1 - k, k)), "strong equidistribution")
        self._require(self.verifier.check_strong(point_set, (m, 0)), "strong equidistribution")
        self._require(self.verifier.check_strong(point_set, (0, m)), "strong equidistribution")

    def _postcondition(self, points, m, mvec):
        union = PointSet(self.base, 2, m, points)
        report = self.verifier.check_strong(union, mvec)
        if not report.passed:
            first = report.failures[0]
            raise ConstructionError(
                f"extension to level {m} breaks {mvec} on {first.interval}: "
                f"expected {first.expected}, found {first.actual}"
            )

    def new_abscissas(self, point_set):
        """Left endpoints of the level-(m+1) cells that hold no point yet."""
        m = point_set.m
        table = level_table(self.base, m + 1)
        weights = g_counts(self.base, m + 1).G
        taken = set()
        for x, _ in point_set:
            taken.add(prefix_index(x.digits, m + 1, weights))
        empty = [l for l in range(len(table.words)) if l not in taken]
        want = g_value(self.base, m - 1)
        if len(empty) != want:
            raise ConstructionError(f"{len(empty)} empty level-{m + 1} cells, expected {want}")
        for l in empty:
            if not table.prime[l]:
                raise ConstructionError(f"empty level-{m + 1} cell {l} is not prime")
        return [DigitWord(table.words[l], self.base, FRACTIONAL) for l in empty]

    def _digit(self, point_set, xcell, xlevel, prefix, members, m):
        """Next y digit for a group of new points sharing x cell and y prefix."""
        if prefix and prefix[-1] == self.base.p:
            return 0
        target = prefix + (1,)
        xtable = level_table(self.base, xlevel)
        logvol = xlevel + xtable.extra[xcell] + len(target) + 1
        required = g_value(self.base, m + 1 - logvol)
        weights = g_counts(self.base, max(xlevel, 0)).G
        found = 0
        for x, y in point_set:
            if y.prefix(len(target)) != target:
                continue
            if prefix_index(x.digits, xlevel, weights) == xcell:
                found += 1
        deficit = required - found
        if deficit == 0:
            return 0
        if deficit == members:
            return 1
        raise ConstructionError(
            f"cell {xcell} at level {xlevel} with y prefix {target} lacks {deficit} points "
            f"but {members} new points share it"
        )

    def extend(self, point_set, check=True):
        """
        Add F^(m-1) points to S_m.

        Returns:
            PointSet: S_m followed by the new points in increasing x order
        """
        if check:
            self.check_hypotheses(point_set)
        m = point_set.m
        xs = self.new_abscissas(point_set)
        old = list(point_set.points)
        empty_y = DigitWord((), self.base, FRACTIONAL)
        self._postcondition(old + [(x, empty_y) for x in xs], m + 1, (m + 1, 0))

        ys = [() for _ in xs]
        for k in range(1, m + 2):
            xlevel = max(m - k, 0)
            weights = g_counts(self.base, xlevel).G
            groups = defaultdict(list)
            for i, x in enumerate(xs):
                xcell = prefix_index(x.digits, xlevel, weights)
                groups[(xcell, ys[i])].append(i)
            for (xcell, prefix), members in sorted(groups.items()):
                d = self._digit(point_set, xcell, xlevel, prefix, len(members), m)
                for i in members:
                    ys[i] = prefix + (d,)
            partial = [(x, DigitWord(y, self.base, FRACTIONAL)) for x, y in zip(xs, ys)]
            mvec = (m - k, k) if k <= m else (0, m + 1)
            self._postcondition(old + partial, m + 1, mvec)

        new = sorted(zip(xs, ys), key=lambda pair: pair[0].digits)
        points = old + [(x, DigitWord(y, self.base, FRACTIONAL)) for x, y in new]
        self.debug.info(f"WeakSequenceBuilder: level {m} -> {m + 1}, {len(new)} new points")
        return PointSet(self.base, 2, m + 1, points)

    def build(self, m, seed=None):
        """
        First F^m terms, starting from a seed in [0, 1/phi)^2 (the origin by default).
        """
        if m < 0:
            raise DomainError(f"m must be non-negative, got {m}")
        if seed is None:
            empty = DigitWord((), self.base, FRACTIONAL)
            seed = (empty, empty)
        if any(w.base != self.base or w.prefix(1) != (0,) for w in seed):
            raise DomainError("seed must lie in [0, 1/phi) x [0, 1/phi)")
        current = PointSet(self.base, 2, 0, [tuple(seed)])
        for _ in range(m):
            current = self.extend(current)
        return current


def extend_weak12(point_set, debug=logging):
    """The F^(m-1) points added to S_m, in increasing x order."""
    union = WeakSequenceBuilder(debug).extend(point_set)
    return list(union.points[len(point_set):])


def weak12(m, seed=None, debug=logging):
    return WeakSequenceBuilder(debug).build(m, seed)


def weak12_terms(count, seed=None, debug=logging):
    """Leading `count` terms of the weak (1,2)-sequence."""
    base = BaseSpec.phi()
    return list(weak12(level_for_index(base, count - 1) if count > 0 else 0, seed, debug).points[:count])


def generate(construction, base, m=None, count=None, seed=None, debug=logging):
    """
    Build a point set by construction name.

    Args:
        construction (str): vdc, hammersley, weak12 or dyadic
        base (BaseSpec): the base (ignored for dyadic)
        m (int): size index
        count (int): number of van der Corput terms (vdc only, overrides m)
    """
    if construction == "vdc":
        n = count if count is not None else g_value(base, m)
        terms = vdc_terms(base, n)
        size_index = m if count is None else None
        return PointSet(base, 1, size_index, [(w,) for w in terms])
    if m is None:
        raise DomainError(f"construction {construction!r} needs m")
    if construction == "hammersley":
        return hammersley(base, m)
    if construction == "weak12":
        if not base.is_phi:
            raise UnsupportedBaseError("weak (1,2)-sequences are built in base phi")
        return weak12(m, seed, debug)
    if construction == "dyadic":
        return hammersley_dyadic(m)
    raise DomainError(f"unknown construction {construction!r}")
