"""
Equidistribution and Net Verification for Irrational Base Nets

Counting is exact: each coordinate word is mapped to its level-k cell through
its first k digits, so no float ever decides membership.
"""

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from ..models.intervals import axis_for_cell, expected_total, level_table
from ..models.numeration import BaseSpec, g_counts, g_value, shift_index
from ..models.point_set import PointSet
from .errors import (
    CountIdentityError,
    DimensionError,
    DomainError,
    UnsupportedBaseError,
)


def rho(kvec):
    """Sum of the levels plus the number of non-zero levels."""
    if any(k < 0 for k in kvec):
        raise DomainError(f"levels must be non-negative, got {kvec}")
    return sum(kvec) + sum(1 for k in kvec if k > 0)


@dataclass
class Failure:
    """One cell whose point count differs from the required one."""

    cells: Tuple[int, ...]
    interval: str
    expected: int
    actual: int

    def to_dict(self):
        return {"interval": self.interval, "expected": self.expected, "actual": self.actual}


@dataclass
class EquidReport:
    kvec: Tuple[int, ...]
    failures: List[Failure] = field(default_factory=list)
    strong: bool = False

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {
            "kvec": list(self.kvec),
            "passed": self.passed,
            "failures": [f.to_dict() for f in self.failures],
        }


@dataclass
class NetReport:
    """t_min is the least t for which the set is a (t,m,s)-net; worst is the witness at t_min - 1."""

    m: int
    s: int
    t_min: int
    worst: Optional[EquidReport] = None
    checks: List[EquidReport] = field(default_factory=list)

    def to_dict(self):
        return {
            "m": self.m,
            "s": self.s,
            "t_min": self.t_min,
            "checks": [c.to_dict() for c in self.checks],
        }


@dataclass
class WindowFailure:
    m: int
    k: int
    start: int
    report: EquidReport


@dataclass
class SequenceReport:
    t: int
    windows: int = 0
    failures: List[WindowFailure] = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {
            "t": self.t,
            "windows": self.windows,
            "passed": self.passed,
            "failures": [
                {"m": f.m, "k": f.k, "start": f.start, "check": f.report.to_dict()}
                for f in self.failures
            ],
        }


@dataclass
class GroupReport:
    groups: int = 0
    failures: List[dict] = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def to_dict(self):
        return {"groups": self.groups, "passed": self.passed, "failures": self.failures}


class _Axis:
    """Cell facts of one level in one coordinate, binary or base gamma."""

    def __init__(self, base, k):
        self.base = base
        self.k = k
        if base is None:
            self.size = 2**k
            self.prime = None
            self.extra = None
            self.weights = tuple(2**(k - 1 - j) for j in range(k))
        else:
            table = level_table(base, k)
            self.size = len(table.words)
            self.prime = table.prime
            self.extra = table.extra
            self.weights = tuple(g_counts(base, max(k, 0)).G[k - 1 - j] for j in range(k))

    def cell(self, word):
        ds = word.digits
        return sum(ds[j] * w for j, w in enumerate(self.weights) if j < len(ds))

    def is_prime(self, l):
        return True if self.prime is None else self.prime[l]

    def log_length(self, l):
        return self.k if self.extra is None else self.k + self.extra[l]

    def label(self, l):
        if self.base is None:
            return f"[{l}/2^{self.k},{l + 1}/2^{self.k})"
        axis = axis_for_cell(self.base, self.k, l)
        return f"I_{axis.itype}({axis.anchor};{self.k})"


class NetVerifier:
    """
    Exact equidistribution checks for point sets in base gamma (q = 1) and base 2.

    With strict_rho the net threshold bounds the plain level sum instead of rho.
    Binary sets (base None) always follow the classical rule: sum of levels <= m - t.
    """

    def __init__(self, debug=logging, strict_rho=False):
        self.debug = debug
        self.strict_rho = strict_rho

    def _require(self, point_set):
        base = point_set.base
        if base is not None and base.q != 1:
            raise UnsupportedBaseError(f"equidistribution counts are developed for q=1, got base {base}")
        if point_set.m is None:
            raise DomainError("point set does not declare its size index m")

    def _required(self, base, m, logvol):
        if base is None:
            j = m - logvol
            return 2**j if j >= 0 else 0
        if m - logvol < -2 and self.strict_rho:
            return 0
        return g_value(base, m - logvol)

    def _check_identity(self, point_set, kvec):
        base, m = point_set.base, point_set.m
        if base is None:
            return
        floor = -2 if base.is_phi else -1
        if m - rho(kvec) < floor:
            return
        total = expected_total(base, m, kvec)
        if total != g_value(base, m):
            raise CountIdentityError(f"required counts over {kvec} add to {total}, not G_{m}={g_value(base, m)}")

    def check(self, point_set, kvec, strong=False):
        """
        Count points per cell of the kvec-partition.

        Args:
            point_set (PointSet): the set, with m declared
            kvec (tuple): one level per coordinate
            strong (bool): check every cell, not only the prime ones

        Returns:
            EquidReport: failing cells, empty when the count law holds
        """
        self._require(point_set)
        kvec = tuple(kvec)
        if len(kvec) != point_set.s:
            raise DimensionError(f"level vector {kvec} does not match dimension {point_set.s}")
        self._check_identity(point_set, kvec)
        axes = [_Axis(point_set.base, k) for k in kvec]
        counts = Counter(
            tuple(axis.cell(word) for axis, word in zip(axes, point)) for point in point_set
        )
        report = EquidReport(kvec, strong=strong)
        for cells in itertools.product(*(range(axis.size) for axis in axes)):
            if not strong and not all(axis.is_prime(l) for axis, l in zip(axes, cells)):
                continue
            logvol = sum(axis.log_length(l) for axis, l in zip(axes, cells))
            expected = self._required(point_set.base, point_set.m, logvol)
            actual = counts.get(cells, 0)
            if actual != expected:
                label = " x ".join(axis.label(l) for axis, l in zip(axes, cells))
                report.failures.append(Failure(cells, label, expected, actual))
        return report

    def check_equidist(self, point_set, kvec):
        return self.check(point_set, kvec, strong=False)

    def check_strong(self, point_set, mvec):
        return self.check(point_set, mvec, strong=True)

    def t_max(self, point_set):
        """The t at which only the trivial level vector is left to check."""
        base = point_set.base
        return point_set.m + 2 if base is not None and base.is_phi else point_set.m

    def measure(self, kvec, binary=False):
        """rho of the levels; binary sets and strict_rho use the plain level sum."""
        return sum(kvec) if self.strict_rho or binary else rho(kvec)

    def level_vectors(self, s, r, binary=False):
        """All level vectors whose measure equals r."""
        return [
            kvec for kvec in itertools.product(range(r + 1), repeat=s)
            if self.measure(kvec, binary) == r
        ]

    def _levels_of(self, point_set, r):
        return self.level_vectors(point_set.s, r, binary=point_set.base is None)

    def is_net(self, point_set, t):
        self._require(point_set)
        bound = self.t_max(point_set) - t
        for r in range(0, bound + 1):
            for kvec in self._levels_of(point_set, r):
                if not self.check_equidist(point_set, kvec).passed:
                    return False
        return True

    def net_t(self, point_set):
        """
        Least t for which the set is a net, scanning level vectors by increasing measure.

        A failure at measure r means the threshold can be at most r - 1.
        """
        self._require(point_set)
        t_max = self.t_max(point_set)
        report = NetReport(point_set.m, point_set.s, 0)
        for r in range(0, t_max + 1):
            for kvec in self._levels_of(point_set, r):
                check = self.check_equidist(point_set, kvec)
                report.checks.append(check)
                if not check.passed:
                    report.t_min = t_max - r + 1
                    report.worst = check
                    self.debug.info(f"NetVerifier: {kvec} fails, t_min={report.t_min}")
                    return report
        self.debug.info(f"NetVerifier: {len(point_set)} points form a (0,{point_set.m},{point_set.s})-net")
        return report

    def verify_sequence(self, seqgen, t, m_max, k_max, window_shift="m+1"):
        """
        Check every window x_(k . phi^(m+1)) .. of length F^m for t <= m <= m_max, k <= k_max.

        Args:
            seqgen (callable): n -> first n terms, each a tuple of words (or a word)
            window_shift (str): "m+1", or "m" for the shorter start offset
        """
        base = BaseSpec.phi()
        if window_shift not in ("m+1", "m"):
            raise DomainError(f"window_shift must be 'm+1' or 'm', got {window_shift!r}")
        starts = {}
        need = 0
        for m in range(t, m_max + 1):
            power = m + 1 if window_shift == "m+1" else m
            for k in range(k_max + 1):
                start = shift_index(base, k, power)
                starts[(m, k)] = start
                need = max(need, start + g_value(base, m))
        terms = _as_points(seqgen(need))
        report = SequenceReport(t)
        for (m, k), start in sorted(starts.items()):
            window = terms[start:start + g_value(base, m)]
            point_set = PointSet(base, len(window[0]), m, window, check_unique=False)
            report.windows += 1
            witness = self._first_failure(point_set, t)
            if witness is not None:
                report.failures.append(WindowFailure(m, k, start, witness))
                self.debug.warning(f"NetVerifier: window m={m} k={k} at {start} fails {witness.kvec}")
        return report

    def verify_weak(self, seqgen, t, m_max):
        """Check that every prefix of length F^m, t <= m <= m_max, is a (t,m,s)-net."""
        base = BaseSpec.phi()
        terms = _as_points(seqgen(g_value(base, m_max)))
        report = SequenceReport(t)
        for m in range(t, m_max + 1):
            point_set = PointSet(base, len(terms[0]), m, terms[:g_value(base, m)], check_unique=False)
            report.windows += 1
            witness = self._first_failure(point_set, t)
            if witness is not None:
                report.failures.append(WindowFailure(m, 0, 0, witness))
        return report

    def _first_failure(self, point_set, t):
        bound = self.t_max(point_set) - t
        for r in range(0, bound + 1):
            for kvec in self._levels_of(point_set, r):
                check = self.check_equidist(point_set, kvec)
                if not check.passed:
                    return check
        return None

    def check_groups_of_four(self, point_set):
        """
        Three-point arrangement of every group I_{i,j}(a,b; m-k, k), i,j in {0,1}, 1 <= k < m.

        In a (1,m,2)-net each group holds (2,0,0,1) or (1,1,1,0) points, listed as
        counts in I_00, I_10, I_01, I_11.
        """
        base = point_set.base
        if base is None or not base.is_phi or point_set.s != 2:
            raise UnsupportedBaseError("groups of four are defined for planar sets in base phi")
        self._require(point_set)
        m = point_set.m
        report = GroupReport()
        allowed = {(2, 0, 0, 1), (1, 1, 1, 0)}
        for k in range(1, m):
            xa, ya = _Axis(base, m - k), _Axis(base, k)
            counts = Counter((xa.cell(x), ya.cell(y)) for x, y in point_set)
            x_groups = _type0_cells(base, m - k)
            y_groups = _type0_cells(base, k)
            for a in x_groups:
                for b in y_groups:
                    arrangement = (
                        counts.get((a, b), 0),
                        counts.get((a + 1, b), 0),
                        counts.get((a, b + 1), 0),
                        counts.get((a + 1, b + 1), 0),
                    )
                    report.groups += 1
                    if arrangement not in allowed:
                        report.failures.append(
                            {"kvec": [m - k, k], "cells": [a, b], "counts": list(arrangement)}
                        )
        self.debug.info(f"NetVerifier: {report.groups} groups of four, {len(report.failures)} off")
        return report


def _type0_cells(base, k):
    """Positions of the prime type-0 cells at level k; the type-1 sibling follows each."""
    table = level_table(base, k)
    return [l for l, (ok, itype) in enumerate(zip(table.prime, table.itype)) if ok and itype == 0]


def _as_points(terms):
    return [t if isinstance(t, tuple) else (t,) for t in terms]


def best_approx_error(base, m, k):
    """|G_(m-k) / G_m - gamma^-k|"""
    return abs(g_value(base, m - k) / g_value(base, m) - base.gamma ** (-k))


def best_approx_bound(base, m, k):
    """
    Exact error phi^-(m+2) F^(k-2) / F^m in base phi, the 1/G_m bound otherwise.
    """
    if base.is_phi:
        return base.gamma ** (-(m + 2)) * g_value(base, k - 2) / g_value(base, m)
    return 1.0 / g_value(base, m)


def check_equidist(point_set, kvec, debug=logging):
    return NetVerifier(debug).check_equidist(point_set, kvec)


def check_strong(point_set, mvec, debug=logging):
    return NetVerifier(debug).check_strong(point_set, mvec)


def is_net(point_set, t, strict_rho=False, debug=logging):
    return NetVerifier(debug, strict_rho).is_net(point_set, t)


def net_t(point_set, strict_rho=False, debug=logging):
    return NetVerifier(debug, strict_rho).net_t(point_set)


def verify_sequence(seqgen, t, m_max, k_max, window_shift="m+1", debug=logging):
    return NetVerifier(debug).verify_sequence(seqgen, t, m_max, k_max, window_shift)


def verify_weak(seqgen, t, m_max, debug=logging):
    return NetVerifier(debug).verify_weak(seqgen, t, m_max)


def check_groups_of_four(point_set, debug=logging):
    return NetVerifier(debug).check_groups_of_four(point_set)
