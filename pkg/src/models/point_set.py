"""
Point Set Model for Irrational Base Nets
"""

import csv
import io
import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .numeration import (
    FRACTIONAL,
    BaseSpec,
    DigitWord,
    digit_strings,
    from_float,
    g_value,
    words_from_digits,
)
from ..utils.config import NetConfig
from ..utils.errors import DomainError, InputFormatError, IrrnetError

AXIS_NAMES = ("x", "y", "z")


def axis_names(s):
    if s <= len(AXIS_NAMES):
        return list(AXIS_NAMES[:s])
    return [f"x{j + 1}" for j in range(s)]


def expected_size(base, m):
    """G_m points in base gamma, 2^m for the dyadic comparator."""
    return 2**m if base is None else g_value(base, m)


@dataclass(frozen=True)
class PointSet:
    """
    An ordered list of s-dimensional points whose coordinates are fractional words.

    A base of None marks binary coordinates. `m` is the size index; it is None
    for sets that do not claim a size (float-only files without a header m).
    """

    base: Optional[BaseSpec]
    s: int
    m: Optional[int]
    points: Tuple[Tuple[DigitWord, ...], ...]
    check_unique: bool = field(default=True, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(tuple(p) for p in self.points))
        if self.s < 1:
            raise DomainError(f"dimension must be positive, got {self.s}")
        for i, point in enumerate(self.points):
            if len(point) != self.s:
                raise DomainError(f"point {i} has {len(point)} coordinates, expected {self.s}")
            for word in point:
                if word.base != self.base or word.role != FRACTIONAL:
                    raise DomainError(f"point {i} holds {word!r}, not a fractional word in base {self.base}")
        if self.m is not None:
            size = expected_size(self.base, self.m)
            if len(self.points) != size:
                raise DomainError(f"a level-{self.m} set has {size} points, got {len(self.points)}")
        if self.check_unique and len(set(self.points)) != len(self.points):
            raise DomainError("point set contains duplicate points")

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def coordinate(self, j):
        return [point[j] for point in self.points]

    def to_array(self):
        """Float view of the set, shape (N, s)."""
        if not self.points:
            return np.zeros((0, self.s))
        return np.array([[w.value() for w in point] for point in self.points], dtype=float)

    def swapped(self):
        """The same set with the axis order reversed."""
        return PointSet(self.base, self.s, self.m, [tuple(reversed(p)) for p in self.points], self.check_unique)

    def prefix(self, n, m=None):
        """The first n points, optionally claiming size index m."""
        return PointSet(self.base, self.s, m, self.points[:n], self.check_unique)

    def as_set(self):
        return frozenset(self.points)

    def same_points(self, other):
        return self.base == other.base and self.as_set() == other.as_set()


def _format_base(base):
    return "dyadic" if base is None else f"{base.p},{base.q}"


def _parse_base(text, line):
    text = text.strip()
    if text == "dyadic":
        return None
    try:
        p, q = NetConfig.parse_base(text)
        return BaseSpec(p, q)
    except IrrnetError as e:
        raise InputFormatError(str(e), line)


def header_line(point_set):
    m = "none" if point_set.m is None else point_set.m
    return f"# base={_format_base(point_set.base)};m={m};s={point_set.s}"


def dumps(point_set, digits=True):
    """
    Serialize a point set.

    Floats carry 17 significant digits; the `*_digits` columns hold the exact words.
    """
    buffer = io.StringIO()
    buffer.write(header_line(point_set) + "\n")
    names = axis_names(point_set.s)
    columns = names + ([f"{n}_digits" for n in names] if digits else [])
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for point in point_set.points:
        row = [f"{w.value():.{NetConfig.FLOAT_DIGITS}g}" for w in point]
        if digits:
            row += digit_strings(point)
        writer.writerow(row)
    return buffer.getvalue()


def write_csv(point_set, path, digits=True):
    with open(path, "w", newline="", encoding="utf-8") as f:
        f.write(dumps(point_set, digits))


def _parse_header(line):
    if not line.startswith("#"):
        raise InputFormatError("missing '# base=...;m=...;s=...' header", 1)
    fields = {}
    for part in line.lstrip("#").strip().split(";"):
        if not part.strip():
            continue
        if "=" not in part:
            raise InputFormatError(f"header entry {part!r} is not key=value", 1)
        key, val = part.split("=", 1)
        fields[key.strip()] = val.strip()
    for key in ("base", "s"):
        if key not in fields:
            raise InputFormatError(f"header lacks {key!r}", 1)
    base = _parse_base(fields["base"], 1)
    try:
        s = int(fields["s"])
        m_text = fields.get("m", "none")
        m = None if m_text in ("none", "") else int(m_text)
    except ValueError:
        raise InputFormatError(f"header values must be integers: {line.strip()}", 1)
    return base, s, m


def loads(text, debug=logging):
    """
    Parse a point-set CSV.

    Digit columns are authoritative. Without them each float is expanded greedily
    with SNAP_TOLERANCE snapping, which is exact only up to that tolerance.

    Raises:
        InputFormatError: with the 1-based line number of the offending row
    """
    lines = text.splitlines()
    if not lines:
        raise InputFormatError("empty point file", 1)
    base, s, m = _parse_header(lines[0])
    if len(lines) < 2:
        raise InputFormatError("missing column row", 2)
    columns = [c.strip() for c in lines[1].split(",")]
    names = axis_names(s)
    missing = [n for n in names if n not in columns]
    if missing:
        raise InputFormatError(f"missing columns {missing}", 2)
    value_at = [columns.index(n) for n in names]
    digit_cols = [f"{n}_digits" for n in names]
    has_digits = all(c in columns for c in digit_cols)
    digits_at = [columns.index(c) for c in digit_cols] if has_digits else None
    if not has_digits:
        debug.warning("Point file has no digit columns: rebuilding words from floats "
                      f"with tolerance {NetConfig.SNAP_TOLERANCE}")

    points = []
    for lineno, row in enumerate(csv.reader(lines[2:]), start=3):
        if not row or not "".join(row).strip():
            continue
        if len(row) != len(columns):
            raise InputFormatError(f"expected {len(columns)} fields, got {len(row)}", lineno)
        try:
            if has_digits:
                point = tuple(words_from_digits(base, row[j]) for j in digits_at)
            else:
                point = tuple(from_float(base, float(row[j])) for j in value_at)
        except (IrrnetError, ValueError) as e:
            raise InputFormatError(str(e), lineno)
        points.append(point)

    debug.info(f"Point file: read {len(points)} points in base {_format_base(base)}")
    try:
        return PointSet(base, s, m, points)
    except DomainError as e:
        raise InputFormatError(str(e))


def read_csv(path, debug=logging):
    with open(path, "r", encoding="utf-8") as f:
        return loads(f.read(), debug)
