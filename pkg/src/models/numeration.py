"""
Digit Arithmetic for Irrational Base Nets

Whole numbers and fractions written in base gamma, the largest root of
x^2 - p x - q (1 <= q <= p). The golden ratio is the case p = q = 1, where
whole numbers are Zeckendorf words in the Fibonacci base.

Integer words are stored most-significant digit first. A fractional word
(d_1 d_2 ... d_k) stands for sum d_j gamma^-j.
"""

import math
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache, total_ordering
from typing import List, Optional, Sequence, Tuple

from ..utils.config import NetConfig
from ..utils.errors import (
    DomainError,
    NotRepresentableError,
    RangeError,
    CountIdentityError,
    PartitionTooFineError,
    UnsupportedBaseError,
)

INTEGER = "integer"
FRACTIONAL = "fractional"
SIDE_L = "L"
SIDE_R = "R"


class Order(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class BaseSpec:
    """The pair (p, q) and the quadratic irrational it defines."""

    p: int
    q: int

    def __post_init__(self):
        if not NetConfig.is_supported_base(self.p, self.q):
            raise DomainError(
                f"Base ({self.p},{self.q}) violates 1 <= q <= p <= {NetConfig.MAX_BASE_DIGIT}"
            )

    @classmethod
    def phi(cls):
        return cls(1, 1)

    @property
    def gamma(self):
        return (self.p + math.sqrt(self.p * self.p + 4 * self.q)) / 2

    @property
    def conj(self):
        """The conjugate root p - gamma (equals 1 - phi for the golden ratio)."""
        return self.p - self.gamma

    @property
    def radix(self):
        return self.p + 1

    @property
    def is_phi(self):
        return self.p == 1 and self.q == 1

    def __str__(self):
        return "phi" if self.is_phi else f"{self.p},{self.q}"


@dataclass(frozen=True, eq=False)
class DigitWord:
    """
    A finite digit string.

    A base of None marks plain binary digits (the dyadic comparator); every
    other word lives in a BaseSpec and carries the admissibility side it was
    built for.
    """

    digits: Tuple[int, ...]
    base: Optional[BaseSpec] = None
    role: str = FRACTIONAL
    side: str = SIDE_R

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        if self.role not in (INTEGER, FRACTIONAL):
            raise DomainError(f"Unknown role {self.role!r}")
        if self.side not in (SIDE_L, SIDE_R):
            raise DomainError(f"Unknown admissibility side {self.side!r}")
        top = self.max_digit
        for d in self.digits:
            if d < 0 or d > top:
                raise DomainError(f"Digit {d} outside [0,{top}] in {self.digits}")
        if self.base is not None:
            ok = self.is_r_admissible() if self.side == SIDE_R else self.is_l_admissible()
            if not ok:
                raise NotRepresentableError(
                    f"{self.digits} violates condition {self.side} in base {self.base}"
                )

    @property
    def max_digit(self):
        return 1 if self.base is None else self.base.p

    @property
    def radix_value(self):
        return 2.0 if self.base is None else self.base.gamma

    def __len__(self):
        return len(self.digits)

    def normalized(self):
        """Digits without the padding that does not change the value."""
        digits = list(self.digits)
        if self.role == FRACTIONAL:
            while digits and digits[-1] == 0:
                digits.pop()
        else:
            while digits and digits[0] == 0:
                digits.pop(0)
        return tuple(digits)

    def __eq__(self, other):
        if not isinstance(other, DigitWord):
            return NotImplemented
        return (
            self.base == other.base
            and self.role == other.role
            and self.normalized() == other.normalized()
        )

    def __hash__(self):
        return hash((self.base, self.role, self.normalized()))

    def __repr__(self):
        return f"DigitWord({self}, base={self.base})"

    def __str__(self):
        text = "".join(str(d) for d in self.digits)
        return f".{text}" if self.role == FRACTIONAL else (text or "0")

    def is_r_admissible(self):
        if self.base is None:
            return True
        p, q = self.base.p, self.base.q
        ds = self.digits
        return all(not (ds[j] == p and ds[j + 1] >= q) for j in range(len(ds) - 1))

    def is_l_admissible(self):
        if self.base is None:
            return True
        p, q = self.base.p, self.base.q
        ds = self.digits
        return all(not (ds[j] == p and ds[j - 1] >= q) for j in range(1, len(ds)))

    def padded(self, length):
        """The same value written with exactly `length` digits."""
        ds = self.normalized()
        if len(ds) > length:
            raise DomainError(f"{self} does not fit in {length} digits")
        fill = (0,) * (length - len(ds))
        digits = ds + fill if self.role == FRACTIONAL else fill + ds
        return DigitWord(digits, self.base, self.role, self.side)

    def prefix(self, k):
        """The first k fractional digits, zero padded."""
        ds = self.digits[:k]
        return ds + (0,) * (k - len(ds))

    def reversed(self):
        """Reverse the digit string, swapping the role and the admissibility side."""
        role = INTEGER if self.role == FRACTIONAL else FRACTIONAL
        side = SIDE_L if self.side == SIDE_R else SIDE_R
        return DigitWord(tuple(reversed(self.digits)), self.base, role, side)

    def as_fraction(self):
        """Read the digits of an integer word after the radix point (n -> n / gamma^m)."""
        return DigitWord(self.digits, self.base, FRACTIONAL, self.side)

    def value(self):
        """
        Horner evaluation in floating point.

        Each step adds at most one rounding of relative size 2^-53, so the
        result is within len(digits) * 2^-50 of the exact value.
        """
        radix = self.radix_value
        acc = 0.0
        if self.role == INTEGER:
            for d in self.digits:
                acc = acc * radix + d
        else:
            for d in reversed(self.digits):
                acc = (acc + d) / radix
        return acc


@dataclass(frozen=True)
class GCounts:
    """Counts of admissible words by length; A and B are the side auxiliaries."""

    G: Tuple[int, ...]
    A: Tuple[int, ...]
    B: Tuple[int, ...]


@dataclass(frozen=True)
class Gap:
    """coefficient * gamma^-exponent"""

    coefficient: int
    exponent: int

    def value(self, base):
        return self.coefficient * base.gamma ** (-self.exponent)

    def __str__(self):
        head = "" if self.coefficient == 1 else f"{self.coefficient}*"
        return f"{head}gamma^-{self.exponent}"


@total_ordering
@dataclass(frozen=True)
class ZGamma:
    """
    Exact element a + b*gamma of Z[gamma].

    Signs are decided on integers: 2(a + b*gamma) = (2a + bp) + b*sqrt(p^2 + 4q),
    and p^2 + 4q is never a perfect square when 1 <= q <= p.
    """

    a: int
    b: int
    base: BaseSpec

    @classmethod
    def zero(cls, base):
        return cls(0, 0, base)

    @classmethod
    def power(cls, base, k):
        """gamma^k; negative powers need q = 1, where 1/gamma = gamma - p."""
        if k >= 0:
            value = cls(1, 0, base)
            for _ in range(k):
                value = value.times_gamma()
            return value
        if base.q != 1:
            raise UnsupportedBaseError(f"gamma^{k} is not in Z[gamma] for q={base.q}")
        step = cls(-base.p, 1, base)
        value = cls(1, 0, base)
        for _ in range(-k):
            value = value * step
        return value

    def _check(self, other):
        if isinstance(other, int):
            return ZGamma(other, 0, self.base)
        if not isinstance(other, ZGamma):
            return None
        if other.base != self.base:
            raise DomainError("Cannot mix values from different bases")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return ZGamma(self.a + other.a, self.b + other.b, self.base)

    __radd__ = __add__

    def __neg__(self):
        return ZGamma(-self.a, -self.b, self.base)

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        p, q = self.base.p, self.base.q
        bd = self.b * other.b
        return ZGamma(
            self.a * other.a + q * bd,
            self.a * other.b + self.b * other.a + p * bd,
            self.base,
        )

    __rmul__ = __mul__

    def times_gamma(self):
        p, q = self.base.p, self.base.q
        return ZGamma(q * self.b, self.a + p * self.b, self.base)

    def sign(self):
        big_a = 2 * self.a + self.b * self.base.p
        big_b = self.b
        disc = self.base.p ** 2 + 4 * self.base.q
        if big_b == 0:
            return (big_a > 0) - (big_a < 0)
        if big_a >= 0 and big_b > 0:
            return 1
        if big_a <= 0 and big_b < 0:
            return -1
        diff = big_a * big_a - big_b * big_b * disc
        return (diff > 0) - (diff < 0) if big_a > 0 else (diff < 0) - (diff > 0)

    def __eq__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b, self.base))

    def __lt__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return (self - other).sign() < 0

    def __float__(self):
        return self.a + self.b * self.base.gamma


def fib(m):
    """
    F^m = F_{m+2}, with F^-2 = 0 and F^-1 = 1.

    Also the number of binary words of length m without two consecutive ones.
    """
    if m < -2:
        raise DomainError(f"F^m is defined for m >= -2, got {m}")
    prev, cur = 0, 1  # F^-2, F^-1
    for _ in range(m + 1):
        prev, cur = cur, prev + cur
    return cur if m >= -1 else prev


@lru_cache(maxsize=None)
def _counts(p, q, m_max):
    G, A = [1], [1]
    GR, B = [1], [1]
    for m in range(1, m_max + 1):
        G.append(q * G[m - 1] + (p - q + 1) * A[m - 1])
        A.append(q * G[m - 1] + (p - q) * A[m - 1])
        GR.append(p * GR[m - 1] + B[m - 1])
        B.append(q * GR[m - 1])
        if G[m] != GR[m]:
            raise CountIdentityError(f"L and R counts disagree at m={m}: {G[m]} != {GR[m]}")
        if G[m] > NetConfig.MAX_COUNT:
            raise DomainError(f"G_{m} for base ({p},{q}) does not fit in 64 bits")
    return GCounts(tuple(G), tuple(A), tuple(B))


def g_counts(base, m_max):
    """
    Run both counting recurrences through m_max.

    Args:
        base (BaseSpec): the base
        m_max (int): last word length to count

    Returns:
        GCounts: G (word counts), A (L-words not starting with p),
        B (R-words whose leading digit is below q)
    """
    if m_max < 0:
        raise DomainError(f"m_max must be non-negative, got {m_max}")
    return _counts(base.p, base.q, m_max)


def g_value(base, j):
    """G_j, continued to G_-1 = 1 and G_-2 = 0 for q = 1."""
    if j >= 0:
        return g_counts(base, j).G[j]
    if j < -2:
        raise PartitionTooFineError(f"Required count G_{j} is below the G_-2 convention")
    if base.q != 1:
        raise UnsupportedBaseError(f"G_{j} is only defined for q=1, base is ({base.p},{base.q})")
    return 1 if j == -1 else 0


@lru_cache(maxsize=None)
def max_level(base):
    """Largest m with G_m inside 64 bits."""
    p, q = base.p, base.q
    prev, cur, m = 1, p + 1, 1
    while True:
        nxt = p * cur + q * prev
        if nxt > NetConfig.MAX_COUNT:
            return m
        prev, cur, m = cur, nxt, m + 1


def closed_form_g(base, m):
    """G_m = ((gamma+1) gamma^m + (gamma-p-1)(p-gamma)^m) / (2 gamma - p)"""
    if m < 0:
        raise DomainError(f"m must be non-negative, got {m}")
    g, p = base.gamma, base.p
    return ((g + 1) * g**m + (g - p - 1) * (p - g) ** m) / (2 * g - p)


def level_for_index(base, i):
    """Smallest word length m with i < G_m."""
    m = 0
    while g_value(base, m) <= i:
        m += 1
    return m


def to_digits(n, radix, length=None):
    """Base-radix digits of n, most significant first, left padded to `length`."""
    digits = []
    rest = n
    while rest:
        rest, d = divmod(rest, radix)
        digits.append(d)
    length = len(digits) if length is None else length
    if len(digits) > length:
        raise DomainError(f"{n} needs more than {length} digits")
    return tuple(reversed(digits + [0] * (length - len(digits))))


@lru_cache(maxsize=64)
def _gamma_values(p, q, m, side):
    if m == 0:
        return (0,)
    prev = _gamma_values(p, q, m - 1, side)
    counts = _counts(p, q, m - 1)
    lead = (p + 1) ** (m - 1)
    values = []
    for d in range(p + 1):
        if side == SIDE_R:
            tail = prev if d < p else prev[: counts.B[m - 1]]
        else:
            tail = prev if d < q else prev[: counts.A[m - 1]]
        values.extend(d * lead + n for n in tail)
    return tuple(values)


def gamma_values(base, m, side=SIDE_R):
    """Increasing tuple of the integers in Gamma^side_m."""
    if m < 0:
        raise DomainError(f"m must be non-negative, got {m}")
    return _gamma_values(base.p, base.q, m, side)


def enumerate_words(base, m, side=SIDE_R):
    """
    All words of at most m digits meeting the side condition, in increasing order.

    Built by prepending a leading digit to the (m-1)-digit list: under condition R
    a leading p only takes the first B_{m-1} tails, under condition L a leading
    digit >= q only takes the first A_{m-1} tails.

    Args:
        base (BaseSpec): the base
        m (int): word length (shorter words are zero padded)
        side (str): SIDE_L or SIDE_R

    Returns:
        list: G_m integer DigitWords of length m
    """
    radix = base.radix
    return [
        DigitWord(to_digits(n, radix, m), base, INTEGER, side)
        for n in gamma_values(base, m, side)
    ]


def word_at(base, i, m, side=SIDE_R):
    """The i-th word of Gamma^side_m, decoded digit by digit from the top."""
    counts = g_counts(base, max(m, 0))
    if i < 0 or i >= counts.G[m]:
        raise RangeError(f"index {i} outside Gamma_{m} of size {counts.G[m]}")
    p, q = base.p, base.q
    digits = []
    for r in range(m, 0, -1):
        g_prev = counts.G[r - 1]
        if side == SIDE_R or i < q * g_prev:
            d = min(i // g_prev, p)
            i -= d * g_prev
        else:
            j = i - q * g_prev
            a_prev = counts.A[r - 1]
            d = q + j // a_prev
            i = j % a_prev
        digits.append(d)
    return DigitWord(tuple(digits), base, INTEGER, side)


def index_of(word, side=None):
    """Position of an integer word inside Gamma^side_m (for R this is sum d_j G_j)."""
    base = word.base
    side = side or word.side
    m = len(word.digits)
    counts = g_counts(base, max(m, 0))
    q = base.q
    idx = 0
    for pos, d in enumerate(word.digits):
        r = m - pos
        if side == SIDE_R or d < q:
            idx += d * counts.G[r - 1]
        else:
            idx += q * counts.G[r - 1] + (d - q) * counts.A[r - 1]
    return idx


def encode(base, n):
    """
    Admissible word of a whole number.

    In base phi, n is written greedily in the Fibonacci base (Zeckendorf).
    In any other base the base-(p+1) digits of n are read off and must satisfy
    condition R.
    """
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n}")
    if n == 0:
        return DigitWord((0,), base, INTEGER, SIDE_R)
    if base.is_phi:
        word = word_at(base, n, level_for_index(base, n), SIDE_R)
        return DigitWord(word.normalized(), base, INTEGER, SIDE_R)
    digits = to_digits(n, base.radix)
    try:
        return DigitWord(digits, base, INTEGER, SIDE_R)
    except NotRepresentableError:
        raise NotRepresentableError(
            f"{n} = ({''.join(map(str, digits))})_{base.radix} violates condition R in base {base}"
        )


def shift(word, k):
    """Move the digits k places toward the most significant end (n -> n (.) gamma^k)."""
    if word.role != INTEGER:
        raise DomainError("shift applies to integer words")
    if k >= 0:
        return DigitWord(word.digits + (0,) * k, word.base, INTEGER, word.side)
    drop = -k
    ds = word.normalized()
    if not ds:
        return DigitWord((0,), word.base, INTEGER, word.side)
    if drop > len(ds) or any(ds[len(ds) - drop:]):
        raise DomainError(f"shifting {word} by {k} leaves a negative digit index")
    return DigitWord(ds[: len(ds) - drop] or (0,), word.base, INTEGER, word.side)


def shift_index(base, n, k):
    """Index arithmetic for n (.) gamma^k."""
    word = word_at(base, n, level_for_index(base, n), SIDE_R)
    return index_of(shift(word, k))


def succ_gap(base, word, m=None):
    """
    Distance from n-bar to the next whole number of Gamma^R_m.

    Returns:
        Gap: gamma^0 when the last digit is below p, q gamma^-1 otherwise
    """
    if word.base != base:
        raise DomainError("word and base disagree")
    m = len(word.digits) if m is None else m
    n = index_of(word, SIDE_R)
    if n + 1 >= g_value(base, m):
        raise RangeError(f"{word} is the last element of Gamma^R_{m}")
    last = word.digits[-1] if word.digits else 0
    return Gap(1, 0) if last < base.p else Gap(base.q, 1)


def compare(base, x, y):
    """
    Exact order of two fractional words.

    Admissible words are greedy expansions, so right-padded lexicographic
    order is the order of their values.
    """
    if x.base != base or y.base != base:
        raise DomainError("compare needs both words in the given base")
    if x.role != FRACTIONAL or y.role != FRACTIONAL:
        raise DomainError("compare works on fractional words")
    length = max(len(x.digits), len(y.digits))
    a, b = x.prefix(length), y.prefix(length)
    return Order.LESS if a < b else Order.GREATER if a > b else Order.EQUAL


def value(base, word):
    if word.base != base:
        raise DomainError("word and base disagree")
    return word.value()


def whole_value(word):
    """n-bar = sum d_j gamma^j as an exact element of Z[gamma]."""
    acc = ZGamma.zero(word.base)
    for d in word.digits:
        acc = acc.times_gamma() + d
    return acc


def scaled_value(word, length):
    """gamma^length * x for a fractional word x of at most `length` digits."""
    return whole_value(DigitWord(word.prefix(length), word.base, INTEGER, SIDE_R))


def from_float(base, x, max_digits=None, tol=None):
    """
    Greedy expansion of a float in [0,1), snapping residues below tol.

    Only used to read point files without digit columns and to parse seeds.
    """
    max_digits = max_digits or NetConfig.MAX_FLOAT_DIGITS
    tol = NetConfig.SNAP_TOLERANCE if tol is None else tol
    if not 0.0 <= x < 1.0:
        raise DomainError(f"{x} is outside [0,1)")
    radix = 2.0 if base is None else base.gamma
    top = 1 if base is None else base.p
    # digit ceiling after a p (binary words have no such rule)
    after_top = top if base is None else base.q - 1
    digits = []
    rest, scale = x, 1.0
    for _ in range(max_digits):
        if rest <= tol * scale:
            break
        rest *= radix
        scale *= radix
        d = int(math.floor(rest))
        if d + 1 - rest <= tol * scale:
            d += 1
        cap = after_top if digits and digits[-1] == top and base is not None else top
        d = min(d, cap)
        rest = max(rest - d, 0.0)
        digits.append(d)
    try:
        return DigitWord(tuple(digits), base, FRACTIONAL, SIDE_R)
    except NotRepresentableError:
        raise DomainError(f"{x} did not snap to an admissible expansion in base {base}")


def words_from_digits(base, text):
    """Parse a digit string such as '0101' into a fractional word."""
    text = text.strip().lstrip(".")
    if not text.isdigit() and text != "":
        raise DomainError(f"{text!r} is not a digit string")
    return DigitWord(tuple(int(c) for c in text), base, FRACTIONAL, SIDE_R)


def digit_strings(words: Sequence[DigitWord]) -> List[str]:
    return ["".join(str(d) for d in w.digits) or "0" for w in words]
