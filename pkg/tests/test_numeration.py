import math

import pytest

from src.models.numeration import (
    FRACTIONAL,
    INTEGER,
    SIDE_L,
    SIDE_R,
    BaseSpec,
    DigitWord,
    Gap,
    Order,
    ZGamma,
    closed_form_g,
    compare,
    encode,
    enumerate_words,
    fib,
    from_float,
    g_counts,
    g_value,
    gamma_values,
    index_of,
    max_level,
    scaled_value,
    shift,
    shift_index,
    succ_gap,
    whole_value,
    word_at,
)
from src.utils.errors import (
    DomainError,
    NotRepresentableError,
    PartitionTooFineError,
    RangeError,
    UnsupportedBaseError,
)

SMALL_BASES = [BaseSpec(p, q) for p in range(1, 5) for q in range(1, p + 1)]


def test_base_rejects_q_above_p():
    with pytest.raises(DomainError):
        BaseSpec(2, 3)
    with pytest.raises(DomainError):
        BaseSpec(10, 1)


def test_gamma_is_the_largest_root():
    for base in SMALL_BASES:
        g = base.gamma
        assert g * g - base.p * g - base.q == pytest.approx(0.0, abs=1e-12)
        assert g > 1


def test_fibonacci_shifted_convention():
    assert [fib(m) for m in range(-2, 8)] == [0, 1, 1, 2, 3, 5, 8, 13, 21, 34]
    with pytest.raises(DomainError):
        fib(-3)


def test_counts_for_silver_ratio(silver):
    assert g_counts(silver, 5).G == (1, 3, 7, 17, 41, 99)


@pytest.mark.parametrize("base", SMALL_BASES, ids=str)
def test_counts_agree_with_closed_form_and_enumeration(base):
    counts = g_counts(base, 20)
    for m in range(21):
        assert counts.G[m] == round(closed_form_g(base, m))
    for m in range(6):
        assert len(gamma_values(base, m, SIDE_L)) == counts.G[m]
        assert len(gamma_values(base, m, SIDE_R)) == counts.G[m]


def test_phi_counts_are_fibonacci(phi):
    assert [g_value(phi, m) for m in range(10)] == [fib(m) for m in range(10)]


def test_negative_count_convention(phi, silver):
    assert g_value(phi, -1) == 1
    assert g_value(phi, -2) == 0
    assert g_value(silver, -1) == 1
    with pytest.raises(PartitionTooFineError):
        g_value(phi, -3)
    with pytest.raises(UnsupportedBaseError):
        g_value(BaseSpec(2, 2), -1)


def test_max_level_fits_64_bits():
    for base in SMALL_BASES:
        top = max_level(base)
        assert g_value(base, top) < 2**63
        assert base.p * g_value(base, top) + base.q * g_value(base, top - 1) >= 2**63


@pytest.mark.parametrize("base", SMALL_BASES, ids=str)
def test_enumeration_is_increasing_and_admissible(base):
    for side in (SIDE_L, SIDE_R):
        words = enumerate_words(base, 4, side)
        values = [w.value() for w in words]
        assert values == sorted(values)
        assert len(set(w.digits for w in words)) == len(words)


def test_phi_words_have_no_consecutive_ones(phi):
    words = enumerate_words(phi, 3)
    assert [w.digits for w in words] == [
        (0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 0, 1),
    ]


def test_l_admissible_order_of_silver_ratio(silver):
    words = enumerate_words(silver, 2, SIDE_L)
    assert ["".join(map(str, w.digits)) for w in words] == ["00", "01", "02", "10", "11", "20", "21"]


@pytest.mark.parametrize("base", SMALL_BASES, ids=str)
def test_reversed_l_words_are_the_r_words(base):
    top = 20 if base.is_phi else 7
    for m in range(top + 1):
        reversed_l = sorted(tuple(reversed(w.digits)) for w in enumerate_words(base, m, SIDE_L))
        assert reversed_l == sorted(w.digits for w in enumerate_words(base, m, SIDE_R))


@pytest.mark.parametrize("base", SMALL_BASES, ids=str)
def test_word_at_inverts_index_of(base):
    for side in (SIDE_L, SIDE_R):
        for i in range(g_value(base, 5)):
            assert index_of(word_at(base, i, 5, side), side) == i


def test_word_at_out_of_range(phi):
    with pytest.raises(RangeError):
        word_at(phi, 5, 3)


def test_r_index_is_digit_weighted_count(silver):
    word = DigitWord((2, 0, 1), silver, INTEGER, SIDE_R)
    assert index_of(word) == 2 * 7 + 0 * 3 + 1


def test_condition_r_is_enforced(phi, silver):
    with pytest.raises(NotRepresentableError):
        DigitWord((1, 1), phi)
    with pytest.raises(NotRepresentableError):
        DigitWord((2, 1), silver)
    DigitWord((2, 0, 2), silver)


def test_zeckendorf_encoding(phi):
    assert encode(phi, 0).digits == (0,)
    assert encode(phi, 4).digits == (1, 0, 1)
    assert encode(phi, 12).digits == (1, 0, 1, 0, 1)
    for n in range(200):
        word = encode(phi, n)
        assert index_of(word) == n
        assert word.digits[0] == 1 or n == 0


def test_encoding_in_general_base(silver):
    assert encode(silver, 6).digits == (2, 0)
    assert encode(silver, 5).digits == (1, 2)
    # 7 = (21)_3 and a 2 may not be followed by 1
    with pytest.raises(NotRepresentableError):
        encode(silver, 7)


def test_whole_values_exact(phi):
    # n-bar for 101 in base phi is phi^2 + 1 = phi + 2
    word = DigitWord((1, 0, 1), phi, INTEGER, SIDE_R)
    assert whole_value(word) == ZGamma(2, 1, phi)
    assert float(whole_value(word)) == pytest.approx(phi.gamma**2 + 1)


@pytest.mark.parametrize("m", range(1, 31))
def test_powers_of_phi_are_fibonacci(phi, m):
    power = ZGamma(fib(m - 3), fib(m - 2), phi)
    assert ZGamma.power(phi, m) == power
    assert float(power) == pytest.approx(phi.gamma**m, rel=1e-12)


def test_negative_powers_need_q_one(silver):
    inv = ZGamma.power(silver, -1)
    assert float(inv) == pytest.approx(1 / silver.gamma)
    with pytest.raises(UnsupportedBaseError):
        ZGamma.power(BaseSpec(2, 2), -1)


def test_zgamma_sign_is_exact(phi):
    # phi^-k has huge cancelling coefficients once k is large
    for k in range(1, 80):
        tiny = ZGamma.power(phi, -k)
        assert tiny.sign() == 1
        assert (-tiny).sign() == -1
        assert (tiny * ZGamma.power(phi, k)) == ZGamma(1, 0, phi)


def test_zgamma_order_matches_floats(silver):
    values = [ZGamma(a, b, silver) for a in range(-3, 4) for b in range(-3, 4)]
    for x in values:
        for y in values:
            if abs(float(x) - float(y)) > 1e-9:
                assert (x < y) == (float(x) < float(y))


@pytest.mark.parametrize("base", [BaseSpec(1, 1), BaseSpec(2, 1), BaseSpec(3, 2), BaseSpec(4, 4)], ids=str)
def test_successor_gaps(base):
    m = 6 if base.p < 3 else 4
    words = enumerate_words(base, m)
    for left, right in zip(words, words[1:]):
        gap = succ_gap(base, left, m)
        diff = whole_value(right) - whole_value(left)
        if gap.exponent == 0:
            assert diff == ZGamma(1, 0, base)
        else:
            assert diff.times_gamma() == ZGamma(base.q, 0, base)
    with pytest.raises(RangeError):
        succ_gap(base, words[-1], m)


def test_phi_gaps_by_last_digit(phi):
    for n in range(fib(12) - 1):
        word = word_at(phi, n, 12)
        gap = succ_gap(phi, word, 12)
        assert gap == (Gap(1, 0) if word.digits[-1] == 0 else Gap(1, 1))


def test_compare_fractional_words(phi, word):
    assert compare(phi, word("001"), word("01")) == Order.LESS
    assert compare(phi, word("1"), word("1000")) == Order.EQUAL
    assert compare(phi, word("101"), word("1001")) == Order.GREATER


def test_compare_matches_exact_values(silver):
    words = [w.as_fraction() for w in enumerate_words(silver, 4)]
    for x in words:
        for y in words:
            exact = (scaled_value(x, 4) - scaled_value(y, 4)).sign()
            assert int(compare(silver, x, y)) == exact


@pytest.mark.parametrize("length", range(1, 13))
def test_compare_agrees_with_values_in_phi(phi, length):
    # every admissible word of at most `length` digits, trailing zeros dropped
    words = [DigitWord(w.as_fraction().normalized(), phi, FRACTIONAL) for w in enumerate_words(phi, length)]
    values = [w.value() for w in words]
    for x, vx in zip(words, values):
        for y, vy in zip(words, values):
            expected = Order.EQUAL if x == y else Order.LESS if vx < vy else Order.GREATER
            assert compare(phi, x, y) == expected


def test_shift_and_shift_index(phi):
    word = encode(phi, 4)
    assert shift(word, 2).digits == (1, 0, 1, 0, 0)
    assert shift_index(phi, 4, 2) == 11
    assert shift_index(phi, 0, 5) == 0
    with pytest.raises(DomainError):
        shift(word, -1)


def test_from_float_recovers_words(phi, silver):
    for base in (phi, silver):
        for w in enumerate_words(base, 6):
            x = w.as_fraction()
            back = from_float(base, x.value())
            assert back == x


def test_from_float_rejects_outside_unit_interval(phi):
    with pytest.raises(DomainError):
        from_float(phi, 1.0)


def test_word_equality_ignores_padding(phi):
    assert DigitWord((1, 0, 0), phi, FRACTIONAL) == DigitWord((1,), phi, FRACTIONAL)
    assert hash(DigitWord((1, 0, 0), phi)) == hash(DigitWord((1,), phi))
    assert str(DigitWord((1, 0, 1), phi)) == ".101"
    assert math.isclose(DigitWord((1, 0, 1), phi).value(), phi.gamma**-1 + phi.gamma**-3)
