import math

import numpy as np
import pytest

from src.models.numeration import BaseSpec, g_value
from src.utils.discrepancy import (
    CLOSED,
    OPEN,
    DiscrepancyCalculator,
    l2,
    local_discrepancy,
    normalize,
    star_1d,
    star_2d,
)
from src.utils.errors import DomainError
from src.utils.generators import hammersley, hammersley_dyadic, vdc_terms
from tests.oracles import brute_star, brute_star_1d, cellwise_l2

# normalized star discrepancy of the m-digit Hammersley set, m = 1, 2, ...
PUBLISHED = {
    (2, 1): [3.11, 2.60, 2.07, 1.75, 1.62, 1.44, 1.37, 1.30, 1.22, 1.20],
    (2, 2): [3.35, 2.29, 1.92, 1.65, 1.61, 1.44, 1.33, 1.32, 1.27],
    (3, 1): [2.71, 2.25, 1.83, 1.53, 1.47, 1.36, 1.31],
    (3, 2): [2.89, 2.20, 1.80, 1.55, 1.48, 1.38, 1.35],
    (3, 3): [3.13, 2.26, 1.94, 1.68, 1.62, 1.53],
    (4, 1): [2.70, 2.13, 1.78, 1.56, 1.47, 1.40],
}


def random_points(seed, n, duplicates=False):
    rng = np.random.default_rng(seed)
    pts = rng.random((n, 2))
    if duplicates:
        pts[: n // 3, 0] = pts[n // 3: 2 * (n // 3), 0]
        pts[: n // 4, 1] = np.round(pts[: n // 4, 1], 1) % 1.0
    return pts


def test_star_1d_small_sets():
    assert star_1d([0.0], normalized=False).value == pytest.approx(1.0)
    assert star_1d([0.0, 0.5]).value == pytest.approx(0.5)
    assert star_1d([0.25, 0.75]).value == pytest.approx(0.25)


@pytest.mark.parametrize("seed", range(5))
def test_star_1d_matches_brute_force(seed):
    xs = np.random.default_rng(seed).random(37).tolist()
    assert star_1d(xs).value == pytest.approx(brute_star_1d(xs), abs=1e-12)


def test_star_1d_of_van_der_corput(phi):
    xs = [w.value() for w in vdc_terms(phi, 21)]
    assert star_1d(xs).value == pytest.approx(brute_star_1d(xs), abs=1e-12)


def test_single_points():
    assert star_2d([(0.0, 0.0)]).value == pytest.approx(1.0)
    assert star_2d([(0.5, 0.5)]).value == pytest.approx(0.75)
    assert star_2d([(0.0, 0.0)]).normalized is None


def test_smallest_silver_hammersley_set(silver):
    result = star_2d(hammersley(silver, 1))
    assert result.n == 3
    assert result.value == pytest.approx(2 * math.sqrt(2) - 7 / 3, abs=1e-12)
    assert result.normalized == pytest.approx(3.11, abs=0.01)


@pytest.mark.parametrize("seed", range(50))
def test_star_2d_matches_brute_force(seed):
    pts = random_points(seed, 4 * (seed + 1), duplicates=seed % 2 == 1)
    expected = brute_star([tuple(p) for p in pts])
    assert star_2d(pts).value == pytest.approx(expected, abs=1e-12)


def test_star_2d_on_hammersley_matches_brute_force(phi):
    arr = hammersley(phi, 7).to_array()
    assert star_2d(arr).value == pytest.approx(brute_star([tuple(p) for p in arr]), abs=1e-12)


def test_invariance_under_order_and_swap():
    pts = random_points(11, 120)
    base = star_2d(pts).value
    shuffled = np.random.default_rng(3).permutation(pts)
    assert star_2d(shuffled).value == pytest.approx(base, abs=1e-12)
    assert star_2d(pts[:, ::-1]).value == pytest.approx(base, abs=1e-12)


def test_threads_do_not_change_the_result(debug):
    pts = random_points(5, 300)
    single = DiscrepancyCalculator(debug, threads=1).star_2d(pts)
    many = DiscrepancyCalculator(debug, threads=4).star_2d(pts)
    assert many.value == pytest.approx(single.value, abs=1e-15)


@pytest.mark.parametrize("seed", range(4))
def test_witness_attains_the_value(seed):
    pts = random_points(seed, 80)
    result = star_2d(pts)
    corner = (result.witness.x, result.witness.y)
    assert result.witness.kind in (CLOSED, OPEN)
    assert local_discrepancy(pts, corner, result.witness.kind) == pytest.approx(result.value, abs=1e-12)


def test_l2_closed_forms():
    assert l2([(0.0, 0.0)]).value == pytest.approx(math.sqrt(11 / 18))
    assert l2([0.0], s=1).value == pytest.approx(math.sqrt(1 / 3))
    assert l2([(0.0, 0.0)]).normalized is None


@pytest.mark.parametrize("seed", range(4))
def test_l2_matches_cellwise_integral(seed):
    pts = random_points(seed, 25)
    expected = cellwise_l2([tuple(p) for p in pts])
    assert l2(pts).value == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_l2_engines_agree(phi):
    arr = hammersley(phi, 8).to_array()
    calc = DiscrepancyCalculator()
    numpy_value = calc.l2(arr, chunk=7).value
    assert calc.l2(arr, engine="scipy").value == pytest.approx(numpy_value, rel=1e-9)
    with pytest.raises(DomainError):
        calc.l2(arr, engine="fortran")


def test_l2_is_below_star(phi):
    for m in range(2, 9):
        arr = hammersley(phi, m).to_array()
        assert l2(arr).value <= star_2d(arr).value


@pytest.mark.parametrize("m", range(2, 12))
def test_l2_decreases_along_hammersley_sets(phi, m):
    smaller = l2(hammersley(phi, m)).value
    larger = l2(hammersley(phi, m + 1)).value
    assert larger < smaller


def test_normalize():
    assert normalize(0.5, 10) == pytest.approx(5.0)
    with pytest.raises(DomainError):
        normalize(0.5, 1)


def test_inputs_are_validated():
    with pytest.raises(DomainError):
        star_2d([(0.5, 1.0)])
    with pytest.raises(DomainError):
        star_2d(np.empty((0, 2)))
    with pytest.raises(DomainError):
        star_2d([(0.1, 0.2, 0.3)])


@pytest.mark.parametrize("pq", sorted(PUBLISHED), ids=str)
def test_published_table_values(pq):
    base = BaseSpec(*pq)
    for m, expected in enumerate(PUBLISHED[pq], start=1):
        assert g_value(base, m) <= 10000
        result = star_2d(hammersley(base, m))
        assert result.normalized == pytest.approx(expected, abs=0.01), f"m={m}"


def test_phi_hammersley_band(phi):
    for m in range(2, 17):
        result = star_2d(hammersley(phi, m))
        assert 1.0 <= result.normalized <= 3.5


def test_dyadic_comparator():
    assert star_2d(hammersley_dyadic(1)).value == pytest.approx(0.75)
    for m in range(2, 7):
        arr = hammersley_dyadic(m).to_array()
        assert star_2d(arr).value == pytest.approx(brute_star([tuple(p) for p in arr]), abs=1e-12)


def test_large_sets_report_a_lower_bound(phi, debug):
    h = hammersley(phi, 9)
    exact = DiscrepancyCalculator(debug).star_2d(h)
    bounded = DiscrepancyCalculator(debug, large_n=10).star_2d(h)
    assert bounded.bound and not exact.bound
    assert bounded.value <= exact.value + 1e-12
    assert any(level == "warning" for level, _ in debug.records)


@pytest.mark.parametrize("m", range(4, 15))
def test_phi_hammersley_beats_the_dyadic_set(phi, m):
    n = g_value(phi, m)
    k = max(1, math.ceil(math.log2(n)))
    golden = star_2d(hammersley(phi, m)).normalized
    dyadic = star_2d(hammersley_dyadic(k)).normalized
    assert golden < dyadic
