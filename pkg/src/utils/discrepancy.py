"""
Star and L2 Discrepancy for Irrational Base Nets
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import qmc

from ..models.point_set import PointSet
from .config import NetConfig
from .errors import DomainError

CLOSED = "closed"
OPEN = "open"


@dataclass(frozen=True)
class Witness:
    """Upper corner of the anchored box attaining the sup, and which count was used."""

    x: float
    y: Optional[float]
    kind: str


@dataclass
class DiscResult:
    n: int
    value: float
    normalized: Optional[float] = None
    witness: Optional[Witness] = None
    measure: str = "star"
    bound: bool = False


def normalize(value, n):
    """value * N / log10(N)"""
    if n < 2:
        raise DomainError(f"normalization needs N >= 2, got {n}")
    return value * n / math.log10(n)


def _as_array(points, s=None):
    if isinstance(points, PointSet):
        arr = points.to_array()
    else:
        arr = np.asarray(points, dtype=float)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
    if arr.shape[0] == 0:
        raise DomainError("discrepancy of an empty point set")
    if s is not None and arr.shape[1] != s:
        raise DomainError(f"points have dimension {arr.shape[1]}, expected {s}")
    if np.any(arr < 0.0) or np.any(arr >= 1.0):
        raise DomainError("coordinates must lie in [0,1)")
    return arr


def local_discrepancy(points, corner, kind=CLOSED):
    """
    Signed gap at one anchored box: count/N - volume for closed boxes,
    volume - count/N for open ones.
    """
    arr = _as_array(points)
    corner = np.asarray(corner, dtype=float)
    if kind == CLOSED:
        inside = np.all(arr <= corner, axis=1)
        return inside.sum() / len(arr) - float(np.prod(corner))
    inside = np.all(arr < corner, axis=1)
    return float(np.prod(corner)) - inside.sum() / len(arr)


class DiscrepancyCalculator:
    """
    Exact discrepancies of small and medium point sets.

    The planar star sweep walks the distinct x values in increasing order and keeps
    a histogram of y ranks; columns are split among `threads` workers.
    """

    def __init__(self, debug=logging, threads=None, large_n=None):
        self.debug = debug
        self.threads = threads or NetConfig.threads()
        self.large_n = large_n or NetConfig.LARGE_N_THRESHOLD

    def _finish(self, n, value, witness, measure, normalized, bound=False):
        norm = normalize(value, n) if normalized and n >= 2 else None
        return DiscResult(n, float(value), norm, witness, measure, bound)

    def star_1d(self, xs, normalized=True):
        """
        D* of a 1-D set from the sorted order statistics.

        Returns:
            DiscResult: value max_i max(i/N - x_(i), x_(i) - (i-1)/N)
        """
        arr = np.sort(_as_array(xs, 1)[:, 0])
        n = len(arr)
        i = np.arange(1, n + 1)
        closed = i / n - arr
        opened = arr - (i - 1) / n
        ic, io = int(np.argmax(closed)), int(np.argmax(opened))
        if closed[ic] >= opened[io]:
            value, witness = closed[ic], Witness(float(arr[ic]), None, CLOSED)
        else:
            value, witness = opened[io], Witness(float(arr[io]), None, OPEN)
        return self._finish(n, value, witness, "star", normalized)

    def _sweep(self, rx, ry, ux, uy, start, stop, n, closed_only, stride):
        """Best (value, column, row, kind) over columns start..stop-1."""
        hist = np.bincount(ry[rx < start], minlength=len(uy)).astype(np.int64)
        order = np.argsort(rx, kind="stable")
        rx_sorted = rx[order]
        lo = np.searchsorted(rx_sorted, start, side="left")
        best = (-np.inf, -1, -1, CLOSED)
        for c in range(start, stop):
            hi = np.searchsorted(rx_sorted, c, side="right")
            column = ry[order[lo:hi]]
            lo = hi
            a = ux[c]
            evaluate = (c - start) % stride == 0 or c == stop - 1
            if evaluate and not closed_only:
                before = np.cumsum(hist) - hist
                gap = a * uy - before / n
                j = int(np.argmax(gap))
                if gap[j] > best[0]:
                    best = (float(gap[j]), c, j, OPEN)
            if column.size:
                np.add.at(hist, column, 1)
            if evaluate:
                after = np.cumsum(hist)
                gap = after / n - a * uy
                j = int(np.argmax(gap))
                if gap[j] > best[0]:
                    best = (float(gap[j]), c, j, CLOSED)
        return best

    def star_2d(self, points, normalized=True):
        """
        Exact planar star discrepancy over the grid of coordinates and 1.

        Above `large_n` points only closed counts on a subset of columns are
        evaluated and the result is flagged as a lower bound.
        """
        arr = _as_array(points, 2)
        n = len(arr)
        ux = np.append(np.unique(arr[:, 0]), 1.0)
        uy = np.append(np.unique(arr[:, 1]), 1.0)
        rx = np.searchsorted(ux, arr[:, 0])
        ry = np.searchsorted(uy, arr[:, 1])
        bound = n > self.large_n
        stride = max(1, math.ceil(len(ux) / self.large_n)) if bound else 1
        workers = max(1, min(self.threads, len(ux)))
        edges = np.linspace(0, len(ux), workers + 1).astype(int)
        chunks = [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]
        self.debug.info(f"DiscrepancyCalculator: N={n}, grid {len(ux)}x{len(uy)}, {len(chunks)} chunk(s)")
        if len(chunks) == 1:
            results = [self._sweep(rx, ry, ux, uy, 0, len(ux), n, bound, stride)]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                futures = [
                    pool.submit(self._sweep, rx, ry, ux, uy, a, b, n, bound, stride)
                    for a, b in chunks
                ]
                results = [f.result() for f in futures]
        value, c, j, kind = results[0]
        for candidate in results[1:]:
            if candidate[0] > value:
                value, c, j, kind = candidate
        if bound:
            self.debug.warning(f"DiscrepancyCalculator: N={n} above {self.large_n}, reporting a lower bound")
        witness = Witness(float(ux[c]), float(uy[j]), kind)
        return self._finish(n, max(value, 0.0), witness, "star", normalized, bound)

    def l2(self, points, s=None, normalized=True, engine="numpy", chunk=512):
        """
        L2 star discrepancy by the Warnock double sum.

        Args:
            engine (str): "numpy" for the chunked closed form, "scipy" for qmc.discrepancy
        """
        arr = _as_array(points, s)
        n, dim = arr.shape
        if engine == "scipy":
            value = float(qmc.discrepancy(arr, method="L2-star"))
        elif engine == "numpy":
            one = np.prod(1.0 - arr**2, axis=1).sum()
            two = 0.0
            for start in range(0, n, chunk):
                block = arr[start:start + chunk]
                two += np.prod(1.0 - np.maximum(block[:, None, :], arr[None, :, :]), axis=2).sum()
            squared = 3.0 ** (-dim) - 2.0 ** (1 - dim) / n * one + two / n**2
            value = math.sqrt(max(squared, 0.0))
        else:
            raise DomainError(f"unknown L2 engine {engine!r}")
        return self._finish(n, value, None, "l2", normalized)


def star_1d(xs, normalized=True, debug=logging):
    return DiscrepancyCalculator(debug).star_1d(xs, normalized)


def star_2d(points, normalized=True, threads=None, debug=logging):
    return DiscrepancyCalculator(debug, threads).star_2d(points, normalized)


def l2(points, s=None, normalized=True, engine="numpy", debug=logging):
    return DiscrepancyCalculator(debug).l2(points, s, normalized, engine)
