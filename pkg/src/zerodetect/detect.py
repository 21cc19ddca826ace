"""Scan |sum_a conj(chi(a)) Z(x; t, a/q)| over t, pick out peaks and read off
zero orders from the growth in log x."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import find_peaks as _scipy_peaks

from .characters import DirichletCharacter
from .errors import DegenerateShiftError, DomainError, NoDivergenceError
from .sums import TWO_PI, twisted_slope, twisted_zero_sum
from .zerodata import ZeroList


@dataclass
class ScanCurve:
    chi: DirichletCharacter
    x: float
    grid: np.ndarray
    magnitudes: np.ndarray
    skipped: np.ndarray

    @property
    def h(self) -> float:
        return float(self.grid[1] - self.grid[0]) if self.grid.size > 1 else 0.0


@dataclass
class PeakReport:
    t_star: float
    height: float
    prominence: float
    matched_ordinate: float | None = None
    residual: float | None = None
    fitted_m: int | None = None
    candidates: list = field(default_factory=list)

    @property
    def ambiguous(self) -> bool:
        return len(self.candidates) > 1


def make_grid(t_lo: float, t_hi: float, h: float) -> np.ndarray:
    """t_lo + k h for k = 0..n; halving h reproduces every node bit for bit."""
    if not h > 0:
        raise DomainError("grid step must be positive", h=h)
    n = int(math.floor((t_hi - t_lo) / h + 1e-9))
    return t_lo + np.arange(n + 1) * h


def scan_grid(chi: DirichletCharacter, Z: ZeroList, x: float, t_lo: float, t_hi: float,
              h: float, threads: int = 1) -> ScanCurve:
    """|twisted zero sum| on a uniform grid.

    Grid points within 1e-6 of an ordinate in Z are skipped and filled by
    linear interpolation (display only; ``skipped`` flags them).
    """
    q = chi.q
    worst = max(a for a in range(1, q + 1) if math.gcd(a, q) == 1)
    Z.require(t_hi + TWO_PI * worst / q * x, low=t_lo)
    grid = make_grid(t_lo, t_hi, h)

    def one(t):
        try:
            return abs(twisted_zero_sum(Z, x, float(t), chi).value)
        except DegenerateShiftError:
            return math.nan

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            mags = np.array(list(pool.map(one, grid)))
    else:
        mags = np.array([one(t) for t in grid])
    ords = Z.ordinates
    k = np.clip(np.searchsorted(ords, grid), 1, max(ords.size - 1, 1)) if ords.size else None
    if ords.size > 1:
        dist = np.minimum(np.abs(ords[k - 1] - grid), np.abs(ords[k] - grid))
    elif ords.size == 1:
        dist = np.abs(ords[0] - grid)
    else:
        dist = np.full(grid.shape, np.inf)
    skipped = (dist < 1e-6) | np.isnan(mags)
    if skipped.any() and (~skipped).sum() >= 2:
        mags[skipped] = np.interp(grid[skipped], grid[~skipped], mags[~skipped])
    elif skipped.any():
        mags[skipped] = 0.0
    return ScanCurve(chi, float(x), grid, mags, skipped)


def _parabolic(grid, y, i):
    if i == 0 or i == len(y) - 1:
        return float(grid[i]), float(y[i])
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    den = y0 - 2 * y1 + y2
    if den >= 0:
        return float(grid[i]), float(y1)
    off = 0.5 * (y0 - y2) / den
    h = grid[1] - grid[0]
    return float(grid[i] + off * h), float(y1 - 0.25 * (y0 - y2) * off)


def find_peaks(curve: ScanCurve, min_prominence: float | None = None,
               reference: ZeroList | None = None, window: float = 0.1) -> list[PeakReport]:
    """Local maxima of the curve with enough prominence, refined by a parabola
    through the three nodes around each maximum.

    Args:
        curve: scanned magnitudes.
        min_prominence: defaults to half the median magnitude.
        reference: zero ordinates to match against.
        window: largest accepted |t_star - ordinate|.
    """
    y = curve.magnitudes
    if y.size < 3:
        return []
    if min_prominence is None:
        min_prominence = 0.5 * float(np.median(y))
    idx, props = _scipy_peaks(y, prominence=max(min_prominence, 1e-300))
    out = []
    for i, prom in zip(idx, props["prominences"]):
        t_star, height = _parabolic(curve.grid, y, int(i))
        rep = PeakReport(t_star, height, float(prom))
        if reference is not None:
            cands = reference.window(t_star - window, t_star + window)
            rep.candidates = [float(c) for c in np.unique(cands)]
            if rep.candidates:
                best = min(rep.candidates, key=lambda c: abs(c - t_star))
                rep.matched_ordinate = best
                rep.residual = abs(best - t_star)
        out.append(rep)
    return out


def unmatched_ordinates(peaks: list[PeakReport], reference: ZeroList, lo: float, hi: float,
                        window: float = 0.1) -> list[float]:
    """Reference ordinates in (lo, hi) with no peak within the window."""
    ts = np.array([p.t_star for p in peaks])
    miss = []
    for g in reference.window(lo, hi):
        if g >= hi:
            continue
        if ts.size == 0 or np.min(np.abs(ts - g)) > window:
            miss.append(float(g))
    return miss


@dataclass
class OrderFit:
    m: int
    normalized_slope: float
    slope: float
    intercept: float
    residual: float


def fit_order_slope(chi: DirichletCharacter, Z: ZeroList, t_star: float, xs) -> OrderFit:
    """Order of L(s, chi) at 1/2 + i t_star from the growth of the twisted sum.

    Least-squares slope of |twisted sum| against log x, normalised by the
    single-zero slope |tau(chi)|/(2 sqrt(2 pi)).

    Raises:
        NoDivergenceError: normalised slope below 0.3.
    """
    xs = np.asarray(sorted(xs), dtype=float)
    if xs.size < 3:
        raise DomainError("need at least three x values")
    if xs[-1] < 10 * xs[0]:
        raise DomainError("x values should span at least a decade")
    lx = np.log(xs)
    mags = np.array([abs(twisted_zero_sum(Z, float(x), t_star, chi).value) for x in xs])
    A = np.vstack([lx, np.ones_like(lx)]).T
    (slope, icpt), *_ = np.linalg.lstsq(A, mags, rcond=None)
    resid = float(np.sqrt(np.mean((A @ np.array([slope, icpt]) - mags) ** 2)))
    norm = slope / twisted_slope(chi)
    if norm <= 0.3:
        raise NoDivergenceError("no divergence detected at this ordinate", t=t_star,
                                normalized_slope=float(norm))
    return OrderFit(max(1, int(round(norm))), float(norm), float(slope), float(icpt), resid)
