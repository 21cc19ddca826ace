"""Dirichlet L-functions in the critical strip: values, log derivatives,
argument-principle zero counts and zero location.

L(s, chi) is assembled from Hurwitz zeta values,
L(s, chi) = q^{-s} sum_a chi(a) zeta(s, a/q); the trivial character mod 1
gives zeta itself.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .characters import DirichletCharacter, build_group, root_number
from .errors import ContourError, PoleError
from .specials import DEFAULT_POLICY, PrecisionPolicy, hurwitz_zeta, log_gamma

ZETA = build_group(1).character(0)


@dataclass(frozen=True)
class LValue:
    s: complex
    chi: DirichletCharacter
    value: complex
    est_abs_err: float


@dataclass(frozen=True)
class ZeroMatch:
    t: float
    m: int
    chi: DirichletCharacter
    localization_width: float


def _check_pole(s: np.ndarray, chi: DirichletCharacter):
    if chi.is_principal and np.any(np.abs(s - 1.0) == 0):
        raise PoleError("L(s, chi_0) has a pole at s = 1", location=1)


def l_values(s, chi: DirichletCharacter = ZETA, policy: PrecisionPolicy = DEFAULT_POLICY):
    """Vectorised L(s, chi) over an array of s."""
    scalar = np.ndim(s) == 0
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    _check_pole(s, chi)
    q = chi.q
    if q == 1:
        out = hurwitz_zeta(s, 1.0, policy)
    else:
        out = np.zeros(s.shape, dtype=complex)
        for a in range(1, q):
            c = chi.values[a]
            if c != 0:
                out += c * hurwitz_zeta(s, a / q, policy)
        out *= np.exp(-s * math.log(q))
    return complex(out.ravel()[0]) if scalar else out


def dirichlet_l(s, chi: DirichletCharacter = ZETA, policy: PrecisionPolicy = DEFAULT_POLICY) -> LValue:
    s = complex(s)
    val = l_values(s, chi, policy)
    err = max(chi.q, 1) * policy.target_abs_tol * max(1.0, abs(val))
    return LValue(s, chi, val, err)


def taylor_coefficients(chi, s, radius=0.1, nodes=64, policy=DEFAULT_POLICY):
    """Taylor coefficients c_k of L(., chi) about s from samples on a circle.

    Trapezoidal rule on |z - s| = radius, i.e. an FFT of the samples.
    Also returns the samples so callers can check for nearby zeros.
    """
    s = complex(s)
    if chi.is_principal and abs(s - 1.0) < 1.5 * radius:
        raise ContourError("contour too close to the pole at s = 1", s=str(s), radius=radius)
    theta = 2.0 * math.pi * np.arange(nodes) / nodes
    ring = s + radius * np.exp(1j * theta)
    vals = l_values(ring, chi, policy)
    coeffs = np.fft.fft(vals) / nodes / radius ** np.arange(nodes)
    return coeffs, vals


def _contour_guard(vals, center_val, radius):
    mags = np.abs(vals)
    if mags.min() < 1e-3 * np.median(mags):
        raise ContourError("a zero of L lies too close to the contour; retry with a smaller radius",
                           radius=radius)


def log_deriv_l(s, chi: DirichletCharacter = ZETA, radius: float = 0.1,
                policy: PrecisionPolicy = DEFAULT_POLICY) -> complex:
    """L'/L(s, chi) with L' from Cauchy's integral on a circle of given radius."""
    c, vals = taylor_coefficients(chi, s, radius, policy=policy)
    _contour_guard(vals, c[0], radius)
    return complex(c[1] / c[0])


def log_deriv_pair(s, chi: DirichletCharacter = ZETA, radius: float = 0.1, order: int = 0,
                   policy: PrecisionPolicy = DEFAULT_POLICY) -> tuple[complex, complex]:
    """(L'/L, (L'/L)') at s, regularised at a zero of the given order.

    For order m > 0 this returns the limits of L'/L - m/(z-s) and
    (L'/L)' + m/(z-s)^2 as z -> s, read off the Laurent expansion.
    """
    c, vals = taylor_coefficients(chi, s, radius, policy=policy)
    if order == 0:
        _contour_guard(vals, c[0], radius)
    lead = c[order]
    b1 = c[order + 1] / lead
    b2 = c[order + 2] / lead
    return complex(b1), complex(2.0 * b2 - b1 * b1)


# --- argument principle ---------------------------------------------------

class _BoundaryZero(Exception):
    pass


def _winding(f, corners, init_step=0.05, max_rounds=60, min_len=1e-11):
    """Winding number of f around the closed polygon through ``corners``."""
    pts = []
    for a, b in zip(corners, corners[1:] + corners[:1]):
        n = max(8, int(math.ceil(abs(b - a) / init_step)))
        pts.append(a + (b - a) * np.arange(n) / n)
    z = np.concatenate(pts + [np.array([corners[0]])])
    fz = f(z)
    for _ in range(max_rounds):
        ratio = fz[1:] / fz[:-1]
        darg = np.angle(ratio)
        seg = np.abs(np.diff(z))
        wild = (np.abs(darg) > math.pi / 6) | (np.abs(np.log(np.abs(ratio))) > 0.5)
        if np.any(wild & (seg <= min_len)):
            raise _BoundaryZero
        bad = np.flatnonzero(wild)
        if bad.size == 0:
            w = darg.sum() / (2.0 * math.pi)
            k = round(w)
            if abs(w - k) > 0.05:  # pragma: no cover - defensive
                raise ContourError("argument principle did not settle on an integer", winding=w)
            return int(k)
        mid = 0.5 * (z[bad] + z[bad + 1])
        fm = f(mid)
        z = np.insert(z, bad + 1, mid)
        fz = np.insert(fz, bad + 1, fm)
    raise ContourError("argument principle refinement did not converge")


def count_zeros_rect(chi: DirichletCharacter, t_lo: float, t_hi: float,
                     sigma_pad: float = 0.49, policy: PrecisionPolicy = DEFAULT_POLICY) -> int:
    """Number of zeros of L(s, chi) in [1/2 - pad, 1/2 + pad] x [t_lo, t_hi]."""
    if t_hi <= t_lo:
        return 0
    f = lambda z: l_values(z, chi, policy)
    lo, hi = 0.5 - sigma_pad, 0.5 + sigma_pad
    steps = [0.0, 1e-5, -2e-5, 4e-5]
    for i, d in enumerate(steps):
        a, b = t_lo + d, t_hi - d
        corners = [complex(lo, a), complex(hi, a), complex(hi, b), complex(lo, b)]
        try:
            return _winding(f, corners)
        except _BoundaryZero:
            continue
    raise ContourError("a zero persists on the rectangle boundary after 3 perturbations",
                       t_lo=t_lo, t_hi=t_hi)


def _hardy(chi_star: DirichletCharacter, t: np.ndarray, policy=DEFAULT_POLICY) -> np.ndarray:
    """Real rotation of L(1/2 + it, chi*) whose sign changes are zeros."""
    q, kappa = chi_star.q, chi_star.kappa
    eps = root_number(chi_star) if q > 1 else 1.0
    half = cmath.phase(eps) / 2.0
    s = 0.5 + 1j * np.asarray(t, dtype=float)
    w = (s + kappa) / 2.0
    lg = np.array([log_gamma(x).imag for x in w]) if w.size < 64 else _im_log_gamma(w)
    phase = (w * math.log(q / math.pi)).imag + lg - half
    vals = l_values(s, chi_star, policy) * np.exp(1j * phase)
    return vals.real


def _im_log_gamma(w: np.ndarray) -> np.ndarray:
    # Stirling for Im log Gamma, after shifting Re w >= 8 (here Re w is 1/4 or 3/4)
    shift = np.zeros(w.shape)
    z = w.copy()
    for _ in range(8):
        shift -= np.angle(z)
        z = z + 1.0
    # unwrap: the sum of args is continuous in t, no branch issue for Im w > 0
    inv = 1.0 / z
    inv2 = inv * inv
    series = inv * (1 / 12 - inv2 * (1 / 360 - inv2 * (1 / 1260 - inv2 * (1 / 1680 - inv2 / 1188))))
    lg = (z - 0.5) * np.log(z) - z + 0.5 * math.log(2 * math.pi) + series
    return lg.imag + shift


def locate_zeros(chi: DirichletCharacter, t_lo: float, t_hi: float, *, width: float = 1e-6,
                 policy: PrecisionPolicy = DEFAULT_POLICY) -> list[ZeroMatch]:
    """Zeros of L(s, chi) with ordinate in (t_lo, t_hi], each with its order.

    Candidates come from sign changes of the rotated real function on the
    critical line; every block is then certified by an argument-principle
    count, and blocks where the two disagree are resolved by bisection on
    rectangle counts alone.
    """
    star = chi.primitive
    grid_h = 0.02
    n = max(2, int(math.ceil((t_hi - t_lo) / grid_h)) + 1)
    grid = np.linspace(t_lo, t_hi, n)
    vals = _hardy(star, grid, policy)
    sc = np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)
    a, b = grid[sc], grid[sc + 1]
    fa = vals[sc]
    while a.size and np.max(b - a) > 1e-10 * max(1.0, abs(t_hi)):
        m = 0.5 * (a + b)
        fm = _hardy(star, m, policy)
        same = np.sign(fm) == np.sign(fa)
        a, fa, b = np.where(same, m, a), np.where(same, fm, fa), np.where(same, b, m)
    cands = list(0.5 * (a + b))
    loc = float(np.max(b - a)) if a.size else 0.0

    # certify in blocks whose edges sit midway between candidates
    out: list[ZeroMatch] = []
    edges = _block_edges(t_lo, t_hi, cands, 8.0)
    for lo, hi in zip(edges, edges[1:]):
        inside = [c for c in cands if lo < c <= hi]
        total = count_zeros_rect(chi, lo, hi, policy=policy)
        if total == len(inside):
            out.extend(ZeroMatch(float(c), 1, chi, loc) for c in inside)
        else:
            out.extend(_bisect_counts(chi, lo, hi, total, width, policy))
    return out


def _block_edges(t_lo, t_hi, cands, size):
    edges = [t_lo]
    c = sorted(cands)
    while t_hi - edges[-1] > size:
        target = edges[-1] + size
        # nudge to the midpoint of the gap containing target
        k = int(np.searchsorted(c, target))
        if 0 < k < len(c):
            target = 0.5 * (c[k - 1] + c[k])
        elif k == len(c) and c and c[-1] > edges[-1]:
            target = max(target, c[-1] + 0.05)
        if target <= edges[-1] + 1e-3 or target >= t_hi:
            break
        edges.append(float(target))
    edges.append(t_hi)
    return edges


def _bisect_counts(chi, lo, hi, total, width, policy):
    if total == 0:
        return []
    if hi - lo <= width:
        return [ZeroMatch(0.5 * (lo + hi), total, chi, hi - lo)]
    mid = 0.5 * (lo + hi)
    lower = count_zeros_rect(chi, lo, mid, policy=policy)
    return (_bisect_counts(chi, lo, mid, lower, width, policy)
            + _bisect_counts(chi, mid, hi, total - lower, width, policy))


def find_zero_ordinates(chi: DirichletCharacter, T: float, t_lo: float = 0.0,
                        policy: PrecisionPolicy = DEFAULT_POLICY):
    """ZeroList of L(s, chi) ordinates in (t_lo, T], multiplicity by repetition."""
    from .zerodata import ZeroList, label_for

    if T > 1000.0:
        raise ValueError("find_zero_ordinates is limited to heights <= 1000; ingest a zero file")
    matches = locate_zeros(chi, t_lo, T, policy=policy) if T > t_lo else []
    ords = [z.t for z in matches for _ in range(z.m)]
    return ZeroList(label_for(chi), np.array(sorted(ords), dtype=float), float(T), "computed",
                    t_min=float(t_lo))


def order_at(chi: DirichletCharacter, t: float, policy: PrecisionPolicy = DEFAULT_POLICY) -> int:
    return count_zeros_rect(chi, t - 1e-4, t + 1e-4, policy=policy)


def riemann_von_mangoldt(T: float) -> float:
    """Smooth zero count (T/2pi) log(T/2pi e) + 7/8 for zeta."""
    if T <= 0:
        return 0.0
    return T / (2 * math.pi) * math.log(T / (2 * math.pi * math.e)) + 7.0 / 8.0
