"""Generate a table of zeta-zero ordinates for the test suite.

Development tooling only; the library never evaluates Riemann-Siegel sums.
Low zeros come from mpmath.zetazero, the rest from a vectorised
Riemann-Siegel Z(t) with the C0..C4 remainder terms, bracketed by sign
changes on a fine grid and refined by bisection.  The result is checked
against mpmath.zetazero at spot indices and against a running average of
S(T) = N(T) - theta(T)/pi - 1.

Usage:
    python tools/make_zeta_zeros.py --count 100000 --out tests/data/zeta_zeros_100k.txt.gz
"""
import argparse
import gzip
import math
import sys
import time

import mpmath
import numpy as np

TWO_PI = 2.0 * math.pi


def _psi_taylor(degree=44):
    """Taylor coefficients of cos(2pi(p^2-p-1/16))/cos(2pi p) about p = 1/2."""
    mpmath.mp.dps = 60
    f = lambda p: mpmath.cos(2 * mpmath.pi * (p * p - p - mpmath.mpf(1) / 16)) / mpmath.cos(2 * mpmath.pi * p)
    coeffs = mpmath.taylor(f, mpmath.mpf(1) / 2, degree)
    mpmath.mp.dps = 15
    return np.polynomial.Polynomial([float(c) for c in coeffs])


_PSI = _psi_taylor()
_D = [_PSI.deriv(k) if k else _PSI for k in range(13)]
_PI2 = math.pi ** 2


def _c_terms(u):
    d = [poly(u) for poly in _D]
    c0 = d[0]
    c1 = -d[3] / (96 * _PI2)
    c2 = d[2] / (64 * _PI2) + d[6] / (18432 * _PI2 ** 2)
    c3 = -d[1] / (64 * _PI2) - d[5] / (3840 * _PI2 ** 2) - d[9] / (5308416 * _PI2 ** 3)
    c4 = (d[0] / (128 * _PI2) + 19 * d[4] / (24576 * _PI2 ** 2)
          + 11 * d[8] / (5898240 * _PI2 ** 3) + d[12] / (2038431744 * _PI2 ** 4))
    return c0, c1, c2, c3, c4


def theta(t):
    t = np.asarray(t, dtype=float)
    return (t / 2 * np.log(t / TWO_PI) - t / 2 - math.pi / 8
            + 1 / (48 * t) + 7 / (5760 * t ** 3) + 31 / (80640 * t ** 5))


def siegel_z(t):
    t = np.atleast_1d(np.asarray(t, dtype=float))
    a = np.sqrt(t / TWO_PI)
    n_t = np.floor(a).astype(np.int64)
    nmax = int(n_t.max())
    th = theta(t)
    total = np.zeros_like(t)
    for n in range(1, nmax + 1):
        term = np.cos(th - t * math.log(n)) / math.sqrt(n)
        total += np.where(n <= n_t, term, 0.0)
    total *= 2.0
    p = a - n_t
    c = _c_terms(p - 0.5)
    tau = np.sqrt(TWO_PI / t)
    rem = c[0] + tau * (c[1] + tau * (c[2] + tau * (c[3] + tau * c[4])))
    sign = np.where(n_t % 2 == 1, 1.0, -1.0)
    return total + sign * (t / TWO_PI) ** -0.25 * rem


def rs_zeros(t_lo, t_hi, oversample=64, chunk=200_000):
    """All sign changes of Z in (t_lo, t_hi], refined to ~1e-12."""
    out = []
    t = t_lo
    z_prev = siegel_z(t)[0]
    while t < t_hi:
        gap = TWO_PI / math.log(t / TWO_PI)
        h = gap / oversample
        grid = t + h * np.arange(1, chunk + 1)
        grid = grid[grid <= t_hi + h]
        zs = siegel_z(grid)
        left = np.concatenate([[t], grid[:-1]])
        zl = np.concatenate([[z_prev], zs[:-1]])
        idx = np.nonzero(np.sign(zl) * np.sign(zs) < 0)[0]
        a, b = left[idx], grid[idx]
        fa = zl[idx]
        for _ in range(45):
            m = 0.5 * (a + b)
            fm = siegel_z(m)
            same = np.sign(fm) == np.sign(fa)
            a = np.where(same, m, a)
            fa = np.where(same, fm, fa)
            b = np.where(same, b, m)
        out.append(0.5 * (a + b))
        t, z_prev = grid[-1], zs[-1]
        print(f"  t={t:.1f} zeros so far {sum(len(o) for o in out)}", file=sys.stderr)
    return np.concatenate(out)


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=100_000)
    ap.add_argument("--low", type=int, default=300, help="zeros taken from mpmath")
    ap.add_argument("--out", required=True)
    args = ap.parse_args(argv)

    t0 = time.time()
    low = [float(mpmath.zetazero(n).imag) for n in range(1, args.low + 1)]
    print(f"mpmath low zeros done in {time.time() - t0:.1f}s", file=sys.stderr)
    start = 0.5 * (low[-2] + low[-1])
    t_top = float(mpmath.zetazero(args.count).imag)
    high = rs_zeros(start, t_top + 0.05)
    overlap = high[high <= low[-1] + 1e-9]
    if len(overlap) != 1 or abs(overlap[0] - low[-1]) > 1e-8:
        raise SystemExit(f"overlap mismatch: {overlap} vs {low[-1]}")
    zeros = np.concatenate([low[:-1], high])[: args.count]
    if len(zeros) != args.count:
        raise SystemExit(f"found {len(zeros)} zeros, expected {args.count}")

    checks = sorted(set(list(range(1000, args.count + 1, 2500)) + [args.count, 7005, 7006, 17143]))
    worst = 0.0
    for n in checks:
        if n > args.count:
            continue
        ref = float(mpmath.zetazero(n).imag)
        worst = max(worst, abs(ref - zeros[n - 1]))
    print(f"spot checks {len(checks)}: worst deviation {worst:.3e}", file=sys.stderr)
    if worst > 1e-8:
        raise SystemExit("spot check failed")

    counts = np.arange(1, len(zeros) + 1)
    s_vals = counts - 0.5 - theta(zeros) / math.pi - 1
    window = np.convolve(s_vals, np.ones(500) / 500, mode="valid")
    print(f"running mean of S: min {window.min():.3f} max {window.max():.3f}", file=sys.stderr)
    if np.abs(window).max() > 0.5:
        raise SystemExit("S(T) drift: a zero was likely missed")

    with gzip.open(args.out, "wt", encoding="utf-8") as fh:
        fh.write(f"# first {args.count} nontrivial zeta zero ordinates\n")
        fh.write("# mpmath.zetazero below 300, Riemann-Siegel C0..C4 above; see tools/make_zeta_zeros.py\n")
        for g in zeros:
            fh.write(f"{g:.12f}\n")
    print(f"wrote {args.out} in {time.time() - t0:.1f}s", file=sys.stderr)


if __name__ == "__main__":
    main()
