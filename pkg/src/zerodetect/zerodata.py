"""Ordered lists of zero ordinates: loading, saving, validation and mirroring.

Files are UTF-8 text (optionally gzip-compressed), one decimal ordinate per
line, ``#`` starting a comment. Repeated lines mean a multiple zero.
"""
from __future__ import annotations

import gzip
import math
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import CoverageError, ZeroFileError


@dataclass(frozen=True)
class ZeroList:
    """Ascending ordinates of one L-function with certified coverage.

    ``t_min`` is 0 for ordinary lists and negative after mirroring, so that
    sums know which negative ordinates are available.
    """

    label: str
    ordinates: np.ndarray
    t_max: float
    source: str
    t_min: float = 0.0

    def __post_init__(self):
        arr = np.array(self.ordinates, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "ordinates", arr)
        if arr.size and np.any(np.diff(arr) < 0):
            raise ZeroFileError("ordinates must be ascending")
        if arr.size and (arr[0] < self.t_min or arr[-1] > self.t_max):
            raise ZeroFileError("ordinates fall outside [t_min, t_max]",
                                t_min=self.t_min, t_max=self.t_max)

    def __len__(self):
        return int(self.ordinates.size)

    def count_upto(self, T: float) -> int:
        return int(np.searchsorted(self.ordinates, T, side="right"))

    def window(self, lo: float, hi: float) -> np.ndarray:
        """Ordinates g with lo < g <= hi."""
        i = np.searchsorted(self.ordinates, lo, side="right")
        j = np.searchsorted(self.ordinates, hi, side="right")
        return self.ordinates[i:j]

    def require(self, height: float, low: float | None = None):
        if height > self.t_max:
            raise CoverageError(f"zero list {self.label!r} covers only up to {self.t_max:g}",
                                required_height=height, available_height=self.t_max)
        if low is not None and low < self.t_min:
            raise CoverageError(f"zero list {self.label!r} has no ordinates below {self.t_min:g}",
                                required_height=low, available_height=self.t_min)


def label_for(chi) -> str:
    """"zeta" for characters whose primitive is trivial, else "L/q.index"."""
    return "zeta" if chi.primitive.q == 1 else f"L/{chi.label}"


def _open_text(path: Path):
    if path.suffix == ".gz":
        return gzip.open(path, "rt", encoding="utf-8")
    return open(path, "r", encoding="utf-8")


def load_zeros(path, label: str = "zeta") -> ZeroList:
    """Read a zero file.

    A header comment ``# t_max: <value>`` overrides the default coverage
    height (the last ordinate); lists written by :func:`save_zeros` carry it.

    Raises:
        ZeroFileError: unreadable line (with line number) or descending input.
    """
    path = Path(path)
    if not path.exists():
        raise ZeroFileError(f"zero file not found: {path}", path=str(path))
    vals, lines = [], []
    t_max_hdr = None
    with _open_text(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            s = raw.strip()
            if not s:
                continue
            if s.startswith("#"):
                body = s[1:].strip()
                if body.startswith("t_max:"):
                    t_max_hdr = float(body.split(":", 1)[1])
                continue
            try:
                v = float(s.split()[0])
            except ValueError:
                raise ZeroFileError(f"{path}:{lineno}: cannot parse {s!r}", line=lineno) from None
            if not math.isfinite(v) or v <= 0:
                raise ZeroFileError(f"{path}:{lineno}: ordinate must be positive", line=lineno)
            vals.append(v)
            lines.append(lineno)
    arr = np.array(vals, dtype=float)
    bad = np.flatnonzero(np.diff(arr) < 0) + 1
    if bad.size:
        where = [lines[i] for i in bad[:20]]
        raise ZeroFileError(f"{path}: ordinates not ascending at lines {where}", lines=where)
    t_max = float(arr[-1]) if arr.size else 0.0
    if t_max_hdr is not None:
        t_max = max(t_max, t_max_hdr)
    return ZeroList(label, arr, t_max, f"file:{path}")


def atomic_write_text(path, text: str):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def format_zeros(Z: ZeroList) -> str:
    head = [f"# label: {Z.label}", f"# t_max: {Z.t_max!r}", f"# source: {Z.source}"]
    return "\n".join(head + [repr(float(v)) for v in Z.ordinates]) + "\n"


def save_zeros(Z: ZeroList, path):
    """Write in the canonical text form; shortest round-trip decimal per line."""
    atomic_write_text(path, format_zeros(Z))


def smooth_count(T):
    """(T/2pi) log(T/(2 pi e)) + 7/8."""
    T = np.asarray(T, dtype=float)
    return T / (2 * math.pi) * np.log(T / (2 * math.pi * math.e)) + 0.875


@dataclass
class CountReport:
    max_deviation: float
    worst_T: float
    passed: bool
    mean_S_worst: float = 0.0
    failing_windows: list = field(default_factory=list)


def validate_counts(Z: ZeroList, window_zeros: int = 200, mean_tol: float = 0.5) -> CountReport:
    """Compare counts with the smooth zeta zero count.

    Two checks: the pointwise slack |N(T) - smooth(T)| <= 2 + log T for
    T in [1, t_max], and the windowed mean of S(T) = N(T) - smooth(T) staying
    within ``mean_tol`` of zero. The second is what catches a single missing
    or duplicated zero, which the O(log T) slack alone cannot see.
    """
    if Z.label != "zeta":
        raise ValueError("validate_counts applies to zeta lists only")
    if Z.t_max < 1.0:
        return CountReport(0.0, 0.0, True)
    g = Z.ordinates[Z.ordinates > 0]
    # the deviation is extremal just before and at each jump
    pts = np.concatenate([g[g >= 1.0], np.arange(1.0, Z.t_max, 0.5), [Z.t_max]])
    left = np.searchsorted(g, pts, side="left") - smooth_count(pts)
    right = np.searchsorted(g, pts, side="right") - smooth_count(pts)
    dev = np.maximum(np.abs(left), np.abs(right))
    slack = 2.0 + np.log(pts)
    i = int(np.argmax(dev))
    ok = bool(np.all(dev <= slack))

    # windowed mean of S on a fine grid
    fails, worst_mean = [], 0.0
    if g.size >= 10:
        edges = list(g[::window_zeros][1:]) + [Z.t_max]
        lo = max(1.0, g[0] - 1.0)
        for hi in edges:
            if hi - lo < 5.0:
                continue
            grid = np.linspace(lo, hi, max(200, int((hi - lo) * 50)))
            S = np.searchsorted(g, grid, side="right") - smooth_count(grid)
            m = float(S.mean())
            if abs(m) > abs(worst_mean):
                worst_mean = m
            if abs(m) > mean_tol:
                fails.append((float(lo), float(hi)))
            lo = hi
    return CountReport(float(dev.max()), float(pts[i]), ok and not fails, worst_mean, fails)


def mirror_for_shift(Z: ZeroList, t: float, conjugate: ZeroList | None = None) -> ZeroList:
    """Add negative ordinates when a negative shift t needs them.

    zeta zeros are symmetric; for an L-function the negative ordinates are
    the negated ordinates of the conjugate character's list.
    """
    if t >= 0 or Z.t_min < 0:
        return Z
    if Z.label == "zeta":
        src = Z
    elif conjugate is None:
        raise CoverageError(f"negative shift for {Z.label} needs the conjugate character's zeros",
                            required_height=t)
    else:
        src = conjugate
    neg = -src.ordinates[::-1]
    return ZeroList(Z.label, np.concatenate([neg, Z.ordinates]), Z.t_max, Z.source,
                    t_min=-src.t_max)


def merge(a: ZeroList, b: ZeroList, tol: float = 1e-5) -> ZeroList:
    """Combine two lists for the same L-function after checking overlap."""
    if a.label != b.label:
        raise ValueError("cannot merge lists of different L-functions")
    h = min(a.t_max, b.t_max)
    for x, y in ((a, b), (b, a)):
        xs, ys = x.window(0.0, h - tol), y.ordinates
        if xs.size and ys.size:
            k = np.clip(np.searchsorted(ys, xs), 1, ys.size - 1)
            d = np.minimum(np.abs(ys[k - 1] - xs), np.abs(ys[k] - xs))
            if np.any(d > tol):
                raise ZeroFileError("zero lists disagree in their overlap",
                                    ordinate=float(xs[np.argmax(d)]))
        elif xs.size:
            raise ZeroFileError("zero lists disagree in their overlap")
    if a.count_upto(h) != b.count_upto(h):
        raise ZeroFileError("zero lists disagree on the count in their overlap")
    tall = a if a.t_max >= b.t_max else b
    return ZeroList(a.label, tall.ordinates, tall.t_max, "merged", t_min=min(a.t_min, b.t_min))
