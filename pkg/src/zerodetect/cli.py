"""Command-line interface: ``zerodetect <command> [options]``.

Options may also come from a ``key = value`` file given by ``--config``;
keys mirror the long flag names and command-line flags take precedence.
The environment variable ZERODETECT_ZEROS_DIR names a directory searched
for a zeta zero file (zeta.txt, zeta.txt.gz or zeta_zeros*.txt[.gz]) when
``--zeros`` is not given.
"""
from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .arith import sieve_lambda
from .characters import character_from_label
from .detect import find_peaks, fit_order_slope, make_grid, scan_grid, unmatched_ordinates
from .emit import write_csv, write_json, write_svg
from .errors import ZeroDetectError
from .lfunc import ZETA, find_zero_ordinates, log_deriv_l
from .sums import (CSV_HEADER, SQRT_2PI, RationalPhase, SumParams, csv_row, fujii_main_term,
                   fujii_sum, g_asymptotic, g_limit, g_quadrature, g_tail_bound, linnik_main_term,
                   linnik_sprindzuk_sum, psi_sum, twisted_psi_sum, twisted_zero_sum,
                   weighted_zero_sum)
from .zerodata import load_zeros, save_zeros, validate_counts

ENV_ZEROS_DIR = "ZERODETECT_ZEROS_DIR"
E_M_PI_4 = cmath.exp(-0.25j * math.pi)


class UsageError(ZeroDetectError):
    kind = "config"


# --- argument parsing helpers -------------------------------------------------

def parse_x_list(text: str) -> list[float]:
    xs = [float(v) for v in str(text).split(",") if v.strip()]
    for x in xs:
        if not x > math.e:
            raise UsageError("x values must exceed e", x=x)
    return xs


def parse_range(text: str) -> tuple[float, float, float]:
    parts = [float(v) for v in str(text).split(":")]
    if len(parts) == 1:
        return parts[0], parts[0], 1.0
    if len(parts) != 3 or not parts[2] > 0 or parts[1] < parts[0]:
        raise UsageError("range must be lo:hi:step with step > 0", value=text)
    return parts[0], parts[1], parts[2]


def parse_alpha(text: str):
    """"a/q" gives an exact RationalPhase; a decimal gives a float."""
    text = str(text).strip()
    if "/" in text:
        return RationalPhase.parse(text)
    a = float(text)
    if not a > 0:
        raise UsageError("alpha must be positive", alpha=a)
    return a


def _params(x, t, alpha, s=0.5 + 0j):
    if isinstance(alpha, RationalPhase):
        return SumParams(x, t, phase=alpha, s=s)
    return SumParams(x, t, alpha=alpha, s=s)


def read_config(path) -> dict:
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value", line=lineno)
        k, v = line.split("=", 1)
        out.setdefault(k.strip().replace("_", "-"), []).append(v.strip())
    return out


def _config_argv(cfg: dict) -> list[str]:
    argv = []
    for k, vals in cfg.items():
        if k == "command":
            continue
        for v in vals:
            if v.lower() in ("true", "yes", "on"):
                argv.append(f"--{k}")
            elif v.lower() not in ("false", "no", "off"):
                argv += [f"--{k}", v]
    return argv


# --- zero lists ---------------------------------------------------------------

def _zero_specs(args) -> dict:
    specs = {}
    for item in args.zeros or []:
        label, _, path = item.rpartition("=")
        label = label or "zeta"
        if not Path(path).exists():
            raise UsageError(f"zero file not found: {path}", path=path)
        specs[label] = path
    return specs


def _env_zeta_file():
    d = os.environ.get(ENV_ZEROS_DIR)
    if not d:
        return None
    d = Path(d)
    for name in ("zeta.txt", "zeta.txt.gz"):
        if (d / name).exists():
            return d / name
    hits = sorted(d.glob("zeta_zeros*.txt*"))
    return hits[0] if hits else None


def zeta_zeros(args, needed: float):
    specs = _zero_specs(args)
    path = specs.get("zeta") or _env_zeta_file()
    if path is not None:
        return load_zeros(path, "zeta")
    T = args.zeros_compute if args.zeros_compute else None
    if T is None:
        raise UsageError("no zeta zero file: pass --zeros zeta=PATH, set "
                         f"{ENV_ZEROS_DIR}, or use --zeros-compute T", required_height=needed)
    return find_zero_ordinates(ZETA, max(float(T), 1.0))


def l_zeros(args, chi, T: float):
    from .zerodata import label_for

    path = _zero_specs(args).get(label_for(chi))
    if path is not None:
        return load_zeros(path, label_for(chi))
    return find_zero_ordinates(chi, T)


# --- commands -----------------------------------------------------------------

def cmd_zsum(args):
    alpha = parse_alpha(args.alpha)
    xs = parse_x_list(args.x)
    ts = _t_values(args.t)
    top = max(xs) * 2 * math.pi * (alpha.alpha if isinstance(alpha, RationalPhase) else alpha)
    Z = zeta_zeros(args, max(ts) + top)
    rows = []
    for x in xs:
        for t in ts:
            p = _params(x, t, alpha)
            rows.append(csv_row(p, weighted_zero_sum(Z, p)))
    write_csv(args.out, CSV_HEADER, rows)


def _t_values(text):
    lo, hi, h = parse_range(text)
    return list(make_grid(lo, hi, h)) if hi > lo else [lo]


def _table_for(xs):
    return sieve_lambda(max(2, int(math.floor(max(xs)))))


def cmd_psisum(args):
    alpha = parse_alpha(args.alpha)
    xs = parse_x_list(args.x)
    tab = _table_for(xs)
    rows = []
    for x in xs:
        if args.s is not None:
            svals = [complex(args.s.replace(" ", ""))]
            tvals = [svals[0].imag]
        else:
            tvals = _t_values(args.t)
            svals = [0.5 + 1j * t for t in tvals]
        for t, s in zip(tvals, svals):
            p = _params(x, t, alpha, s)
            rows.append(csv_row(p, psi_sum(tab, p)))
    write_csv(args.out, CSV_HEADER, rows)


def cmd_twisted(args):
    chi = character_from_label(args.chi)
    xs = parse_x_list(args.x)
    ts = _t_values(args.t)
    Z = zeta_zeros(args, max(ts) + 2 * math.pi * max(xs))
    rows = []
    for x in xs:
        for t in ts:
            r = twisted_zero_sum(Z, x, t, chi)
            rows.append((repr(x), repr(float(t)), chi.label, repr(r.value.real), repr(r.value.imag),
                         repr(abs(r.value)), r.terms_used))
    write_csv(args.out, ("x", "t", "chi", "re", "im", "abs", "terms"), rows)


def _phase_arg(text) -> RationalPhase:
    ph = parse_alpha(text)
    if not isinstance(ph, RationalPhase):
        raise UsageError("this command needs a rational alpha written a/q", alpha=text)
    return ph


def cmd_fujii(args):
    ph = _phase_arg(args.alpha)
    xs = parse_x_list(args.x)
    Z = zeta_zeros(args, max(xs))
    rows = []
    for x in xs:
        r = fujii_sum(Z, x, ph)
        m = fujii_main_term(x, ph)
        rows.append((repr(x), ph.a, ph.q, repr(r.value.real), repr(r.value.imag), repr(m.real),
                     repr(m.imag), repr(abs(r.value - m) / x ** 0.6), r.terms_used))
    write_csv(args.out, ("x", "a", "q", "re", "im", "main_re", "main_im", "dev_over_x06", "terms"), rows)


def cmd_linnik(args):
    ph = _phase_arg(args.alpha)
    xs = parse_x_list(args.x)
    Z = zeta_zeros(args, 0.0)
    rows = []
    for x in xs:
        r = linnik_sprindzuk_sum(Z, x, ph, tol=args.tol)
        rows.append((repr(x), ph.a, ph.q, repr(r.value.real), repr(r.value.imag),
                     repr(r.value.real / x), repr(linnik_main_term(x, ph.q) / x), r.terms_used,
                     repr(r.truncation_tail_bound)))
    write_csv(args.out, ("x", "a", "q", "re", "im", "re_over_x", "main_over_x", "terms", "tail_bound"), rows)


def cmd_explicit_check(args):
    alpha = parse_alpha(args.alpha)
    xs = parse_x_list(args.x)
    t = float(args.t)
    a = alpha.alpha if isinstance(alpha, RationalPhase) else alpha
    Z = zeta_zeros(args, t + 2 * math.pi * a * max(xs))
    tab = _table_for(xs)
    rows, prev = [], None
    for x in xs:
        p = _params(x, t, alpha, 0.5 + 1j * t)
        P = psi_sum(tab, p).value
        zs = weighted_zero_sum(Z, p).value
        D = P + E_M_PI_4 * SQRT_2PI * zs
        step = abs(D - prev) if prev is not None else float("nan")
        rows.append((repr(x), repr(t), str(alpha), repr(P.real), repr(P.imag), repr(zs.real), repr(zs.imag),
                     repr(D.real), repr(D.imag), repr(abs(D)), repr(step)))
        prev = D
    write_csv(args.out, ("x", "t", "alpha", "psi_re", "psi_im", "z_re", "z_im", "D_re", "D_im",
                         "abs_D", "abs_D_step"), rows)


def cmd_dichotomy(args):
    alpha = parse_alpha(args.alpha)
    xs = parse_x_list(args.x)
    t = float(args.t)
    a = alpha.alpha if isinstance(alpha, RationalPhase) else alpha
    Z = zeta_zeros(args, t + 2 * math.pi * a * max(xs))
    rows, ratios = [], []
    for x in xs:
        r = weighted_zero_sum(Z, _params(x, t, alpha))
        ratio = abs(r.value) * math.log(x) / math.sqrt(x)
        ratios.append(ratio)
        rows.append((repr(x), repr(t), str(alpha), repr(abs(r.value)), repr(ratio), r.terms_used))
    write_csv(args.out, ("x", "t", "alpha", "abs_Z", "abs_Z_logx_over_sqrtx", "terms"), rows)


def figure_curves(chi, Z, x, t_lo, t_hi, h, ref, threads=1, lprime=True):
    curve = scan_grid(chi, Z, x, t_lo, t_hi, h, threads=threads)
    tab = sieve_lambda(max(2, int(x)))
    psi = np.array([abs(twisted_psi_sum(tab, x, 0.5 + 1j * t, chi).value) / SQRT_2PI
                    for t in curve.grid])
    lp = np.full(curve.grid.shape, np.nan)
    if lprime:
        ords = ref.ordinates
        for i, t in enumerate(curve.grid):
            d = float(np.min(np.abs(ords - t))) if ords.size else 1.0
            if d > 1e-6:
                r = min(0.1, 0.4 * d)
                lp[i] = math.sqrt(chi.q) * abs(log_deriv_l(0.5 + 1j * t, chi, radius=r)) / SQRT_2PI
    return curve, psi, lp


def _peaks_json(peaks):
    return [{"t_star": p.t_star, "height": p.height, "prominence": p.prominence,
             "matched_ordinate": p.matched_ordinate, "residual": p.residual,
             "fitted_m": p.fitted_m, "ambiguous": p.ambiguous, "candidates": p.candidates}
            for p in peaks]


def cmd_figure1(args):
    chi = character_from_label(args.chi)
    if args.q is not None and args.q != chi.q:
        raise UsageError("--q disagrees with the character label", q=args.q, chi=args.chi)
    x = parse_x_list(args.x)[0]
    t_lo, t_hi, h = parse_range(args.t)
    Z = zeta_zeros(args, t_hi + 2 * math.pi * x)
    ref = l_zeros(args, chi, t_hi + 1.0)
    curve, psi, lp = figure_curves(chi, Z, x, t_lo, t_hi, h, ref, args.threads, not args.no_lprime)
    peaks = find_peaks(curve, args.min_prominence, ref)
    out = Path(args.out)
    stem = out.with_suffix("")
    rows = [(repr(float(t)), repr(float(m)), int(s), repr(float(p)), repr(float(l)))
            for t, m, s, p, l in zip(curve.grid, curve.magnitudes, curve.skipped, psi, lp)]
    write_csv(str(stem) + ".csv", ("t", "magnitude", "skipped_flag", "psi_curve", "lprime_curve"), rows)
    series = [(f"|sum conj(chi(a)) Z({x:g};t,a/{chi.q})|", curve.grid, curve.magnitudes, "solid"),
              ("(2pi)^-1/2 |sum conj(chi(a)) Psi|", curve.grid, psi, "thin")]
    if not args.no_lprime:
        series.append(("(2pi)^-1/2 sqrt(q) |L'/L|", curve.grid, lp, "dashed"))
    write_svg(out, series, title=f"chi = {chi.label}, x = {x:g}", ylabel="magnitude")
    summary = {"chi": chi.label, "x": x, "peaks": _peaks_json(peaks),
               "reference": [float(v) for v in ref.window(t_lo, t_hi)],
               "unmatched": unmatched_ordinates(peaks, ref, max(t_lo, 0.5), min(t_hi, 12.5)
                                                if args.match_hi is None else args.match_hi)}
    write_json(str(stem) + ".peaks.json", summary)
    write_json(None, summary)


def cmd_detect(args):
    chi = character_from_label(args.chi)
    x = parse_x_list(args.x)[0]
    t_lo, t_hi, h = parse_range(args.t)
    Z = zeta_zeros(args, t_hi + 2 * math.pi * x)
    ref = l_zeros(args, chi, t_hi + 1.0)
    curve = scan_grid(chi, Z, x, t_lo, t_hi, h, threads=args.threads)
    peaks = find_peaks(curve, args.min_prominence, ref)
    if args.fit_x:
        fx = parse_x_list(args.fit_x)
        for p in peaks:
            if p.matched_ordinate is not None and not p.ambiguous:
                try:
                    p.fitted_m = fit_order_slope(chi, Z, p.matched_ordinate, fx).m
                except ZeroDetectError:
                    p.fitted_m = None
    rows = [(repr(float(t)), repr(float(m)), int(s))
            for t, m, s in zip(curve.grid, curve.magnitudes, curve.skipped)]
    write_csv(args.csv, ("t", "magnitude", "skipped_flag"), rows)
    write_json(args.json, _peaks_json(peaks))


def cmd_find_zeros(args):
    chi = character_from_label(args.chi)
    Zc = find_zero_ordinates(chi, float(args.T), float(args.t_lo))
    if args.out:
        save_zeros(Zc, args.out)
    write_json(None, {"label": Zc.label, "t_max": Zc.t_max, "count": len(Zc),
                      "ordinates": [float(v) for v in Zc.ordinates]})


def cmd_validate_zeros(args):
    specs = _zero_specs(args)
    path = specs.get("zeta") or _env_zeta_file()
    if path is None:
        raise UsageError("validate-zeros needs --zeros zeta=PATH")
    Z = load_zeros(path, "zeta")
    r = validate_counts(Z)
    write_json(args.out, {"count": len(Z), "t_max": Z.t_max, "max_deviation": r.max_deviation,
                          "worst_T": r.worst_T, "mean_S_worst": r.mean_S_worst,
                          "failing_windows": r.failing_windows, "pass": r.passed})


def glemma_report(threads: int = 1) -> dict:
    """Numerical checks of the G integral: limit, asymptotics, tail bound."""
    rep = {"limit": [], "asymptotic": [], "bound": []}
    for z in (-0.5, 0.0, 0.3, 0.5):
        for a in (0.3, 0.7):
            lim = g_limit(a, z)
            d2 = abs(g_quadrature(1e2, a, z) - lim)
            d4 = abs(g_quadrature(1e4, a, z) - lim)
            rep["limit"].append({"z": z, "alpha": a, "dev_1e2": d2, "dev_1e4": d4,
                                  "ratio": d4 / d2, "pass": d4 <= 0.55 * d2})
    for y, lim in ((50.0, 0.1), (200.0, 0.03)):
        G = g_quadrature(1e3, 0.7, 1j * y)
        A = g_asymptotic(1e3, 0.7, y)
        rel = abs(A.value - G) / abs(G)
        rep["asymptotic"].append({"x": 1e3, "alpha": 0.7, "y": y, "quadrature": G, "asymptotic": A.value,
                              "rel_err": rel, "limit": lim, "pass": rel <= lim})
    for regime in (1, 2):
        for x in (50.0, 200.0, 1000.0, 3000.0):
            for alpha in (0.5,):
                b = 2 * math.pi * alpha * x
                fr = (0.1, 0.3, 0.5, 0.8, 1.0) if regime == 1 else (1.5, 3.0, 6.0, 12.0, 40.0)
                for f in fr:
                    y = b + f * math.sqrt(b)
                    G = abs(g_quadrature(x, alpha, 1j * y))
                    C = G / g_tail_bound(x, alpha, y)
                    rep["bound"].append({"regime": regime, "x": x, "alpha": alpha, "y": y,
                                          "abs_G": G, "C": C, "pass": C <= 10.0})
    rep["pass"] = all(r["pass"] for k in ("limit", "asymptotic", "bound") for r in rep[k])
    return rep


def cmd_glemma_check(args):
    write_json(args.out, glemma_report(args.threads))


COMMANDS = {
    "zsum": cmd_zsum, "psisum": cmd_psisum, "twisted": cmd_twisted, "fujii": cmd_fujii,
    "linnik": cmd_linnik, "explicit-check": cmd_explicit_check, "figure1": cmd_figure1,
    "detect": cmd_detect, "dichotomy": cmd_dichotomy, "find-zeros": cmd_find_zeros,
    "validate-zeros": cmd_validate_zeros, "glemma-check": cmd_glemma_check,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zerodetect", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--config", help="key = value file mirroring the long options")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--zeros", action="append", metavar="LABEL=PATH",
                        help="zero file per L-function label (zeta, L/q.index)")
    common.add_argument("--zeros-compute", type=float, metavar="T",
                        help="compute zeta zeros up to T (at most 1000) instead of reading a file")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    sub = ap.add_subparsers(dest="command")

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    p = add("zsum", "Z(x; t, alpha) over zeta zeros")
    p.add_argument("--alpha", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--t", default="0")
    p = add("psisum", "Psi(x; s, alpha) over prime powers")
    p.add_argument("--alpha", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--t", default="0", help="s = 1/2 + it (range lo:hi:step allowed)")
    p.add_argument("--s", default=None, help="explicit complex s, e.g. 2+0j")
    p = add("twisted", "sum_a conj(chi(a)) Z(x; t, a/q)")
    p.add_argument("--chi", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--t", default="0")
    p = add("fujii", "finite Fujii sum against its main term")
    p.add_argument("--alpha", required=True)
    p.add_argument("--x", required=True)
    p = add("linnik", "Linnik-Sprindzuk sum")
    p.add_argument("--alpha", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--tol", type=float, default=1e-12)
    p = add("explicit-check", "Psi + e^{-pi i/4} sqrt(2 pi) Z across x")
    p.add_argument("--alpha", required=True)
    p.add_argument("--t", default="0")
    p.add_argument("--x", required=True)
    p = add("dichotomy", "|Z| log x / sqrt(x) across x")
    p.add_argument("--alpha", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--t", default="0")
    for name, help_ in (("figure1", "twisted-sum scan with prime and L'/L curves"),
                        ("detect", "scan, peaks and order fits")):
        p = add(name, help_)
        p.add_argument("--chi", required=True)
        p.add_argument("--x", required=True)
        p.add_argument("--t", required=True, help="lo:hi:step")
        p.add_argument("--min-prominence", type=float, default=None)
        if name == "figure1":
            p.add_argument("--q", type=int, default=None)
            p.add_argument("--no-lprime", action="store_true")
            p.add_argument("--match-hi", type=float, default=None)
        else:
            p.add_argument("--csv", default=None)
            p.add_argument("--json", default=None)
            p.add_argument("--fit-x", default=None, help="x values for order fits, e.g. 100,1000,10000")
    p = add("find-zeros", "zeros of L(s, chi) by the argument principle")
    p.add_argument("--chi", required=True)
    p.add_argument("--T", required=True, type=float)
    p.add_argument("--t-lo", default=0.0, type=float)
    add("validate-zeros", "count check of a zeta zero file")
    add("glemma-check", "numerical checks of the G integral")
    return ap


def _split_config(argv):
    """Pull ``--config PATH`` (or ``--config=PATH``) out of argv."""
    for i, tok in enumerate(argv):
        if tok == "--config":
            if i + 1 >= len(argv):
                raise UsageError("--config needs a path")
            return argv[i + 1], argv[:i] + argv[i + 2:]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1], argv[:i] + argv[i + 1:]
    return None, argv


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        cfg_path, rest = _split_config(argv)
        if cfg_path is not None:
            cfg = read_config(cfg_path)
            cmd = cfg.get("command", [None])[-1]
            if rest and rest[0] in COMMANDS:
                cmd, rest = rest[0], rest[1:]
            if cmd is None:
                raise UsageError("no command given on the command line or in the config file")
            # flags from the file go first so the command line wins
            argv = [cmd] + _config_argv(cfg) + rest
        args = ap.parse_args(argv)
        if args.command is None:
            ap.print_help(sys.stderr)
            return 2
        if args.threads < 1:
            raise UsageError("--threads must be at least 1", threads=args.threads)
        COMMANDS[args.command](args)
        return 0
    except ZeroDetectError as err:
        sys.stderr.write(json.dumps(err.payload(), sort_keys=True, default=str) + "\n")
        return 2
    except (ValueError, OSError) as err:
        sys.stderr.write(json.dumps({"error": type(err).__name__, "message": str(err)}, sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
