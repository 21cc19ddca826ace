"""Weighted sums over zeta zeros and over prime powers, their explicit-formula
counterparts, and the exponential integral G(x; alpha, z).

Every oscillatory term is built as one real phase fed to a single complex
exponential. Sums default to compensated summation (``math.fsum`` on the
real and imaginary parts), which is exactly rounded and hence independent
of term order and chunking.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .arith import PrimePowerTable, factorize, mobius, totient
from .characters import DirichletCharacter, tau
from .errors import (ConvergenceError, CoverageError, DegenerateShiftError, DomainError)
from .lfunc import ZETA, log_deriv_pair, order_at
from .specials import DEFAULT_POLICY, PrecisionPolicy, digamma, exp_integral_E, kummer_1f1, lerch_phi, log_gamma
from .zerodata import ZeroList, mirror_for_shift

TWO_PI = 2.0 * math.pi
SQRT_2PI = math.sqrt(TWO_PI)
E_PI_4 = cmath.exp(0.25j * math.pi)


@dataclass(frozen=True)
class RationalPhase:
    """alpha = a/q kept exact."""

    a: int
    q: int

    def __post_init__(self):
        if self.q < 1 or self.a < 1 or self.a > self.q:
            raise DomainError("rational phase needs 1 <= a <= q", a=self.a, q=self.q)
        if math.gcd(self.a, self.q) != 1:
            raise DomainError("rational phase needs gcd(a, q) = 1", a=self.a, q=self.q)

    @property
    def alpha(self) -> float:
        return self.a / self.q

    @classmethod
    def parse(cls, text: str) -> "RationalPhase":
        a, q = text.split("/")
        return cls(int(a), int(q))

    def __str__(self):
        return f"{self.a}/{self.q}"


@dataclass(frozen=True)
class SumParams:
    """Inputs of the zero and prime sums.

    Pass either a float ``alpha`` or an exact ``phase``; the phase wins.
    """

    x: float
    t: float = 0.0
    alpha: float | None = None
    phase: RationalPhase | None = None
    s: complex = 0.5 + 0j

    def __post_init__(self):
        if not self.x > 1:
            raise DomainError("x must exceed 1", x=self.x)
        if self.phase is not None:
            object.__setattr__(self, "alpha", self.phase.alpha)
        if self.alpha is None or not self.alpha > 0:
            raise DomainError("alpha must be positive", alpha=self.alpha)


@dataclass
class SumResult:
    value: complex
    terms_used: int
    truncation_tail_bound: float = 0.0
    compensation: str = "kahan"
    parts: dict = field(default_factory=dict)


def csum(terms, compensation: str = "kahan") -> complex:
    """Sum complex terms; "kahan" is exactly rounded, "plain" is a left fold."""
    terms = np.asarray(terms, dtype=complex)
    if compensation == "kahan":
        return complex(math.fsum(terms.real), math.fsum(terms.imag))
    if compensation == "plain":
        return complex(np.cumsum(terms)[-1]) if terms.size else 0j
    raise ValueError(f"unknown compensation {compensation!r}")


def _alpha_of(p):
    return p.phase.alpha if p.phase is not None else float(p.alpha)


# --- sums over zeta zeros ---------------------------------------------------

def zero_terms(d: np.ndarray, alpha: float, x: float) -> np.ndarray:
    """Summands of Z(x; t, alpha) for offsets d = gamma - t > 0."""
    lr = np.log(d / (TWO_PI * alpha))
    amp = (1.0 - lr / math.log(x)) / np.sqrt(d)
    return amp * np.exp(1j * d * (lr - 1.0))


def weighted_zero_sum(Z: ZeroList, p: SumParams, compensation: str = "kahan") -> SumResult:
    """Z(x; t, alpha) over the ordinates in Z (zeta zeros or those of an L-function).

    Raises:
        DomainError: x <= e.
        CoverageError: Z stops short of t + 2 pi alpha x, or lacks ordinates below t.
        DegenerateShiftError: t within 1e-9 of an ordinate.
    """
    if not p.x > math.e:
        raise DomainError("x must exceed e", x=p.x)
    alpha = _alpha_of(p)
    span = TWO_PI * alpha * p.x
    Z.require(p.t + span, low=p.t)
    near = Z.window(p.t - 1e-9, p.t + 1e-9)
    if near.size:
        raise DegenerateShiftError("shift t coincides with a zero ordinate", t=p.t,
                                   ordinate=float(near[0]))
    d = Z.window(p.t, p.t + span) - p.t
    return SumResult(csum(zero_terms(d, alpha, p.x), compensation), int(d.size), 0.0, compensation)


def _units(q):
    return [a for a in range(1, q + 1) if math.gcd(a, q) == 1]


def twisted_zero_sum(Z: ZeroList, x: float, t: float, chi: DirichletCharacter,
                     compensation: str = "kahan") -> SumResult:
    """sum_a conj(chi(a)) Z(x; t, a/q); per-a results in ``parts``."""
    q = chi.q
    units = _units(q)
    # the largest a needs the tallest coverage: check it first so the error names it
    worst = max(units)
    try:
        Z.require(t + TWO_PI * worst / q * x, low=t)
    except CoverageError as err:
        err.details["a"] = worst
        raise
    parts, vals = {}, []
    for a in units:
        r = weighted_zero_sum(Z, SumParams(x, t, phase=RationalPhase(a, q)), compensation)
        parts[a] = r
        vals.append(np.conj(chi.values[a % q]) * r.value)
    total = csum(vals, compensation)
    return SumResult(total, sum(r.terms_used for r in parts.values()), 0.0, compensation, parts)


def fujii_sum(Z: ZeroList, x: float, phase: RationalPhase, compensation: str = "kahan") -> SumResult:
    """sum_{0 < gamma <= x} e((gamma/2pi) log(gamma / (2 pi (a/q) e)))."""
    Z.require(x)
    g = Z.window(0.0, x)
    ph = g * (np.log(g / (TWO_PI * phase.alpha)) - 1.0)
    return SumResult(csum(np.exp(1j * ph), compensation), int(g.size), 0.0, compensation)


def fujii_main_term(x: float, phase: RationalPhase) -> complex:
    """-e^{pi i/4} mu(q) x / (2 pi phi(q) sqrt(a/q))."""
    q = phase.q
    return -E_PI_4 * mobius(q) * x / (TWO_PI * totient(q) * math.sqrt(phase.alpha))


def _ls_log_terms(g: np.ndarray, w: complex):
    """Log-magnitude and phase of the Linnik-Sprindzuk summand at ordinates g."""
    lw, aw = math.log(abs(w)), cmath.phase(w)
    ag = np.abs(g)
    logmag = g * aw - 0.5 * math.pi * ag - 0.5 * lw
    phase = g * (np.log(ag) - 1.0) - g * lw - 0.5 * aw
    return logmag, phase


def _ls_tail(T: float, decay: float, w: complex) -> float:
    # density of ordinates near T is at most log(T)/(2 pi) + 1
    dens = math.log(max(T, 2.0)) / TWO_PI + 1.0
    return dens * math.exp(-decay * T) / decay / math.sqrt(abs(w))


def linnik_sprindzuk_sum(Z: ZeroList, x: float, phase: RationalPhase, tol: float = 1e-12,
                         compensation: str = "kahan") -> SumResult:
    """sum over all ordinates of e((g/2pi) log(|g|/e)) e^{-pi|g|/2} w^{-1/2-ig}, w = 1/x + 2 pi i a/q.

    Zeros with negative ordinate enter through the symmetry of zeta zeros.
    The positive tail decays like exp(-g (pi/2 - arg w)); the sum stops
    once the tail estimate drops below ``tol``.
    """
    if tol <= 0:
        raise DomainError("tol must be positive", tol=tol)
    if 2 * phase.a > phase.q:
        raise DomainError("need a <= q/2", a=phase.a, q=phase.q)
    if Z.label != "zeta":
        raise DomainError("the Linnik-Sprindzuk sum runs over zeta zeros")
    w = complex(1.0 / x, TWO_PI * phase.alpha)
    decay = 0.5 * math.pi - cmath.phase(w)
    T = 10.0
    while _ls_tail(T, decay, w) > tol:
        T *= 1.25
    Z.require(T)
    g = Z.window(0.0, T)
    g = np.concatenate([-g[::-1], g])
    logmag, ph = _ls_log_terms(g, w)
    keep = logmag > math.log(tol) - 40.0
    g, logmag, ph = g[keep], logmag[keep], ph[keep]
    terms = np.exp(logmag + 1j * ph)
    return SumResult(csum(terms, compensation), int(g.size), _ls_tail(T, decay, w), compensation)


def linnik_main_term(x: float, q: int) -> float:
    """-mu(q) x / (sqrt(2 pi) phi(q))."""
    return -mobius(q) * x / (SQRT_2PI * totient(q))


# --- sums over prime powers ---------------------------------------------------

def _table_upto(table: PrimePowerTable, x: float):
    if table.bound < x:
        raise CoverageError("prime power table too small", required_height=x,
                            available_height=table.bound)
    v = table.upto(x)
    return v.n, v.lam


def _mollified(n, lam, s, x):
    logn = np.log(n.astype(float))
    return lam * np.exp(-s * logn) * (1.0 - logn / math.log(x))


def psi_sum(table: PrimePowerTable, p: SumParams, compensation: str = "kahan") -> SumResult:
    """Psi(x; s, alpha) = sum_{n<=x} Lambda(n) e(-alpha n) n^{-s} (1 - log n / log x)."""
    n, lam = _table_upto(table, p.x)
    if p.phase is not None:
        res = (p.phase.a * n) % p.phase.q
        ph = np.exp(-TWO_PI * 1j * res / p.phase.q)
    else:
        ph = np.exp(-TWO_PI * 1j * np.mod(p.alpha * n.astype(float), 1.0))
    terms = _mollified(n, lam, complex(p.s), p.x) * ph
    return SumResult(csum(terms, compensation), int(n.size), 0.0, compensation)


def psi_chi_sum(table: PrimePowerTable, x: float, s: complex, chi: DirichletCharacter,
                compensation: str = "kahan") -> SumResult:
    """Psi(x; s, chi) = sum_{n<=x} Lambda(n) chi(n) n^{-s} (1 - log n / log x)."""
    n, lam = _table_upto(table, x)
    terms = _mollified(n, lam, complex(s), x) * chi.values[n % chi.q]
    return SumResult(csum(terms, compensation), int(n.size), 0.0, compensation)


def twisted_psi_sum(table: PrimePowerTable, x: float, s: complex, chi: DirichletCharacter,
                    compensation: str = "kahan") -> SumResult:
    """sum_a conj(chi(a)) Psi(x; s, a/q)."""
    q = chi.q
    parts, vals = {}, []
    for a in _units(q):
        r = psi_sum(table, SumParams(x, phase=RationalPhase(a, q), s=s), compensation)
        parts[a] = r
        vals.append(np.conj(chi.values[a % q]) * r.value)
    return SumResult(csum(vals, compensation), sum(r.terms_used for r in parts.values()),
                     0.0, compensation, parts)


def fujii_prime_side(table: PrimePowerTable, x: float, alpha: float) -> complex:
    """sum_{n<=x} Lambda(n) e(-alpha n), the prime side of Fujii's explicit formula."""
    n, lam = _table_upto(table, x)
    return csum(lam * np.exp(-TWO_PI * 1j * np.mod(alpha * n.astype(float), 1.0)))


def fujii_zero_side(Z: ZeroList, x: float, alpha: float) -> complex:
    """-e^{-pi i/4} alpha^{-1/2} sum_{0<g<=2 pi alpha x} e((g/2pi) log(g/(2 pi e alpha)))."""
    h = TWO_PI * alpha * x
    Z.require(h)
    g = Z.window(0.0, h)
    s = csum(np.exp(1j * g * (np.log(g / (TWO_PI * alpha)) - 1.0)))
    return -s / (E_PI_4 * math.sqrt(alpha))


def chebyshev_partial(table: PrimePowerTable, x: float, s: complex) -> complex:
    """sum'_{n<=x} Lambda(n) n^{-s}, halving the term at x itself."""
    n, lam = _table_upto(table, x)
    terms = lam * np.exp(-complex(s) * np.log(n.astype(float)))
    if n.size and n[-1] == x:
        terms[-1] *= 0.5
    return csum(terms)


def chebyshev_explicit(x: float, s: complex, Z: ZeroList) -> SumResult:
    """Zero-side counterpart of :func:`chebyshev_partial` for zeta.

    x^{1-s}/(1-s) - sum_rho x^{rho-s}/(rho-s) - zeta'/zeta(s)
    + (1/2) x^{-s-2} Phi(x^{-2}, 1, 1 + s/2), with the zero sum symmetric
    in the ordinates and cut at the list height.
    """
    s = complex(s)
    g = Z.ordinates[Z.ordinates > 0]
    rho = np.concatenate([0.5 - 1j * g[::-1], 0.5 + 1j * g])
    zs = csum(np.exp((rho - s) * math.log(x)) / (rho - s))
    b1, _ = log_deriv_pair(s, ZETA, _safe_radius(s, ZETA, g))
    triv = 0.5 * x ** (-s - 2) * lerch_phi(x ** -2.0, 1.0, 1.0 + s / 2)
    val = x ** (1 - s) / (1 - s) - zs - b1 + triv
    tail = x ** (0.5 - s.real) * (math.log(max(Z.t_max, 3.0)) + 2) / (math.pi * max(Z.t_max - abs(s.imag), 1.0))
    return SumResult(val, int(rho.size), tail)


# --- explicit formula for Psi(x; s, chi) ------------------------------------

def _safe_radius(s, chi, ords):
    r = 0.1
    if chi.is_principal:
        r = min(r, 0.4 * abs(s - 1))
    if ords is not None and len(ords):
        d = np.abs(0.5 + 1j * np.asarray(ords) - s)
        d = d[d > 1e-6]
        if d.size:
            r = min(r, 0.4 * float(d.min()))
    return max(r, 1e-4)


def _finite_correction(x, s, star: DirichletCharacter, primes, lx):
    """Mollified prime-power terms of the primes in ``primes`` under chi*."""
    tot = []
    for p in primes:
        k = np.arange(1, int(math.floor(math.log(x) / math.log(p) + 1e-12)) + 1)
        if k.size == 0:
            continue
        chik = star.values[p % star.q] ** k
        tot.append(math.log(p) * chik * np.exp(-s * k * math.log(p)) * (1 - k * math.log(p) / lx))
    return csum(np.concatenate(tot)) if tot else 0j


def psi_explicit_rhs(x: float, s: complex, chi: DirichletCharacter, Z: ZeroList, K: int = 50,
                     conj_zeros: ZeroList | None = None, principal_correction: str = "series",
                     policy: PrecisionPolicy = DEFAULT_POLICY) -> SumResult:
    """Zero side of the explicit formula for Psi(x; s, chi), truncated at the list height.

    ``Z`` holds the ordinates of L(s, chi*) (zeta for principal chi). For
    complex chi* the negative ordinates come from ``conj_zeros``. When s sits
    on a zero of order m the regularised form with -(m/2) log x is used.

    For a principal character mod q > 1, ``principal_correction="series"``
    subtracts sum_{p|q} log p/(p^s - 1) (accurate to O(1/log x)), while
    ``"exact"`` subtracts the mollified prime-power terms themselves. Other
    imprimitive characters always use the exact finite correction.
    """
    s = complex(s)
    if not x > 1:
        raise DomainError("x must exceed 1", x=x)
    star = chi.primitive
    lx = math.log(x)
    full = mirror_for_shift(Z, -1.0, Z if star.is_real else conj_zeros)
    g = full.ordinates
    t, sig = s.imag, s.real
    m = 0
    if abs(sig - 0.5) < 1e-12 and g.size and np.min(np.abs(g - t)) < 1e-3:
        m = order_at(star, t, policy)
    others = g[np.abs(g - t) > 1e-6] if m else g
    b1, b2 = log_deriv_pair(s, star, _safe_radius(s, star, others), order=m, policy=policy)
    rho = 0.5 + 1j * others
    zsum = csum(np.exp((rho - s) * lx) / (rho - s) ** 2)
    kappa = star.kappa
    k0 = 1 if star.q == 1 else 0
    k = np.arange(k0, K + 1)
    triv = csum(np.exp(-(2 * k + kappa + s) * lx) / (2 * k + kappa + s) ** 2)
    val = -b1 - b2 / lx - zsum / lx - triv / lx - 0.5 * m * lx
    if star.q == 1:
        val += np.exp((1 - s) * lx) / ((1 - s) ** 2 * lx)
    extra = [p for p in factorize(chi.q).primes if star.q % p != 0]
    if extra:
        if chi.is_principal and principal_correction == "series":
            val -= sum(math.log(p) / (p ** s - 1) for p in extra)
        else:
            val -= _finite_correction(x, s, star, extra, lx)
    T = min(full.t_max, -full.t_min) if full.t_min < 0 else full.t_max
    qs = max(star.q, 1)
    tail = x ** (0.5 - sig) / lx * (math.log(qs * max(T, 3.0)) + 2) / (math.pi * max(T - abs(t), 1.0))
    return SumResult(complex(val), int(others.size), float(tail))


# --- main term predictions -------------------------------------------------

def predict_main_terms(x: float, t: float, phase: RationalPhase, orders: dict | None = None) -> dict:
    """Main terms of Z(x; t, a/q) under GRH.

    ``orders`` maps characters mod q to m(t, chi); missing entries count as 0.
    Returns the power-law term, the log x coefficient and their sum.
    """
    q, a = phase.q, phase.a
    lx = math.log(x)
    main = (-E_PI_4 * mobius(q) / (SQRT_2PI * totient(q)) * (0.5 - 1j * t) ** -2
            * cmath.exp((0.5 - 1j * t) * lx) / lx)
    coeff = 0j
    for chi, m in (orders or {}).items():
        if m:
            coeff += np.conj(tau(chi)) * chi(a) * m
    coeff *= E_PI_4 / (2 * SQRT_2PI * totient(q))
    return {"Z_prediction": complex(main), "divergent_coeff": complex(coeff),
            "total": complex(main + coeff * lx)}


def predict_twisted(x: float, t: float, chi: DirichletCharacter, m: int) -> complex:
    """Main term of sum_a conj(chi(a)) Z(x; t, a/q).

    Non-principal: e^{pi i/4} conj(tau(chi)) m log x / (2 sqrt(2 pi)).
    Principal: -e^{pi i/4} mu(q) (1/2 - it)^{-2} x^{1/2-it} / (sqrt(2 pi) log x).
    """
    lx = math.log(x)
    if chi.is_principal:
        return complex(-E_PI_4 * mobius(chi.q) / SQRT_2PI * (0.5 - 1j * t) ** -2
                       * cmath.exp((0.5 - 1j * t) * lx) / lx)
    return complex(E_PI_4 * np.conj(tau(chi)) * m * lx / (2 * SQRT_2PI))


def twisted_slope(chi: DirichletCharacter) -> float:
    """|tau(chi)| / (2 sqrt(2 pi)), the log x slope of a simple zero."""
    return abs(tau(chi)) / (2 * SQRT_2PI)


# --- the integral G(x; alpha, z) ---------------------------------------------

# Gauss-Kronrod 7/15 nodes and weights on [-1, 1]
_XK = np.array([0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                0.207784955007898467600689403773245, 0.0])
_WK = np.array([0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                0.204432940075298892414161999234649, 0.209482141084727828012999174891714])
_WG = np.array([0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                0.381830050505118944950369775488975, 0.417959183673469387755102040816327])
_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
_WK_FULL = np.concatenate([_WK[:-1], _WK[::-1]])
_WG_FULL = np.zeros(15)
for _i, _w in zip((1, 3, 5, 7), _WG):
    _WG_FULL[_i] = _w
    _WG_FULL[14 - _i] = _w


def _g_integrand(u, x, alpha, z):
    lu = np.log(u)
    return np.exp(-TWO_PI * 1j * np.mod(alpha * u, 1.0) + z * lu) * (1.0 - lu / math.log(x))


def _g_breaks(x, alpha, y):
    """Segment ends on [1, x] with at most about a quarter oscillation each."""
    pts = [1.0]
    u = 1.0
    cap = 1.0 / (4.0 * alpha)
    while u < x:
        freq = abs(-TWO_PI * alpha + y / u) + 1e-300
        h = min(cap, 0.5 * math.pi / freq, 0.25 * u + 0.5)
        u = min(x, u + h)
        pts.append(u)
    return np.array(pts)


def g_quadrature(x: float, alpha: float, z: complex, policy: PrecisionPolicy = DEFAULT_POLICY,
                 max_rounds: int = 40) -> complex:
    """G(x; alpha, z) = int_1^x e(-alpha u) (1 - log u / log x) u^z du.

    Adaptive Gauss-Kronrod (7/15) on segments no longer than a quarter of
    the local oscillation length; segments are split until the Kronrod
    error estimate meets the relative tolerance of the policy.
    """
    z = complex(z)
    if not z.real > -1:
        raise DomainError("need Re z > -1", z=str(z))
    if not x > 1:
        raise DomainError("x must exceed 1", x=x)
    if not alpha > 0:
        raise DomainError("alpha must be positive", alpha=alpha)
    br = _g_breaks(x, alpha, z.imag)
    a, b = br[:-1], br[1:]
    done = []
    scale = None
    for _ in range(max_rounds):
        c, h = 0.5 * (a + b), 0.5 * (b - a)
        u = c[:, None] + h[:, None] * _NODES[None, :]
        f = _g_integrand(u, x, alpha, z)
        k = h * (f @ _WK_FULL)
        err = np.abs(k - h * (f @ _WG_FULL))
        if scale is None:
            scale = max(np.abs(k).sum(), abs(k.sum()), 1e-300)
        share = (b - a) / (x - 1.0)
        ok = err <= policy.quadrature_rel_tol * scale * np.maximum(share, 1e-6) + 1e-15 * np.abs(k)
        done.append(k[ok])
        if ok.all():
            allk = np.concatenate(done)
            return complex(math.fsum(allk.real), math.fsum(allk.imag))
        a, b = a[~ok], b[~ok]
        m = 0.5 * (a + b)
        a, b = np.concatenate([a, m]), np.concatenate([m, b])
    raise ConvergenceError("G quadrature did not converge", x=x, alpha=alpha, z=str(z))


@dataclass
class GAsymptotic:
    main: complex
    kummer: complex
    value: complex
    exact_first_term: complex
    error_bound: float
    underflow: bool


def g_asymptotic(x: float, alpha: float, y: float) -> GAsymptotic:
    """Large-|y| approximation of G(x; alpha, iy).

    The gamma-function term is replaced by its stationary-phase form
    (1/(2 pi i alpha)) e^{pi i/4} sqrt(2 pi |y|) e((|y|/2pi) log(|y|/(2 pi alpha e)))
    (1 - log(|y|/(2 pi alpha))/log x) exp(-pi(|y| - y)/2), and the Kummer
    term -e^{-2 pi i alpha} 1F1(1; 2+iy; 2 pi i alpha)/(1+iy) is added.
    The exact gamma form is returned alongside for comparison.
    """
    if abs(y) < 5:
        raise DomainError("asymptotic regime needs |y| >= 5", y=y)
    lx = math.log(x)
    ay = abs(y)
    b = TWO_PI * alpha
    logmag = 0.5 * math.log(TWO_PI * ay) - math.log(b) - 0.5 * math.pi * (ay - y)
    underflow = logmag < math.log(1e-60)
    if underflow:
        main = 0j
    else:
        ph = ay * (math.log(ay / b) - 1.0) + 0.25 * math.pi - 0.5 * math.pi
        main = cmath.exp(logmag + 1j * ph) * (1.0 - math.log(ay / b) / lx)
    w = 2j * math.pi * alpha
    kummer = -cmath.exp(-w) / (1 + 1j * y) * kummer_1f1(1.0, 2 + 1j * y, w)
    lw = cmath.log(w)
    lg = log_gamma(1 + 1j * y)
    first = cmath.exp((-1 - 1j * y) * lw + lg) * (1 + (lw - digamma(1 + 1j * y)) / lx)
    bound = abs(main) / ay + 1.0 / (lx * ay * ay) + x ** -0.25 / lx * ay ** -0.25
    return GAsymptotic(main, kummer, main + kummer, first + kummer, bound, underflow)


def g_limit(alpha: float, z: complex) -> complex:
    """x -> infinity limit of G(x; alpha, z): E_{-z}(2 pi i alpha)."""
    return exp_integral_E(-complex(z), 2j * math.pi * alpha)


def g_tail_bound(x: float, alpha: float, y: float) -> float:
    """Shape of the bound on |G(x; alpha, iy)| for y > 2 pi alpha x (constant 1)."""
    b = TWO_PI * alpha * x
    if y <= b:
        raise DomainError("bound applies for y > 2 pi alpha x", y=y)
    lx = math.log(x)
    if y <= b + math.sqrt(b):
        return x / (lx * y)
    return 1.0 / y + x / (lx * (y - b) ** 2)


# --- CSV rows ---------------------------------------------------------------

CSV_HEADER = ("x", "t", "alpha_num", "alpha_den_or_0", "re", "im", "terms", "tail_bound")


def csv_row(p: SumParams, r: SumResult) -> tuple:
    """Row in the sum CSV schema; irrational alpha goes in alpha_num with den 0."""
    if p.phase is not None:
        num, den = p.phase.a, p.phase.q
    else:
        num, den = repr(float(p.alpha)), 0
    return (repr(float(p.x)), repr(float(p.t)), num, den, repr(r.value.real), repr(r.value.imag),
            r.terms_used, repr(float(r.truncation_tail_bound)))
