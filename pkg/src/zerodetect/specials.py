"""Complex special functions in double precision.

Every complex power is ``exp(s * Log w)`` with the principal logarithm.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DomainError, PoleError

LOG_2PI = math.log(2.0 * math.pi)
MAX_BERNOULLI = 30


@dataclass(frozen=True)
class PrecisionPolicy:
    target_abs_tol: float = 1e-12
    max_terms: int = 1_000_000
    euler_maclaurin_order: int = 12
    quadrature_rel_tol: float = 1e-10

    def __post_init__(self):
        if self.target_abs_tol <= 0 or self.quadrature_rel_tol <= 0:
            raise DomainError("tolerances must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be positive")
        if not 1 <= self.euler_maclaurin_order <= MAX_BERNOULLI // 2:
            raise DomainError(f"euler_maclaurin_order must lie in 1..{MAX_BERNOULLI // 2}")


DEFAULT_POLICY = PrecisionPolicy()


@lru_cache(maxsize=1)
def bernoulli_numbers(n_max: int = MAX_BERNOULLI) -> tuple[Fraction, ...]:
    """B_0..B_n_max (B_1 = -1/2) by the Akiyama-Tanigawa recurrence."""
    out = []
    a = [Fraction(0)] * (n_max + 1)
    for m in range(n_max + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    out[1] = -out[1]
    return tuple(out)


# EM coefficients B_{2j} / (2j)!
_EM_COEFFS = np.array([float(bernoulli_numbers()[2 * j] / math.factorial(2 * j))
                       for j in range(1, MAX_BERNOULLI // 2 + 1)])

# Lanczos approximation, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _check_pole(s: complex):
    if s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real):
        raise PoleError(f"Gamma has a pole at s = {int(s.real)}", location=int(s.real))


def log_gamma(s) -> complex:
    """Principal-branch log Gamma(s) (cut along the negative real axis)."""
    s = complex(s)
    _check_pole(s)
    shift = 0j
    while s.real < 0.5:
        # log Gamma(s) = log Gamma(s + 1) - log s
        shift -= cmath.log(s)
        s += 1.0
    z = s - 1.0
    acc = _LANCZOS[0]
    for k in range(1, len(_LANCZOS)):
        acc += _LANCZOS[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return 0.5 * LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc) + shift


def gamma_complex(s) -> complex:
    return cmath.exp(log_gamma(s))


def digamma(s) -> complex:
    s = complex(s)
    _check_pole(s)
    if s.real < 0.5:
        return digamma(1.0 - s) - math.pi / cmath.tan(math.pi * s)
    acc = 0j
    while abs(s) < 15.0:
        acc -= 1.0 / s
        s += 1.0
    inv2 = 1.0 / (s * s)
    series = 0j
    p = inv2
    B = bernoulli_numbers()
    for k in range(1, 11):
        series += float(B[2 * k]) / (2 * k) * p
        p *= inv2
    return acc + cmath.log(s) - 0.5 / s - series


def hurwitz_zeta(s, a, policy: PrecisionPolicy = DEFAULT_POLICY, n_terms: int | None = None):
    """zeta(s, a) by Euler-Maclaurin summation.

    Vectorised over ``s`` (any array shape) for a scalar ``a`` in (0, 1].
    Returns a complex scalar when ``s`` is scalar.
    """
    scalar = np.ndim(s) == 0
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    a = float(a)
    if not 0.0 < a <= 1.0:
        raise DomainError(f"hurwitz_zeta needs 0 < a <= 1, got {a}")
    if np.any(s == 1.0):
        raise PoleError("hurwitz_zeta has a pole at s = 1", location=1)
    if n_terms is None:
        n_terms = max(10, int(math.ceil(0.6 * float(np.max(np.abs(s.imag)))))
                      + int(math.ceil(max(0.0, -float(np.min(s.real))))))
    out = np.empty(s.shape, dtype=complex)
    flat_s = s.ravel()
    flat_o = out.ravel()
    chunk = max(1, 4_000_000 // n_terms)
    logk = np.log(np.arange(n_terms) + a)
    logN = math.log(n_terms + a)
    M = policy.euler_maclaurin_order
    for i in range(0, flat_s.size, chunk):
        ss = flat_s[i:i + chunk]
        head = np.exp(-np.outer(ss, logk)).sum(axis=1)
        pN = np.exp(-ss * logN)  # (N+a)^{-s}
        tail = pN * (n_terms + a) / (ss - 1.0) + 0.5 * pN
        # sum_j B_2j/(2j)! (s)_{2j-1} (N+a)^{-s-2j+1}
        poch = ss.copy()
        power = pN / (n_terms + a)
        inv2 = 1.0 / (n_terms + a) ** 2
        corr = np.zeros_like(ss)
        for j in range(M):
            corr += _EM_COEFFS[j] * poch * power
            poch = poch * (ss + 2 * j + 1) * (ss + 2 * j + 2)
            power = power * inv2
        flat_o[i:i + chunk] = head + tail + corr
    return complex(out.ravel()[0]) if scalar else out


def riemann_zeta(s, policy: PrecisionPolicy = DEFAULT_POLICY):
    return hurwitz_zeta(s, 1.0, policy)


def _expint_series(s: complex, z: complex, policy: PrecisionPolicy) -> complex:
    n = round(s.real)
    near_int = s.imag == 0 and abs(s.real - n) < 1e-12 and n >= 1
    total = 0j
    term = 1.0 + 0j  # (-z)^k / k!
    logz = cmath.log(z)
    for k in range(policy.max_terms):
        if near_int and k == n - 1:
            pass
        else:
            add = term / (1.0 - s + k)
            total += add
            if k > abs(z) and abs(add) < 1e-17 * max(1.0, abs(total)):
                break
        term *= -z / (k + 1)
    else:
        raise ConvergenceError("E_s series did not converge")
    if near_int:
        lead = (-z) ** (n - 1) / math.factorial(n - 1) * (digamma(n) - logz)
    else:
        lead = gamma_complex(1.0 - s) * cmath.exp((s - 1.0) * logz)
    return lead - total


def _expint_cf(s: complex, z: complex, policy: PrecisionPolicy) -> complex:
    # modified Lentz on E_s(z) = e^{-z} / (z + s - 1*s/(z + s + 2 - 2(s+1)/(z + s + 4 - ...)))
    tiny = 1e-300
    b = z + s
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, policy.max_terms):
        an = -i * (s + i - 1)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h * cmath.exp(-z)
    raise ConvergenceError("E_s continued fraction did not converge")


def exp_integral_E(s, z, policy: PrecisionPolicy = DEFAULT_POLICY) -> complex:
    """Generalised exponential integral E_s(z), principal branch."""
    s, z = complex(s), complex(z)
    if z == 0:
        raise DomainError("E_s(z) is undefined at z = 0")
    if s == 0:
        return cmath.exp(-z) / z
    if s.imag == 0 and s.real < 0 and s.real == math.floor(s.real):
        m = int(-s.real)
        e = cmath.exp(-z) / z
        ez = cmath.exp(-z)
        for k in range(1, m + 1):
            # E_{-k} = (e^{-z} + k E_{-k+1}) / z
            e = (ez + k * e) / z
        return e
    if abs(z) > 2.0 and abs(cmath.phase(z)) < 0.75 * math.pi:
        return _expint_cf(s, z, policy)
    return _expint_series(s, z, policy)


def kummer_1f1(a, c, z, policy: PrecisionPolicy = DEFAULT_POLICY) -> complex:
    """Confluent hypergeometric 1F1(a; c; z) by its Taylor series."""
    a, c, z = complex(a), complex(c), complex(z)
    if c.imag == 0 and c.real <= 0 and c.real == math.floor(c.real):
        raise DomainError(f"1F1 undefined: c = {c.real:g} is a non-positive integer")
    total = 1.0 + 0j
    term = 1.0 + 0j
    for n in range(policy.max_terms):
        term *= (a + n) / (c + n) * z / (n + 1)
        total += term
        if term == 0 or (n > abs(z) and abs(term) < 1e-17 * max(1.0, abs(total))):
            return total
    raise ConvergenceError("1F1 series did not converge")


def lerch_phi(z, s, a, policy: PrecisionPolicy = DEFAULT_POLICY) -> complex:
    """Lerch transcendent sum_{n>=0} z^n (n + a)^{-s} for |z| < 1."""
    z, s, a = complex(z), complex(s), complex(a)
    r = abs(z)
    if r >= 1.0:
        raise DomainError(f"lerch_phi needs |z| < 1, got |z| = {r:g}")
    if a.real <= 0:
        raise DomainError("lerch_phi needs Re a > 0")
    if z == 0:
        return cmath.exp(-s * cmath.log(a))
    logz = cmath.log(z)
    total = 0j
    chunk = 512
    start = 0
    while start < policy.max_terms:
        n = np.arange(start, start + chunk)
        terms = np.exp(n * logz - s * np.log(n + a))
        total += terms.sum()
        last = abs(terms[-1])
        # the ratio of consecutive terms tends to |z|
        tail = last * r / (1.0 - r) * 2.0
        if tail < policy.target_abs_tol * 1e-2 * max(1.0, abs(total)):
            return complex(total)
        start += chunk
    raise ConvergenceError("lerch_phi series did not reach tolerance")
