"""Multiplicative groundwork: the von Mangoldt sieve, Moebius, totient, factoring."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class FactoredInteger:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __int__(self):
        return self.n

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


@dataclass(frozen=True, eq=False)
class PrimePowerTable:
    """Sparse table of n <= bound with Lambda(n) > 0.

    ``n`` and ``lam`` are parallel read-only arrays, ascending in n.
    ``prime`` holds the underlying prime of each prime power.
    """

    bound: int
    n: np.ndarray
    lam: np.ndarray
    prime: np.ndarray

    def __len__(self):
        return len(self.n)

    def __getitem__(self, k: int) -> float:
        i = np.searchsorted(self.n, k)
        if i < len(self.n) and self.n[i] == k:
            return float(self.lam[i])
        return 0.0

    def upto(self, x: float) -> "PrimePowerTable":
        """View restricted to n <= x."""
        stop = int(np.searchsorted(self.n, math.floor(x), side="right"))
        return PrimePowerTable(min(self.bound, int(math.floor(x))),
                               self.n[:stop], self.lam[:stop], self.prime[:stop])


def primes_upto(n: int) -> np.ndarray:
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(n + 1, dtype=bool)
    is_p[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if is_p[p]:
            is_p[p * p::p] = False
    return np.flatnonzero(is_p).astype(np.int64)


def sieve_lambda(N: int) -> PrimePowerTable:
    """Lambda(n) for 2 <= n <= N, stored for prime powers only."""
    if N < 2:
        raise DomainError(f"sieve bound must be >= 2, got {N}")
    N = int(N)
    ps = primes_upto(N)
    ns, owners = [ps], [ps]
    pk = ps.copy()
    while True:
        keep = pk <= N // ps[: len(pk)]
        if not keep.any():
            break
        pk = pk[keep] * ps[: len(pk)][keep]
        # keep is a prefix mask since ps ascending and pk ascending in p
        ns.append(pk)
        owners.append(ps[: len(pk)])
    n = np.concatenate(ns)
    prime = np.concatenate(owners)
    order = np.argsort(n, kind="stable")
    n, prime = n[order], prime[order]
    logs = np.log(ps.astype(float))
    lam = logs[np.searchsorted(ps, prime)]
    for arr in (n, lam, prime):
        arr.setflags(write=False)
    return PrimePowerTable(N, n, lam, prime)


@lru_cache(maxsize=64)
def _small_primes(limit: int) -> tuple[int, ...]:
    return tuple(int(p) for p in primes_upto(limit))


def factorize(n: int) -> FactoredInteger:
    """Trial division over a cached prime list; n must fit in 64 bits."""
    n = int(n)
    if n <= 0:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    if n >= 1 << 63:
        raise DomainError("factorize is limited to 64-bit integers")
    m = n
    out = []
    limit = math.isqrt(m)
    for p in _small_primes(max(2, min(limit, 1 << 16))):
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    p = (1 << 16) + 1
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 2
    if m > 1:
        out.append((m, 1))
    return FactoredInteger(n, tuple(out))


def mobius(q: int) -> int:
    if q <= 0:
        raise DomainError(f"mobius needs q >= 1, got {q}")
    f = factorize(q).factors
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def totient(q: int) -> int:
    if q <= 0:
        raise DomainError(f"totient needs q >= 1, got {q}")
    out = q
    for p, _ in factorize(q).factors:
        out = out // p * (p - 1)
    return out


def von_mangoldt(n: int) -> float:
    """Lambda(n) from the factorisation (slow path, used for checks)."""
    f = factorize(n).factors
    if len(f) == 1:
        return math.log(f[0][0])
    return 0.0


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)
