"""Dirichlet characters mod q.

Characters are indexed by exponent tuples against fixed generators of
(Z/qZ)^x and enumerated lexicographically, so ``q.0`` is always the
principal character.  Values are kept as exact angles ``num / order`` of a
full turn next to their complex doubles.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .arith import factorize, mobius, totient
from .errors import DomainError, VanishingGaussSumError

TWO_PI = 2.0 * math.pi


def _primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fac = [f for f, _ in factorize(p - 1).factors]
    for g in range(2, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in fac):
            return g
    raise AssertionError("no primitive root")  # pragma: no cover


def _crt_lift(residue: int, pe: int, q: int) -> int:
    """Element congruent to residue mod pe and to 1 mod q/pe."""
    rest = q // pe
    if rest == 1:
        return residue % q
    # x = residue + pe*k with x = 1 mod rest
    k = ((1 - residue) * pow(pe, -1, rest)) % rest
    return (residue + pe * k) % q


@dataclass(frozen=True, eq=False)
class CharacterGroup:
    """Generators of (Z/qZ)^x with a discrete-log table for every unit."""

    q: int
    generators: tuple[tuple[int, int], ...]  # (element mod q, order)
    dlog: dict

    @property
    def phi(self) -> int:
        return math.prod(o for _, o in self.generators)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(o for _, o in self.generators)

    @cached_property
    def exponent(self) -> int:
        """Least common multiple of the generator orders."""
        return math.lcm(1, *self.orders)

    def units(self) -> list[int]:
        return sorted(self.dlog)

    def reconstruct(self, exps: Sequence[int]) -> int:
        out = 1
        for (g, _), e in zip(self.generators, exps):
            out = out * pow(g, e, self.q) % self.q
        return out % self.q if self.q > 1 else 0

    def characters(self) -> list["DirichletCharacter"]:
        return enumerate_characters(self)

    def character(self, index: int) -> "DirichletCharacter":
        exps = _index_to_exps(index, self.orders)
        return DirichletCharacter(self, exps)


@lru_cache(maxsize=256)
def build_group(q: int) -> CharacterGroup:
    q = int(q)
    if q <= 0:
        raise DomainError(f"modulus must be >= 1, got {q}")
    if q > 10**6:
        raise DomainError(f"modulus {q} above the supported 10^6")
    gens: list[tuple[int, int]] = []
    for p, e in factorize(q).factors:
        pe = p**e
        if p == 2:
            if e == 1:
                continue
            gens.append((_crt_lift(pe - 1, pe, q), 2))
            if e >= 3:
                gens.append((_crt_lift(5, pe, q), 2 ** (e - 2)))
            continue
        g = _primitive_root(p)
        if e > 1 and pow(g, p - 1, p * p) == 1:
            g += p
        gens.append((_crt_lift(g, pe, q), (p - 1) * p ** (e - 1)))
    dlog: dict[int, tuple[int, ...]] = {}
    orders = [o for _, o in gens]
    for exps in itertools.product(*(range(o) for o in orders)):
        n = 1
        for (g, _), k in zip(gens, exps):
            n = n * pow(g, k, q) % q
        dlog[n % q if q > 1 else 0] = exps
    return CharacterGroup(q, tuple(gens), dlog)


def _index_to_exps(index: int, orders: Sequence[int]) -> tuple[int, ...]:
    total = math.prod(orders)
    if not 0 <= index < total:
        raise DomainError(f"character index {index} out of range 0..{total - 1}")
    exps = []
    for o in reversed(orders):
        index, r = divmod(index, o)
        exps.append(r)
    return tuple(reversed(exps))


def _exps_to_index(exps: Sequence[int], orders: Sequence[int]) -> int:
    index = 0
    for e, o in zip(exps, orders):
        index = index * o + e
    return index


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    group: CharacterGroup
    exps: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.group.q

    @property
    def index(self) -> int:
        return _exps_to_index(self.exps, self.group.orders)

    @property
    def label(self) -> str:
        return f"{self.q}.{self.index}"

    def __repr__(self):
        return f"DirichletCharacter({self.label})"

    def __eq__(self, other):
        return (isinstance(other, DirichletCharacter) and self.q == other.q
                and self.exps == other.exps)

    def __hash__(self):
        return hash((self.q, self.exps))

    @cached_property
    def order(self) -> int:
        """Order of the character; its values are order-th roots of unity."""
        out = 1
        for e, o in zip(self.exps, self.group.orders):
            out = math.lcm(out, o // math.gcd(e, o))
        return out

    @cached_property
    def angles(self) -> np.ndarray:
        """Exact numerators: chi(n) = e(angles[n] / order), -1 on non-units."""
        q, L = self.q, self.order
        out = np.full(q, -1, dtype=np.int64)
        weights = [e * L // o for e, o in zip(self.exps, self.group.orders)]
        for n, vec in self.group.dlog.items():
            out[n] = sum(w * v for w, v in zip(weights, vec)) % L
        out.setflags(write=False)
        return out

    @cached_property
    def values(self) -> np.ndarray:
        L = self.order
        roots = np.exp(1j * TWO_PI * np.arange(L) / L)
        for j, v in enumerate((1, 1j, -1, -1j)):
            if (j * L) % 4 == 0:
                roots[j * L // 4] = v
        ang = self.angles
        vals = np.where(ang >= 0, roots[np.maximum(ang, 0)], 0.0)
        vals.setflags(write=False)
        return vals

    def __call__(self, n: int) -> complex:
        return complex(self.values[int(n) % self.q])

    def angle(self, n: int) -> tuple[int, int] | None:
        """chi(n) as (numerator, order), None when gcd(n, q) > 1."""
        a = int(self.angles[int(n) % self.q])
        return None if a < 0 else (a, self.order)

    @property
    def is_principal(self) -> bool:
        return all(e == 0 for e in self.exps)

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    @cached_property
    def kappa(self) -> int:
        """Parity: chi(-1) = (-1)^kappa."""
        if self.q <= 2:
            return 0
        a = int(self.angles[self.q - 1])
        return 0 if a == 0 else 1

    def conj(self) -> "DirichletCharacter":
        exps = tuple((-e) % o for e, o in zip(self.exps, self.group.orders))
        return DirichletCharacter(self.group, exps)

    def __mul__(self, other: "DirichletCharacter") -> "DirichletCharacter":
        """Product character modulo lcm of the two moduli."""
        m = math.lcm(self.q, other.q)
        G = build_group(m)
        target = [self(n) * other(n) for n in range(m)]
        return _match_character(G, target)

    @cached_property
    def _conductor(self) -> tuple[int, "DirichletCharacter"]:
        q = self.q
        units = self.group.dlog
        ang = self.angles
        for d in sorted(_divisors(q)):
            if all(ang[n] == 0 for n in units if n % d == 1 % d):
                break
        G = build_group(d)
        target = []
        for m in range(d):
            if math.gcd(m, d) != 1:
                target.append(0.0)
                continue
            n = next(n for n in range(m, q + d, d) if math.gcd(n, q) == 1)
            target.append(self(n))
        return d, _match_character(G, target)

    @property
    def conductor(self) -> int:
        return self._conductor[0]

    @property
    def primitive(self) -> "DirichletCharacter":
        return self._conductor[1]

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.q


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


def _match_character(G: CharacterGroup, target) -> DirichletCharacter:
    target = np.asarray(target, dtype=complex)
    for chi in enumerate_characters(G):
        if np.allclose(chi.values, target, atol=1e-9):
            return chi
    raise AssertionError("character not found in group")  # pragma: no cover


@lru_cache(maxsize=256)
def _enumerate(G: CharacterGroup) -> tuple[DirichletCharacter, ...]:
    return tuple(DirichletCharacter(G, exps)
                 for exps in itertools.product(*(range(o) for o in G.orders)))


def enumerate_characters(G: CharacterGroup) -> list[DirichletCharacter]:
    """All phi(q) characters, lexicographic in exponent tuples (principal first)."""
    return list(_enumerate(G))


def evaluate(chi: DirichletCharacter, n: int) -> complex:
    return chi(n)


def conductor(chi: DirichletCharacter) -> tuple[int, DirichletCharacter]:
    return chi._conductor


def character_from_label(label: str) -> DirichletCharacter:
    """Parse ``"q.index"``; ``"1.0"`` (alias ``"zeta"``) is the trivial character."""
    if label == "zeta":
        label = "1.0"
    try:
        q_s, i_s = label.split(".")
        q, idx = int(q_s), int(i_s)
    except ValueError:
        raise DomainError(f"bad character label {label!r}; expected 'q.index'") from None
    return build_group(q).character(idx)


def real_primitive(q: int) -> DirichletCharacter:
    """The first real primitive non-principal character mod q in enumeration order."""
    for chi in enumerate_characters(build_group(q)):
        if chi.is_real and not chi.is_principal and chi.is_primitive:
            return chi
    raise DomainError(f"no real primitive character mod {q}")


@dataclass(frozen=True)
class GaussSumValue:
    chi: DirichletCharacter
    value: complex
    method: str  # "direct" or "induced-formula"
    induced_value: complex | None = None

    def __complex__(self):
        return self.value

    def __abs__(self):
        return abs(self.value)


def _gauss_direct(chi: DirichletCharacter) -> complex:
    q, L = chi.q, chi.order
    re, im = [], []
    for a in range(1, q + 1):
        k = int(chi.angles[a % q])
        if k < 0:
            continue
        # e(k/L + a/q), exact rational phase reduced mod 1
        num = (k * q + a * L) % (L * q)
        ang = TWO_PI * num / (L * q)
        re.append(math.cos(ang))
        im.append(math.sin(ang))
    return complex(math.fsum(re), math.fsum(im))


def gauss_sum(chi: DirichletCharacter) -> GaussSumValue:
    """tau(chi) = sum_{a mod q} chi(a) e(a/q), with the induced formula alongside."""
    direct = _gauss_direct(chi)
    if chi.is_primitive:
        return GaussSumValue(chi, direct, "direct")
    qs, star = chi._conductor
    r = chi.q // qs
    induced = mobius(r) * star(r) * _gauss_direct(star) if math.gcd(r, qs) == 1 else 0.0
    return GaussSumValue(chi, direct, "direct", complex(induced))


def tau(chi: DirichletCharacter, *, require_nonzero: bool = False) -> complex:
    v = gauss_sum(chi).value
    if require_nonzero and abs(v) < 1e-9:
        raise VanishingGaussSumError(f"tau({chi.label}) vanishes", character=chi.label)
    return v


def root_number(chi: DirichletCharacter) -> complex:
    """epsilon(chi) for primitive chi: tau(chi) / (i^kappa sqrt(q))."""
    if not chi.is_primitive:
        raise DomainError("root number is defined for primitive characters")
    return tau(chi) / ((1j ** chi.kappa) * math.sqrt(chi.q))


def phi(q: int) -> int:
    return totient(q)
