import cmath
import math

import numpy as np
import pytest

from zerodetect.arith import mobius, totient
from zerodetect.characters import (build_group, character_from_label, conductor, enumerate_characters,
                                   evaluate, gauss_sum, real_primitive, root_number, tau)
from zerodetect.errors import DomainError, VanishingGaussSumError


def test_trivial_group():
    G = build_group(1)
    assert G.phi == 1
    (chi,) = enumerate_characters(G)
    assert all(chi(n) == 1 for n in range(-5, 6))


def test_mod5_cyclic():
    G = build_group(5)
    assert G.orders == (4,)
    chars = enumerate_characters(G)
    assert len(chars) == 4 and chars[0].is_principal
    assert sum(1 for c in chars if c.is_real and not c.is_principal) == 1


def test_mod8_generators():
    G = build_group(8)
    assert sorted(G.orders) == [2, 2]
    assert {g % 8 for g, _ in G.generators} == {7, 5}


def test_mod12_all_real():
    chars = enumerate_characters(build_group(12))
    assert len(chars) == 4 and all(c.is_real for c in chars)


def test_group_reconstruction():
    for q in (7, 8, 9, 16, 24, 45, 100, 720):
        G = build_group(q)
        assert math.prod(G.orders) == totient(q)
        seen = set()
        for u in G.units():
            exps = G.dlog[u]
            assert G.reconstruct(exps) == u
            seen.add(tuple(exps))
        assert len(seen) == totient(q)


def test_group_domain():
    with pytest.raises(DomainError):
        build_group(0)


def test_evaluate_examples():
    chi0 = build_group(5).character(0)
    chi = character_from_label("5.2")
    assert evaluate(chi0, 7) == 1
    assert evaluate(chi, 2) == -1
    assert all(evaluate(c, 10) == 0 for c in enumerate_characters(build_group(5)))
    # quadratic residues mod 5 are 1 and 4
    assert [evaluate(chi, n) for n in range(1, 5)] == [1, -1, -1, 1]


def test_values_are_unimodular_and_multiplicative():
    for q in (5, 8, 12, 15, 21, 32):
        for chi in enumerate_characters(build_group(q)):
            for n in range(q):
                v = chi(n)
                assert (abs(v) == 0) == (math.gcd(n, q) > 1)
            for m in range(1, q):
                for n in range(1, q):
                    am, an, amn = chi.angle(m), chi.angle(n), chi.angle(m * n)
                    if am is None or an is None:
                        assert amn is None
                        continue
                    # exact check on angles k/order
                    assert (am[0] * an[1] + an[0] * am[1]) * amn[1] % (am[1] * an[1]) == \
                        amn[0] * am[1] * an[1] % (am[1] * an[1]) or \
                        abs(chi(m) * chi(n) - chi(m * n)) < 1e-12


def test_parity():
    for q in (5, 7, 8, 12, 13):
        for chi in enumerate_characters(build_group(q)):
            assert chi(-1) == (-1) ** chi.kappa


def test_orthogonality():
    for q in range(1, 201):
        for chi in enumerate_characters(build_group(q)):
            s = sum(chi(a) for a in range(1, q + 1))
            if chi.is_principal:
                assert abs(s - totient(q)) < 1e-9
            else:
                assert abs(s) <= 1e-12 * max(1, q) + 1e-12


def test_conductor_examples():
    assert conductor(build_group(6).character(0))[0] == 1
    chi = character_from_label("5.2")
    assert conductor(chi) == (5, chi)
    induced = [c for c in enumerate_characters(build_group(15)) if c.conductor == 5 and c.is_real]
    assert induced
    qs, star = conductor(induced[0])
    assert qs == 5 and star == chi
    for n in range(1, 16):
        if math.gcd(n, 15) == 1:
            assert induced[0](n) == chi(n)


def test_gauss_sum_examples():
    assert abs(tau(build_group(4).character(0)) - mobius(4)) < 1e-14
    t5 = tau(character_from_label("5.2"))
    assert abs(t5 - math.sqrt(5)) < 1e-12
    for chi in enumerate_characters(build_group(7)):
        if not chi.is_principal:
            assert abs(abs(tau(chi)) - math.sqrt(7)) < 1e-12


def test_gauss_sum_principal_is_mobius():
    for q in range(1, 60):
        assert abs(tau(build_group(q).character(0)) - mobius(q)) < 1e-10


def test_primitive_gauss_sum_modulus():
    for q in range(3, 51):
        for chi in enumerate_characters(build_group(q)):
            if chi.is_primitive:
                assert abs(abs(tau(chi)) - math.sqrt(q)) < 1e-10


def test_induced_gauss_sum_formula():
    n = 0
    for q in range(2, 61):
        for chi in enumerate_characters(build_group(q)):
            g = gauss_sum(chi)
            if chi.is_primitive:
                continue
            r = q // chi.conductor
            if mobius(r) != 0 and math.gcd(r, chi.conductor) == 1:
                assert abs(g.value - g.induced_value) < 1e-10
                assert abs(g.value) > 0.5
                n += 1
    assert n > 20


def test_vanishing_gauss_sum_signalled():
    chi0 = build_group(4).character(0)
    with pytest.raises(VanishingGaussSumError):
        tau(chi0, require_nonzero=True)


def test_twisted_exponential_identity():
    for q in range(1, 51):
        chars = enumerate_characters(build_group(q))
        taus = np.array([np.conj(tau(c)) for c in chars])
        vals = np.array([c.values for c in chars])
        for a in range(1, q + 1):
            if math.gcd(a, q) != 1:
                continue
            for n in range(1, q + 1):
                if math.gcd(n, q) != 1:
                    continue
                rhs = np.sum(taus * vals[:, a % q] * vals[:, n % q]) / totient(q)
                assert abs(cmath.exp(-2j * math.pi * a * n / q) - rhs) < 1e-10


def test_root_number_unimodular():
    for q in (5, 7, 8, 11, 12, 13):
        for chi in enumerate_characters(build_group(q)):
            if chi.is_primitive:
                assert abs(abs(root_number(chi)) - 1) < 1e-12


def test_labels_round_trip():
    for q in (1, 5, 8, 15):
        for chi in enumerate_characters(build_group(q)):
            assert character_from_label(chi.label) == chi
    assert real_primitive(5) == character_from_label("5.2")


def test_conj_and_product():
    chi = character_from_label("5.1")
    assert (chi * chi.conj()).is_principal
    assert chi.conj().conj() == chi
