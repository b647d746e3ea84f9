import cmath
import math

import numpy as np
import pytest
from sympy import isprime
from sympy.ntheory import legendre_symbol

from nonres.schemas.character import CharacterLabel
from nonres.services.lfunction_service import LFunctionService
from nonres.utils.util_error import CapExceededError, PrimitiveRequiredError, PrincipalCharacterError

from conftest import INDUCED_9, QUAD_3, QUAD_5, QUAD_7


@pytest.mark.parametrize("q, count", [(1, 1), (2, 1), (3, 2), (8, 4), (12, 4), (35, 24)])
def test_enumerate_counts(characters, q, count):
    chars = characters.enumerate_characters(q)
    assert len(chars) == count
    assert len({c.label for c in chars}) == count
    assert sum(c.is_principal for c in chars) == 1


def test_group_cap(settings, characters):
    with pytest.raises(CapExceededError):
        characters.enumerate_characters(settings.CHARACTER_GROUP_CAP + 1)


def test_label_parsing():
    assert str(CharacterLabel.parse("7.3")) == "7.3"
    for bad in ("7", "7.0", "6.2", "7.7", "a.b"):
        with pytest.raises(ValueError):
            CharacterLabel.parse(bad)


def test_char_value_examples(characters):
    chi = characters.get_character(QUAD_5)
    assert complex(characters.char_value(chi, 2)) == pytest.approx(-1)
    assert characters.char_value(chi, 10).is_zero
    assert characters.char_value(chi, 1).is_one
    assert characters.char_value(chi, -1).is_one


def test_char_value_reduces_huge_integers(characters):
    chi = characters.get_character(QUAD_7)
    for n in (10**20, -(10**20) - 3, 2**64 + 5, -(2**70)):
        assert characters.char_value(chi, n) == characters.char_value(chi, n % 7)
    assert characters.char_value(chi, 10**20).is_one  # 10^20 = 2 mod 7, a square
    assert characters.char_value(chi, 7 * 10**30).is_zero
    assert chi.turn(3 + 7 * 2**80) == chi.turn(3) == 1
    assert chi.turn_fraction(-(10**25)) == chi.turn_fraction(-(10**25) % 7)


def test_character_parity(characters):
    assert characters.character_parity(characters.get_character(QUAD_3)) == 1
    assert characters.character_parity(characters.get_character(QUAD_5)) == 0
    assert characters.character_parity(characters.get_character("12.1")) == 0


@pytest.mark.parametrize("q", [5, 8, 9, 12, 16, 20, 27, 45, 64, 100])
def test_multiplicativity(characters, q):
    m = np.arange(1, 10 * q + 1)
    for chi in characters.enumerate_characters(q):
        v = chi.values(m)
        prod = chi.values(np.outer(m, m).ravel() % q).reshape(len(m), len(m))
        assert np.allclose(prod, np.outer(v, v), atol=1e-10)


@pytest.mark.parametrize("q", [7, 24, 36, 100, 128, 199])
def test_orthogonality(characters, q):
    for chi in characters.enumerate_characters(q):
        if not chi.is_principal:
            assert abs(chi.values(np.arange(1, q + 1)).sum()) < 1e-9


def test_conductor_examples(characters):
    f, star = characters.conductor_and_primitive(characters.get_character(QUAD_7))
    assert f == 7 and str(star.label) == QUAD_7
    f, star = characters.conductor_and_primitive(characters.get_character("12.1"))
    assert f == 1 and star.is_principal
    f, star = characters.conductor_and_primitive(characters.get_character(INDUCED_9))
    assert f == 3 and str(star.label) == QUAD_3


@pytest.mark.parametrize(
    "label, conductor, inducing",
    [("8.5", 8, "8.5"), ("16.9", 8, "8.5"), ("16.7", 8, "8.3"), ("16.15", 4, "4.3"), ("32.17", 8, "8.5")],
)
def test_two_power_conductors(characters, label, conductor, inducing):
    f, star = characters.conductor_and_primitive(characters.get_character(label))
    assert f == conductor and str(star.label) == inducing


@pytest.mark.parametrize("q", [8, 9, 12, 15, 16, 20, 24, 45])
def test_inducing_character_agrees(characters, q):
    units = np.array([n for n in range(1, 4 * q) if math.gcd(n, q) == 1])
    for chi in characters.enumerate_characters(q):
        f, star = characters.conductor_and_primitive(chi)
        assert q % f == 0
        assert star.is_primitive
        assert np.allclose(chi.values(units), star.values(units), atol=1e-12)


def test_gauss_sum_examples(characters):
    assert characters.gauss_sum(characters.get_character(QUAD_5)) == pytest.approx(math.sqrt(5))
    assert characters.gauss_sum(characters.get_character(QUAD_3)) == pytest.approx(1j * math.sqrt(3))
    assert characters.gauss_sum(characters.get_character("1.1")) == pytest.approx(1)
    with pytest.raises(PrimitiveRequiredError):
        characters.gauss_sum(characters.get_character(INDUCED_9))


def test_gauss_sum_modulus(characters):
    for q in range(3, 101):
        for chi in characters.enumerate_characters(q):
            if chi.is_primitive:
                assert abs(characters.gauss_sum(chi)) ** 2 == pytest.approx(q, rel=1e-9)


def test_root_numbers(characters):
    assert characters.root_number(characters.get_character(QUAD_5)) == pytest.approx(1)
    assert characters.root_number(characters.get_character(QUAD_3)) == pytest.approx(1)
    for q in range(3, 51):
        for chi in characters.select_characters(q, "primitive"):
            assert abs(characters.root_number(chi)) == pytest.approx(1, abs=1e-9)


def test_conjugate(characters):
    n = np.arange(1, 60)
    for chi in characters.enumerate_characters(13):
        assert np.allclose(characters.conjugate(chi).values(n), np.conj(chi.values(n)))


def test_least_nonresidue_examples(characters):
    assert characters.least_nonresidue(characters.get_character(QUAD_7)) == 3
    assert characters.least_nonresidue(characters.get_character(QUAD_3)) == 2
    with pytest.raises(PrincipalCharacterError, match="undefined"):
        characters.least_nonresidue(characters.get_character("7.1"))


def test_least_nonresidue_matches_legendre(characters):
    for p in range(3, 300):
        if not isprime(p):
            continue
        (chi,) = characters.quadratic_characters(p)
        expected = next(n for n in range(2, p) if legendre_symbol(n, p) == -1)
        n_chi = characters.least_nonresidue(chi)
        assert n_chi == expected
        assert isprime(n_chi)


def test_least_nonresidue_is_prime(characters):
    for q in (15, 21, 40, 63):
        for chi in characters.enumerate_characters(q):
            if not chi.is_principal:
                assert isprime(characters.least_nonresidue(chi))


def test_select_and_describe(characters):
    assert [str(c.label) for c in characters.quadratic_characters(8)] == ["8.3", "8.5", "8.7"]
    assert all(c.is_primitive for c in characters.select_characters(9, "primitive"))
    row = characters.describe(characters.get_character(INDUCED_9))
    assert row.conductor == 3 and row.inducing_label == QUAD_3 and row.real and not row.primitive


def test_nonresidue_table(characters):
    rows = characters.nonresidue_table(3, 50, "quadratic")
    row = next(r for r in rows if r.q == 7)
    assert row.n_chi == 3
    assert all(r.q >= 3 for r in rows)


def test_unit_values(characters):
    chi = characters.get_character("13.2")
    z = complex(characters.char_value(chi, 2))
    assert abs(z) == pytest.approx(1, abs=1e-12)
    assert cmath.phase(z) != 0


def test_root_number_cached_on_character(characters, settings):
    chi = characters.get_character("7.3")
    first = chi.root_number
    assert chi.root_number is first
    assert LFunctionService(settings).root_number(chi) == characters.root_number(chi) == first
