import cmath
import math

import mpmath
import numpy as np
import pytest

from nonres.services.hurwitz_service import HurwitzService
from nonres.services.lfunction_service import LFunctionService
from nonres.utils.util_error import HurwitzPoleError, PrimitiveRequiredError, UsageError

from conftest import INDUCED_9, QUAD_3, QUAD_4, QUAD_5


@pytest.fixture(scope="module")
def hurwitz(settings):
    return HurwitzService(settings)


@pytest.fixture(scope="module")
def lfunctions(settings):
    return LFunctionService(settings)


def _dirichlet_oracle(s, chi):
    """mpmath's periodic Dirichlet series for chi, from its residue values."""
    with mpmath.workdps(30):
        return complex(mpmath.dirichlet(mpmath.mpc(s.real, s.imag), [complex(v) for v in chi.residue_values]))


def test_hurwitz_special_values(hurwitz):
    assert hurwitz.hurwitz_zeta(2, 1.0)[0] == pytest.approx(math.pi**2 / 6, rel=1e-13)
    assert hurwitz.hurwitz_zeta(2, 0.5)[0] == pytest.approx(3 * math.pi**2 / 6, rel=1e-13)


def test_hurwitz_derivative_finite_difference(hurwitz):
    s, a, h = complex(1.5, 2.0), 0.3, 1e-5
    _, deriv = hurwitz.hurwitz_zeta(s, a)
    central = (hurwitz.hurwitz_zeta(s + h, a)[0] - hurwitz.hurwitz_zeta(s - h, a)[0]) / (2 * h)
    assert abs(deriv - central) / abs(deriv) < 1e-6


@pytest.mark.parametrize("s", [complex(0.5, 14.1), complex(-1.5, 3.0), complex(2.5, -40.0), complex(0.9, 0.05)])
@pytest.mark.parametrize("a", [0.05, 0.5, 1.0])
def test_hurwitz_against_mpmath(hurwitz, s, a):
    value, deriv = hurwitz.hurwitz_zeta(s, a)
    with mpmath.workdps(30):
        expected = complex(mpmath.zeta(mpmath.mpc(s.real, s.imag), a))
        expected_deriv = complex(mpmath.zeta(mpmath.mpc(s.real, s.imag), a, 1))
    assert value == pytest.approx(expected, rel=1e-11)
    assert deriv == pytest.approx(expected_deriv, rel=1e-10)


def test_hurwitz_pole(hurwitz):
    with pytest.raises(HurwitzPoleError):
        hurwitz.hurwitz_zeta(1.0, 0.5)
    values, _ = hurwitz.hurwitz_zeta_batch([1.0], [0.25, 1.0], pole_free=True)
    assert values[0, 0] == pytest.approx(-float(mpmath.digamma(0.25)), rel=1e-12)
    assert values[0, 1] == pytest.approx(float(mpmath.euler), rel=1e-12)


def test_hurwitz_domain(hurwitz):
    with pytest.raises(UsageError):
        hurwitz.hurwitz_zeta(2.0, 1.5)
    with pytest.raises(UsageError):
        hurwitz.hurwitz_zeta(-3.0, 0.5)


def test_mpmath_backend_agrees(settings, hurwitz):
    exact = HurwitzService(settings.model_copy(update={"HURWITZ_BACKEND": "mpmath"}))
    s = np.array([0.5 + 10j, 2.0 - 3j])
    a = np.array([0.2, 0.7])
    fast, d_fast = hurwitz.hurwitz_zeta_batch(s, a)
    slow, d_slow = exact.hurwitz_zeta_batch(s, a)
    assert np.allclose(fast, slow, rtol=1e-11)
    assert np.allclose(d_fast, d_slow, rtol=1e-10)


def test_l_value_at_one(characters, lfunctions):
    assert lfunctions.l_value(1.0, characters.get_character(QUAD_4)) == pytest.approx(math.pi / 4, rel=1e-12)


def test_l_value_against_series(characters, lfunctions):
    for q in range(3, 21):
        for chi in characters.enumerate_characters(q):
            if chi.is_principal:
                continue
            for s in (complex(2.0), complex(0.5, 6.0)):
                assert lfunctions.l_value(s, chi) == pytest.approx(_dirichlet_oracle(s, chi), rel=1e-9, abs=1e-12)


def test_height_cap(characters, lfunctions, settings):
    with pytest.raises(UsageError):
        lfunctions.l_value(complex(0.5, settings.HEIGHT_CAP + 1), characters.get_character(QUAD_3))


def test_log_derivative_dirichlet_series(characters, lfunctions, tables):
    n = tables.prime_powers
    weights = tables.von_mangoldt[n]
    s = complex(3.0, 4.0)
    for label in (QUAD_3, QUAD_5, "7.3"):
        chi = characters.get_character(label)
        series = -np.sum(weights * chi.values(n) * np.exp(-s * np.log(n)))
        assert lfunctions.l_log_derivative(s, chi) == pytest.approx(series, abs=1e-8)


def test_log_derivative_induced_relation(characters, lfunctions):
    imprimitive = [INDUCED_9] + [
        str(chi.label)
        for q in (12, 15, 20)
        for chi in characters.enumerate_characters(q)
        if not chi.is_primitive and not chi.is_principal
    ]
    assert len(imprimitive) >= 3
    for label in imprimitive:
        chi = characters.get_character(label)
        direct = lfunctions.l_log_derivative(2.0, chi, method="direct")
        induced = lfunctions.l_log_derivative(2.0, chi, method="induced")
        assert abs(direct - induced) < 1e-9


def test_log_derivative_conjugation(characters, lfunctions):
    chi = characters.get_character("7.3")
    s = complex(0.3, 5.0)
    conj = characters.conjugate(chi)
    value = lfunctions.l_log_derivative(s, chi)
    assert lfunctions.l_log_derivative(s.conjugate(), conj) == pytest.approx(value.conjugate(), abs=1e-10)


def test_log_derivative_matches_finite_difference(characters, lfunctions):
    h = 1e-5
    for label, s in ((QUAD_5, complex(2.0, 3.0)), ("5.2", complex(0.7, 5.0)), (QUAD_3, complex(0.5, 3.0))):
        chi = characters.get_character(label)
        # log of the ratio keeps both points on one branch
        central = cmath.log(lfunctions.l_value(s + h, chi) / lfunctions.l_value(s - h, chi)) / (2 * h)
        value = lfunctions.l_log_derivative(s, chi)
        assert abs(value - central) / abs(value) < 1e-6


def test_functional_equation(characters, lfunctions):
    rng = np.random.default_rng(11)
    points = rng.uniform(-1, 2, 25) + 1j * rng.uniform(-20, 20, 25)
    for q in range(3, 21):
        for chi in characters.select_characters(q, "primitive"):
            if chi.is_principal:
                continue
            for s in points:
                assert lfunctions.functional_equation_residual(complex(s), chi) < 1e-7


def test_functional_equation_worked_point(characters, lfunctions):
    assert lfunctions.functional_equation_residual(complex(0.7, 3.0), characters.get_character(QUAD_5)) < 1e-8


def test_completed_l(characters, lfunctions):
    value = lfunctions.completed_l(0.5, characters.get_character(QUAD_5))
    assert abs(value.imag) <= 1e-9 * abs(value)
    assert lfunctions.completed_l(2.0, characters.get_character(QUAD_4)) != 0
    with pytest.raises(PrimitiveRequiredError):
        lfunctions.completed_l(2.0, characters.get_character(INDUCED_9))


def test_hardy_z(characters, lfunctions):
    chi = characters.get_character(QUAD_3)
    assert lfunctions.hardy_z(8.0, chi) * lfunctions.hardy_z(8.1, chi) < 0
    for t in (2.5, 13.7, 21.2):
        assert abs(lfunctions.hardy_z(t, chi)) == pytest.approx(abs(lfunctions.l_value(complex(0.5, t), chi)), rel=1e-9)


def test_hardy_z_reflection(characters, lfunctions):
    for label in (QUAD_3, QUAD_5):
        chi = characters.get_character(label)
        ratios = [lfunctions.hardy_z(-t, chi) / lfunctions.hardy_z(t, chi) for t in (1.0, 2.0, 3.0)]
        assert all(r == pytest.approx(ratios[0], rel=1e-9) for r in ratios)
        assert abs(ratios[0]) == pytest.approx(1, rel=1e-9)


def test_hardy_z_complex_character(characters, lfunctions):
    chi = characters.get_character("7.3")
    t = np.linspace(-5, 5, 21)
    z = lfunctions.hardy_z_batch(t, chi)
    values, _ = lfunctions.l_value_batch(0.5 + 1j * t, chi)
    assert np.allclose(np.abs(z), np.abs(values), rtol=1e-9)
    assert cmath.isfinite(complex(lfunctions.root_number(chi)))
