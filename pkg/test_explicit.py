import math

import numpy as np
import pytest

from nonres.models.enums import FormulaVariant, InverseSquareMode, ZeroMethod
from nonres.schemas.character import CharacterLabel
from nonres.schemas.kernel import KernelParams
from nonres.schemas.zeros import ZeroArchive, ZeroRecord
from nonres.services.arithmetic_service import ArithmeticService
from nonres.services.explicit_service import ExplicitFormulaService
from nonres.services.kernel_service import KernelService
from nonres.utils.util_error import ArchiveIncompleteError, PrimitiveRequiredError, UsageError

from conftest import INDUCED_9, QUAD_3

Y0 = math.exp(math.pi / 4)


@pytest.fixture(scope="module")
def explicit(settings):
    return ExplicitFormulaService(settings)


@pytest.fixture
def params():
    return KernelParams(x=50.0, y=Y0, t0=2.0)


def _zero(rho, label=QUAD_3):
    method = ZeroMethod.CRITICAL_LINE_SCAN if rho.real == 0.5 else ZeroMethod.RECTANGLE_REFINEMENT
    return ZeroRecord(
        character=CharacterLabel.parse(label), beta=rho.real, gamma=rho.imag, method=method, tolerance=1e-8
    )


def test_windowed_sum_empty_support(explicit, characters, tables):
    p = KernelParams(x=0.5, y=1.5, t0=2.0)
    assert explicit.windowed_weighted_sum(characters.get_character(QUAD_3), p, tables) == 0


def test_windowed_sum_principal_scale(explicit, characters, tables):
    p = KernelParams(x=1e4, y=Y0, t0=2.0)
    value = explicit.windowed_weighted_sum(characters.get_character("3.1"), p, tables)
    assert value.real == pytest.approx(1e4, rel=0.3)


def test_windowed_sum_conjugation(explicit, characters, tables):
    chi = characters.get_character("7.3")
    p = KernelParams(x=500.0, y=Y0, t0=2.0)
    flipped = KernelParams(x=500.0, y=Y0, t0=-2.0)
    value = explicit.windowed_weighted_sum(chi, p, tables)
    mirrored = explicit.windowed_weighted_sum(characters.conjugate(chi), flipped, tables)
    assert mirrored == pytest.approx(value.conjugate(), rel=1e-12)


def test_cumulative_sum_ends_at_total(explicit, characters, tables, params):
    chi = characters.get_character(QUAD_3)
    n, running = explicit.cumulative_weighted_sum(chi, params, tables)
    assert running[-1] == pytest.approx(explicit.windowed_weighted_sum(chi, params, tables).real)
    assert np.all(np.diff(n) > 0)


def test_zero_side_theorem2_simple_cases(explicit, params):
    total, trivial = explicit.zero_side_theorem2([], params, 0, 10.0)
    assert total == 0 and trivial != 0
    assert explicit.zero_side_theorem2([], params, 1, 10.0)[1] == 0

    rho = complex(1, params.t0)
    total, _ = explicit.zero_side_theorem2([_zero(rho)], params, 1, 10.0)
    assert total == pytest.approx(-(params.x**rho) * (2 * params.log_y) ** 2, rel=1e-12)


def test_zero_side_theorem2_trivial_term(explicit, params):
    _, trivial = explicit.zero_side_theorem2([], params, 0, 10.0)
    assert trivial == pytest.approx(-KernelService().kernel_closed_form(0j, params), rel=1e-12)


def test_zero_side_incomplete(explicit, params):
    with pytest.raises(ArchiveIncompleteError):
        explicit.zero_side_theorem2([], params, 0, 10.0, complete_to=5.0)
    with pytest.raises(ArchiveIncompleteError):
        explicit.zero_side_theorem1([], 100.0, 10.0, complete_to=5.0)


def test_zero_side_theorem1(explicit):
    assert explicit.zero_side_theorem1([], 100.0, 10.0) == 0
    rho = complex(0.5, 10)
    single = explicit.zero_side_theorem1([_zero(rho)], 100.0, 20.0)
    assert abs(single) == pytest.approx(1000 / (abs(rho) * abs(rho + 1)), rel=1e-12)
    assert abs(single) == pytest.approx(9.877, abs=1e-3)
    pair = explicit.zero_side_theorem1([_zero(rho), _zero(rho.conjugate())], 100.0, 20.0)
    assert abs(pair.imag) < 1e-10
    assert explicit.zero_side_theorem1([_zero(rho)], 100.0, 5.0) == 0


def test_trivial_tail(explicit, params):
    odd = explicit.trivial_tail_theorem2(params, 1)
    kernels = KernelService()
    assert odd == pytest.approx(-sum(kernels.kernel_closed_form(complex(-m), params) for m in (1, 3, 5, 7, 9, 11)), rel=1e-6)
    with pytest.raises(UsageError):
        explicit.trivial_tail_theorem2(KernelParams(x=4.0, y=Y0, t0=2.0), 0)


def test_theorem2_residual(explicit, characters, archive_mod3, tables, params):
    chi = characters.get_character(QUAD_3)
    at_60 = explicit.residual_report(chi, params, archive_mod3, 60.0, FormulaVariant.THEOREM2, tables=tables)
    at_120 = explicit.residual_report(chi, params, archive_mod3, 120.0, FormulaVariant.THEOREM2, tables=tables)
    assert at_60.residual_scale < 0.15
    assert at_120.residual_scale <= 1.25 * at_60.residual_scale
    assert at_120.zero_count > at_60.zero_count
    assert at_60.expected_residual_scale == pytest.approx(50**-0.9 * Y0**4 * math.log(3 * 6))


def test_theorem2_partial_trivial(explicit, characters, archive_mod3, tables, params):
    chi = characters.get_character(QUAD_3)
    report = explicit.residual_report(
        chi, params, archive_mod3, 60.0, FormulaVariant.THEOREM2, tables=tables, full_trivial=False
    )
    assert not report.full_trivial
    assert report.trivial_term.re == 0 and report.trivial_term.im == 0


def test_theorem1_residual(explicit, characters, archive_mod3, tables):
    chi = characters.get_character(QUAD_3)
    p = KernelParams(x=200.0, y=2.0, t0=0.0)
    report = explicit.residual_report(chi, p, archive_mod3, 100.0, FormulaVariant.THEOREM1, tables=tables)
    assert report.residual_scale < 0.15
    assert report.y is None and report.expected_residual_scale is None


def test_residual_report_preconditions(explicit, characters, archive_mod3, params):
    with pytest.raises(PrimitiveRequiredError):
        explicit.residual_report(characters.get_character(INDUCED_9), params, archive_mod3, 60.0, "theorem2")
    with pytest.raises(ArchiveIncompleteError):
        explicit.residual_report(characters.get_character("7.6"), params, archive_mod3, 60.0, "theorem2")
    with pytest.raises(ArchiveIncompleteError):
        explicit.residual_report(characters.get_character(QUAD_3), params, archive_mod3, 200.0, "theorem2")


def test_inverse_square_simple(explicit):
    zero = _zero(complex(0.5, 2.0))
    report = explicit.inverse_square_zero_sum([zero], 2.0, 0.4, InverseSquareMode.ANNULUS_R_TO_1, 3)
    assert report.sum == pytest.approx(4)
    assert report.bound_form == pytest.approx(math.log(18) / 0.4)
    assert report.zero_count == 1

    empty = explicit.inverse_square_zero_sum([], 2.0, 0.5, InverseSquareMode.BEYOND_R, 3)
    assert empty.sum == 0 and empty.ratio == 0


def test_inverse_square_beyond_k(explicit):
    report = explicit.inverse_square_zero_sum([_zero(complex(0.5, 10.0))], 2.0, 2, InverseSquareMode.BEYOND_K, 5)
    tau = 6.0
    assert report.bound_form == pytest.approx(math.log(5) / 2 + math.log(2 + tau) / 2 + math.log(1 + tau / 2) / tau)
    assert report.sum == pytest.approx(1 / abs(complex(-0.5, 8.0)) ** 2)


def test_inverse_square_ranges(explicit):
    with pytest.raises(UsageError):
        explicit.inverse_square_zero_sum([], 2.0, 0.1, InverseSquareMode.ANNULUS_R_TO_1, 3)
    with pytest.raises(UsageError):
        explicit.inverse_square_zero_sum([], 2.0, 1.5, InverseSquareMode.BEYOND_K, 3)


def test_inverse_square_tail_stable(explicit, archive_mod3):
    label = CharacterLabel.parse(QUAD_3)
    short = explicit.inverse_square_zero_sum(archive_mod3.zeros_for(label, 60.0), 2.0, 0.5, "beyond_R", 3)
    full = explicit.inverse_square_zero_sum(archive_mod3.zeros_for(label, 120.0), 2.0, 0.5, "beyond_R", 3)
    assert full.ratio == pytest.approx(short.ratio, rel=0.1)
    assert full.sum > short.sum


def test_principal_main_term(explicit, tables):
    report = explicit.principal_main_term_check(3, KernelParams(x=1e4, y=Y0, t0=2.0), tables)
    assert report.predicted == pytest.approx(1e4)
    assert report.relative_gap < 0.3
    assert report.resonance_factor == pytest.approx(1)


def test_principal_main_term_off_resonance(settings, explicit):
    y = math.exp(math.pi / 2)  # t0 log y = pi
    p = KernelParams(x=1e4, y=y, t0=2.0)
    big = ArithmeticService(settings).build_tables(math.ceil(p.support[1]) + 1)
    report = explicit.principal_main_term_check(3, p, big)
    assert report.predicted_with_phase == pytest.approx(0, abs=1e-9)
    assert abs(complex(report.observed)) < 0.5 * report.predicted


def test_principal_main_term_below_support(explicit, tables):
    report = explicit.principal_main_term_check(3, KernelParams(x=0.1, y=Y0, t0=2.0), tables)
    assert complex(report.observed) == 0
    assert report.predicted > 0
    assert report.relative_gap == 1


@pytest.fixture(scope="module")
def archive_mod3_tall(zero_service, characters):
    return zero_service.build_archive([characters.get_character(QUAD_3)], 240.0)


def test_zero_side_theorem1_scales_per_zero(explicit, archive_mod3):
    label = CharacterLabel.parse(QUAD_3)
    records = archive_mod3.zeros_for(label) + [_zero(complex(0.8, 5.0))]
    for record in records:
        at_x = explicit.zero_side_theorem1([record], 100.0, 120.0)
        at_2x = explicit.zero_side_theorem1([record], 200.0, 120.0)
        factor = np.exp((record.rho + 1) * math.log(2))
        assert at_2x / at_x == pytest.approx(factor, rel=1e-12)
        assert abs(factor) == pytest.approx(2 ** (record.beta + 1), rel=1e-12)


def test_theorem2_residual_decays_with_height(explicit, characters, archive_mod3_tall, tables, params):
    chi = characters.get_character(QUAD_3)
    scales = [
        explicit.residual_report(chi, params, archive_mod3_tall, T, FormulaVariant.THEOREM2, tables=tables).residual_scale
        for T in (60.0, 120.0, 240.0)
    ]
    assert all(later <= 1.25 * earlier for earlier, later in zip(scales, scales[1:]))
    assert scales[-1] <= 1.25 * scales[0]


def test_theorem2_theta_sets_expected_scale(explicit, characters, archive_mod3, tables, params):
    chi = characters.get_character(QUAD_3)
    report = explicit.residual_report(
        chi, params, archive_mod3, 60.0, FormulaVariant.THEOREM2, tables=tables, theta=0.5
    )
    assert report.expected_residual_scale == pytest.approx(50**-0.5 * Y0**4 * math.log(3 * 6))
