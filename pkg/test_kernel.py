import math

import numpy as np
import pytest
from scipy import integrate

from nonres.schemas.kernel import KernelParams
from nonres.services.kernel_service import CHECK_TOLERANCE, KernelService
from nonres.utils.util_error import UsageError


@pytest.fixture(scope="module")
def kernels(settings):
    return KernelService(settings)


@pytest.fixture
def params():
    return KernelParams(x=50.0, y=math.exp(math.pi / 4), t0=2.0)


def test_weight_support(kernels, params):
    lo, hi = params.support
    assert kernels.weight_w(lo * 0.999, params) == 0
    assert kernels.weight_w(hi * 1.001, params) == 0
    assert kernels.weight_w(params.x, params) == pytest.approx(2 * params.log_y)
    values = kernels.weight_w(np.array([lo * 0.5, params.x, hi * 2]), params)
    assert values[0] == 0 and values[2] == 0


def test_weight_rejects_nonpositive(kernels, params):
    with pytest.raises(UsageError):
        kernels.weight_w(0.0, params)


def test_kernel_singular_point(kernels, params):
    s = complex(1, params.t0)
    expected = params.x ** s * (2 * params.log_y) ** 2
    assert kernels.kernel_closed_form(s, params) == pytest.approx(expected, rel=1e-12)
    nearby = kernels.kernel_closed_form(s + 1e-4, params)
    assert nearby == pytest.approx(expected, rel=1e-3)


def test_kernel_matches_integral_definition(kernels, params):
    # K(s) = int w(u) u^(s-1) du over the support, integrated directly in u
    s = complex(0.5, 7.0)
    lo, hi = params.support

    def part(u, fn):
        return fn(kernels.weight_w(u, params) * u ** (s - 1))

    re = integrate.quad(part, lo, hi, args=(np.real,), points=[params.x], limit=400, epsrel=1e-12)[0]
    im = integrate.quad(part, lo, hi, args=(np.imag,), points=[params.x], limit=400, epsrel=1e-12)[0]
    closed = kernels.kernel_closed_form(s, params)
    assert closed == pytest.approx(complex(re, im), rel=1e-7)
    assert closed == pytest.approx(kernels.kernel_by_quadrature(s, params), rel=1e-8)


def test_kernel_array_input(kernels, params):
    s = np.array([0.5 + 3j, 1 + 2j, -0.5 - 4j])
    values = kernels.kernel_closed_form(s, params)
    for si, v in zip(s, values):
        assert v == pytest.approx(kernels.kernel_closed_form(complex(si), params))


def test_quadrature_strip_bound(kernels, params):
    with pytest.raises(UsageError):
        kernels.kernel_by_quadrature(complex(5, 0), params)


@pytest.mark.parametrize("t0, k, expected", [(2.0, 0, 2.19328), (2.0, 1, 10.5507), (-2.0, 0, 2.19328)])
def test_select_yk(t0, k, expected):
    y = KernelService.select_yk(t0, k)
    assert y == pytest.approx(expected, rel=1e-5)
    assert math.sin(t0 * math.log(y)) ** 2 == pytest.approx(1)


def test_select_yk_rejects_small_t0():
    with pytest.raises(UsageError):
        KernelService.select_yk(0.5, 0)


def test_kernel_check(kernels):
    report = kernels.kernel_check(samples=100, seed=7)
    assert report.passed
    assert report.max_relative_error < CHECK_TOLERANCE
    assert len(report.rows) == 100
    again = kernels.kernel_check(samples=5, seed=7, keep_rows=False)
    assert again.rows == []
    assert again.max_relative_error <= report.max_relative_error


def test_kernel_params_admissible():
    assert KernelParams(x=50.0, y=2.19, t0=2.0).admissible
    assert not KernelParams(x=5.0, y=2.19, t0=2.0).admissible
    with pytest.raises(ValueError):
        KernelParams(x=50.0, y=1.0, t0=2.0)


def test_kernel_conjugation_symmetry(kernels, params):
    mirrored = KernelParams(x=params.x, y=params.y, t0=-params.t0)
    near_singular = complex(1, params.t0) + 3e-7j
    for s in (complex(0.5, 7.0), complex(-0.5, -4.0), complex(1.3, 2.2), near_singular):
        value = kernels.kernel_closed_form(s, params)
        assert kernels.kernel_closed_form(s.conjugate(), mirrored) == pytest.approx(value.conjugate(), rel=1e-13)


def test_kernel_continuous_through_singularity():
    kernels = KernelService()
    p = KernelParams(x=1.0, y=math.e, t0=2.0)
    centre = complex(1, p.t0)
    for direction in (1, -1, 1j, -1j, (1 + 1j) / math.sqrt(2)):
        outer = kernels.kernel_closed_form(centre + 1e-5 * direction, p)
        inner = kernels.kernel_closed_form(centre + 1e-7 * direction, p)
        assert abs(outer - inner) / abs(inner) < 1e-6
        assert inner == pytest.approx(4, rel=1e-9)
        assert outer == pytest.approx(4, rel=1e-9)
