"""The tent weight w(u), its twisted Mellin transform K(s, t0), and a quadrature oracle for it."""
import cmath
import logging
import math
import warnings

import numpy as np
from scipy import integrate

from nonres.config import NonresSettings, nonres_settings
from nonres.schemas.kernel import KernelCheckReport, KernelCheckRow, KernelParams
from nonres.utils.util_error import KernelQuadratureError, UsageError

logger = logging.getLogger(__name__)

QUADRATURE_RE_S_BOUND = 4.0
CHECK_TOLERANCE = 1e-8


class KernelService:
    def __init__(self, settings: NonresSettings = nonres_settings):
        self.settings = settings

    def weight_w(self, u, p: KernelParams):
        """(2 log y - |log(x/u)|) (x/u)^(1+i t0) inside the support, 0 outside.

        Accepts a scalar or an array of u > 0.
        """
        u_arr = np.asarray(u, dtype=np.float64)
        if np.any(u_arr <= 0):
            raise UsageError("weight_w needs u > 0")
        v = np.log(p.x / u_arr)
        inside = np.abs(v) < 2 * p.log_y
        tent = np.where(inside, 2 * p.log_y - np.abs(v), 0.0)
        values = tent * np.exp(v * (1 + 1j * p.t0))
        if np.ndim(u) == 0:
            return complex(values)
        return values

    def kernel_closed_form(self, s, p: KernelParams):
        """x^s ((y^(s-i t0-1) - y^(1+i t0-s)) / (s-i t0-1))^2, scalar or array s."""
        s_arr = np.asarray(s, dtype=np.complex128)
        L = p.log_y
        w = s_arr - 1 - 1j * p.t0
        x_s = np.exp(s_arr * math.log(p.x))
        near = np.abs(w) < self.settings.KERNEL_SINGULAR_RADIUS
        safe_w = np.where(near, 1.0, w)
        direct = (2 * np.sinh(safe_w * L) / safe_w) ** 2
        z2 = (w * L) ** 2
        series = 4 * L * L * (1 + z2 / 3 + 2 * z2 * z2 / 45)
        values = x_s * np.where(near, series, direct)
        if np.ndim(s) == 0:
            return complex(values)
        return values

    def kernel_by_quadrature(self, s: complex, p: KernelParams) -> complex:
        """Adaptive quadrature of the defining integral in v = log(u/x), split at the kink v = 0."""
        s = complex(s)
        if abs(s.real) > QUADRATURE_RE_S_BOUND:
            raise UsageError(f"quadrature oracle needs |Re s| <= {QUADRATURE_RE_S_BOUND:g} (got {s.real:g})")
        L = p.log_y
        w = s - 1 - 1j * p.t0
        a, b = w.real, w.imag
        scale = 2 * L * math.exp(2 * L * abs(a))

        def real_part(v):
            return (2 * L - abs(v)) * math.exp(a * v) * math.cos(b * v)

        def imag_part(v):
            return (2 * L - abs(v)) * math.exp(a * v) * math.sin(b * v)

        total = 0j
        worst = 0.0
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            for lo, hi in ((-2 * L, 0.0), (0.0, 2 * L)):
                re_val, re_err = integrate.quad(
                    real_part, lo, hi, epsabs=1e-14 * scale, epsrel=1e-13, limit=self.settings.QUADRATURE_LIMIT
                )
                im_val, im_err = integrate.quad(
                    imag_part, lo, hi, epsabs=1e-14 * scale, epsrel=1e-13, limit=self.settings.QUADRATURE_LIMIT
                )
                total += complex(re_val, im_val)
                worst = max(worst, re_err, im_err)

        if worst > 1e-10 * scale:
            logger.error(f"Kernel quadrature at s={s} missed its tolerance: {worst:.3e}")
            raise KernelQuadratureError("kernel quadrature did not reach tolerance", achieved_error=worst)
        return cmath.exp(s * math.log(p.x)) * total

    @staticmethod
    def select_yk(t0: float, k: int) -> float:
        """y_k = exp(pi (2k+1) / (2|t0|)), so that sin^2(t0 log y_k) = 1."""
        if abs(t0) <= 1:
            raise UsageError(f"select_yk needs |t0| > 1 (got {t0})")
        if k < 0:
            raise UsageError(f"k must be nonnegative (got {k})")
        return math.exp(math.pi * (2 * k + 1) / (2 * abs(t0)))

    def kernel_check(self, samples: int = 100, seed: int = 0, keep_rows: bool = True) -> KernelCheckReport:
        """Closed form against quadrature at seeded random points."""
        if samples < 1:
            raise UsageError(f"samples must be positive (got {samples})")
        rng = np.random.default_rng(seed)
        rows = []
        for _ in range(samples):
            x = float(rng.uniform(1.0, 100.0))
            y = float(rng.uniform(2.0, 5.0))
            t0 = float(rng.uniform(1.0, 10.0)) * (1.0 if rng.random() < 0.5 else -1.0)
            if abs(t0) <= 1.0:
                t0 = math.copysign(1.0 + 1e-9, t0)
            s = complex(float(rng.uniform(-1.0, 2.0)), float(rng.uniform(-20.0, 20.0)))
            p = KernelParams(x=x, y=y, t0=t0)
            closed = self.kernel_closed_form(s, p)
            quad = self.kernel_by_quadrature(s, p)
            rel = abs(closed - quad) / max(abs(closed), 1e-300)
            rows.append(
                KernelCheckRow(
                    s_re=s.real,
                    s_im=s.imag,
                    x=x,
                    y=y,
                    t0=t0,
                    closed_form_re=closed.real,
                    closed_form_im=closed.imag,
                    quadrature_re=quad.real,
                    quadrature_im=quad.imag,
                    relative_error=rel,
                )
            )
        errors = [row.relative_error for row in rows]
        report = KernelCheckReport(
            samples=samples,
            seed=seed,
            tolerance=CHECK_TOLERANCE,
            max_relative_error=max(errors),
            mean_relative_error=float(np.mean(errors)),
            passed=max(errors) < CHECK_TOLERANCE,
            rows=rows if keep_rows else [],
        )
        logger.info(f"Kernel check over {samples} samples: max relative error {report.max_relative_error:.3e}")
        return report
