"""Hurwitz zeta and its s-derivative by Euler-Maclaurin summation, batched over s and a.

With pole_free=True the returned value is zeta(s, a) - 1/(s - 1), which is entire in s;
character sums with sum chi(a) = 0 use it to evaluate L(s, chi) straight through s = 1.
"""
import logging
import math
from functools import lru_cache

import mpmath
import numpy as np
from scipy.special import bernoulli, factorial

from nonres.config import NonresSettings, nonres_settings
from nonres.utils.util_error import HurwitzPoleError, UsageError

logger = logging.getLogger(__name__)

BERNOULLI_TERMS = 5  # B_2 .. B_10
POLE_RADIUS = 1e-8
WORKING_STRIP = -2.0
PHI_SERIES_RADIUS = 1e-2


@lru_cache(maxsize=1)
def _em_coefficients() -> np.ndarray:
    """B_{2k} / (2k)! for k = 1..6; the last one only sizes the cutoff."""
    b = bernoulli(2 * (BERNOULLI_TERMS + 1))
    return np.array([b[2 * k] / factorial(2 * k, exact=False) for k in range(1, BERNOULLI_TERMS + 2)])


def _rising(s: np.ndarray, length: int) -> tuple[np.ndarray, np.ndarray]:
    """Rising factorial (s)_length and its s-derivative, by the product rule."""
    p = np.ones_like(s)
    d = np.zeros_like(s)
    for j in range(length):
        d = d * (s + j) + p
        p = p * (s + j)
    return p, d


def _phi(z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """phi(z) = (e^z - 1)/z and phi'(z), with a series near z = 0."""
    small = np.abs(z) < PHI_SERIES_RADIUS
    zs = np.where(small, z, 0)
    phi_series = 1 + zs / 2 + zs**2 / 6 + zs**3 / 24 + zs**4 / 120 + zs**5 / 720 + zs**6 / 5040
    dphi_series = 0.5 + zs / 3 + zs**2 / 8 + zs**3 / 30 + zs**4 / 144 + zs**5 / 840
    zd = np.where(small, 1, z)
    ez = np.exp(zd)
    phi_direct = (ez - 1) / zd
    dphi_direct = (ez * (zd - 1) + 1) / zd**2
    return np.where(small, phi_series, phi_direct), np.where(small, dphi_series, dphi_direct)


class HurwitzService:
    def __init__(self, settings: NonresSettings = nonres_settings):
        self.settings = settings

    def cutoff(self, s: np.ndarray) -> np.ndarray:
        """Number M of directly summed terms so the first omitted correction is below tolerance."""
        s = np.asarray(s, dtype=np.complex128)
        c12 = abs(_em_coefficients()[-1])
        r11, _ = _rising(s, 2 * BERNOULLI_TERMS + 1)
        magnitude = c12 * np.abs(r11) * np.maximum(1.0, np.abs(s)) / self.settings.HURWITZ_TOLERANCE
        m = np.ceil(magnitude ** (1.0 / 12.0))
        m = np.maximum(m, np.ceil(np.abs(s) / (2 * math.pi)) + 8)
        return np.maximum(m, 10).astype(np.int64)

    def _check_inputs(self, s: np.ndarray, a: np.ndarray, pole_free: bool) -> None:
        if np.any(a <= 0) or np.any(a > 1):
            raise UsageError("Hurwitz parameter a must lie in (0, 1]")
        if np.any(s.real <= WORKING_STRIP):
            raise UsageError(f"Hurwitz evaluation needs Re(s) > {WORKING_STRIP:g}")
        if not pole_free and np.any(np.abs(s - 1) < POLE_RADIUS):
            raise HurwitzPoleError()

    def hurwitz_zeta_batch(
        self, s, a, derivative: bool = True, pole_free: bool = False
    ) -> tuple[np.ndarray, np.ndarray | None]:
        """Values (and s-derivatives) on the grid s x a; both results have shape (len(s), len(a))."""
        s = np.atleast_1d(np.asarray(s, dtype=np.complex128))
        a = np.atleast_1d(np.asarray(a, dtype=np.float64))
        self._check_inputs(s, a, pole_free)
        if self.settings.HURWITZ_BACKEND == "mpmath":
            return self._mpmath_batch(s, a, derivative, pole_free)

        values = np.empty((s.size, a.size), dtype=np.complex128)
        derivs = np.empty((s.size, a.size), dtype=np.complex128) if derivative else None
        cutoffs = self.cutoff(s)
        start = 0
        while start < s.size:
            # grow the chunk while the (S, A, M) cube stays under the element budget
            stop = start + 1
            m_max = int(cutoffs[start])
            while stop < s.size:
                m_next = max(m_max, int(cutoffs[stop]))
                if (stop + 1 - start) * a.size * m_next > self.settings.HURWITZ_BATCH_ELEMENTS:
                    break
                m_max = m_next
                stop += 1
            v, d = self._euler_maclaurin(s[start:stop], a, m_max, derivative, pole_free)
            values[start:stop] = v
            if derivative:
                derivs[start:stop] = d
            start = stop
        return values, derivs

    def _euler_maclaurin(self, s: np.ndarray, a: np.ndarray, M: int, derivative: bool, pole_free: bool):
        ss = s[:, None]
        log_base = np.log(np.arange(M, dtype=np.float64)[None, :] + a[:, None])  # (A, M)
        powers = np.exp(-ss[:, :, None] * log_base[None, :, :])  # (S, A, M)
        head = powers.sum(axis=2)
        d_head = -(powers * log_base[None, :, :]).sum(axis=2) if derivative else None

        N = M + a[None, :]  # (1, A)
        log_n = np.log(N)
        n_pow = np.exp(-ss * log_n)  # N^{-s}
        if pole_free:
            z = (1 - ss) * log_n
            phi, dphi = _phi(z)
            tail = -log_n * phi
            d_tail = log_n**2 * dphi
        else:
            n_pow1 = n_pow * N
            tail = n_pow1 / (ss - 1)
            d_tail = -log_n * tail - n_pow1 / (ss - 1) ** 2
        half = 0.5 * n_pow
        d_half = -log_n * half

        value = head + tail + half
        deriv = d_head + d_tail + d_half if derivative else None
        coeffs = _em_coefficients()
        for k in range(1, BERNOULLI_TERMS + 1):
            p, dp = _rising(ss, 2 * k - 1)
            scale = coeffs[k - 1] * n_pow * N ** (1 - 2 * k)
            value = value + scale * p
            if derivative:
                deriv = deriv + scale * (dp - log_n * p)
        return value, deriv

    def _mpmath_batch(self, s: np.ndarray, a: np.ndarray, derivative: bool, pole_free: bool):
        values = np.empty((s.size, a.size), dtype=np.complex128)
        derivs = np.empty((s.size, a.size), dtype=np.complex128) if derivative else None
        with mpmath.workdps(self.settings.MPMATH_DPS):
            for i, sv in enumerate(s):
                ms = mpmath.mpc(sv.real, sv.imag)
                at_pole = abs(sv - 1) < POLE_RADIUS
                for j, av in enumerate(a):
                    ma = mpmath.mpf(av)
                    if pole_free and at_pole:
                        # Laurent coefficients: zeta(s,a) = 1/(s-1) + gamma_0(a) - gamma_1(a)(s-1) + ...
                        val = -mpmath.digamma(ma)
                        der = -mpmath.stieltjes(1, ma)
                    else:
                        val = mpmath.zeta(ms, ma)
                        der = mpmath.zeta(ms, ma, 1) if derivative else 0
                        if pole_free:
                            val -= 1 / (ms - 1)
                            der += 1 / (ms - 1) ** 2
                    values[i, j] = complex(val)
                    if derivative:
                        derivs[i, j] = complex(der)
        return values, derivs

    def hurwitz_zeta(self, s: complex, a: float) -> tuple[complex, complex]:
        """(zeta(s, a), d/ds zeta(s, a)) at a single point."""
        values, derivs = self.hurwitz_zeta_batch(np.array([s]), np.array([a]))
        return complex(values[0, 0]), complex(derivs[0, 0])
