import cmath
import logging
import math
from typing import Literal

import numpy as np
from scipy.special import loggamma

from nonres.config import NonresSettings, nonres_settings
from nonres.models.character import Character
from nonres.services.character_service import CharacterService
from nonres.services.hurwitz_service import HurwitzService
from nonres.utils.numtheory import prime_power_factors
from nonres.utils.util_error import (
    NearZeroError,
    PhaseInconsistencyError,
    PrimitiveRequiredError,
    UsageError,
)

logger = logging.getLogger(__name__)

NEAR_ZERO = 1e-12
PHASE_TOLERANCE = 1e-8


class LFunctionService:
    """Dirichlet L-functions through Hurwitz zeta: values, L'/L, completion and Hardy Z."""

    def __init__(self, settings: NonresSettings = nonres_settings):
        self.settings = settings
        self.hurwitz = HurwitzService(settings)
        self.characters = CharacterService(settings)

    def _check_height(self, s: np.ndarray) -> None:
        if np.any(np.abs(s.imag) > self.settings.HEIGHT_CAP):
            raise UsageError(f"|Im s| exceeds the height cap {self.settings.HEIGHT_CAP:g}")

    @staticmethod
    def _unit_residues(chi: Character) -> tuple[np.ndarray, np.ndarray]:
        """Residues a in [1, q] with chi(a) != 0 (as Hurwitz parameters a/q) and chi(a)."""
        q = chi.modulus
        values = chi.residue_values
        residues = np.nonzero(values != 0)[0]
        shifted = np.where(residues == 0, q, residues)
        return shifted / q, values[residues]

    def l_value_batch(self, s, chi: Character, derivative: bool = False) -> tuple[np.ndarray, np.ndarray | None]:
        """L(s, chi) (and L'(s, chi)) for an array of s."""
        s = np.atleast_1d(np.asarray(s, dtype=np.complex128))
        self._check_height(s)
        a, chi_a = self._unit_residues(chi)
        # sum chi(a) = 0 cancels the 1/(s-1) parts, so non-principal sums are evaluated pole-free
        zeta, d_zeta = self.hurwitz.hurwitz_zeta_batch(s, a, derivative=derivative, pole_free=not chi.is_principal)
        log_q = math.log(chi.modulus)
        q_pow = np.exp(-s * log_q)
        values = q_pow * (zeta @ chi_a)
        if not derivative:
            return values, None
        return values, -log_q * values + q_pow * (d_zeta @ chi_a)

    def l_value(self, s: complex, chi: Character) -> complex:
        values, _ = self.l_value_batch(np.array([s]), chi)
        return complex(values[0])

    def l_log_derivative_batch(self, s, chi: Character) -> np.ndarray:
        """L'/L from Hurwitz derivatives, for arrays of s away from zeros."""
        values, derivs = self.l_value_batch(s, chi, derivative=True)
        if np.any(np.abs(values) <= NEAR_ZERO):
            raise NearZeroError()
        return derivs / values

    def l_log_derivative(
        self, s: complex, chi: Character, method: Literal["induced", "direct"] = "induced"
    ) -> complex:
        """L'/L(s, chi); imprimitive characters go through their inducing character by default.

        L'/L(s, chi) = L'/L(s, chi*) + sum_{p | q} chi*(p) log p / (p^s - chi*(p)).
        """
        if method not in ("induced", "direct"):
            raise UsageError(f"unknown L'/L method '{method}'")
        if method == "direct" or chi.is_primitive:
            return complex(self.l_log_derivative_batch(np.array([s]), chi)[0])

        star = Character(chi.inducing_label)
        total = self.l_log_derivative(s, star, method="direct")
        for p, _ in prime_power_factors(chi.modulus):
            c = complex(star.values(np.array([p]))[0])
            if c == 0:
                continue
            denominator = cmath.exp(s * math.log(p)) - c
            if abs(denominator) <= NEAR_ZERO:
                raise NearZeroError()
            total += c * math.log(p) / denominator
        return total

    def root_number(self, chi: Character) -> complex:
        # cached on the Character itself
        return self.characters.root_number(chi)

    def _require_primitive(self, chi: Character) -> None:
        if not chi.is_primitive:
            raise PrimitiveRequiredError(str(chi.label))

    def completed_l_batch(self, s, chi: Character) -> np.ndarray:
        self._require_primitive(chi)
        s = np.atleast_1d(np.asarray(s, dtype=np.complex128))
        values, _ = self.l_value_batch(s, chi)
        half = (s + chi.parity) / 2
        return np.exp(half * math.log(chi.modulus / math.pi) + loggamma(half)) * values

    def completed_l(self, s: complex, chi: Character) -> complex:
        """(q/pi)^((s+kappa)/2) Gamma((s+kappa)/2) L(s, chi)."""
        return complex(self.completed_l_batch(np.array([s]), chi)[0])

    def functional_equation_residual(self, s: complex, chi: Character) -> float:
        """Relative gap in Lambda(s, chi) = eps(chi) conj(Lambda(1 - conj(s), chi))."""
        lhs = self.completed_l(s, chi)
        rhs = self.root_number(chi) * self.completed_l(1 - complex(s).conjugate(), chi).conjugate()
        return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)

    def hardy_z_batch(self, t, chi: Character) -> np.ndarray:
        """Z(t, chi) = e^{i theta(t)} L(1/2 + it, chi), real for primitive chi."""
        self._require_primitive(chi)
        t = np.atleast_1d(np.asarray(t, dtype=np.float64))
        values, _ = self.l_value_batch(0.5 + 1j * t, chi)
        theta = 0.5 * t * math.log(chi.modulus / math.pi) + loggamma((0.5 + chi.parity + 1j * t) / 2).imag
        rotated = np.exp(1j * theta) * values / cmath.sqrt(self.root_number(chi))
        bad = np.abs(rotated.imag) > PHASE_TOLERANCE * (1 + np.abs(rotated.real))
        if np.any(bad):
            where = float(t[np.argmax(bad)])
            logger.error(f"Hardy Z for {chi.label} has imaginary residue at t={where}")
            raise PhaseInconsistencyError(f"phase inconsistency at t={where:g} for {chi.label}")
        return rotated.real

    def hardy_z(self, t: float, chi: Character) -> float:
        return float(self.hardy_z_batch(np.array([t]), chi)[0])
