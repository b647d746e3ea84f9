"""Prime-side sums, zero-side sums and their assembly into explicit-formula reports."""
import cmath
import logging
import math
from typing import List, Optional

import numpy as np

from nonres.config import NonresSettings, nonres_settings
from nonres.models.character import Character
from nonres.models.enums import FormulaVariant, InverseSquareMode
from nonres.schemas.arithmetic import ArithTables
from nonres.schemas.character import CharacterLabel
from nonres.schemas.explicit import ComplexNumber, FormulaReport, InverseSquareReport, MainTermReport
from nonres.schemas.kernel import KernelParams
from nonres.schemas.zeros import ZeroArchive, ZeroRecord
from nonres.services.arithmetic_service import ArithmeticService
from nonres.services.kernel_service import KernelService
from nonres.services.lfunction_service import LFunctionService
from nonres.utils.contour import contour_residue
from nonres.utils.summation import ComplexAccumulator, compensated_sum
from nonres.utils.util_error import (
    ArchiveIncompleteError,
    PrimitiveRequiredError,
    PrincipalCharacterError,
    TableLimitError,
    UsageError,
)

logger = logging.getLogger(__name__)

RESIDUE_RADIUS = 0.25
RESIDUE_POINTS = 64
TRIVIAL_TERMS = 200


def _by_height(zeros: List[ZeroRecord], T: float) -> np.ndarray:
    """rho for the zeros with |gamma| <= T, ordered by increasing |gamma|."""
    kept = sorted((z for z in zeros if abs(z.gamma) <= T), key=lambda z: (abs(z.gamma), z.gamma))
    return np.array([z.rho for z in kept], dtype=np.complex128)


def _check_complete(complete_to: Optional[float], T: float) -> None:
    if complete_to is not None and complete_to < T:
        raise ArchiveIncompleteError(f"zeros are complete only to {complete_to:g} (needed {T:g})")


class ExplicitFormulaService:
    def __init__(self, settings: NonresSettings = nonres_settings):
        self.settings = settings
        self.arithmetic = ArithmeticService(settings)
        self.kernels = KernelService(settings)
        self.lfunctions = LFunctionService(settings)

    def windowed_weighted_sum(self, chi: Character, p: KernelParams, tables: ArithTables) -> complex:
        """sum_n w(n) chi(n) Lambda(n) over the support (x/y^2, x y^2)."""
        lo, hi = p.support
        if hi > tables.limit:
            raise TableLimitError(f"support end {hi:g} exceeds table limit {tables.limit}")
        n = tables.prime_powers
        n = n[(n > lo) & (n < hi)]
        if n.size == 0:
            return 0j
        terms = self.kernels.weight_w(n.astype(np.float64), p) * chi.values(n) * tables.von_mangoldt[n]
        return compensated_sum(terms)

    def cumulative_weighted_sum(
        self, chi: Character, p: KernelParams, tables: ArithTables
    ) -> tuple[np.ndarray, np.ndarray]:
        """Prime powers n in the support and the running real part of the weighted sum up to n."""
        lo, hi = p.support
        if hi > tables.limit:
            raise TableLimitError(f"support end {hi:g} exceeds table limit {tables.limit}")
        n = tables.prime_powers
        n = n[(n > lo) & (n < hi)]
        terms = self.kernels.weight_w(n.astype(np.float64), p) * chi.values(n) * tables.von_mangoldt[n]
        return n, np.cumsum(terms.real)

    def zero_side_theorem2(
        self,
        zeros: List[ZeroRecord],
        p: KernelParams,
        kappa: int,
        T: float,
        complete_to: Optional[float] = None,
    ) -> tuple[complex, complex]:
        """(-sum_rho K(rho), -(1-kappa) K(0)) with K the closed-form kernel."""
        _check_complete(complete_to, T)
        if kappa not in (0, 1):
            raise UsageError(f"kappa must be 0 or 1 (got {kappa})")
        rhos = _by_height(zeros, T)
        acc = ComplexAccumulator()
        if rhos.size:
            acc.extend(-self.kernels.kernel_closed_form(rhos, p))
        w = complex(1, p.t0)
        trivial = -(1 - kappa) * (cmath.exp(w * p.log_y) - cmath.exp(-w * p.log_y)) ** 2 / w**2
        return acc.value, trivial

    def zero_side_theorem1(
        self, zeros: List[ZeroRecord], x: float, T: float, complete_to: Optional[float] = None
    ) -> complex:
        """-sum_rho x^(rho+1) / (rho (rho+1))."""
        _check_complete(complete_to, T)
        rhos = _by_height(zeros, T)
        if rhos.size == 0:
            return 0j
        acc = ComplexAccumulator()
        acc.extend(-np.exp((rhos + 1) * math.log(x)) / (rhos * (rhos + 1)))
        return acc.value

    def trivial_tail_theorem2(self, p: KernelParams, kappa: int) -> complex:
        """-sum K(-m) over the trivial zeros s = -m, m >= 1, m = kappa mod 2."""
        # K(-m) decays like (y^2/x)^m
        if p.x <= p.y**2:
            raise UsageError(f"trivial-zero tail diverges for x <= y^2 (x={p.x:g}, y={p.y:g})")
        acc = ComplexAccumulator()
        m = 2 if kappa == 0 else 1
        for _ in range(TRIVIAL_TERMS):
            term = -self.kernels.kernel_closed_form(complex(-m), p)
            acc.add(term)
            if abs(term) <= 1e-17 * max(abs(acc.value), 1e-300):
                break
            m += 2
        return acc.value

    def trivial_term_theorem1(self, chi: Character, x: float) -> complex:
        """Residues of -L'/L(s) x^(s+1) / (s(s+1)) left of the critical strip."""
        log_x = math.log(x)

        def integrand(s: np.ndarray) -> np.ndarray:
            log_derivative = self.lfunctions.l_log_derivative_batch(s, chi)
            return -log_derivative * np.exp((s + 1) * log_x) / (s * (s + 1))

        acc = ComplexAccumulator()
        for center in (0.0, -1.0):
            acc.add(contour_residue(integrand, center, RESIDUE_RADIUS, RESIDUE_POINTS))
        m = 3 if chi.parity else 2
        for _ in range(TRIVIAL_TERMS):
            term = -math.exp((1 - m) * log_x) / (m * (m - 1))
            acc.add(term)
            if abs(term) <= 1e-17 * max(abs(acc.value), 1e-300):
                break
            m += 2
        return acc.value

    def residual_report(
        self,
        chi: Character,
        p: KernelParams,
        archive: ZeroArchive,
        T: float,
        variant: FormulaVariant,
        tables: Optional[ArithTables] = None,
        full_trivial: bool = True,
        theta: Optional[float] = None,
    ) -> FormulaReport:
        """Prime side against the truncated zero side for one primitive non-principal character."""
        variant = FormulaVariant(variant)
        theta = self.settings.CONTOUR_THETA if theta is None else theta
        if not chi.is_primitive:
            raise PrimitiveRequiredError(str(chi.label))
        if chi.is_principal:
            raise PrincipalCharacterError("explicit formula needs a non-principal character")
        archive.require_complete(chi.label, T)
        zeros = archive.zeros_for(chi.label, T)
        notes = []

        if variant == FormulaVariant.THEOREM2:
            if not p.admissible:
                logger.warning(f"Kernel parameters {p} are outside 2 <= y <= x^(1/3), |t0| > 1")
                notes.append("kernel parameters outside the admissible range")
            needed = math.ceil(p.support[1])
        else:
            needed = math.ceil(p.x)
        if tables is None:
            tables = self.arithmetic.build_tables(max(needed, 2))

        q = chi.modulus
        if variant == FormulaVariant.THEOREM2:
            prime_side = self.windowed_weighted_sum(chi, p, tables)
            zero_side, trivial = self.zero_side_theorem2(zeros, p, chi.parity, T)
            if full_trivial:
                trivial += self.trivial_tail_theorem2(p, chi.parity)
            expected = (
                p.x ** (-1 + theta) * p.y**4 * math.log(q * (abs(p.t0) + 4))
            )
            y, t0 = p.y, p.t0
        else:
            prime_side = self.arithmetic.linear_weighted_sum(chi, p.x, tables)
            zero_side = self.zero_side_theorem1(zeros, p.x, T)
            trivial = self.trivial_term_theorem1(chi, p.x) if full_trivial else 0j
            expected = None
            y = t0 = None
            notes.append("zero side sums every archived zero with 0 <= beta <= 1, including any left of the line")

        residual = prime_side - zero_side - trivial
        scale = abs(residual) / max(abs(prime_side), abs(zero_side), 1.0)
        logger.info(f"{variant.value} residual for {chi.label} at T={T:g}: scale {scale:.3e}")
        return FormulaReport(
            character=str(chi.label),
            variant=variant,
            x=p.x,
            y=y,
            t0=t0,
            prime_side=ComplexNumber.of(prime_side),
            zero_side=ComplexNumber.of(zero_side),
            trivial_term=ComplexNumber.of(trivial),
            truncation_height=T,
            residual=ComplexNumber.of(residual),
            residual_scale=scale,
            zero_count=len(zeros),
            full_trivial=full_trivial,
            expected_residual_scale=expected,
            notes=notes,
        )

    def inverse_square_zero_sum(
        self,
        zeros: List[ZeroRecord],
        t0: float,
        R: float,
        mode: InverseSquareMode,
        q: int,
    ) -> InverseSquareReport:
        """sum 1/|rho - 1 - i t0|^2 over a distance range, beside the matching bound with constant 1."""
        mode = InverseSquareMode(mode)
        if q < 1:
            raise UsageError(f"modulus must be positive (got {q})")
        log_qt = math.log(q * (abs(t0) + 4))
        if mode == InverseSquareMode.ANNULUS_R_TO_1:
            if not 1 / log_qt <= R <= 1:
                raise UsageError(f"annulus mode needs 1/log(q(|t0|+4)) = {1 / log_qt:.4g} <= R <= 1 (got {R})")
            bound = log_qt / R
        elif mode == InverseSquareMode.BEYOND_R:
            if R <= 0:
                raise UsageError(f"R must be positive (got {R})")
            bound = log_qt / R
        else:
            if R < 1 or R != int(R):
                raise UsageError(f"beyond_K mode needs an integer K >= 1 (got {R})")
            K = int(R)
            tau = abs(t0) + 4
            bound = math.log(q) / K + math.log(K + tau) / K + math.log(1 + tau / K) / tau

        rhos = np.array([z.rho for z in zeros], dtype=np.complex128)
        d = np.abs(rhos - complex(1, t0)) if rhos.size else np.zeros(0)
        if mode == InverseSquareMode.ANNULUS_R_TO_1:
            selected = d[(d > R) & (d < 1)]
        else:
            selected = d[d > R]
        total = compensated_sum(1.0 / selected**2).real if selected.size else 0.0
        return InverseSquareReport(
            mode=mode,
            q=q,
            t0=t0,
            R=R,
            sum=total,
            bound_form=bound,
            ratio=total / bound if bound > 0 else 0.0,
            zero_count=int(selected.size),
        )

    def principal_main_term_check(self, q: int, p: KernelParams, tables: ArithTables) -> MainTermReport:
        """Observed weighted principal-character sum against 4x/t0^2."""
        if p.t0 == 0:
            raise UsageError("t0 must be nonzero")
        chi0 = Character(CharacterLabel(modulus=q, index=1))
        observed = self.windowed_weighted_sum(chi0, p, tables)
        predicted = 4 * p.x / p.t0**2
        resonance = math.sin(p.t0 * p.log_y) ** 2
        if abs(resonance - 1) > 1e-9:
            logger.warning(f"y = {p.y:g} is not resonant for t0 = {p.t0:g} (sin^2 = {resonance:.4f})")
        return MainTermReport(
            q=q,
            x=p.x,
            y=p.y,
            t0=p.t0,
            observed=ComplexNumber.of(observed),
            predicted=predicted,
            relative_gap=abs(observed - predicted) / predicted,
            resonance_factor=resonance,
            predicted_with_phase=predicted * resonance,
        )
