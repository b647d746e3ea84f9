import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np
from scipy.optimize import brentq

from nonres.config import NonresSettings, nonres_settings
from nonres.models.character import Character
from nonres.models.enums import ZeroMethod
from nonres.schemas.zeros import ZeroArchive, ZeroRecord, ZeroScanResult
from nonres.services.lfunction_service import LFunctionService
from nonres.utils.contour import (
    Rectangle,
    localize_zeros,
    nudge_sequence,
    winding_number_nudged,
)
from nonres.utils.util_error import PrimitiveRequiredError, PrincipalCharacterError, UsageError

logger = logging.getLogger(__name__)

MAX_SCAN_STEP = 0.05
SIGMA_HI_CAP = 3.0
OFFLINE_MARGIN = 1e-3  # strips stop this far from the critical line


class ZeroService:
    """Zeros of L(s, chi): sign changes of Z on the line, argument-principle counts off it."""

    def __init__(self, settings: NonresSettings = nonres_settings):
        self.settings = settings
        self.lfunctions = LFunctionService(settings)

    def _require_scannable(self, chi: Character) -> None:
        if not chi.is_primitive:
            raise PrimitiveRequiredError(str(chi.label))
        if chi.is_principal:
            raise PrincipalCharacterError(f"zero scanning needs a non-principal character (got {chi.label})")

    def _winding(self, chi: Character, rect: Rectangle) -> tuple[int, Rectangle]:
        def values(z: np.ndarray) -> np.ndarray:
            return self.lfunctions.l_value_batch(z, chi)[0]

        return winding_number_nudged(
            values,
            rect,
            nudge_sequence(self.settings.WINDING_NUDGES),
            spacing=self.settings.WINDING_SPACING,
            max_depth=self.settings.WINDING_MAX_DEPTH,
            zero_floor=self.settings.WINDING_ZERO_FLOOR,
        )

    def count_zeros_rectangle(
        self, chi: Character, sigma_lo: float, sigma_hi: float, t_lo: float, t_hi: float
    ) -> int:
        """Zeros of L(s, chi) inside the rectangle, by the argument principle."""
        self._require_scannable(chi)
        if sigma_hi > SIGMA_HI_CAP:
            raise UsageError(f"sigma_hi must be at most {SIGMA_HI_CAP:g}")
        if sigma_lo >= sigma_hi or t_lo >= t_hi:
            raise UsageError("rectangle must have positive width and height")
        count, used = self._winding(chi, Rectangle(sigma_lo, sigma_hi, t_lo, t_hi))
        if used != Rectangle(sigma_lo, sigma_hi, t_lo, t_hi):
            logger.info(f"Rectangle count for {chi.label} used nudged boundary {tuple(used)}")
        return count

    def _line_zeros(self, chi: Character, t_lo: float, t_hi: float, step: float) -> tuple[List[ZeroRecord], int]:
        n = max(1, int(math.ceil((t_hi - t_lo) / step)))
        t = np.linspace(t_lo, t_hi, n + 1)
        z = self.lfunctions.hardy_z_batch(t, chi)
        zeros = []
        changes = 0
        for i in range(n):
            if z[i] == 0.0:
                gamma = float(t[i])
            elif z[i] * z[i + 1] < 0:
                gamma = brentq(
                    lambda u: self.lfunctions.hardy_z(u, chi),
                    float(t[i]),
                    float(t[i + 1]),
                    xtol=self.settings.GAMMA_TOLERANCE,
                )
            else:
                continue
            changes += 1
            zeros.append(
                ZeroRecord(
                    character=chi.label,
                    beta=0.5,
                    gamma=gamma,
                    method=ZeroMethod.CRITICAL_LINE_SCAN,
                    tolerance=self.settings.GAMMA_TOLERANCE,
                )
            )
        return zeros, changes

    def scan_critical_zeros(
        self, chi: Character, t_lo: float, t_hi: float, step: Optional[float] = None
    ) -> ZeroScanResult:
        """Sign changes of Z(t) on [t_lo, t_hi], refined by Brent's method and cross-checked by winding."""
        self._require_scannable(chi)
        step = step or self.settings.SCAN_STEP
        if not 0 < step <= MAX_SCAN_STEP:
            raise UsageError(f"scan step must lie in (0, {MAX_SCAN_STEP}] (got {step})")
        if t_lo > t_hi:
            raise UsageError(f"empty scan interval [{t_lo}, {t_hi}]")
        if max(abs(t_lo), abs(t_hi)) > self.settings.HEIGHT_CAP:
            raise UsageError(f"scan height exceeds the cap {self.settings.HEIGHT_CAP:g}")
        if t_lo == t_hi:
            return ZeroScanResult(character=chi.label, t_lo=t_lo, t_hi=t_hi, step=step, rectangle_count=0)

        expected, _ = self._winding(chi, Rectangle(0.0, 1.0, t_lo, t_hi))
        current = step
        zeros, changes = self._line_zeros(chi, t_lo, t_hi, current)
        for _ in range(self.settings.SCAN_REFINEMENTS):
            if changes >= expected:
                break
            current /= 2
            logger.warning(f"Scan of {chi.label} found {changes}/{expected} zeros; refining step to {current:g}")
            zeros, changes = self._line_zeros(chi, t_lo, t_hi, current)

        if changes < expected:
            zeros = zeros + self.localize_offline_zeros(chi, t_lo, t_hi)
        incomplete = len(zeros) != expected
        if incomplete:
            logger.warning(
                f"Scan of {chi.label} on [{t_lo}, {t_hi}] incomplete: {len(zeros)} zeros vs rectangle count {expected}"
            )
        logger.info(f"Scanned {chi.label} on [{t_lo}, {t_hi}]: {len(zeros)} zeros")
        return ZeroScanResult(
            character=chi.label,
            t_lo=t_lo,
            t_hi=t_hi,
            step=current,
            zeros=sorted(zeros, key=lambda z: z.gamma),
            sign_changes=changes,
            rectangle_count=expected,
            incomplete=incomplete,
        )

    def localize_offline_zeros(self, chi: Character, t_lo: float, t_hi: float) -> List[ZeroRecord]:
        """Zeros off the critical line, boxed by recursive bisection of the two side strips."""
        self._require_scannable(chi)
        min_side = self.settings.OFFLINE_MIN_SIDE
        found = []
        for strip in (
            Rectangle(0.0, 0.5 - OFFLINE_MARGIN, t_lo, t_hi),
            Rectangle(0.5 + OFFLINE_MARGIN, 1.0, t_lo, t_hi),
        ):
            boxes = localize_zeros(lambda r: self._winding(chi, r)[0], strip, min_side)
            for box, multiplicity in boxes:
                center = box.center
                record = ZeroRecord(
                    character=chi.label,
                    beta=min(max(center.real, 0.0), 1.0),
                    gamma=center.imag,
                    method=ZeroMethod.RECTANGLE_REFINEMENT,
                    tolerance=max(box.width, box.height),
                )
                found.extend([record] * multiplicity)
        if found:
            logger.warning(f"Found {len(found)} zeros of {chi.label} off the critical line")
        return found

    def scan_to_height(self, chi: Character, T: float, step: Optional[float] = None) -> ZeroScanResult:
        """All zeros with |gamma| <= T; real characters are scanned on [0, T] and mirrored."""
        if not chi.is_real:
            return self.scan_critical_zeros(chi, -T, T, step)
        half = self.scan_critical_zeros(chi, 0.0, T, step)
        zeros = list(half.zeros) + [z.mirrored() for z in half.zeros if z.gamma > 0]
        return half.model_copy(
            update={
                "t_lo": -T,
                "zeros": sorted(zeros, key=lambda z: z.gamma),
                "sign_changes": 2 * half.sign_changes,
                "rectangle_count": None if half.rectangle_count is None else 2 * half.rectangle_count,
            }
        )

    def build_archive(self, chars: List[Character], T: float, step: Optional[float] = None) -> ZeroArchive:
        """Scan every primitive non-principal character to height T and record completeness."""
        targets = sorted(
            {chi for chi in chars if chi.is_primitive and not chi.is_principal}, key=lambda c: c.label.sort_key()
        )
        skipped = len(chars) - len(targets)
        if skipped:
            logger.info(f"Skipping {skipped} principal or imprimitive characters")

        with ThreadPoolExecutor(max_workers=self.settings.MAX_WORKERS) as pool:
            results = list(pool.map(lambda chi: self.scan_to_height(chi, T, step), targets))
        return self.archive_from_scans(results, T)

    @staticmethod
    def archive_from_scans(results: List[ZeroScanResult], T: float) -> ZeroArchive:
        archive = ZeroArchive()
        for result in results:
            archive.add(result.zeros)
            if result.incomplete:
                logger.warning(f"Archive for {result.character} left without a completeness record")
            else:
                archive.set_complete(result.character, T, len(result.zeros))
        logger.info(f"Built zero archive for {len(results)} characters to height {T:g}")
        return archive
