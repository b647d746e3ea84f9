import csv
import io
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List

from nonres.config import NonresSettings, nonres_settings
from nonres.models.character import Character
from nonres.models.enums import AuditMode, HypothesisStatus
from nonres.schemas.audit import AuditConfig, AuditResult
from nonres.schemas.zeros import ZeroArchive
from nonres.services.character_service import CharacterService

logger = logging.getLogger(__name__)

EXP_OVERFLOW_LOG = 709.0
AUDIT_CSV_COLUMNS = ["character", "hypothesis", "height", "log_x", "bound_log", "n_chi", "passes"]


class AuditService:
    """Checks the zero-free hypothesis against an archive and compares n(chi) with the bound."""

    def __init__(self, settings: NonresSettings = nonres_settings):
        self.settings = settings
        self.characters = CharacterService(settings)

    @staticmethod
    def bound_logs(q: int, cfg: AuditConfig) -> tuple[float, float]:
        """(log x, log of the bound) evaluated in log space."""
        log_log_q = math.log(math.log(q))
        if cfg.mode == AuditMode.THEOREM_1_2:
            log_x = log_log_q / cfg.delta
            return log_x, log_x + math.log(cfg.C)
        common = 2 * math.log(abs(cfg.t0)) + log_log_q - math.log(cfg.delta)
        log_x = (math.log(cfg.K2) + common) / cfg.delta
        bound = math.log(cfg.C) + (math.log(cfg.K1) + common) / cfg.delta
        return log_x, bound

    @staticmethod
    def hypothesis_height(q: int, cfg: AuditConfig) -> float:
        """Top |gamma| of the region that must be zero-free (infinite for the unrestricted strip)."""
        if cfg.mode == AuditMode.THEOREM_1_2:
            return math.inf
        half_height = cfg.K1 * cfg.t0**2 * math.log(q)
        if cfg.mode == AuditMode.THEOREM_1_3_CENTERED:
            return abs(cfg.t0) + half_height
        return half_height

    @staticmethod
    def _in_region(beta: float, gamma: float, q: int, cfg: AuditConfig) -> bool:
        if not 1 - cfg.delta < beta < 1:
            return False
        half_height = cfg.K1 * cfg.t0**2 * math.log(q)
        if cfg.mode == AuditMode.THEOREM_1_3:
            return abs(gamma) <= half_height
        if cfg.mode == AuditMode.THEOREM_1_3_CENTERED:
            return abs(gamma - cfg.t0) <= half_height
        return True

    def audit_character(self, q: int, cfg: AuditConfig, archive: ZeroArchive, chi: Character) -> AuditResult:
        warnings = []
        label = chi.label if chi.is_primitive else chi.inducing_label
        complete_to = archive.completeness_height(label)
        required = self.hypothesis_height(q, cfg)

        violated = any(self._in_region(z.beta, z.gamma, q, cfg) for z in archive.zeros_for(label))
        if violated:
            status = HypothesisStatus.VIOLATED
            checked = complete_to or 0.0
        elif complete_to is None:
            status = HypothesisStatus.INDETERMINATE
            checked = 0.0
            warnings.append(f"archive has no completeness record for {label}")
        else:
            status = HypothesisStatus.VERIFIED_TO_HEIGHT
            checked = min(complete_to, required)

        if cfg.mode != AuditMode.THEOREM_1_2:
            if q < math.exp(abs(cfg.t0)) + 4:
                warnings.append(f"q = {q} is below e^|t0| + 4 = {math.exp(abs(cfg.t0)) + 4:.4g}")
                if status == HypothesisStatus.VERIFIED_TO_HEIGHT:
                    status = HypothesisStatus.INDETERMINATE
            delta_floor = 1 / math.log(abs(cfg.t0) + 4)
            if not delta_floor <= cfg.delta <= 0.5:
                warnings.append(f"delta = {cfg.delta} is outside [{delta_floor:.4g}, 1/2]")

        log_x, bound_log = self.bound_logs(q, cfg)
        if bound_log > EXP_OVERFLOW_LOG:
            warnings.append(f"bound exp({bound_log:.4g}) overflows binary64")
        n_chi = self.characters.least_nonresidue(chi)
        passes = None if status == HypothesisStatus.VIOLATED else math.log(n_chi) < bound_log

        resonance = remainder_log = dominated = None
        if cfg.mode != AuditMode.THEOREM_1_2:
            lhs = math.log(4) + cfg.delta * log_x + math.log(cfg.delta)
            rhs = math.log(cfg.K1) + 2 * math.log(abs(cfg.t0)) + math.log(math.log(q))
            resonance = lhs >= rhs
            # contour remainder x^(-1+theta) y^4 log q(|t0|+4) at y = 2 against the main term 4x/t0^2
            remainder_log = (
                (-1 + cfg.theta) * log_x + 4 * math.log(2) + math.log(math.log(q * (abs(cfg.t0) + 4)))
            )
            dominated = remainder_log < math.log(4) + log_x - 2 * math.log(abs(cfg.t0))

        for warning in warnings:
            logger.warning(f"Audit {chi.label}: {warning}")
        return AuditResult(
            character=str(chi.label),
            hypothesis_status=status,
            checked_height=checked,
            log_x=log_x,
            bound_value_log=bound_log,
            observed_n_chi=n_chi,
            passes=passes,
            log_K=math.log(cfg.delta) + cfg.delta * log_x,
            resonance_inequality=resonance,
            remainder_log=remainder_log,
            remainder_dominated=dominated,
            warnings=warnings,
        )

    def audit_bound(
        self, q: int, cfg: AuditConfig, archive: ZeroArchive, chars: List[Character]
    ) -> List[AuditResult]:
        """One AuditResult per non-principal character mod q, sorted by label."""
        if q <= 2:
            return []
        targets = sorted(
            (chi for chi in chars if not chi.is_principal and chi.modulus == q), key=lambda c: c.label.sort_key()
        )
        with ThreadPoolExecutor(max_workers=self.settings.MAX_WORKERS) as pool:
            results = list(pool.map(lambda chi: self.audit_character(q, cfg, archive, chi), targets))
        logger.info(f"Audited {len(results)} characters mod {q} in mode {cfg.mode.value}")
        return results

    @staticmethod
    def to_csv(results: List[AuditResult]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(AUDIT_CSV_COLUMNS)
        for r in results:
            writer.writerow(
                [
                    r.character,
                    r.hypothesis_status.value,
                    repr(r.checked_height),
                    repr(r.log_x),
                    repr(r.bound_value_log),
                    r.observed_n_chi,
                    "" if r.passes is None else str(r.passes).lower(),
                ]
            )
        return buffer.getvalue()
