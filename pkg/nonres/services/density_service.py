import logging
import math
from typing import Optional, Sequence

import numpy as np

from nonres.models.character import Character
from nonres.schemas.explicit import DensityDiscRow, DensityRectangleRow, DensityTable
from nonres.schemas.zeros import ZeroArchive
from nonres.utils.util_error import UsageError

logger = logging.getLogger(__name__)

DISC_RADIUS_MAX = 0.75
DISC_RADII = 6


class DensityService:
    """Zero counts in unit-height boxes and in discs about 1 + it, normalised by their log sizes."""

    def zero_density_ratios(
        self,
        chi: Character,
        archive: ZeroArchive,
        T_max: float,
        t_grid: Optional[Sequence[float]] = None,
        radii: int = DISC_RADII,
    ) -> DensityTable:
        if T_max < 0:
            raise UsageError(f"T_max must be nonnegative (got {T_max})")
        label = chi.inducing_label if not chi.is_primitive else chi.label
        archive.require_complete(label, T_max + 1)
        q = chi.modulus
        rhos = np.array([z.rho for z in archive.zeros_for(label, T_max + 1)], dtype=np.complex128)
        gammas = rhos.imag

        rectangle_rows = []
        for T in range(0, int(math.floor(T_max)) + 1):
            count = int(np.count_nonzero((gammas >= T) & (gammas <= T + 1)))
            rectangle_rows.append(DensityRectangleRow(T=T, count=count, ratio=count / math.log(q * (T + 2))))

        if t_grid is None:
            t_grid = [float(t) for t in range(0, int(math.floor(T_max)) + 1)]
        disc_rows = []
        for t in t_grid:
            if abs(t) > T_max:
                raise UsageError(f"disc centre height {t} exceeds T_max {T_max}")
            log_qtau = math.log(q * (abs(t) + 4))
            r_min = 1 / log_qtau
            distances = np.abs(rhos - complex(1, t))
            for r in np.linspace(r_min, DISC_RADIUS_MAX, radii):
                count = int(np.count_nonzero(distances < r))
                disc_rows.append(
                    DensityDiscRow(r=float(r), t=float(t), count=count, ratio=count / (float(r) * log_qtau))
                )

        table = DensityTable(
            character=str(chi.label),
            T_max=T_max,
            rectangle_rows=rectangle_rows,
            disc_rows=disc_rows,
            c_fit_rectangle=max((row.ratio for row in rectangle_rows), default=0.0),
            c_fit_disc=max((row.ratio for row in disc_rows), default=0.0),
        )
        logger.info(
            f"Density ratios for {chi.label}: C_fit rectangle {table.c_fit_rectangle:.3f}, disc {table.c_fit_disc:.3f}"
        )
        return table
