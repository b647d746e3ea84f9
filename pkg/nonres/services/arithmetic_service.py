import logging
import math

import numpy as np

from nonres.config import NonresSettings, nonres_settings
from nonres.models.character import Character
from nonres.schemas.arithmetic import ArithTables, PrincipalDecomposition
from nonres.utils.summation import compensated_sum
from nonres.utils.util_error import TableLimitError, UsageError

logger = logging.getLogger(__name__)


class ArithmeticService:
    """Prime sieve tables and the linearly weighted character-prime sums built on them."""

    def __init__(self, settings: NonresSettings = nonres_settings):
        self.settings = settings

    def build_tables(self, N: int) -> ArithTables:
        """Smallest prime factor, von Mangoldt and omega tables on [0, N]."""
        if N < 1:
            raise UsageError(f"table limit must be positive (got {N})")
        if N > self.settings.TABLE_LIMIT:
            raise TableLimitError(f"table limit {N} exceeds configured cap {self.settings.TABLE_LIMIT}")

        n = np.arange(N + 1, dtype=np.int64)
        spf = np.zeros(N + 1, dtype=np.int64)
        for p in range(2, math.isqrt(N) + 1):
            if spf[p] == 0:
                block = spf[p * p::p]
                block[block == 0] = p
        unmarked = spf == 0
        spf[unmarked] = n[unmarked]
        spf[:2] = 0

        # strip the smallest prime completely; prime powers leave 1 behind
        rest = n.copy()
        rest[:2] = 1
        p = np.where(spf > 0, spf, 1)
        active = np.nonzero(p > 1)[0]
        while active.size:
            divisible = rest[active] % p[active] == 0
            active = active[divisible]
            rest[active] //= p[active]
        von_mangoldt = np.zeros(N + 1, dtype=np.float64)
        prime_power = (rest == 1) & (n >= 2)
        von_mangoldt[prime_power] = np.log(spf[prime_power].astype(np.float64))

        omega = np.zeros(N + 1, dtype=np.int8)
        cur = n.copy()
        cur[:2] = 1
        idx = np.nonzero(cur > 1)[0]
        while idx.size:
            q = spf[cur[idx]]
            omega[idx] += 1
            while True:
                divisible = cur[idx] % q == 0
                if not divisible.any():
                    break
                cur[idx[divisible]] //= q[divisible]
            keep = cur[idx] > 1
            idx = idx[keep]

        for arr in (spf, von_mangoldt, omega):
            arr.flags.writeable = False
        logger.info(f"Built arithmetic tables up to N={N}")
        return ArithTables(limit=N, smallest_prime_factor=spf, von_mangoldt=von_mangoldt, omega=omega)

    @staticmethod
    def _check_x(x: float, tables: ArithTables) -> None:
        if x > tables.limit:
            raise TableLimitError(f"x = {x} exceeds table limit {tables.limit}")

    @staticmethod
    def _prime_powers_upto(x: float, tables: ArithTables) -> np.ndarray:
        n = tables.prime_powers
        return n[n <= math.floor(x)]

    def linear_weighted_sum(self, chi: Character, x: float, tables: ArithTables) -> complex:
        """sum_{n <= x} chi(n) Lambda(n) (x - n)."""
        self._check_x(x, tables)
        if x < 2:
            return 0j
        n = self._prime_powers_upto(x, tables)
        terms = chi.values(n) * tables.von_mangoldt[n] * (x - n)
        return compensated_sum(terms)

    def principal_decomposition_check(self, q: int, x: float, tables: ArithTables) -> PrincipalDecomposition:
        """Split the unrestricted prime sum into its coprime-to-q part and the rest."""
        self._check_x(x, tables)
        if x < 2:
            return PrincipalDecomposition(q=q, x=x, full_sum=0.0, restricted_sum=0.0, discrepancy=0.0, ratio=0.0)
        n = self._prime_powers_upto(x, tables)
        terms = tables.von_mangoldt[n] * (x - n)
        coprime = np.gcd(n, q) == 1
        full = compensated_sum(terms).real
        restricted = compensated_sum(terms[coprime]).real
        # the discrepancy is summed on its own to keep it exact
        discrepancy = compensated_sum(terms[~coprime]).real
        scale = x * math.log(x) * math.log(q) if q > 1 else 0.0
        return PrincipalDecomposition(
            q=q,
            x=x,
            full_sum=full,
            restricted_sum=restricted,
            discrepancy=discrepancy,
            ratio=discrepancy / scale if scale > 0 else None,
        )

    def chebyshev_psi(self, N: int, tables: ArithTables) -> float:
        self._check_x(N, tables)
        return compensated_sum(tables.von_mangoldt[: int(N) + 1]).real

