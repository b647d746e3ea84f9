import logging
from math import gcd
from typing import List, Optional, Union

import numpy as np

from nonres.config import NonresSettings, nonres_settings
from nonres.models.character import Character
from nonres.models.enums import CharacterSelector
from nonres.schemas.character import CharacterLabel, CharacterRead, NonresidueRow, UnitComplexValue
from nonres.utils.numtheory import inverse_mod
from nonres.utils.util_error import (
    CapExceededError,
    PrimitiveRequiredError,
    PrincipalCharacterError,
    UsageError,
)

logger = logging.getLogger(__name__)

LabelLike = Union[CharacterLabel, Character, str]


class CharacterService:
    """Construction and evaluation of Dirichlet characters mod q."""

    def __init__(self, settings: NonresSettings = nonres_settings):
        self.settings = settings

    def get_character(self, label: LabelLike) -> Character:
        """Build a single character from a label, "q.index" string or Character."""
        if isinstance(label, Character):
            return label
        if isinstance(label, str):
            label = CharacterLabel.parse(label)
        if label.modulus > self.settings.CHARACTER_SINGLE_CAP:
            raise CapExceededError(
                f"modulus {label.modulus} exceeds single-character cap {self.settings.CHARACTER_SINGLE_CAP}"
            )
        return Character(label)

    def enumerate_characters(self, q: int) -> List[Character]:
        """All phi(q) characters mod q, ordered by Conrey index."""
        if q < 1:
            raise UsageError(f"modulus must be positive (got {q})")
        if q > self.settings.CHARACTER_GROUP_CAP:
            raise CapExceededError(
                f"modulus {q} exceeds full-group enumeration cap {self.settings.CHARACTER_GROUP_CAP}"
            )
        if q == 1:
            return [Character(CharacterLabel(modulus=1, index=1))]
        indices = [m for m in range(1, q) if gcd(m, q) == 1]
        characters = [Character(CharacterLabel(modulus=q, index=m)) for m in indices]
        logger.info(f"Enumerated {len(characters)} characters mod {q}")
        return characters

    def char_value(self, chi: Character, n: int) -> UnitComplexValue:
        """chi(n) for any integer n, reduced mod q before touching fixed-width arrays."""
        r = int(n) % chi.modulus
        turn = chi.turn_fraction(r)
        if turn is None:
            return UnitComplexValue(re=0.0, im=0.0, turn=None)
        value = complex(chi.values(np.array([r], dtype=np.int64))[0])
        return UnitComplexValue(re=value.real, im=value.imag, turn=turn)

    def character_parity(self, chi: Character) -> int:
        return chi.parity

    def conductor_and_primitive(self, chi: Character) -> tuple[int, Character]:
        if chi.is_primitive:
            return chi.modulus, chi
        return chi.conductor, Character(chi.inducing_label)

    def conjugate(self, chi: Character) -> Character:
        q = chi.modulus
        index = inverse_mod(chi.label.index, q) if q > 1 else 1
        return Character(CharacterLabel(modulus=q, index=index))

    def gauss_sum(self, chi: Character) -> complex:
        """tau(chi) = sum_{a=1}^{q} chi(a) e(a/q), by direct summation."""
        if not chi.is_primitive:
            raise PrimitiveRequiredError(str(chi.label))
        return chi.gauss_sum

    def root_number(self, chi: Character) -> complex:
        if not chi.is_primitive:
            raise PrimitiveRequiredError(str(chi.label))
        return chi.root_number

    def least_nonresidue(self, chi: Character) -> int:
        """Smallest n >= 2 coprime to q with chi(n) != 1 (exact exponent test)."""
        if chi.is_principal:
            raise PrincipalCharacterError("n(chi) undefined for chi_0")
        block = 256
        start = 2
        while True:
            n = np.arange(start, start + block, dtype=np.int64)
            k = chi.turns(n)
            hits = np.nonzero(k > 0)[0]
            if hits.size:
                return int(n[hits[0]])
            start += block
            block *= 2

    def select_characters(self, q: int, selector: Union[CharacterSelector, str]) -> List[Character]:
        """Characters mod q picked by a selector: a label, "all", "quadratic" or "primitive"."""
        if isinstance(selector, str) and "." in selector:
            chi = self.get_character(selector)
            if chi.modulus != q:
                raise UsageError(f"label {selector} does not have modulus {q}")
            return [chi]
        selector = CharacterSelector(selector)
        if selector == CharacterSelector.QUADRATIC:
            return self.quadratic_characters(q)
        characters = self.enumerate_characters(q)
        if selector == CharacterSelector.PRIMITIVE:
            return [chi for chi in characters if chi.is_primitive]
        return characters

    def quadratic_characters(self, q: int) -> List[Character]:
        """Order-two characters mod q, found through the index itself having order 2."""
        if q > self.settings.CHARACTER_GROUP_CAP:
            raise CapExceededError(
                f"modulus {q} exceeds full-group enumeration cap {self.settings.CHARACTER_GROUP_CAP}"
            )
        # Conrey pairing is symmetric, so chi_q(m, .) is real iff m^2 = 1 mod q.
        m = np.arange(1, q, dtype=np.int64)
        candidates = m[(m * m) % q == 1] if q > 2 else np.array([], dtype=np.int64)
        return [Character(CharacterLabel(modulus=q, index=int(i))) for i in candidates if int(i) != 1]

    def describe(self, chi: Character) -> CharacterRead:
        return CharacterRead(
            label=str(chi.label),
            order=chi.order,
            parity_kappa=chi.parity,
            conductor=chi.conductor,
            inducing_label=str(chi.inducing_label),
            primitive=chi.is_primitive,
            real=chi.is_real,
        )

    def nonresidue_table(
        self,
        q_lo: int,
        q_hi: int,
        selector: Union[CharacterSelector, str] = CharacterSelector.QUADRATIC,
        primitive_only: Optional[bool] = None,
    ) -> List[NonresidueRow]:
        """Rows (q, label, n(chi)) for every non-principal selected character, q in [q_lo, q_hi]."""
        if q_lo > q_hi:
            raise UsageError(f"empty modulus range {q_lo}..{q_hi}")
        rows = []
        for q in range(max(q_lo, 1), q_hi + 1):
            for chi in self.select_characters(q, selector):
                if chi.is_principal:
                    continue
                if primitive_only and not chi.is_primitive:
                    continue
                rows.append(NonresidueRow(q=q, label=str(chi.label), n_chi=self.least_nonresidue(chi)))
        logger.info(f"Computed {len(rows)} non-residue rows for q in {q_lo}..{q_hi}")
        return rows
