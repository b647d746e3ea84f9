"""In-memory Dirichlet character: Conrey exponent vector over CRT components.

A character mod q = prod p^e is stored as one log per cyclic factor of
(Z/p^eZ)^*; chi(n) = exp(2*pi*i*k(n)/order) with k(n) an exact integer, so
equality-to-one tests never depend on floating point.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, isqrt, lcm, sqrt

import numpy as np
from sympy.ntheory.modular import crt

from nonres.schemas.character import CharacterLabel
from nonres.utils.numtheory import conrey_generator, prime_power_factors
from nonres.utils.summation import compensated_sum

logger = logging.getLogger(__name__)


def _power_table(g: int, count: int, modulus: int) -> np.ndarray:
    """g^k mod modulus for k in [0, count), baby-step/giant-step blocks in numpy."""
    block = max(1, isqrt(count) + 1)
    baby = np.empty(block, dtype=np.int64)
    acc = 1
    for i in range(block):
        baby[i] = acc
        acc = acc * g % modulus
    giant_step = acc  # g^block
    n_blocks = (count + block - 1) // block
    out = np.empty(n_blocks * block, dtype=np.int64)
    giant = 1
    for j in range(n_blocks):
        out[j * block:(j + 1) * block] = baby * giant % modulus
        giant = giant * giant_step % modulus
    return out[:count]


@dataclass(frozen=True)
class PrimePowerComponent:
    """(Z/p^eZ)^* as a product of cyclic factors with discrete-log tables."""

    p: int
    e: int
    orders: tuple[int, ...]
    log_tables: tuple[np.ndarray, ...]  # one per factor; -1 on non-units

    @property
    def modulus(self) -> int:
        return self.p ** self.e

    def logs(self, n: int) -> tuple[int, ...]:
        r = n % self.modulus
        return tuple(int(table[r]) for table in self.log_tables)

    def from_logs(self, logs: tuple[int, ...]) -> int:
        """Element of (Z/p^eZ)^* with the given logs."""
        m = self.modulus
        if self.p != 2:
            return pow(conrey_generator(self.p), logs[0], m)
        if self.e == 1:
            return 1
        if self.e == 2:
            return 3 if logs[0] % 2 else 1
        sign = -1 if logs[0] % 2 else 1
        return sign * pow(5, logs[1], m) % m


@lru_cache(maxsize=256)
def prime_power_component(p: int, e: int) -> PrimePowerComponent:
    m = p ** e
    if p != 2:
        phi = m // p * (p - 1)
        powers = _power_table(conrey_generator(p), phi, m)
        table = np.full(m, -1, dtype=np.int64)
        table[powers] = np.arange(phi, dtype=np.int64)
        table.flags.writeable = False
        return PrimePowerComponent(p, e, (phi,), (table,))

    if e == 1:
        return PrimePowerComponent(2, 1, (), ())

    residues = np.arange(m, dtype=np.int64)
    odd = residues % 2 == 1
    sign_table = np.where(odd, (residues % 4 == 3).astype(np.int64), -1)
    sign_table.flags.writeable = False
    if e == 2:
        return PrimePowerComponent(2, 2, (2,), (sign_table,))

    half = m // 4  # order of 5 mod 2^e
    powers = _power_table(5, half, m)
    five_log = np.full(m, -1, dtype=np.int64)
    five_log[powers] = np.arange(half, dtype=np.int64)
    # n = (-1)^b 5^a: a is the log of n or of -n, whichever is 1 mod 4
    lifted = np.where(residues % 4 == 3, (-residues) % m, residues)
    exp_table = np.where(odd, five_log[lifted], -1)
    exp_table.flags.writeable = False
    return PrimePowerComponent(2, e, (2, half), (sign_table, exp_table))


class Character:
    """Dirichlet character chi_q(index, .) in the Conrey labelling."""

    def __init__(self, label: CharacterLabel):
        self.label = label
        self.components = tuple(prime_power_component(p, e) for p, e in prime_power_factors(label.modulus))
        self.index_logs = tuple(c.logs(label.index) for c in self.components)

        factor_orders = []
        for comp, logs in zip(self.components, self.index_logs):
            for d, a in zip(comp.orders, logs):
                factor_orders.append(d // gcd(a, d))
        self.order = lcm(1, *factor_orders)
        # chi(n) = e(sum_j a_j(index) a_j(n) / d_j) = e(sum_j c_j a_j(n) / order)
        self._coefficients = tuple(
            tuple(a * self.order // d for d, a in zip(comp.orders, logs))
            for comp, logs in zip(self.components, self.index_logs)
        )

    def __repr__(self) -> str:
        return f"Character({self.label})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Character) and other.label == self.label

    def __hash__(self) -> int:
        return hash(self.label)

    @property
    def modulus(self) -> int:
        return self.label.modulus

    @property
    def is_principal(self) -> bool:
        return self.order == 1

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    @property
    def is_quadratic(self) -> bool:
        return self.order == 2

    def turns(self, n) -> np.ndarray:
        """Exact exponents k with chi(n) = e(k/order); -1 where gcd(n, q) > 1."""
        n = np.asarray(n, dtype=np.int64)
        k = np.zeros(n.shape, dtype=np.int64)
        unit = np.ones(n.shape, dtype=bool)
        for comp, coeffs in zip(self.components, self._coefficients):
            r = n % comp.modulus
            if comp.p == 2 and comp.e == 1:
                unit &= r == 1
                continue
            for table, c in zip(comp.log_tables, coeffs):
                logs = table[r]
                unit &= logs >= 0
                k += c * np.where(logs >= 0, logs, 0)
        return np.where(unit, k % self.order, -1)

    def turn(self, n: int) -> int:
        # reduce as a Python int; n may exceed int64
        r = int(n) % self.modulus
        return int(self.turns(np.array([r], dtype=np.int64))[0])

    @cached_property
    def _roots(self) -> np.ndarray:
        k = np.arange(self.order)
        roots = np.exp(2j * np.pi * k / self.order)
        # quarter turns are exact
        quarter = (4 * k) % self.order == 0
        exact = np.array([1, 1j, -1, -1j])[(4 * k[quarter]) // self.order % 4]
        roots[quarter] = exact
        return roots

    def values(self, n) -> np.ndarray:
        """chi(n) as a complex array (0 off the units)."""
        k = self.turns(n)
        if self.order <= 1_000_000:
            vals = self._roots[np.where(k >= 0, k, 0)]
        else:
            vals = np.exp(2j * np.pi * np.where(k >= 0, k, 0) / self.order)
        return np.where(k >= 0, vals, 0)

    @cached_property
    def residue_values(self) -> np.ndarray:
        """chi(a) for a = 0, 1, ..., q-1."""
        return self.values(np.arange(self.modulus, dtype=np.int64))

    @cached_property
    def parity(self) -> int:
        if self.modulus <= 2:
            return 0
        return 0 if self.turn(self.modulus - 1) == 0 else 1

    @cached_property
    def conductor_data(self) -> tuple[int, CharacterLabel]:
        """(conductor f, Conrey label of the primitive character mod f inducing this one)."""
        residues, moduli = [], []
        for comp, logs in zip(self.components, self.index_logs):
            level, reduced_logs = _component_conductor(comp, logs)
            if level == 0:
                continue
            sub = prime_power_component(comp.p, level)
            moduli.append(sub.modulus)
            residues.append(sub.from_logs(reduced_logs))
        if not moduli:
            return 1, CharacterLabel(modulus=1, index=1)
        f = 1
        for m in moduli:
            f *= m
        index = int(crt(moduli, residues)[0]) % f
        return f, CharacterLabel(modulus=f, index=index)

    @property
    def conductor(self) -> int:
        return self.conductor_data[0]

    @property
    def inducing_label(self) -> CharacterLabel:
        return self.conductor_data[1]

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @cached_property
    def gauss_sum(self) -> complex:
        """tau(chi) = sum_{a=1}^{q} chi(a) e(a/q), by direct summation."""
        q = self.modulus
        a = np.arange(1, q + 1, dtype=np.int64)
        return compensated_sum(self.values(a) * np.exp(2j * np.pi * (a % q) / q))

    @cached_property
    def root_number(self) -> complex:
        return self.gauss_sum / ((1j ** self.parity) * sqrt(self.modulus))

    def turn_fraction(self, n: int) -> Fraction | None:
        k = self.turn(n)
        return None if k < 0 else Fraction(k, self.order)


def _component_conductor(comp: PrimePowerComponent, logs: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Exponent f of the local conductor p^f and the logs of the inducing local index."""
    p, e = comp.p, comp.e
    if p != 2:
        (a,) = logs
        phi = comp.orders[0]
        if a % phi == 0:
            return 0, ()
        order = phi // gcd(a, phi)
        f = 1
        while order % p == 0:
            order //= p
            f += 1
        phi_f = p ** (f - 1) * (p - 1)
        return f, ((a // p ** (e - f)) % phi_f,)
    if e == 1:
        return 0, ()
    if e == 2:
        return (2, (1,)) if logs[0] else (0, ())
    b, a = logs
    half = comp.orders[1]
    if a % half == 0:
        return (2, (1,)) if b else (0, ())
    order = half // gcd(a, half)  # 2^k, k >= 1
    f = order.bit_length() - 1 + 2
    return f, (b, (a // 2 ** (e - f)) % (2 ** (f - 2)))
