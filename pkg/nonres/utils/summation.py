"""Compensated accumulation for sums whose terms span many magnitudes."""
import math
from typing import Iterable

import numpy as np


def two_sum(u: float, v: float) -> tuple[float, float]:
    # Error free transformation: u + v == s + t exactly.
    s = u + v
    up = s - v
    vpp = s - up
    up -= u
    vpp -= v
    t = -(up + vpp)
    return s, t


class Accumulator:
    """Like math.fsum, but allows a running sum (two-word representation)."""

    __slots__ = ("_s", "_t")

    def __init__(self, y: float = 0.0):
        self._s, self._t = float(y), 0.0

    def add(self, y: float) -> None:
        y, u = two_sum(float(y), self._t)
        self._s, self._t = two_sum(y, self._s)
        if self._s == 0:
            self._s = u
        else:
            self._t += u

    @property
    def value(self) -> float:
        return self._s + self._t


class ComplexAccumulator:
    """Running compensated sum of complex terms, real and imaginary parts kept apart."""

    __slots__ = ("_re", "_im")

    def __init__(self, z: complex = 0j):
        self._re = Accumulator(complex(z).real)
        self._im = Accumulator(complex(z).imag)

    def add(self, z: complex) -> None:
        z = complex(z)
        self._re.add(z.real)
        self._im.add(z.imag)

    def extend(self, zs: Iterable[complex]) -> None:
        for z in zs:
            self.add(z)

    @property
    def value(self) -> complex:
        return complex(self._re.value, self._im.value)


def compensated_sum(values) -> complex:
    """Correctly rounded sum of a complex (or real) array, part by part."""
    arr = np.asarray(values)
    if arr.size == 0:
        return 0j
    if np.iscomplexobj(arr):
        return complex(math.fsum(arr.real.tolist()), math.fsum(arr.imag.tolist()))
    return complex(math.fsum(arr.tolist()), 0.0)
