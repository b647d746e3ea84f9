"""Argument-principle and residue helpers for batched analytic functions.

`f` everywhere is a callable taking a 1-d complex numpy array and returning the
function values at those points as an array of the same shape.
"""
import logging
import math
from typing import Callable, NamedTuple

import numpy as np

from nonres.utils.util_error import BoundaryTooCloseError

logger = logging.getLogger(__name__)

BatchFunction = Callable[[np.ndarray], np.ndarray]

EDGES = ("bottom", "right", "top", "left")

# Off-centre so that bisection lines avoid symmetric zero positions.
SPLIT_FRACTION = 0.5137


class Rectangle(NamedTuple):
    sigma_lo: float
    sigma_hi: float
    t_lo: float
    t_hi: float

    @property
    def width(self) -> float:
        return self.sigma_hi - self.sigma_lo

    @property
    def height(self) -> float:
        return self.t_hi - self.t_lo

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.sigma_lo + self.sigma_hi), 0.5 * (self.t_lo + self.t_hi))

    def contains(self, z: complex) -> bool:
        return self.sigma_lo < z.real < self.sigma_hi and self.t_lo < z.imag < self.t_hi

    def nudged(self, edge: str, amount: float) -> "Rectangle":
        field = {"bottom": "t_lo", "right": "sigma_hi", "top": "t_hi", "left": "sigma_lo"}[edge]
        return self._replace(**{field: getattr(self, field) + amount})


def nudge_sequence(count: int, unit: float = 1e-3) -> list[float]:
    """+u, -u, +2u, -2u, ... (deterministic)."""
    out = []
    for k in range(1, count // 2 + 2):
        out.extend([k * unit, -k * unit])
    return out[:count]


def rectangle_path(rect: Rectangle, spacing: float) -> tuple[np.ndarray, np.ndarray]:
    """Counterclockwise closed path; returns (points, edge index of each segment start)."""
    corners = [
        complex(rect.sigma_lo, rect.t_lo),
        complex(rect.sigma_hi, rect.t_lo),
        complex(rect.sigma_hi, rect.t_hi),
        complex(rect.sigma_lo, rect.t_hi),
    ]
    points, edges = [], []
    for k in range(4):
        a, b = corners[k], corners[(k + 1) % 4]
        n = max(4, int(math.ceil(abs(b - a) / spacing)))
        seg = a + (b - a) * np.arange(n) / n
        points.append(seg)
        edges.append(np.full(n, k))
    points.append(np.array([corners[0]]))
    edges.append(np.array([0]))
    return np.concatenate(points), np.concatenate(edges)


def _check_floor(values: np.ndarray, edges: np.ndarray, floor: float) -> None:
    small = np.abs(values) < floor
    if np.any(small):
        edge = EDGES[int(edges[np.argmax(small)])]
        raise BoundaryTooCloseError(f"|f| < {floor:g} on the {edge} edge", edge=edge)


def winding_number(
    f: BatchFunction,
    rect: Rectangle,
    spacing: float = 0.05,
    max_depth: int = 24,
    zero_floor: float = 1e-8,
) -> int:
    """Number of zeros minus poles of f inside rect, by adaptive argument tracking.

    Segments whose phase step exceeds pi/2 are bisected until every step is
    below pi/2; raises BoundaryTooCloseError if that does not happen within
    max_depth passes or the accumulated winding is not near an integer.
    """
    z, edges = rectangle_path(rect, spacing)
    values = f(z)
    _check_floor(values, edges, zero_floor)

    for _ in range(max_depth):
        steps = np.angle(values[1:] / values[:-1])
        bad = np.nonzero(np.abs(steps) > 0.5 * math.pi)[0]
        if bad.size == 0:
            break
        mid = 0.5 * (z[bad] + z[bad + 1])
        mid_values = f(mid)
        _check_floor(mid_values, edges[bad], zero_floor)
        z = np.insert(z, bad + 1, mid)
        values = np.insert(values, bad + 1, mid_values)
        edges = np.insert(edges, bad + 1, edges[bad])
    else:
        steps = np.angle(values[1:] / values[:-1])
        if np.any(np.abs(steps) > 0.5 * math.pi):
            edge = EDGES[int(edges[np.argmax(np.abs(steps) > 0.5 * math.pi)])]
            raise BoundaryTooCloseError(edge=edge)

    total = float(np.sum(np.angle(values[1:] / values[:-1]))) / (2.0 * math.pi)
    count = int(round(total))
    if abs(total - count) > 0.1:
        raise BoundaryTooCloseError(f"boundary too close to a zero (winding {total:.4f})")
    return count


def winding_number_nudged(
    f: BatchFunction,
    rect: Rectangle,
    nudges: list[float],
    **kwargs,
) -> tuple[int, Rectangle]:
    """winding_number, moving the offending edge through `nudges` until it succeeds."""
    current = rect
    edge = None
    last_error = None
    for step in [None] + list(nudges):
        if step is not None:
            current = rect.nudged(edge, step)
            logger.warning(f"Nudging {edge} edge of {tuple(round(v, 6) for v in rect)} by {step:+g}")
        try:
            return winding_number(f, current, **kwargs), current
        except BoundaryTooCloseError as e:
            last_error = e
            if edge is None:
                edge = e.edge or "bottom"
    raise last_error


def contour_residue(f: BatchFunction, center: complex, radius: float, points: int = 64) -> complex:
    """Residue of f at center by the trapezoidal rule on a circle (exponentially convergent)."""
    phases = np.exp(2j * math.pi * np.arange(points) / points)
    z = center + radius * phases
    return complex(np.mean(f(z) * radius * phases))


def localize_zeros(
    count: Callable[[Rectangle], int],
    rect: Rectangle,
    min_side: float,
) -> list[tuple[Rectangle, int]]:
    """Recursive bisection down to rectangles with longest side <= min_side."""
    n = count(rect)
    if n == 0:
        return []
    if max(rect.width, rect.height) <= min_side:
        return [(rect, n)]
    if rect.width >= rect.height:
        mid = rect.sigma_lo + SPLIT_FRACTION * rect.width
        halves = [rect._replace(sigma_hi=mid), rect._replace(sigma_lo=mid)]
    else:
        mid = rect.t_lo + SPLIT_FRACTION * rect.height
        halves = [rect._replace(t_hi=mid), rect._replace(t_lo=mid)]
    found = []
    for half in halves:
        found.extend(localize_zeros(count, half, min_side))
    return found
