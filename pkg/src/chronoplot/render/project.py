"""
Projection of data coordinates onto device space.

Cartesian projection is affine. Polar projection maps cycle-local time
to an angle, clockwise from 12 o'clock, and the value to a radius kept
outside an inner hole; straight data segments become arcs, so they are
subdivided to at least one vertex per two degrees.
"""

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from chronoplot.exceptions import RenderError

Point = Tuple[float, float]

MAX_ARC_STEP = math.radians(2.0)


@dataclass(frozen=True)
class Viewport:
    x: float
    y: float
    width: float
    height: float

    @property
    def center(self) -> Point:
        return self.x + self.width / 2, self.y + self.height / 2

    @property
    def bottom(self) -> float:
        return self.y + self.height

    @property
    def right(self) -> float:
        return self.x + self.width


def _check_range(name: str, bounds: Tuple[float, float]) -> None:
    lo, hi = bounds
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi <= lo:
        raise RenderError(f'cannot project a degenerate {name} domain {bounds}')


@dataclass(frozen=True)
class CartesianProjection:
    """
    Affine map of ``(time, value)`` into a viewport.

    With ``transposed`` time runs up the vertical axis and values across.
    """
    viewport: Viewport
    time_range: Tuple[float, float]
    value_range: Tuple[float, float]
    transposed: bool = False

    def __post_init__(self) -> None:
        _check_range('time', self.time_range)
        _check_range('value', self.value_range)

    def __call__(self, t: float, v: float) -> Point:
        ft = (t - self.time_range[0]) / (self.time_range[1] - self.time_range[0])
        fv = (v - self.value_range[0]) / (self.value_range[1] - self.value_range[0])
        fx, fy = (fv, ft) if self.transposed else (ft, fv)
        vp = self.viewport
        return vp.x + fx * vp.width, vp.bottom - fy * vp.height

    def line(self, vertices: Sequence[Point]) -> List[Point]:
        return [self(t, v) for t, v in vertices]


@dataclass(frozen=True)
class PolarProjection:
    viewport: Viewport
    time_range: Tuple[float, float]
    value_range: Tuple[float, float]
    inner_radius: float = 0.2

    def __post_init__(self) -> None:
        _check_range('time', self.time_range)
        _check_range('value', self.value_range)
        if not 0 <= self.inner_radius < 1:
            raise RenderError(f'inner radius fraction must be within [0, 1), got {self.inner_radius}')

    @property
    def radius(self) -> float:
        return min(self.viewport.width, self.viewport.height) / 2

    def angle(self, t: float) -> float:
        lo, hi = self.time_range
        return 2 * math.pi * (t - lo) / (hi - lo)

    def radius_at(self, v: float) -> float:
        lo, hi = self.value_range
        fv = max((v - lo) / (hi - lo), 0.0)
        return self.radius * (self.inner_radius + (1 - self.inner_radius) * fv)

    def at(self, angle: float, r: float) -> Point:
        cx, cy = self.viewport.center
        return cx + r * math.sin(angle), cy - r * math.cos(angle)

    def __call__(self, t: float, v: float) -> Point:
        return self.at(self.angle(t), self.radius_at(v))

    def line(self, vertices: Sequence[Point]) -> List[Point]:
        """Project a polyline, subdividing each edge so no step exceeds two degrees."""
        if not vertices:
            return []
        out = [self(*vertices[0])]
        for (t0, v0), (t1, v1) in zip(vertices, vertices[1:]):
            steps = max(1, int(math.ceil(abs(self.angle(t1) - self.angle(t0)) / MAX_ARC_STEP)))
            for f in np.linspace(0.0, 1.0, steps + 1)[1:].tolist():
                out.append(self(t0 + f * (t1 - t0), v0 + f * (v1 - v0)))
        return out


def check_finite(points: Sequence[Point]) -> None:
    for x, y in points:
        if not (math.isfinite(x) and math.isfinite(y)):
            raise RenderError(f'non-finite device coordinate ({x}, {y})')
