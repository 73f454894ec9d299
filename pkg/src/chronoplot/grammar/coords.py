"""
Loop and calendar coordinates.

A loop cuts the time axis at landmarks and superimposes the cycles;
positions become ``(cycle, x - L[cycle])``. On an unwarped scale cycles
keep their true lengths (ragged). When the scale is warped at the same
landmarks every cycle spans exactly one unit (justified). Calendar
coordinates give each cycle its own cell instead of superimposing them.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from chronoplot.exceptions import ConfigurationError
from chronoplot.grammar.breaks import Breaks, cycle_breaks, elapsed_breaks, fraction_breaks, value_breaks
from chronoplot.grammar.geoms import XY, Bar, Dot, Mark, Segment
from chronoplot.grammar.position import MappedPoint
from chronoplot.grammar.scale import ScaleState, Space, granule_landmarks, resolve_landmarks
from chronoplot.grammar.spec import CoordConfig, Direction
from chronoplot.timecore.granularity import GranularitySpec
from chronoplot.timecore.granules import TimePoint, format_point, format_wall
from chronoplot.timecore.timezones import absolute_to_civil

logger = logging.getLogger(__name__)


def loop_transform(
    p: Union[MappedPoint, float],
    landmarks: Sequence[float]
) -> Optional[Tuple[int, float]]:
    """
    Cycle and cycle-local position of a point.

    Parameters
    ----------
    p : MappedPoint or float
        Point, or its position in scale units.
    landmarks : sequence of float
        Strictly increasing cycle starts ``L[0] < ... < L[n]`` in scale units.

    Returns
    -------
    Tuple[int, float] or None
        ``(k, x - L[k])`` for ``L[k] <= x < L[k+1]``; a point exactly at
        ``L[k]`` starts cycle ``k``. None outside ``[L[0], L[n])``.
    """
    x = p.x if isinstance(p, MappedPoint) else p
    k = int(np.searchsorted(landmarks, x, side='right')) - 1
    if k < 0 or k >= len(landmarks) - 1:
        return None
    return k, x - landmarks[k]


@dataclass(frozen=True)
class Loops:
    landmarks: Tuple[float, ...]
    granularity: Optional[GranularitySpec] = None
    first_index: int = 0
    justified: bool = False
    starts: Tuple[str, ...] = ()
    _array: np.ndarray = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self) -> None:
        array = np.asarray(self.landmarks, dtype=float)
        if len(array) < 2 or np.any(np.diff(array) <= 0):
            raise ConfigurationError('loop landmarks must be strictly increasing')
        object.__setattr__(self, '_array', array)

    @property
    def n_cycles(self) -> int:
        return len(self.landmarks) - 1

    @property
    def lengths(self) -> Tuple[float, ...]:
        return tuple(b - a for a, b in zip(self.landmarks, self.landmarks[1:]))

    @property
    def extent(self) -> float:
        """Length of the longest cycle: the panel's time range."""
        return max(self.lengths)

    def locate(self, x: float) -> Optional[Tuple[int, float]]:
        return loop_transform(x, self._array)

    def cycle_label(self, k: int) -> str:
        return self.starts[k] if k < len(self.starts) else str(k)


def resolve_loops(coord: CoordConfig, state: ScaleState) -> Loops:
    """
    Loop landmarks in scale units for a trained scale.

    ``time_loops`` cuts at the granule boundaries covering the scale's
    domain; explicit ``loops`` are positions on the unwarped axis.

    Raises
    ------
    chronoplot.exceptions.ConfigurationError
        If landmarks are not strictly increasing or cannot be parsed.
    """
    if coord.time_loops is not None:
        g = coord.time_loops
        origin, raw = granule_landmarks(g, state.domain, state.axis_tz)
        justified = state.warp_granularity == g
        starts = tuple(format_point(TimePoint(g, origin + k, state.axis_tz)) for k in range(len(raw) - 1))
        return Loops(tuple(state.to_scale(r) for r in raw), g, origin, justified, starts)

    raw = resolve_landmarks(coord.loops, state.space, state.axis_tz)
    justified = state.landmarks is not None and tuple(state.landmarks) == raw
    unit = state.granularity.time_unit
    if state.space is Space.CIVIL:
        starts = tuple(format_wall(r, unit) for r in raw[:-1])
    else:
        starts = tuple(format_wall(absolute_to_civil(r, state.tz).wall, unit) for r in raw[:-1])
    return Loops(tuple(state.to_scale(r) for r in raw), None, 0, justified, starts)


def loop_breaks(loops: Loops, state: ScaleState, target: int = 5) -> Breaks:
    """
    Breaks for the cycle-local axis.

    Justified loops read as percentages of the cycle, time loops by their
    circular unit and explicit loops as elapsed time.
    """
    if loops.justified:
        return fraction_breaks(1.0)
    if state.is_warped:
        return value_breaks((0.0, loops.extent), target)
    if loops.granularity is not None:
        return cycle_breaks(loops.granularity.time_unit, loops.extent)
    return elapsed_breaks(loops.extent, target)


def _cut(a: XY, b: XY, loops: Loops) -> List[Tuple[int, XY, XY]]:
    """Split a segment at every landmark it crosses and localise the pieces."""
    (x0, y0), (x1, y1) = a, b
    lo, hi = min(x0, x1), max(x0, x1)
    inside = [L for L in loops.landmarks if lo < L < hi]
    if x1 < x0:
        inside.reverse()
    vertices = [a]
    for L in inside:
        vertices.append((L, y0 + (L - x0) / (x1 - x0) * (y1 - y0)))
    vertices.append(b)
    pieces = []
    for p, q in zip(vertices, vertices[1:]):
        if p == q:
            continue
        located = loops.locate((p[0] + q[0]) / 2)
        if located is None:
            continue
        k = located[0]
        start = loops.landmarks[k]
        pieces.append((k, (p[0] - start, p[1]), (q[0] - start, q[1])))
    return pieces


def localize_mark(mark: Mark, loops: Loops) -> Dict[int, Mark]:
    """
    Split a mark into per-cycle marks in cycle-local coordinates.

    Segments and bars crossing a landmark are cut there so that the end
    of one cycle continues at the start of the next. Pieces outside the
    landmarks are dropped.
    """
    segments: Dict[int, List[Segment]] = {}
    dots: Dict[int, List[Dot]] = {}
    bars: Dict[int, List[Bar]] = {}
    for seg in mark.segments:
        for k, a, b in _cut(seg.start, seg.end, loops):
            segments.setdefault(k, []).append(Segment(a, b, seg.style, k))
    for dot in mark.dots:
        located = loops.locate(dot.x)
        if located is not None:
            k, local = located
            dots.setdefault(k, []).append(Dot(local, dot.y, k))
    for bar in mark.bars:
        for k, a, b in _cut((bar.x0, bar.y1), (bar.x1, bar.y1), loops):
            bars.setdefault(k, []).append(Bar(a[0], b[0], bar.y0, bar.y1, k))

    dropped = (len(mark.dots) - sum(len(v) for v in dots.values()))
    if dropped:
        logger.warning('layer %d group %s: %d point(s) fall outside the loop landmarks and are dropped',
                       mark.layer, mark.group or '()', dropped)
    cycles = sorted(set(segments) | set(dots) | set(bars))
    return {
        k: replace(mark,
                   segments=tuple(segments.get(k, ())),
                   dots=tuple(dots.get(k, ())),
                   bars=tuple(bars.get(k, ())))
        for k in cycles
    }


def calendar_layout(cycles: Sequence[int], coord: CoordConfig) -> Dict[int, Tuple[int, int]]:
    """
    Grid cell ``(row, col)`` of each cycle.

    With ``rows`` direction cycle ``k`` sits at ``(k // wrap, k % wrap)``;
    ``cols`` transposes this. Reading cells left to right, top to bottom
    (or top to bottom, left to right) enumerates cycles in time order.

    Raises
    ------
    chronoplot.exceptions.ConfigurationError
        If the wrap width is below one.
    """
    if coord.wrap < 1:
        raise ConfigurationError(f'calendar wrap width must be at least 1, got {coord.wrap}')
    layout = {}
    for k in cycles:
        major, minor = divmod(k, coord.wrap)
        layout[k] = (major, minor) if coord.direction is Direction.ROWS else (minor, major)
    return layout
