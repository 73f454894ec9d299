"""
Geometries: from positioned points to line segments, dots and bars.

Coordinates are ``(time, value)`` pairs whichever aesthetic carries
time; the renderer transposes layers that map time to y.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple

from chronoplot.grammar.position import MappedPoint
from chronoplot.grammar.spec import Geometry
from chronoplot.series.table import Key

logger = logging.getLogger(__name__)

XY = Tuple[float, float]
ToScale = Callable[[float], float]


class Style(str, Enum):
    SOLID = 'solid'
    DASHED = 'dashed'


@dataclass(frozen=True)
class Segment:
    start: XY
    end: XY
    style: Style = Style.SOLID
    cycle: int = 0


@dataclass(frozen=True)
class Dot:
    x: float
    y: float
    cycle: int = 0


@dataclass(frozen=True)
class Bar:
    x0: float
    x1: float
    y0: float
    y1: float
    cycle: int = 0


@dataclass(frozen=True)
class Mark:
    """Everything one group of one layer draws."""
    layer: int
    geometry: Geometry
    group: Key
    color: int
    segments: Tuple[Segment, ...] = ()
    dots: Tuple[Dot, ...] = ()
    bars: Tuple[Bar, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not (self.segments or self.dots or self.bars)


def _identity(raw: float) -> float:
    return raw


def in_time_order(points: Sequence[MappedPoint], group: Optional[Key] = None) -> List[MappedPoint]:
    """
    Points sorted by absolute time, ties kept in input order.

    Repeated instants violate temporal uniqueness and are logged.
    """
    ordered = sorted(points, key=lambda p: p.absolute_t)
    repeated = [t for t, n in Counter(p.absolute_t for p in ordered).items() if n > 1]
    if repeated:
        logger.warning('group %s: %d instant(s) hold more than one observation; drawing them in input order',
                       group if group is not None else '()', len(repeated))
    return ordered


def _runs(ordered: Sequence[MappedPoint]) -> List[List[MappedPoint]]:
    runs: List[List[MappedPoint]] = [[]]
    for p in ordered:
        if p.y is None:
            if runs[-1]:
                runs.append([])
            continue
        runs[-1].append(p)
    return [run for run in runs if run]


def build_time_line(
    points: Sequence[MappedPoint],
    group: Optional[Key] = None,
    to_scale: Optional[ToScale] = None
) -> List[Segment]:
    """
    Line segments for one group, aware of time offsets.

    Points are joined in absolute time order, never by displayed
    position. Where ``x_offset`` changes between neighbours, a dashed
    segment at the earlier point's value spans the jump along the time
    axis and solid drawing resumes from its end. Null values break the
    line.

    Parameters
    ----------
    points : sequence of MappedPoint
        The group's positioned points.
    group : Key, optional
        Only used in log messages.
    to_scale : callable, optional
        Raw axis position to scale units; identity when the scale is unwarped.

    Returns
    -------
    list of Segment
        In drawing order.
    """
    to_scale = to_scale or _identity
    segments: List[Segment] = []
    for run in _runs(in_time_order(points, group)):
        for p, q in zip(run, run[1:]):
            if q.x_offset == p.x_offset:
                segments.append(Segment((p.x, p.y), (q.x, q.y)))
                continue
            landed = to_scale(p.raw_x + (q.x_offset - p.x_offset))
            segments.append(Segment((p.x, p.y), (landed, p.y), Style.DASHED))
            segments.append(Segment((landed, p.y), (q.x, q.y)))
    return segments


def build_step(points: Sequence[MappedPoint], group: Optional[Key] = None) -> List[Segment]:
    """Hold each value until the next observation, then jump."""
    segments: List[Segment] = []
    for run in _runs(in_time_order(points, group)):
        for p, q in zip(run, run[1:]):
            segments.append(Segment((p.x, p.y), (q.x, p.y)))
            if q.y != p.y:
                segments.append(Segment((q.x, p.y), (q.x, q.y)))
    return segments


def build_area_outline(points: Sequence[MappedPoint], group: Optional[Key] = None) -> List[Segment]:
    """Upper outline of an area; the renderer closes each run down to zero."""
    segments: List[Segment] = []
    for run in _runs(in_time_order(points, group)):
        for p, q in zip(run, run[1:]):
            segments.append(Segment((p.x, p.y), (q.x, q.y)))
    return segments


def build_points(points: Sequence[MappedPoint]) -> List[Dot]:
    return [Dot(p.x, p.y) for p in points if p.y is not None]


def build_rects(points: Sequence[MappedPoint], to_scale: Optional[ToScale] = None) -> List[Bar]:
    """One bar per observation covering its granule, from zero to the value."""
    to_scale = to_scale or _identity
    return [
        Bar(to_scale(p.raw_span[0]), to_scale(p.raw_span[1]), 0.0, p.y)
        for p in points if p.y is not None
    ]


def build_mark(
    geometry: Geometry,
    points: Sequence[MappedPoint],
    layer: int = 0,
    group: Key = (),
    color: int = 0,
    to_scale: Optional[ToScale] = None
) -> Mark:
    """Run ``geometry`` over one group's points."""
    geometry = Geometry(geometry)
    if geometry is Geometry.TIME_LINE:
        return Mark(layer, geometry, group, color, segments=tuple(build_time_line(points, group, to_scale)))
    if geometry is Geometry.STEP:
        return Mark(layer, geometry, group, color, segments=tuple(build_step(points, group)))
    if geometry is Geometry.AREA:
        return Mark(layer, geometry, group, color, segments=tuple(build_area_outline(points, group)))
    if geometry is Geometry.RECT:
        return Mark(layer, geometry, group, color, bars=tuple(build_rects(points, to_scale)))
    return Mark(layer, geometry, group, color, dots=tuple(build_points(points)))
