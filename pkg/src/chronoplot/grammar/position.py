"""
Civil and absolute placement of observations on the time axis.

The time axis is measured in seconds. In absolute mode a position is the
absolute instant itself. In civil mode it is the wall-clock reading
relative to the reference zone, ``t + reference_offset + x_offset``,
where ``x_offset`` is the point's UTC offset minus the reference zone's
standard offset. Subtracting ``x_offset`` therefore always recovers a
monotone function of absolute time.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from chronoplot.grammar.spec import PositionMode
from chronoplot.series.table import Key
from chronoplot.timecore.granularity import UNIT_SECONDS
from chronoplot.timecore.granules import TimePoint, point_bounds
from chronoplot.timecore.timezones import get_timezone


@dataclass(frozen=True)
class Observation:
    point: TimePoint
    value: Optional[float]
    group: Key = ()
    color: Optional[str] = None
    offset: Optional[float] = None
    line: int = 0


@dataclass(frozen=True)
class MappedPoint:
    """
    An observation placed on the time axis.

    ``x`` is in scale units (warped when the scale warps), ``raw_x`` the
    unwarped axis position in seconds and ``raw_span`` the observation's
    granule on that axis. ``absolute_t`` orders points in time.
    """
    x: float
    y: Optional[float]
    x_offset: float
    group: Key
    absolute_t: float
    raw_x: float
    raw_span: Tuple[float, float]
    color: Optional[str] = None
    line: int = 0


def position_time(
    observations: Iterable[Observation],
    mode: PositionMode = PositionMode.CIVIL,
    reference_tz: str = 'UTC',
    align: float = 0.5
) -> List[MappedPoint]:
    """
    Place observations on the time axis.

    Parameters
    ----------
    observations : iterable of Observation
        Points with their zone; ``offset`` (seconds), when set, replaces
        the computed civil offset.
    mode : PositionMode
        ``civil`` positions by wall-clock reading; ``absolute`` by instant
        with every offset zero.
    reference_tz : str
        Zone whose standard offset is the civil reference.
    align : float
        Moment inside each granule, 0 start to 1 end.

    Returns
    -------
    list of MappedPoint
        In input order, with ``x == raw_x`` (no scale applied yet).

    Raises
    ------
    chronoplot.exceptions.ConfigurationError
        If a zone id is unknown.
    """
    mode = PositionMode(mode)
    reference_offset = get_timezone(reference_tz).base_offset
    placed = []
    for obs in observations:
        start, end = point_bounds(obs.point)
        t = start + align * (end - start)
        if mode is PositionMode.ABSOLUTE:
            x_offset = 0.0
            raw_span = (float(start), float(end))
        elif obs.offset is not None:
            x_offset = float(obs.offset)
            shift = reference_offset + x_offset
            raw_span = (start + shift, end + shift)
        else:
            zone = get_timezone(obs.point.tz)
            x_offset = float(zone.offset_at(t) - reference_offset)
            raw_start = start + zone.offset_at(start)
            if obs.point.granularity.time_unit in UNIT_SECONDS:
                raw_end = raw_start + (end - start)
            else:
                raw_end = end + zone.offset_at(end)
            raw_span = (float(raw_start), float(raw_end))
        raw_x = t + reference_offset + x_offset if mode is PositionMode.CIVIL else float(t)
        placed.append(MappedPoint(
            x=raw_x,
            y=obs.value,
            x_offset=x_offset,
            group=obs.group,
            absolute_t=float(t),
            raw_x=raw_x,
            raw_span=raw_span,
            color=obs.color,
            line=obs.line
        ))
    return placed
