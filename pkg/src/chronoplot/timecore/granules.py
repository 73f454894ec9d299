"""
Time points and granule arithmetic.

Sub-day granules (seconds, minutes, hours) are fixed spans of absolute
time. Day-and-coarser granules are civil: their bounds are computed on the
wall clock of the point's time zone and then mapped to absolute instants,
so a day in a daylight-saving zone may last 23 or 25 hours.
"""

import functools
import logging
import re
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from dateutil.parser import isoparse

from chronoplot.exceptions import ArgumentError, IncompatibleGranularity, IngestionError
from chronoplot.timecore import calendar
from chronoplot.timecore.granularity import (
    CycleUnit,
    GranularitySpec,
    TimeUnit,
    UNIT_SECONDS,
    is_coarser,
    linear,
    refines,
)
from chronoplot.timecore.timezones import (
    LookupKind,
    Seconds,
    absolute_to_civil,
    civil_to_absolute,
    get_timezone,
    wall_to_absolute,
)

logger = logging.getLogger(__name__)

DAY_SECONDS = calendar.SECONDS_PER_DAY


@functools.total_ordering
@dataclass(frozen=True)
class TimePoint:
    granularity: GranularitySpec
    index: int
    tz: str = 'UTC'

    def __post_init__(self) -> None:
        if not self.granularity.is_linear:
            raise IncompatibleGranularity(f'time points need a linear granularity, got {self.granularity}')

    def _check_comparable(self, other: 'TimePoint') -> None:
        if self.granularity != other.granularity or self.tz != other.tz:
            raise IncompatibleGranularity(
                f'cannot order {self.granularity}@{self.tz} against {other.granularity}@{other.tz}')

    def __lt__(self, other: 'TimePoint') -> bool:
        if not isinstance(other, TimePoint):
            return NotImplemented
        self._check_comparable(other)
        return self.index < other.index

    def shift(self, n: int) -> 'TimePoint':
        return TimePoint(self.granularity, self.index + n, self.tz)

    def __str__(self) -> str:
        return format_point(self)


def _wall_start(unit: TimeUnit, i: int) -> int:
    """Wall-clock start (seconds) of civil granule ``i``."""
    if unit is TimeUnit.DAY:
        return i * DAY_SECONDS
    if unit is TimeUnit.WEEK:
        return calendar.first_day_of_week(i) * DAY_SECONDS
    if unit is TimeUnit.MONTH:
        return calendar.first_day_of_month(i) * DAY_SECONDS
    return calendar.first_day_of_year(i) * DAY_SECONDS


def granule_bounds(
    g: GranularitySpec,
    i: int,
    tz: str = 'UTC'
) -> Tuple[Seconds, Seconds]:
    """
    Half-open absolute interval ``[start, end)`` of granule ``i``.

    Parameters
    ----------
    g : GranularitySpec
        A linear granularity.
    i : int
        Granule index; granule 0 contains 1970-01-01T00:00:00.
    tz : str
        Zone id whose civil clock defines day-and-coarser granules.

    Returns
    -------
    Tuple[int, int]
        Start and end instants in seconds; ``end(i) == start(i + 1)``.

    Raises
    ------
    chronoplot.exceptions.ConfigurationError
        If ``tz`` is unknown.
    """
    unit = g.time_unit
    zone = get_timezone(tz)
    if unit in UNIT_SECONDS:
        size = UNIT_SECONDS[unit]
        return i * size, (i + 1) * size
    start = wall_to_absolute(_wall_start(unit, i), zone)
    end = wall_to_absolute(_wall_start(unit, i + 1), zone)
    return start, end


def point_bounds(tp: TimePoint) -> Tuple[Seconds, Seconds]:
    return granule_bounds(tp.granularity, tp.index, tp.tz)


def to_continuous(tp: TimePoint, align: float = 0.5) -> float:
    """
    Place a discrete time point on the continuous time line.

    ``align`` picks the moment inside the granule: 0 is its start, 0.5 its
    middle and 1 its end.

    Raises
    ------
    chronoplot.exceptions.ArgumentError
        If ``align`` is outside ``[0, 1]``.
    """
    if not 0 <= align <= 1:
        raise ArgumentError(f'align must be within [0, 1], got {align}')
    start, end = point_bounds(tp)
    return start + align * (end - start)


def _index_of_day(unit: TimeUnit, day: int) -> int:
    """Index of the civil granule of ``unit`` holding calendar day ``day``."""
    if unit is TimeUnit.DAY:
        return day
    if unit is TimeUnit.WEEK:
        return calendar.week_of_day(day)
    year, month, _ = calendar.day_to_ymd(day)
    if unit is TimeUnit.MONTH:
        return calendar.month_index(year, month)
    return year - calendar.EPOCH_YEAR


def _civil_day_and_second(t: Seconds, tz: str) -> Tuple[int, int]:
    wall = int(absolute_to_civil(t, tz).wall // 1)
    day, second = divmod(wall, DAY_SECONDS)
    return day, second


def granule_index_at(g: GranularitySpec, t: Seconds, tz: str = 'UTC') -> int:
    """Index of the granule of ``g`` that contains absolute instant ``t``."""
    unit = g.time_unit
    if unit in UNIT_SECONDS:
        return int(t // UNIT_SECONDS[unit])
    day, _ = _civil_day_and_second(t, tz)
    # civil midnights skipped by a transition still start their day at the transition
    if wall_to_absolute((day + 1) * DAY_SECONDS, tz) <= t:
        day += 1
    return _index_of_day(unit, day)


def coarsen(tp: TimePoint, coarser: GranularitySpec) -> TimePoint:
    """
    The granule of ``coarser`` containing ``tp``.

    Raises
    ------
    chronoplot.exceptions.IncompatibleGranularity
        If ``tp``'s granularity does not refine ``coarser``.
    """
    if not refines(tp.granularity, coarser):
        raise IncompatibleGranularity(f'{tp.granularity} does not refine {coarser}')
    if tp.granularity == coarser:
        return tp
    start, _ = point_bounds(tp)
    return TimePoint(coarser, granule_index_at(coarser, start, tp.tz), tp.tz)


def refine(tp: TimePoint, finer: GranularitySpec) -> Tuple[int, int]:
    """
    Inclusive index range of ``finer`` granules making up ``tp``.

    Returns
    -------
    Tuple[int, int]
        ``(first, last)``; the union of their bounds is exactly ``tp``'s bounds.

    Raises
    ------
    chronoplot.exceptions.IncompatibleGranularity
        If ``finer`` does not refine ``tp``'s granularity.
    """
    if not refines(finer, tp.granularity):
        raise IncompatibleGranularity(f'{finer} does not refine {tp.granularity}')
    start, end = point_bounds(tp)
    first = granule_index_at(finer, start, tp.tz)
    last = granule_index_at(finer, end, tp.tz) - 1
    return first, last


def to_circular(tp: TimePoint, target: GranularitySpec) -> int:
    """
    Circular index of ``tp`` in ``target``, in ``[0, period)``.

    Weekdays count from Monday (0); day-of-month, day-of-year and
    week-of-year are 0-based.

    Raises
    ------
    chronoplot.exceptions.IncompatibleGranularity
        If ``target`` cannot be derived from ``tp``'s granularity.
    """
    if target.is_linear:
        raise IncompatibleGranularity(f'{target} is not circular')
    unit = target.cycle_unit
    if not refines(tp.granularity, linear(target.granule_unit)):
        raise IncompatibleGranularity(f'{unit.value} cannot be derived from {tp.granularity}')

    source = tp.granularity.time_unit
    if source in UNIT_SECONDS:
        start, _ = point_bounds(tp)
        day, second = _civil_day_and_second(start, tp.tz)
        if unit is CycleUnit.SECOND_OF_MINUTE:
            return second % 60
        if unit is CycleUnit.MINUTE_OF_HOUR:
            return (second // 60) % 60
        if unit is CycleUnit.HOUR_OF_DAY:
            return second // 3600
    elif source is TimeUnit.DAY:
        day = tp.index
    elif source is TimeUnit.WEEK:
        day = calendar.first_day_of_week(tp.index)
    elif source is TimeUnit.MONTH:
        return tp.index % 12
    else:
        raise IncompatibleGranularity(f'{unit.value} cannot be derived from {tp.granularity}')

    if unit is CycleUnit.DAY_OF_WEEK:
        return calendar.weekday(day)
    if unit is CycleUnit.WEEK_OF_YEAR:
        return calendar.iso_week(day)[1] - 1
    year, month, dom = calendar.day_to_ymd(day)
    if unit is CycleUnit.DAY_OF_MONTH:
        return dom - 1
    if unit is CycleUnit.DAY_OF_YEAR:
        return day - calendar.ymd_to_day(year, 1, 1)
    return month - 1


def cycle_index(tp: TimePoint, target: GranularitySpec) -> int:
    """Linear index of the enclosing cycle, as taken by ``period_at``."""
    if target.cycle_unit is CycleUnit.WEEK_OF_YEAR:
        start, _ = point_bounds(tp)
        day = granule_index_at(linear(TimeUnit.DAY), start, tp.tz)
        return calendar.iso_week(day)[0] - calendar.EPOCH_YEAR
    return coarsen(tp, linear(target.enclosing_unit)).index


def _civil_fields(wall: int) -> Tuple[int, int, int, int, int, int]:
    day, second = divmod(wall, DAY_SECONDS)
    year, month, dom = calendar.day_to_ymd(day)
    hour, rest = divmod(second, 3600)
    minute, sec = divmod(rest, 60)
    return year, month, dom, hour, minute, sec


def format_offset(offset: int) -> str:
    sign = '-' if offset < 0 else '+'
    hours, minutes = divmod(abs(offset) // 60, 60)
    return f'{sign}{hours:02d}:{minutes:02d}'


def format_wall(wall: Seconds, unit: TimeUnit = TimeUnit.SECOND) -> str:
    """ISO text of a wall reading, truncated to ``unit``."""
    year, month, dom, hour, minute, sec = _civil_fields(int(wall // 1))
    if unit is TimeUnit.YEAR:
        return f'{year:04d}'
    if unit is TimeUnit.MONTH:
        return f'{year:04d}-{month:02d}'
    if unit in (TimeUnit.DAY, TimeUnit.WEEK):
        return f'{year:04d}-{month:02d}-{dom:02d}'
    return f'{year:04d}-{month:02d}-{dom:02d}T{hour:02d}:{minute:02d}:{sec:02d}'


def format_point(tp: TimePoint) -> str:
    """
    ISO-8601 text of a time point.

    Years print as ``YYYY``, months as ``YYYY-MM``, days and weeks (their
    Monday) as ``YYYY-MM-DD`` and sub-day points as the wall-clock reading
    of their start. A sub-day reading that is repeated in its zone gets an
    explicit offset so that it parses back to the same instant.
    """
    unit = tp.granularity.time_unit
    if unit not in UNIT_SECONDS:
        return format_wall(_wall_start(unit, tp.index), unit)
    start, _ = point_bounds(tp)
    civil = absolute_to_civil(start, tp.tz)
    text = format_wall(civil.wall)
    if civil_to_absolute(civil.wall, tp.tz).kind is LookupKind.AMBIGUOUS:
        text += format_offset(civil.offset)
    return text


_PRECISION = (
    (re.compile(r'^\d{4}$'), TimeUnit.YEAR),
    (re.compile(r'^\d{4}-\d{2}$'), TimeUnit.MONTH),
    (re.compile(r'^\d{4}-\d{2}-\d{2}$'), TimeUnit.DAY),
    (re.compile(r'^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}(:\d{2})?(Z|[+-]\d{2}:?\d{2})?$'), TimeUnit.SECOND),
)


def parse_point(
    text: str,
    g: GranularitySpec,
    tz: str = 'UTC',
    line: Optional[int] = None
) -> TimePoint:
    """
    Parse ISO-8601 text into the granule of ``g`` that contains it.

    Accepted forms are ``YYYY``, ``YYYY-MM``, ``YYYY-MM-DD`` and
    ``YYYY-MM-DDTHH:MM[:SS]`` with an optional ``Z``/``±HH:MM`` offset.
    Readings without an offset are wall-clock times in ``tz``.

    Raises
    ------
    chronoplot.exceptions.IngestionError
        If the text is malformed, less precise than ``g`` (temporally
        indeterminate) or names a sub-day wall time skipped by a
        transition. Dates name their civil granule even when its midnight
        was skipped.
    """
    text = text.strip()
    precision = None
    for pattern, unit in _PRECISION:
        if pattern.match(text):
            precision = unit
            break
    if precision is None:
        raise IngestionError(f'cannot parse {text!r} as an ISO-8601 time', line)
    if precision is not TimeUnit.SECOND and is_coarser(linear(precision), g) and not (
            precision is TimeUnit.DAY and g.time_unit is TimeUnit.WEEK):
        raise IngestionError(f'{text!r} is less precise than a {g}', line)
    try:
        parsed = isoparse(text)
        day = calendar.ymd_to_day(parsed.year, parsed.month, parsed.day)
    except ValueError as e:
        raise IngestionError(f'invalid date {text!r}: {e}', line) from e
    wall = day * DAY_SECONDS + parsed.hour * 3600 + parsed.minute * 60 + parsed.second

    if precision is not TimeUnit.SECOND and g.time_unit not in UNIT_SECONDS:
        # calendar readings name a civil granule even when its midnight was skipped
        get_timezone(tz)
        return TimePoint(g, _index_of_day(g.time_unit, day), tz)
    if parsed.tzinfo is not None:
        instant = wall - int(parsed.utcoffset().total_seconds())
    else:
        lookup = civil_to_absolute(wall, tz)
        if lookup.kind is LookupKind.GAP:
            raise IngestionError(f'{text} does not exist in {tz} (skipped by a transition)', line)
        if lookup.kind is LookupKind.AMBIGUOUS and g.time_unit in UNIT_SECONDS:
            logger.warning('%s is ambiguous in %s; using the earlier instant', text, tz)
        instant = lookup.resolve()
    return TimePoint(g, granule_index_at(g, instant, tz), tz)
