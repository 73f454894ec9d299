"""
Time zones as explicit offset transition tables.

No platform tz database is consulted: zones are built in, constructed
directly, or loaded from a transition file::

    Example/Zone
    base 3600
    transition 1970-03-29T01:00:00Z 7200

Wall-clock ("civil") instants are expressed as seconds on the local
clock counted from a 1970-01-01T00:00:00 reading, so the wall reading of
absolute instant ``t`` is ``t + offset(t)``.
"""

import bisect
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

from dateutil.parser import isoparse

from chronoplot.exceptions import ConfigurationError
from chronoplot.timecore import calendar

logger = logging.getLogger(__name__)

Seconds = Union[int, float]


@dataclass(frozen=True)
class Transition:
    at: int
    offset_after: int


@dataclass(frozen=True)
class TimeZone:
    id: str
    base_offset: int = 0
    transitions: Tuple[Transition, ...] = ()
    _instants: Tuple[int, ...] = field(init=False, repr=False, compare=False)
    _offsets: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        previous_at = None
        previous_offset = self.base_offset
        for tr in self.transitions:
            if previous_at is not None and tr.at <= previous_at:
                raise ConfigurationError(f'{self.id}: transition instants must be strictly increasing')
            if tr.offset_after == previous_offset:
                raise ConfigurationError(f'{self.id}: transition at {tr.at} does not change the offset')
            previous_at, previous_offset = tr.at, tr.offset_after
        object.__setattr__(self, '_instants', tuple(tr.at for tr in self.transitions))
        object.__setattr__(self, '_offsets', tuple(sorted({self.base_offset, *(tr.offset_after for tr in self.transitions)})))

    def offset_at(self, t: Seconds) -> int:
        """UTC offset in force at absolute instant ``t``; a transition applies from its instant on."""
        i = bisect.bisect_right(self._instants, t) - 1
        if i < 0:
            return self.base_offset
        return self.transitions[i].offset_after

    def offsets(self) -> Tuple[int, ...]:
        return self._offsets

    @property
    def is_fixed(self) -> bool:
        return not self.transitions


class LookupKind(str, Enum):
    UNIQUE = 'unique'
    AMBIGUOUS = 'ambiguous'
    GAP = 'gap'


@dataclass(frozen=True)
class CivilLookup:
    kind: LookupKind
    instant: Optional[Seconds] = None
    earlier: Optional[Seconds] = None
    later: Optional[Seconds] = None
    before_offset: Optional[int] = None
    after_offset: Optional[int] = None
    transition_at: Optional[int] = None

    @classmethod
    def unique(cls, instant: Seconds) -> 'CivilLookup':
        return cls(LookupKind.UNIQUE, instant=instant)

    @classmethod
    def ambiguous(cls, earlier: Seconds, later: Seconds) -> 'CivilLookup':
        if not earlier < later:
            raise ValueError('ambiguous lookup needs earlier < later')
        return cls(LookupKind.AMBIGUOUS, earlier=earlier, later=later)

    @classmethod
    def gap(cls, before_offset: int, after_offset: int, transition_at: int) -> 'CivilLookup':
        return cls(LookupKind.GAP, before_offset=before_offset,
                   after_offset=after_offset, transition_at=transition_at)

    def resolve(self) -> Seconds:
        """
        Earliest absolute instant whose wall reading is at or after the looked-up one.

        Unique readings resolve to themselves, repeated readings to the
        earlier instant and skipped readings to the transition instant.
        """
        if self.kind is LookupKind.UNIQUE:
            return self.instant
        if self.kind is LookupKind.AMBIGUOUS:
            return self.earlier
        return self.transition_at


@dataclass(frozen=True)
class CivilTime:
    wall: Seconds
    offset: int


def civil_to_absolute(wall: Seconds, tz: Union[str, TimeZone]) -> CivilLookup:
    """
    Map a wall-clock reading in ``tz`` to absolute time.

    Parameters
    ----------
    wall : int or float
        Wall-clock seconds counted from a 1970-01-01T00:00:00 reading.
    tz : str or TimeZone
        Zone id (resolved through the registry) or zone.

    Returns
    -------
    CivilLookup
        ``unique`` when exactly one offset yields the reading, ``ambiguous``
        (earlier first) when clocks were set back over it, ``gap`` when
        clocks skipped it.
    """
    zone = get_timezone(tz)
    candidates = sorted(wall - off for off in zone.offsets() if zone.offset_at(wall - off) == off)
    if len(candidates) == 1:
        return CivilLookup.unique(candidates[0])
    if len(candidates) >= 2:
        return CivilLookup.ambiguous(candidates[0], candidates[-1])
    before = zone.base_offset
    for tr in zone.transitions:
        if tr.at + before <= wall < tr.at + tr.offset_after:
            return CivilLookup.gap(before, tr.offset_after, tr.at)
        before = tr.offset_after
    raise ConfigurationError(f'{zone.id}: inconsistent transition table at wall time {wall}')


def absolute_to_civil(t: Seconds, tz: Union[str, TimeZone]) -> CivilTime:
    zone = get_timezone(tz)
    offset = zone.offset_at(t)
    return CivilTime(t + offset, offset)


def wall_to_absolute(wall: Seconds, tz: Union[str, TimeZone]) -> Seconds:
    """Resolve a wall reading to one instant (see ``CivilLookup.resolve``)."""
    zone = get_timezone(tz)
    if zone.is_fixed:
        return wall - zone.base_offset
    return civil_to_absolute(wall, zone).resolve()


_REGISTRY: Dict[str, TimeZone] = {}

_FIXED = re.compile(r'^fixed([+-])(\d{2})(?::(\d{2}))?$')


def register_timezone(zone: TimeZone) -> TimeZone:
    _REGISTRY[zone.id] = zone
    return zone


def get_timezone(tz: Union[str, TimeZone]) -> TimeZone:
    """
    Resolve a zone id.

    Raises
    ------
    chronoplot.exceptions.ConfigurationError
        If the id is neither registered nor a ``fixed±HH[:MM]`` zone.
    """
    if isinstance(tz, TimeZone):
        return tz
    zone = _REGISTRY.get(tz)
    if zone is not None:
        return zone
    match = _FIXED.match(tz)
    if match:
        sign = -1 if match.group(1) == '-' else 1
        offset = sign * (int(match.group(2)) * 3600 + int(match.group(3) or 0) * 60)
        return register_timezone(TimeZone(tz, offset))
    raise ConfigurationError(f'unknown time zone {tz!r}')


def parse_utc_instant(text: str) -> int:
    """Whole seconds since the epoch of an ISO-8601 UTC instant."""
    parsed = isoparse(text)
    if parsed.tzinfo is not None:
        if parsed.utcoffset().total_seconds() != 0:
            raise ValueError(f'instant {text!r} is not UTC')
        parsed = parsed.replace(tzinfo=None)
    day = calendar.ymd_to_day(parsed.year, parsed.month, parsed.day)
    return day * calendar.SECONDS_PER_DAY + parsed.hour * 3600 + parsed.minute * 60 + parsed.second


def parse_timezones(lines: Iterable[str], source: str = '<string>') -> List[TimeZone]:
    """
    Parse transition-table text into zones.

    Each zone is a header line holding its id, exactly one ``base``
    line and any number of ``transition`` lines.
    """
    zones: List[TimeZone] = []
    current: Optional[str] = None
    base: Optional[int] = None
    transitions: List[Transition] = []

    def finish(lineno: int) -> None:
        if current is None:
            return
        if base is None:
            raise ConfigurationError(f'{source}:{lineno}: zone {current} has no base line')
        try:
            zones.append(TimeZone(current, base, tuple(transitions)))
        except ConfigurationError as e:
            raise ConfigurationError(f'{source}:{lineno}: {e}') from e

    lineno = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        parts = line.split()
        try:
            if parts[0] == 'base':
                if current is None or base is not None or len(parts) != 2:
                    raise ValueError('unexpected base line')
                base = int(parts[1])
            elif parts[0] == 'transition':
                if current is None or len(parts) != 3:
                    raise ValueError('unexpected transition line')
                transitions.append(Transition(parse_utc_instant(parts[1]), int(parts[2])))
            elif len(parts) == 1:
                finish(lineno)
                current, base, transitions = parts[0], None, []
            else:
                raise ValueError(f'unrecognised line {line!r}')
        except ValueError as e:
            raise ConfigurationError(f'{source}:{lineno}: {e}') from e
    finish(lineno)
    return zones


def load_timezones(path: Union[str, Path]) -> List[TimeZone]:
    """Parse a transition file and register every zone in it."""
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise ConfigurationError(f'cannot read tz file {path}: {e}') from e
    zones = parse_timezones(text.splitlines(), str(path))
    for zone in zones:
        register_timezone(zone)
        logger.debug('registered time zone %s with %d transitions', zone.id, len(zone.transitions))
    return zones


def _last_sunday(year: int, month: int) -> int:
    last = calendar.ymd_to_day(year, month, calendar.days_in_month(year, month))
    return last - (calendar.weekday(last) - 6) % 7


def _dst_cycle_transitions(first_year: int, last_year: int) -> Tuple[Transition, ...]:
    out = []
    for year in range(first_year, last_year + 1):
        spring = _last_sunday(year, 3) * calendar.SECONDS_PER_DAY + 3600
        fall = _last_sunday(year, 10) * calendar.SECONDS_PER_DAY + 3600
        out.append(Transition(spring, 3600))
        out.append(Transition(fall, 0))
    return tuple(out)


UTC = register_timezone(TimeZone('UTC'))
DST_SPRING = register_timezone(TimeZone(
    'dst-spring', 0, (Transition(calendar.ymd_to_day(1970, 3, 29) * 86400 + 7200, 3600),)))
DST_FALL = register_timezone(TimeZone(
    'dst-fall', 3600, (Transition(calendar.ymd_to_day(1970, 10, 25) * 86400 + 7200, 0),)))
DST_CYCLE = register_timezone(TimeZone('dst-cycle', 0, _dst_cycle_transitions(1970, 2100)))
