"""
Granularity descriptors and the Gregorian calendar lattice.

A linear granularity partitions the time line into ordered, contiguous,
non-repeating granules. A circular granularity repeats modulo a fixed
period; a quasi-circular one repeats with a period that depends on the
enclosing cycle (days in a month, days in a year, ISO weeks in a year).
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Tuple

from chronoplot.exceptions import ConfigurationError, IncompatibleGranularity
from chronoplot.timecore import calendar


class Kind(str, Enum):
    LINEAR = 'linear'
    CIRCULAR = 'circular'
    QUASI_CIRCULAR = 'quasi-circular'


class TimeUnit(str, Enum):
    SECOND = 'second'
    MINUTE = 'minute'
    HOUR = 'hour'
    DAY = 'day'
    WEEK = 'week'
    MONTH = 'month'
    YEAR = 'year'


class CycleUnit(str, Enum):
    SECOND_OF_MINUTE = 'second-of-minute'
    MINUTE_OF_HOUR = 'minute-of-hour'
    HOUR_OF_DAY = 'hour-of-day'
    DAY_OF_WEEK = 'day-of-week'
    DAY_OF_MONTH = 'day-of-month'
    DAY_OF_YEAR = 'day-of-year'
    WEEK_OF_YEAR = 'week-of-year'
    MONTH_OF_YEAR = 'month-of-year'


# fixed length in seconds of the absolute (sub-day) units
UNIT_SECONDS: Dict[TimeUnit, int] = {
    TimeUnit.SECOND: 1,
    TimeUnit.MINUTE: 60,
    TimeUnit.HOUR: 3600,
}

# nominal lengths, only used to rank units and estimate tick counts
NOMINAL_SECONDS: Dict[TimeUnit, float] = {
    TimeUnit.SECOND: 1.0,
    TimeUnit.MINUTE: 60.0,
    TimeUnit.HOUR: 3600.0,
    TimeUnit.DAY: 86400.0,
    TimeUnit.WEEK: 7 * 86400.0,
    TimeUnit.MONTH: 30.436875 * 86400.0,
    TimeUnit.YEAR: 365.2425 * 86400.0,
}

COARSE_TO_FINE: Tuple[TimeUnit, ...] = (
    TimeUnit.YEAR,
    TimeUnit.MONTH,
    TimeUnit.WEEK,
    TimeUnit.DAY,
    TimeUnit.HOUR,
    TimeUnit.MINUTE,
    TimeUnit.SECOND,
)

# direct refinement edges of the lattice: finer -> coarser units it partitions
_PARENTS: Dict[TimeUnit, Tuple[TimeUnit, ...]] = {
    TimeUnit.SECOND: (TimeUnit.MINUTE,),
    TimeUnit.MINUTE: (TimeUnit.HOUR,),
    TimeUnit.HOUR: (TimeUnit.DAY,),
    TimeUnit.DAY: (TimeUnit.WEEK, TimeUnit.MONTH),
    TimeUnit.WEEK: (),
    TimeUnit.MONTH: (TimeUnit.YEAR,),
    TimeUnit.YEAR: (),
}

# circular unit -> (granule unit, enclosing cycle unit, fixed period or None)
_CYCLES: Dict[CycleUnit, Tuple[TimeUnit, TimeUnit, Optional[int]]] = {
    CycleUnit.SECOND_OF_MINUTE: (TimeUnit.SECOND, TimeUnit.MINUTE, 60),
    CycleUnit.MINUTE_OF_HOUR: (TimeUnit.MINUTE, TimeUnit.HOUR, 60),
    CycleUnit.HOUR_OF_DAY: (TimeUnit.HOUR, TimeUnit.DAY, 24),
    CycleUnit.DAY_OF_WEEK: (TimeUnit.DAY, TimeUnit.WEEK, 7),
    CycleUnit.DAY_OF_MONTH: (TimeUnit.DAY, TimeUnit.MONTH, None),
    CycleUnit.DAY_OF_YEAR: (TimeUnit.DAY, TimeUnit.YEAR, None),
    CycleUnit.WEEK_OF_YEAR: (TimeUnit.WEEK, TimeUnit.YEAR, None),
    CycleUnit.MONTH_OF_YEAR: (TimeUnit.MONTH, TimeUnit.YEAR, 12),
}


@dataclass(frozen=True)
class GranularitySpec:
    kind: Kind
    unit: str
    period: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind is Kind.LINEAR:
            TimeUnit(self.unit)
            if self.period is not None:
                raise ConfigurationError(f'linear granularity {self.unit} cannot have a period')
        elif self.kind is Kind.CIRCULAR:
            CycleUnit(self.unit)
            if self.period is None or self.period < 2:
                raise ConfigurationError(f'circular granularity {self.unit} needs a period >= 2')
        else:
            if _CYCLES[CycleUnit(self.unit)][2] is not None:
                raise ConfigurationError(f'{self.unit} has a fixed period')
            if self.period is not None:
                raise ConfigurationError(f'quasi-circular granularity {self.unit} has no fixed period')

    def __str__(self) -> str:
        return self.unit

    @property
    def is_linear(self) -> bool:
        return self.kind is Kind.LINEAR

    @property
    def time_unit(self) -> TimeUnit:
        if not self.is_linear:
            raise IncompatibleGranularity(f'{self.unit} is not a linear granularity')
        return TimeUnit(self.unit)

    @property
    def cycle_unit(self) -> CycleUnit:
        if self.is_linear:
            raise IncompatibleGranularity(f'{self.unit} is not a circular granularity')
        return CycleUnit(self.unit)

    @property
    def granule_unit(self) -> TimeUnit:
        """The linear unit whose granules a circular granularity labels."""
        return _CYCLES[self.cycle_unit][0]

    @property
    def enclosing_unit(self) -> TimeUnit:
        """The linear unit of one full cycle."""
        return _CYCLES[self.cycle_unit][1]


def linear(unit: TimeUnit) -> GranularitySpec:
    return GranularitySpec(Kind.LINEAR, TimeUnit(unit).value)


def circular(unit: CycleUnit) -> GranularitySpec:
    unit = CycleUnit(unit)
    period = _CYCLES[unit][2]
    if period is None:
        return GranularitySpec(Kind.QUASI_CIRCULAR, unit.value)
    return GranularitySpec(Kind.CIRCULAR, unit.value, period)


SECOND = linear(TimeUnit.SECOND)
MINUTE = linear(TimeUnit.MINUTE)
HOUR = linear(TimeUnit.HOUR)
DAY = linear(TimeUnit.DAY)
WEEK = linear(TimeUnit.WEEK)
MONTH = linear(TimeUnit.MONTH)
YEAR = linear(TimeUnit.YEAR)

SECOND_OF_MINUTE = circular(CycleUnit.SECOND_OF_MINUTE)
MINUTE_OF_HOUR = circular(CycleUnit.MINUTE_OF_HOUR)
HOUR_OF_DAY = circular(CycleUnit.HOUR_OF_DAY)
DAY_OF_WEEK = circular(CycleUnit.DAY_OF_WEEK)
DAY_OF_MONTH = circular(CycleUnit.DAY_OF_MONTH)
DAY_OF_YEAR = circular(CycleUnit.DAY_OF_YEAR)
WEEK_OF_YEAR = circular(CycleUnit.WEEK_OF_YEAR)
MONTH_OF_YEAR = circular(CycleUnit.MONTH_OF_YEAR)


def granularity(name: str) -> GranularitySpec:
    """
    Look up a built-in granularity by name, e.g. ``"day"`` or ``"day-of-week"``.

    Raises
    ------
    chronoplot.exceptions.ConfigurationError
        If the name is not a known linear or circular unit.
    """
    key = name.strip().lower().replace('_', '-')
    for unit in TimeUnit:
        if unit.value == key:
            return linear(unit)
    for cycle in CycleUnit:
        if cycle.value == key:
            return circular(cycle)
    raise ConfigurationError(f'unknown granularity {name!r}')


def refines(finer: GranularitySpec, coarser: GranularitySpec) -> bool:
    """
    True when every granule of ``coarser`` is an exact union of ``finer`` granules.

    The relation is reflexive and transitive; weeks refine neither months nor years.
    """
    a, b = finer.time_unit, coarser.time_unit
    if a == b:
        return True
    return any(refines(linear(parent), coarser) for parent in _PARENTS[a])


def is_coarser(a: GranularitySpec, b: GranularitySpec) -> bool:
    return NOMINAL_SECONDS[a.time_unit] > NOMINAL_SECONDS[b.time_unit]


def glb_granularity(a: GranularitySpec, b: GranularitySpec) -> GranularitySpec:
    """
    Greatest lower bound of two linear granularities.

    Parameters
    ----------
    a, b : GranularitySpec
        Linear granularities of the same (Gregorian) calendar.

    Returns
    -------
    GranularitySpec
        The coarsest granularity into which every granule of ``a`` and ``b``
        partitions exactly; e.g. weeks and months meet at days.
    """
    for unit in COARSE_TO_FINE:
        candidate = linear(unit)
        if refines(candidate, a) and refines(candidate, b):
            return candidate
    return SECOND


def glb_of(granularities: List[GranularitySpec]) -> GranularitySpec:
    if not granularities:
        raise IncompatibleGranularity('no granularities to combine')
    common = granularities[0]
    for g in granularities[1:]:
        common = glb_granularity(common, g)
    return common


def period_at(g: GranularitySpec, cycle_index: int) -> int:
    """
    Number of granules in the cycle with linear index ``cycle_index``.

    For circular granularities this is the fixed period; for
    quasi-circular ones ``cycle_index`` is the enclosing month index
    (day-of-month), year index (day-of-year) or ISO week-year offset from
    1970 (week-of-year).
    """
    if g.kind is Kind.CIRCULAR:
        return g.period
    unit = g.cycle_unit
    if unit is CycleUnit.DAY_OF_MONTH:
        year, month = calendar.month_to_ym(cycle_index)
        return calendar.days_in_month(year, month)
    if unit is CycleUnit.DAY_OF_YEAR:
        return calendar.days_in_year(cycle_index + calendar.EPOCH_YEAR)
    return calendar.iso_weeks_in_year(cycle_index + calendar.EPOCH_YEAR)


WEEKDAY_NAMES = ('Mon', 'Tue', 'Wed', 'Thu', 'Fri', 'Sat', 'Sun')
MONTH_NAMES = ('Jan', 'Feb', 'Mar', 'Apr', 'May', 'Jun',
               'Jul', 'Aug', 'Sep', 'Oct', 'Nov', 'Dec')


def circular_label(g: GranularitySpec, index: int) -> str:
    """Human label for circular index ``index``; day counts are 1-based in labels."""
    unit = g.cycle_unit
    if unit is CycleUnit.DAY_OF_WEEK:
        return WEEKDAY_NAMES[index]
    if unit is CycleUnit.MONTH_OF_YEAR:
        return MONTH_NAMES[index]
    if unit is CycleUnit.HOUR_OF_DAY:
        return f'{index:02d}:00'
    if unit in (CycleUnit.DAY_OF_MONTH, CycleUnit.DAY_OF_YEAR, CycleUnit.WEEK_OF_YEAR):
        return str(index + 1)
    return f'{index:02d}'
