"""
Axis breaks that respect the calendar.

Time axes get ticks on granule boundaries, descending the lattice from
years to seconds until a granularity gives a readable number of ticks.
Loop axes are labelled by their circular unit.
"""

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from chronoplot.timecore import calendar
from chronoplot.timecore.granularity import (
    COARSE_TO_FINE,
    MONTH_NAMES,
    NOMINAL_SECONDS,
    WEEKDAY_NAMES,
    GranularitySpec,
    TimeUnit,
    linear,
)
from chronoplot.timecore.granules import format_wall, granule_bounds, granule_index_at
from chronoplot.timecore.timezones import absolute_to_civil

NICE_STEPS: Dict[TimeUnit, Tuple[int, ...]] = {
    TimeUnit.YEAR: (1, 2, 5, 10, 25, 50, 100),
    TimeUnit.MONTH: (1, 3, 6),
    TimeUnit.WEEK: (1,),
    TimeUnit.DAY: (1,),
    TimeUnit.HOUR: (1, 3, 6, 12),
    TimeUnit.MINUTE: (1, 5, 15, 30),
    TimeUnit.SECOND: (1, 5, 15, 30),
}

ELAPSED_STEPS = (1, 5, 15, 30, 60, 300, 900, 1800, 3600, 3 * 3600, 6 * 3600, 12 * 3600,
                 86400, 7 * 86400)


@dataclass(frozen=True)
class Breaks:
    positions: Tuple[float, ...] = ()
    labels: Tuple[str, ...] = ()
    unit: Optional[TimeUnit] = None
    step: int = 1

    def __len__(self) -> int:
        return len(self.positions)

    def pairs(self) -> List[Tuple[float, str]]:
        return list(zip(self.positions, self.labels))


def _aligned(unit: TimeUnit, index: int, step: int) -> bool:
    if unit is TimeUnit.YEAR:
        return (index + calendar.EPOCH_YEAR) % step == 0
    return index % step == 0


def _ticks(
    unit: TimeUnit,
    step: int,
    domain: Tuple[float, float],
    tz: str,
    limit: int
) -> Optional[List[float]]:
    """Granule starts of ``unit`` in ``[lo, hi)``, or None when there would be too many."""
    lo, hi = domain
    if (hi - lo) / NOMINAL_SECONDS[unit] / step > limit:
        return None
    g = linear(unit)
    first = granule_index_at(g, lo, tz)
    last = granule_index_at(g, hi, tz)
    ticks = []
    for i in range(first, last + 1):
        if not _aligned(unit, i, step):
            continue
        start = granule_bounds(g, i, tz)[0]
        if lo <= start < hi:
            ticks.append(float(start))
    return ticks


def _label(t: float, unit: TimeUnit, tz: str, long_domain: bool) -> str:
    text = format_wall(absolute_to_civil(t, tz).wall)
    date, clock = text[:10], text[11:]
    if unit is TimeUnit.YEAR:
        return date[:4]
    if unit is TimeUnit.MONTH:
        return date[:7]
    if unit in (TimeUnit.WEEK, TimeUnit.DAY):
        return date[5:]
    if unit is TimeUnit.SECOND:
        return clock
    return f'{date[5:]} {clock[:5]}' if long_domain else clock[:5]


def compute_breaks(
    domain: Tuple[float, float],
    granularity: GranularitySpec,
    target: int = 5,
    tz: str = 'UTC'
) -> Breaks:
    """
    Ticks on granule boundaries for a time axis.

    Parameters
    ----------
    domain : Tuple[float, float]
        Axis extent in seconds.
    granularity : GranularitySpec
        Common granularity of the data; finer units are only tried when
        no unit at or above it yields an acceptable count.
    target : int
        Desired tick count; acceptable counts lie in ``[target/2, 2*target]``.
    tz : str
        Zone whose clock defines day-and-coarser boundaries and labels.

    Returns
    -------
    Breaks
        Ticks of the coarsest acceptable unit, the step among that unit's
        nice steps whose count is closest to ``target``. Labels are
        ``YYYY``, ``YYYY-MM``, ``MM-DD``, ``HH:MM`` (``MM-DD HH:MM`` on
        domains over a day) or ``HH:MM:SS``.
    """
    lo, hi = domain
    if not hi > lo:
        hi = lo + NOMINAL_SECONDS[granularity.time_unit]
    low, high = target / 2, 2 * target
    floor = NOMINAL_SECONDS[granularity.time_unit]
    preferred = [u for u in COARSE_TO_FINE if NOMINAL_SECONDS[u] >= floor]
    finer = [u for u in COARSE_TO_FINE if NOMINAL_SECONDS[u] < floor]

    fallback = None
    for units in (preferred, finer):
        for unit in units:
            options = []
            for step in NICE_STEPS[unit]:
                ticks = _ticks(unit, step, (lo, hi), tz, 4 * target + 4)
                if not ticks:
                    continue
                options.append((abs(len(ticks) - target), -step, unit, step, ticks))
            acceptable = [o for o in options if low <= len(o[4]) <= high]
            if acceptable:
                _, _, unit, step, ticks = min(acceptable, key=lambda o: o[:2])
                return _breaks(unit, step, ticks, (lo, hi), tz)
            for option in options:
                if fallback is None or option[:2] < fallback[:2]:
                    fallback = option
    if fallback is None:
        return Breaks()
    _, _, unit, step, ticks = fallback
    return _breaks(unit, step, ticks, (lo, hi), tz)


def _breaks(unit: TimeUnit, step: int, ticks: List[float], domain: Tuple[float, float], tz: str) -> Breaks:
    long_domain = domain[1] - domain[0] > calendar.SECONDS_PER_DAY
    labels = tuple(_label(t, unit, tz, long_domain) for t in ticks)
    return Breaks(tuple(ticks), labels, unit, step)


def fraction_breaks(extent: float = 1.0) -> Breaks:
    """Quarter ticks labelled as percentages of a warped loop."""
    positions = tuple(float(v) for v in np.linspace(0.0, extent, 5))
    return Breaks(positions, tuple(f'{int(round(100 * p / extent))}%' for p in positions))


def cycle_breaks(loop_unit: TimeUnit, extent: float) -> Breaks:
    """
    Fixed circular labels for a loop of one ``loop_unit`` granule.

    Day loops tick every six hours, week loops at each weekday (Monday
    first), month loops on days 1, 8, 15, 22 and 29, year loops at month
    starts (non-leap lengths), hour and minute loops every quarter.
    """
    day = calendar.SECONDS_PER_DAY
    if loop_unit is TimeUnit.DAY:
        pairs = [(h * 3600, f'{h:02d}:00') for h in (0, 6, 12, 18)]
    elif loop_unit is TimeUnit.WEEK:
        pairs = [(d * day, WEEKDAY_NAMES[d]) for d in range(7)]
    elif loop_unit is TimeUnit.MONTH:
        pairs = [((d - 1) * day, str(d)) for d in (1, 8, 15, 22, 29)]
    elif loop_unit is TimeUnit.YEAR:
        pairs = [((calendar.ymd_to_day(1970, m, 1) - calendar.ymd_to_day(1970, 1, 1)) * day, MONTH_NAMES[m - 1])
                 for m in range(1, 13)]
    elif loop_unit is TimeUnit.HOUR:
        pairs = [(m * 60, f':{m:02d}') for m in (0, 15, 30, 45)]
    else:
        pairs = [(s, f'{s:02d}s') for s in (0, 15, 30, 45)]
    pairs = [(float(p), label) for p, label in pairs if p <= extent]
    return Breaks(tuple(p for p, _ in pairs), tuple(label for _, label in pairs), loop_unit)


def _elapsed_label(seconds: float) -> str:
    s = int(round(seconds))
    for size, suffix in ((86400, 'd'), (3600, 'h'), (60, 'm')):
        if s % size == 0 and s >= size:
            return f'{s // size}{suffix}'
    return f'{s}s'


def elapsed_breaks(extent: float, target: int = 5) -> Breaks:
    """Ticks counting elapsed time from the start of an explicit loop."""
    if extent <= 0:
        return Breaks((0.0,), ('0',))
    best = None
    for step in ELAPSED_STEPS:
        count = int(math.floor(extent / step)) + 1
        score = (not target / 2 <= count <= 2 * target, abs(count - target))
        if best is None or score < best[0]:
            best = (score, step, count)
    _, step, count = best
    positions = tuple(float(i * step) for i in range(count))
    return Breaks(positions, tuple('0' if p == 0 else _elapsed_label(p) for p in positions))


def value_breaks(domain: Tuple[float, float], target: int = 5) -> Breaks:
    """
    Evenly spaced ticks on a plain numeric axis.

    The step is 1, 2, 2.5 or 5 times a power of ten, whichever gives the
    count closest to ``target``; ticks are its multiples inside the domain.
    """
    lo, hi = domain
    if not hi > lo:
        return Breaks((float(lo),), (_number_label(lo),))
    raw = (hi - lo) / max(target, 1)
    magnitude = 10.0 ** math.floor(math.log10(raw))
    best = None
    for factor in (1.0, 2.0, 2.5, 5.0, 10.0):
        step = factor * magnitude
        first = int(np.ceil(lo / step - 1e-9))
        last = int(np.floor(hi / step + 1e-9))
        miss = abs(last - first + 1 - target)
        if best is None or miss < best[0]:
            best = (miss, step, first, last)
    _, step, first, last = best
    positions = tuple(float(round(k * step, 12)) for k in range(first, last + 1))
    return Breaks(positions, tuple(_number_label(p) for p in positions))


def _number_label(value: float) -> str:
    text = f'{value:.6g}'
    return '0' if text in ('-0', '0') else text
