"""
Proleptic Gregorian calendar arithmetic.

Days are counted from the epoch day 1970-01-01 (day 0); months from
January 1970 (month 0) and years from 1970 (year 0). All functions are
integer-only.
"""

from typing import Tuple

_DAYS_IN_MONTH = (-1, 31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)

_DAYS_BEFORE_MONTH = [-1]
_dbm = 0
for _dim in _DAYS_IN_MONTH[1:]:
    _DAYS_BEFORE_MONTH.append(_dbm)
    _dbm += _dim
del _dbm, _dim

_DI400Y = 146097
_DI100Y = 36524
_DI4Y = 1461

# ordinal of 1970-01-01 counting 0001-01-01 as ordinal 1
EPOCH_ORDINAL = 719163

EPOCH_YEAR = 1970

# 1970-01-01 was a Thursday; Monday is weekday 0
EPOCH_WEEKDAY = 3

SECONDS_PER_DAY = 86400


def is_leap(year: int) -> bool:
    return year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)


def days_in_month(year: int, month: int) -> int:
    if month == 2 and is_leap(year):
        return 29
    return _DAYS_IN_MONTH[month]


def days_in_year(year: int) -> int:
    return 366 if is_leap(year) else 365


def _days_before_year(year: int) -> int:
    y = year - 1
    return y * 365 + y // 4 - y // 100 + y // 400


def _days_before_month(year: int, month: int) -> int:
    return _DAYS_BEFORE_MONTH[month] + (month > 2 and is_leap(year))


def ymd_to_day(year: int, month: int, day: int) -> int:
    """
    Convert a calendar date to a day index.

    Parameters
    ----------
    year : int
        Gregorian year (proleptic, any integer).
    month : int
        Month 1-12.
    day : int
        Day of month, 1-based.

    Returns
    -------
    int
        Days since 1970-01-01.
    """
    if not 1 <= month <= 12:
        raise ValueError(f'month must be in 1..12, got {month}')
    if not 1 <= day <= days_in_month(year, month):
        raise ValueError(f'day must be in 1..{days_in_month(year, month)}, got {day}')
    ordinal = _days_before_year(year) + _days_before_month(year, month) + day
    return ordinal - EPOCH_ORDINAL


def day_to_ymd(day_index: int) -> Tuple[int, int, int]:
    """
    Convert a day index to ``(year, month, day)``.

    The leap-year pattern repeats every 400 years, so the date is found by
    peeling off 400-, 100-, 4- and 1-year cycles in turn.
    """
    n = day_index + EPOCH_ORDINAL - 1
    n400, n = divmod(n, _DI400Y)
    year = n400 * 400 + 1

    n100, n = divmod(n, _DI100Y)
    n4, n = divmod(n, _DI4Y)
    n1, n = divmod(n, 365)

    year += n100 * 100 + n4 * 4 + n1
    if n1 == 4 or n100 == 4:
        return year - 1, 12, 31

    leapyear = n1 == 3 and (n4 != 24 or n100 == 3)
    month = (n + 50) >> 5
    preceding = _DAYS_BEFORE_MONTH[month] + (month > 2 and leapyear)
    if preceding > n:
        month -= 1
        preceding -= _DAYS_IN_MONTH[month] + (month == 2 and leapyear)
    n -= preceding
    return year, month, n + 1


def month_index(year: int, month: int) -> int:
    return (year - EPOCH_YEAR) * 12 + (month - 1)


def month_to_ym(index: int) -> Tuple[int, int]:
    y, m = divmod(index, 12)
    return y + EPOCH_YEAR, m + 1


def first_day_of_month(index: int) -> int:
    year, month = month_to_ym(index)
    return ymd_to_day(year, month, 1)


def first_day_of_year(index: int) -> int:
    return ymd_to_day(index + EPOCH_YEAR, 1, 1)


def weekday(day_index: int) -> int:
    """Monday is 0, Sunday is 6."""
    return (day_index + EPOCH_WEEKDAY) % 7


def week_of_day(day_index: int) -> int:
    """Index of the Monday-anchored week containing the day; week 0 starts 1969-12-29."""
    return (day_index + EPOCH_WEEKDAY) // 7


def first_day_of_week(index: int) -> int:
    return index * 7 - EPOCH_WEEKDAY


def iso_week(day_index: int) -> Tuple[int, int]:
    """
    ISO-8601 week-numbering year and week (1-based) for a day.

    The ISO year of a week is the year holding its Thursday.
    """
    thursday = day_index - weekday(day_index) + 3
    iso_year = day_to_ymd(thursday)[0]
    first_thursday = ymd_to_day(iso_year, 1, 1)
    first_thursday += (3 - weekday(first_thursday)) % 7
    return iso_year, (thursday - first_thursday) // 7 + 1


def iso_weeks_in_year(iso_year: int) -> int:
    # years whose Jan 1 is a Thursday, or leap years starting on Wednesday, have 53 weeks
    jan1 = weekday(ymd_to_day(iso_year, 1, 1))
    if jan1 == 3 or (jan1 == 2 and is_leap(iso_year)):
        return 53
    return 52
