import random
import unittest

from chronoplot.exceptions import ConfigurationError, IncompatibleGranularity
from chronoplot.timecore import calendar
from chronoplot.timecore.granularity import (
    DAY,
    DAY_OF_MONTH,
    DAY_OF_WEEK,
    DAY_OF_YEAR,
    HOUR,
    HOUR_OF_DAY,
    MINUTE,
    MINUTE_OF_HOUR,
    MONTH,
    MONTH_OF_YEAR,
    SECOND,
    SECOND_OF_MINUTE,
    WEEK,
    WEEK_OF_YEAR,
    YEAR,
    GranularitySpec,
    Kind,
    circular_label,
    glb_granularity,
    glb_of,
    granularity,
    period_at,
    refines,
)
from chronoplot.timecore.granules import TimePoint, cycle_index, granule_bounds, granule_index_at, to_circular

LINEAR = [SECOND, MINUTE, HOUR, DAY, WEEK, MONTH, YEAR]

FIRST_INSTANT = calendar.ymd_to_day(1900, 1, 1) * calendar.SECONDS_PER_DAY
LAST_INSTANT = calendar.ymd_to_day(2101, 1, 1) * calendar.SECONDS_PER_DAY - 1


class TestGranularityNames(unittest.TestCase):
    def test_lookup(self):
        self.assertEqual(DAY, granularity('day'))
        self.assertEqual(DAY_OF_WEEK, granularity('Day_Of_Week'))
        self.assertEqual(MONTH_OF_YEAR, granularity(' month-of-year '))

    def test_unknown_name(self):
        with self.assertRaises(ConfigurationError):
            granularity('fortnight')

    def test_kinds(self):
        self.assertTrue(DAY.is_linear)
        self.assertIs(Kind.CIRCULAR, HOUR_OF_DAY.kind)
        self.assertEqual(24, HOUR_OF_DAY.period)
        self.assertIs(Kind.QUASI_CIRCULAR, DAY_OF_MONTH.kind)
        self.assertIsNone(DAY_OF_MONTH.period)

    def test_invalid_descriptors(self):
        with self.assertRaises(ConfigurationError):
            GranularitySpec(Kind.LINEAR, 'day', 7)
        with self.assertRaises(ConfigurationError):
            GranularitySpec(Kind.CIRCULAR, 'day-of-week', 1)
        with self.assertRaises(ConfigurationError):
            GranularitySpec(Kind.QUASI_CIRCULAR, 'hour-of-day')

    def test_linear_only_properties(self):
        with self.assertRaises(IncompatibleGranularity):
            HOUR_OF_DAY.time_unit
        with self.assertRaises(IncompatibleGranularity):
            DAY.cycle_unit


class TestLattice(unittest.TestCase):
    def test_refines(self):
        self.assertTrue(refines(DAY, MONTH))
        self.assertTrue(refines(DAY, WEEK))
        self.assertTrue(refines(HOUR, YEAR))
        self.assertTrue(refines(MONTH, MONTH))
        self.assertFalse(refines(WEEK, MONTH))
        self.assertFalse(refines(WEEK, YEAR))
        self.assertFalse(refines(MONTH, DAY))

    def test_glb(self):
        self.assertEqual(DAY, glb_granularity(WEEK, MONTH))
        self.assertEqual(MONTH, glb_of([MONTH, YEAR]))
        self.assertEqual(HOUR, glb_of([HOUR, WEEK, YEAR]))
        self.assertEqual(DAY, glb_of([DAY]))

    def test_glb_refines_every_input(self):
        for a in LINEAR:
            for b in LINEAR:
                common = glb_granularity(a, b)
                self.assertTrue(refines(common, a))
                self.assertTrue(refines(common, b))

    def test_glb_of_nothing(self):
        with self.assertRaises(IncompatibleGranularity):
            glb_of([])


class TestCircular(unittest.TestCase):
    def test_quasi_circular_periods(self):
        self.assertEqual(28, period_at(DAY_OF_MONTH, calendar.month_index(1970, 2)))
        self.assertEqual(29, period_at(DAY_OF_MONTH, calendar.month_index(2000, 2)))
        self.assertEqual(31, period_at(DAY_OF_MONTH, calendar.month_index(1970, 1)))
        self.assertEqual(366, period_at(DAY_OF_YEAR, 2000 - 1970))
        self.assertEqual(365, period_at(DAY_OF_YEAR, 0))
        self.assertEqual(53, period_at(WEEK_OF_YEAR, 2020 - 1970))
        self.assertEqual(12, period_at(MONTH_OF_YEAR, 0))

    def test_labels(self):
        self.assertEqual('Mon', circular_label(DAY_OF_WEEK, 0))
        self.assertEqual('Dec', circular_label(MONTH_OF_YEAR, 11))
        self.assertEqual('1', circular_label(DAY_OF_MONTH, 0))
        self.assertEqual('07:00', circular_label(HOUR_OF_DAY, 7))
        self.assertEqual('05', circular_label(MINUTE_OF_HOUR, 5))


class TestGranularityAxioms(unittest.TestCase):
    """Randomised checks of the granule axioms over 1900-2100."""

    def setUp(self):
        self.rng = random.Random(1900_2100)

    def test_granules_are_ordered_contiguous_and_non_empty(self):
        zones = ['UTC', 'dst-cycle', 'fixed+10', 'fixed-03:30']
        for _ in range(10_000):
            g = self.rng.choice(LINEAR)
            tz = self.rng.choice(zones)
            t = self.rng.randint(FIRST_INSTANT, LAST_INSTANT)
            i = granule_index_at(g, t, tz)
            start, end = granule_bounds(g, i, tz)
            self.assertLess(start, end)
            self.assertLessEqual(start, t)
            self.assertLess(t, end)
            self.assertEqual(end, granule_bounds(g, i + 1, tz)[0])
            self.assertEqual(i, granule_index_at(g, start, tz))
            self.assertEqual(i, granule_index_at(g, end - 1, tz))

    def test_circular_periodicity(self):
        cases = [
            (SECOND, SECOND_OF_MINUTE),
            (MINUTE, MINUTE_OF_HOUR),
            (HOUR, HOUR_OF_DAY),
            (DAY, DAY_OF_WEEK),
            (MONTH, MONTH_OF_YEAR),
        ]
        for _ in range(10_000):
            g, cyc = self.rng.choice(cases)
            i = granule_index_at(g, self.rng.randint(FIRST_INSTANT, LAST_INSTANT))
            tp = TimePoint(g, i)
            label = to_circular(tp, cyc)
            self.assertTrue(0 <= label < cyc.period)
            self.assertEqual(label, to_circular(tp.shift(cyc.period), cyc))
            self.assertEqual((label + 1) % cyc.period, to_circular(tp.shift(1), cyc))

    def test_quasi_circular_labels_stay_within_their_cycle(self):
        for _ in range(2_000):
            day = self.rng.randint(FIRST_INSTANT, LAST_INSTANT) // calendar.SECONDS_PER_DAY
            tp = TimePoint(DAY, day)
            for cyc in (DAY_OF_MONTH, DAY_OF_YEAR, WEEK_OF_YEAR):
                label = to_circular(tp, cyc)
                self.assertTrue(0 <= label < period_at(cyc, cycle_index(tp, cyc)))
