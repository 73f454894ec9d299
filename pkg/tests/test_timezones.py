import random
import unittest
from pathlib import Path

from chronoplot.exceptions import ConfigurationError
from chronoplot.timecore import calendar
from chronoplot.timecore.timezones import (
    CivilLookup,
    LookupKind,
    TimeZone,
    Transition,
    absolute_to_civil,
    civil_to_absolute,
    get_timezone,
    load_timezones,
    parse_timezones,
    wall_to_absolute,
)

DATA = Path(__file__).parent / 'data'

SPRING = calendar.ymd_to_day(1970, 3, 29) * 86400
FALL = calendar.ymd_to_day(1970, 10, 25) * 86400


class TestBuiltinZones(unittest.TestCase):
    def test_utc(self):
        self.assertEqual(0, get_timezone('UTC').offset_at(123456))
        self.assertTrue(get_timezone('UTC').is_fixed)

    def test_fixed_zones(self):
        self.assertEqual(36000, get_timezone('fixed+10').offset_at(0))
        self.assertEqual(-12600, get_timezone('fixed-03:30').offset_at(0))

    def test_unknown_zone(self):
        with self.assertRaises(ConfigurationError):
            get_timezone('Mars/Olympus')

    def test_spring_transition(self):
        zone = get_timezone('dst-spring')
        self.assertEqual(0, zone.offset_at(SPRING + 7199))
        self.assertEqual(3600, zone.offset_at(SPRING + 7200))

    def test_fall_transition(self):
        zone = get_timezone('dst-fall')
        self.assertEqual(3600, zone.offset_at(FALL + 7199))
        self.assertEqual(0, zone.offset_at(FALL + 7200))

    def test_yearly_cycle(self):
        zone = get_timezone('dst-cycle')
        self.assertEqual(0, zone.offset_at(calendar.ymd_to_day(2000, 1, 1) * 86400))
        self.assertEqual(3600, zone.offset_at(calendar.ymd_to_day(2000, 7, 1) * 86400))
        self.assertEqual(0, zone.offset_at(calendar.ymd_to_day(2000, 12, 1) * 86400))


class TestCivilLookup(unittest.TestCase):
    def test_unique(self):
        lookup = civil_to_absolute(SPRING + 3600, 'dst-spring')
        self.assertIs(LookupKind.UNIQUE, lookup.kind)
        self.assertEqual(SPRING + 3600, lookup.resolve())

    def test_gap_resolves_to_transition(self):
        lookup = civil_to_absolute(SPRING + 9000, 'dst-spring')
        self.assertIs(LookupKind.GAP, lookup.kind)
        self.assertEqual((0, 3600), (lookup.before_offset, lookup.after_offset))
        self.assertEqual(SPRING + 7200, lookup.resolve())

    def test_ambiguous_resolves_to_earlier(self):
        wall = FALL + 9000
        lookup = civil_to_absolute(wall, 'dst-fall')
        self.assertIs(LookupKind.AMBIGUOUS, lookup.kind)
        self.assertEqual((wall - 3600, wall), (lookup.earlier, lookup.later))
        self.assertEqual(wall - 3600, lookup.resolve())
        self.assertEqual(wall - 3600, wall_to_absolute(wall, 'dst-fall'))

    def test_round_trip(self):
        for t in (0, SPRING + 7200, FALL + 7200 + 3600, FALL - 86400):
            civil = absolute_to_civil(t, 'dst-fall')
            if civil_to_absolute(civil.wall, 'dst-fall').kind is LookupKind.UNIQUE:
                self.assertEqual(t, wall_to_absolute(civil.wall, 'dst-fall'))

    def test_random_round_trip(self):
        rng = random.Random(3)
        decade = calendar.ymd_to_day(1980, 1, 1) * 86400
        for tz in ('dst-cycle', 'dst-spring', 'dst-fall', 'fixed-03:30'):
            for _ in range(300):
                t = rng.randrange(-86400, decade)
                civil = absolute_to_civil(t, tz)
                lookup = civil_to_absolute(civil.wall, tz)
                self.assertIsNot(LookupKind.GAP, lookup.kind)
                if lookup.kind is LookupKind.UNIQUE:
                    self.assertEqual(t, lookup.instant)
                else:
                    self.assertIn(t, (lookup.earlier, lookup.later))
                wall = rng.randrange(-86400, decade)
                lookup = civil_to_absolute(wall, tz)
                if lookup.kind is not LookupKind.GAP:
                    self.assertEqual(wall, absolute_to_civil(lookup.resolve(), tz).wall)

    def test_ambiguous_needs_order(self):
        with self.assertRaises(ValueError):
            CivilLookup.ambiguous(5, 3)


class TestTransitionTables(unittest.TestCase):
    def test_transitions_must_increase(self):
        with self.assertRaises(ConfigurationError):
            TimeZone('bad', 0, (Transition(100, 3600), Transition(50, 0)))

    def test_transition_must_change_offset(self):
        with self.assertRaises(ConfigurationError):
            TimeZone('bad', 0, (Transition(100, 0),))

    def test_parse_text(self):
        zones = parse_timezones([
            '# comment',
            'Text/One',
            'base 3600',
            'transition 1970-06-01T00:00:00Z 7200',
            '',
            'Text/Two',
            'base 0',
        ])
        self.assertEqual(['Text/One', 'Text/Two'], [z.id for z in zones])
        self.assertEqual(7200, zones[0].offset_at(calendar.ymd_to_day(1970, 6, 1) * 86400))

    def test_parse_errors(self):
        bad_inputs = [
            ['base 0'],
            ['Zone/A'],
            ['Zone/A', 'base 0', 'base 60'],
            ['Zone/A', 'base 0', 'transition 1970-01-01T00:00:00+01:00 3600'],
            ['Zone/A', 'base 0', 'transition nonsense 3600'],
            ['Zone/A', 'base x'],
            ['Zone/A', 'base 0', 'offset 3600 extra'],
        ]
        for lines in bad_inputs:
            with self.subTest(lines=lines):
                with self.assertRaises(ConfigurationError):
                    parse_timezones(lines)

    def test_load_file_registers_zones(self):
        zones = load_timezones(DATA / 'zones.tz')
        self.assertEqual(['Test/Harbour', 'Test/Flat'], [z.id for z in zones])
        harbour = get_timezone('Test/Harbour')
        summer = calendar.ymd_to_day(1970, 12, 1) * 86400
        self.assertEqual(39600, harbour.offset_at(summer))
        self.assertEqual(-18000, get_timezone('Test/Flat').offset_at(0))

    def test_missing_file(self):
        with self.assertRaises(ConfigurationError):
            load_timezones(DATA / 'no-such-file.tz')
