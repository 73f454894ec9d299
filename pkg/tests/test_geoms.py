import unittest

from chronoplot.grammar.geoms import (
    Bar,
    Dot,
    Segment,
    Style,
    build_area_outline,
    build_mark,
    build_points,
    build_rects,
    build_step,
    build_time_line,
    in_time_order,
)
from chronoplot.grammar.position import Observation, position_time
from chronoplot.grammar.spec import Geometry, PositionMode
from chronoplot.timecore import calendar
from chronoplot.timecore.granularity import DAY, HOUR
from chronoplot.timecore.granules import TimePoint

D = 86400
SPRING_HOUR = calendar.ymd_to_day(1970, 3, 29) * 24


def points(g, values, start=0, tz='UTC', mode=PositionMode.ABSOLUTE):
    return position_time(
        [Observation(TimePoint(g, start + i, tz), v) for i, v in enumerate(values)], mode)


class TestTimeLine(unittest.TestCase):
    def test_joins_in_time_order(self):
        segments = build_time_line(list(reversed(points(DAY, [1.0, 2.0, 3.0]))))
        self.assertEqual([
            Segment((0.5 * D, 1.0), (1.5 * D, 2.0)),
            Segment((1.5 * D, 2.0), (2.5 * D, 3.0)),
        ], segments)

    def test_offset_change_is_dashed(self):
        civil = points(HOUR, [1.0, 2.0, 3.0, 4.0, 5.0], SPRING_HOUR, 'dst-spring', PositionMode.CIVIL)
        segments = build_time_line(civil)
        dashed = [s for s in segments if s.style is Style.DASHED]
        self.assertEqual(1, len(dashed))
        jump = dashed[0]
        self.assertEqual((civil[1].x, 2.0), jump.start)
        self.assertEqual((civil[1].x + 3600.0, 2.0), jump.end)
        after = segments[segments.index(jump) + 1]
        self.assertEqual(jump.end, after.start)
        self.assertEqual((civil[2].x, 3.0), after.end)
        self.assertEqual(5, len(segments))

    def test_jump_lands_through_the_warp(self):
        civil = points(HOUR, [1.0, 2.0, 3.0], SPRING_HOUR, 'dst-spring', PositionMode.CIVIL)
        segments = build_time_line(civil, to_scale=lambda raw: raw / 3600.0)
        jump = next(s for s in segments if s.style is Style.DASHED)
        self.assertEqual((civil[1].raw_x + 3600.0) / 3600.0, jump.end[0])

    def test_nulls_break_the_line(self):
        self.assertEqual([], build_time_line(points(DAY, [1.0, None, 3.0])))
        segments = build_time_line(points(DAY, [1.0, None, 3.0, 4.0]))
        self.assertEqual([Segment((2.5 * D, 3.0), (3.5 * D, 4.0))], segments)

    def test_repeated_instants_are_reported(self):
        repeated = points(DAY, [1.0]) + points(DAY, [2.0])
        with self.assertLogs('chronoplot.grammar.geoms', 'WARNING'):
            ordered = in_time_order(repeated)
        self.assertEqual([1.0, 2.0], [p.y for p in ordered])


class TestOtherGeometries(unittest.TestCase):
    def test_step_holds_then_jumps(self):
        segments = build_step(points(DAY, [1.0, 1.0, 2.0]))
        self.assertEqual([
            Segment((0.5 * D, 1.0), (1.5 * D, 1.0)),
            Segment((1.5 * D, 1.0), (2.5 * D, 1.0)),
            Segment((2.5 * D, 1.0), (2.5 * D, 2.0)),
        ], segments)

    def test_area_outline(self):
        self.assertEqual(2, len(build_area_outline(points(DAY, [1.0, 2.0, 3.0]))))

    def test_points_skip_nulls(self):
        self.assertEqual([Dot(0.5 * D, 1.0), Dot(2.5 * D, 3.0)], build_points(points(DAY, [1.0, None, 3.0])))

    def test_rects_cover_the_granule(self):
        bars = build_rects(points(DAY, [4.0, None]))
        self.assertEqual([Bar(0.0, float(D), 0.0, 4.0)], bars)

    def test_civil_rect_covers_the_wall_day(self):
        day = calendar.ymd_to_day(1970, 3, 29)
        bar, = build_rects(points(DAY, [1.0], day, 'dst-spring', PositionMode.CIVIL))
        self.assertEqual(float(D), bar.x1 - bar.x0)


class TestBuildMark(unittest.TestCase):
    def test_dispatch(self):
        data = points(DAY, [1.0, 2.0])
        self.assertEqual(1, len(build_mark(Geometry.TIME_LINE, data).segments))
        self.assertEqual(2, len(build_mark(Geometry.POINT, data).dots))
        self.assertEqual(2, len(build_mark('rect', data).bars))
        self.assertEqual(1, len(build_mark(Geometry.AREA, data).segments))

    def test_carries_identity(self):
        mark = build_mark(Geometry.STEP, points(DAY, [1.0]), layer=2, group=('a',), color=3)
        self.assertEqual((2, ('a',), 3), (mark.layer, mark.group, mark.color))
        self.assertTrue(mark.is_empty)
