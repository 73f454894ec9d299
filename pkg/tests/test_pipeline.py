import unittest

from chronoplot.exceptions import SpecError
from chronoplot.grammar.geoms import Style
from chronoplot.grammar.pipeline import build_plot
from chronoplot.grammar.spec import plotspec_from_dict
from chronoplot.series.table import Row, SeriesSchema, TimeSeries
from chronoplot.timecore.granularity import DAY, HOUR
from chronoplot.timecore.granules import TimePoint

D = 86400

DAILY = SeriesSchema.from_names('date', 'day', keys=['store'], measures=['value', 'shift'])


def daily(values, store='a', start=0):
    return [Row(TimePoint(DAY, start + i), (store,), (v, 0.0), i + 2) for i, v in enumerate(values)]


def datasets(*rows):
    return {'sales': TimeSeries(DAILY, tuple(r for group in rows for r in group))}


def layer(**extra):
    obj = {'data': 'sales', 'geometry': 'time_line', 'mapping': {'x': 'date', 'y': 'value'}}
    obj.update(extra)
    return obj


def spec(*layers, **extra):
    obj = {'layers': list(layers) or [layer()]}
    obj.update(extra)
    return plotspec_from_dict(obj)


class TestCartesian(unittest.TestCase):
    def test_single_layer(self):
        built = build_plot(spec(), datasets(daily([1.0, 2.0, 3.0])))
        self.assertEqual('x', built.time_axis)
        self.assertEqual(1, len(built.panels))
        self.assertEqual((1.0, 3.0), built.value_range)
        self.assertEqual((0.5 * D, 2.5 * D), built.time_range)
        self.assertEqual(2, len(built.marks[0].segments))
        self.assertTrue(built.report.is_valid)
        self.assertIsNone(built.loops)

    def test_one_mark_per_group(self):
        built = build_plot(spec(), datasets(daily([1.0, 2.0]), daily([3.0, 4.0], 'b')))
        self.assertEqual([('a',), ('b',)], [m.group for m in built.marks])

    def test_group_mapping_picks_the_key(self):
        built = build_plot(spec(layer(mapping={'x': 'date', 'y': 'value', 'group': 'store'})),
                           datasets(daily([1.0]), daily([2.0], 'b')))
        self.assertEqual(2, len(built.marks))

    def test_color_mapping_numbers_values_in_order_of_appearance(self):
        built = build_plot(spec(layer(geometry='point', mapping={'x': 'date', 'y': 'value', 'color': 'store'})),
                           datasets(daily([1.0], 'b'), daily([2.0], 'a')))
        self.assertEqual({('b',): 0, ('a',): 1}, {m.group: m.color for m in built.marks})
        self.assertEqual('store', built.legend.title)
        self.assertEqual((('b', 0), ('a', 1)), built.legend.entries)

    def test_layers_get_their_own_color(self):
        built = build_plot(spec(layer(), layer(geometry='point')), datasets(daily([1.0, 2.0])))
        self.assertEqual([0, 1], [m.color for m in built.marks])
        self.assertIsNone(built.legend)

    def test_area_reaches_zero(self):
        built = build_plot(spec(layer(geometry='area')), datasets(daily([2.0, 3.0])))
        self.assertEqual((0.0, 3.0), built.value_range)

    def test_flat_values_get_a_range(self):
        built = build_plot(spec(), datasets(daily([2.0, 2.0])))
        self.assertEqual((1.5, 2.5), built.value_range)

    def test_time_on_y(self):
        built = build_plot(spec(layer(mapping={'x': 'value', 'y': 'date'})), datasets(daily([1.0, 2.0])))
        self.assertEqual('y', built.time_axis)

    def test_explicit_offset_column(self):
        rows = [Row(TimePoint(DAY, i), ('a',), (1.0, s), i + 2) for i, s in enumerate((0.0, 3600.0))]
        built = build_plot(spec(layer(mapping={'x': 'date', 'y': 'value', 'xtimeoffset': 'shift'})), datasets(rows))
        self.assertEqual([Style.DASHED, Style.SOLID], [s.style for s in built.marks[0].segments])

    def test_invalid_data_is_reported_not_raised(self):
        rows = daily([1.0, 2.0]) + daily([5.0], start=1)
        with self.assertLogs('chronoplot.grammar.pipeline', 'WARNING'):
            built = build_plot(spec(), datasets(rows))
        self.assertFalse(built.report.is_valid)
        self.assertEqual(1, len(built.report.duplicates))


class TestSpecErrors(unittest.TestCase):
    def test_errors(self):
        data = datasets(daily([1.0, 2.0]))
        invalid = {
            'unknown dataset': spec(layer(data='stock')),
            'no time aesthetic': spec(layer(mapping={'x': 'value', 'y': 'shift'})),
            'time on both': spec(layer(mapping={'x': 'date', 'y': 'date'})),
            'unknown measure': spec(layer(mapping={'x': 'date', 'y': 'price'})),
            'key as value': spec(layer(mapping={'x': 'date', 'y': 'store'})),
            'unknown group': spec(layer(mapping={'x': 'date', 'y': 'value', 'group': 'region'})),
            'offset on the value axis': spec(layer(mapping={'x': 'date', 'y': 'value', 'ytimeoffset': 'shift'})),
            'mixed time axes': spec(layer(), layer(mapping={'x': 'value', 'y': 'date'})),
            'scale on the wrong axis': spec(scale_y={'breaks': 3}),
            'polar time on y': spec(layer(mapping={'x': 'value', 'y': 'date'}),
                                    coord={'variant': 'loop', 'base': 'polar', 'time_loops': 'day'}),
            'reference zones disagree': spec(
                layer(position={'mode': 'civil', 'reference_tz': 'fixed+10'}),
                layer(position={'mode': 'civil', 'reference_tz': 'UTC'})),
        }
        for name, ps in invalid.items():
            with self.subTest(name):
                with self.assertRaises(SpecError):
                    build_plot(ps, data)


class TestLoopedPlots(unittest.TestCase):
    def setUp(self):
        schema = SeriesSchema.from_names('time', 'hour', measures=['load'])
        self.data = {'load': TimeSeries(schema, tuple(Row(TimePoint(HOUR, h), (), (float(h % 24),)) for h in range(72)))}
        self.layer = {'data': 'load', 'geometry': 'time_line', 'mapping': {'x': 'time', 'y': 'load'}}

    def test_loop(self):
        built = build_plot(plotspec_from_dict({'layers': [self.layer],
                                               'coord': {'variant': 'loop', 'time_loops': 'day'}}), self.data)
        self.assertEqual(1, len(built.panels))
        self.assertEqual(3, len(built.marks))
        self.assertEqual((0.0, float(D)), built.time_range)
        self.assertEqual(3, built.loops.n_cycles)

    def test_calendar(self):
        built = build_plot(plotspec_from_dict({'layers': [self.layer],
                                               'coord': {'variant': 'calendar', 'time_loops': 'day', 'wrap': 2}}),
                           self.data)
        self.assertEqual((2, 2), (built.rows, built.cols))
        self.assertEqual([(0, 0), (0, 1), (1, 0)], [(p.row, p.col) for p in built.panels])
        self.assertEqual(['1970-01-01', '1970-01-02', '1970-01-03'], [p.label for p in built.panels])
        self.assertEqual([0, 1, 2], [p.cycle for p in built.panels])
