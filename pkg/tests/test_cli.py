import io
import json
import tempfile
import unittest
from contextlib import redirect_stdout
from pathlib import Path

import sqlalchemy as sa

from chronoplot.cli import EXIT_DATA, EXIT_INVALID, EXIT_OK, EXIT_USAGE, CliConfig, main
from chronoplot.exceptions import ArgumentError
from chronoplot.series.csvio import read_csv
from chronoplot.series.sql import read_series_with_engine
from chronoplot.series.table import SeriesSchema

DATA = Path(__file__).parent / 'data'

DAY_OPTIONS = ['--index', 'date', '--granularity', 'day', '--measures', 'value']


def run(*argv):
    out = io.StringIO()
    with redirect_stdout(out):
        code = main([str(a) for a in argv])
    return code, out.getvalue()


class CliTestCase(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name, text):
        path = self.dir / name
        path.write_text(text, encoding='utf-8')
        return path


class TestValidate(CliTestCase):
    def test_clean(self):
        code, out = run('validate', '--data', DATA / 'clean.csv', *DAY_OPTIONS)
        self.assertEqual(EXIT_OK, code)
        self.assertEqual('', out)

    def test_gap(self):
        code, out = run('validate', '--data', DATA / 'gap.csv', *DAY_OPTIONS)
        self.assertEqual(EXIT_INVALID, code)
        self.assertEqual('gap: key () missing 1970-01-03 (1 day)\n', out)

    def test_gap_filled(self):
        code, _ = run('validate', '--data', DATA / 'gap.csv', '--fill-gaps', *DAY_OPTIONS)
        self.assertEqual(EXIT_OK, code)

    def test_duplicates_with_keys(self):
        code, out = run('validate', '--data', DATA / 'duplicates.csv', '--keys', 'sensor', *DAY_OPTIONS)
        self.assertEqual(EXIT_INVALID, code)
        self.assertIn('duplicate: key (a) at 1970-01-02 (rows 3, 4)', out)

    def test_undeclared_key(self):
        code, _ = run('validate', '--data', DATA / 'two_series.csv', *DAY_OPTIONS)
        self.assertEqual(EXIT_INVALID, code)

    def test_json_report(self):
        report_path = self.dir / 'report.json'
        code, out = run('validate', '--data', DATA / 'gap.csv', '--json', '--out', report_path, *DAY_OPTIONS)
        self.assertEqual(EXIT_INVALID, code)
        report = json.loads(out)
        self.assertFalse(report['is_valid'])
        self.assertEqual(1, report['gaps'][0]['missing'])
        self.assertEqual(report, json.loads(report_path.read_text()))

    def test_bad_csv(self):
        path = self.write('bad.csv', 'date,value\n1970-01-01,lots\n')
        self.assertEqual(EXIT_DATA, run('validate', '--data', path, *DAY_OPTIONS)[0])

    def test_missing_column(self):
        code, _ = run('validate', '--data', DATA / 'clean.csv', '--keys', 'sensor', *DAY_OPTIONS)
        self.assertEqual(EXIT_DATA, code)

    def test_missing_options(self):
        self.assertEqual(EXIT_USAGE, run('validate', '--data', DATA / 'clean.csv', '--index', 'date')[0])

    def test_unknown_zone(self):
        code, _ = run('validate', '--data', DATA / 'clean.csv', '--tz', 'Nowhere', *DAY_OPTIONS)
        self.assertIn(code, (EXIT_DATA, EXIT_USAGE))

    def test_zone_file(self):
        code, _ = run('validate', '--data', DATA / 'clean.csv', '--tz', 'Test/Flat',
                      '--tz-file', DATA / 'zones.tz', *DAY_OPTIONS)
        self.assertEqual(EXIT_OK, code)


class TestConvert(CliTestCase):
    def test_daily_to_monthly_mean(self):
        lines = ['date,value'] + [f'1970-01-{d:02d},{d}' for d in range(1, 32)]
        source = self.write('january.csv', '\n'.join(lines) + '\n')
        out = self.dir / 'monthly.csv'
        code, _ = run('convert', '--data', source, '--to-granularity', 'month', '--out', out, *DAY_OPTIONS)
        self.assertEqual(EXIT_OK, code)
        monthly = read_csv(out, SeriesSchema.from_names('date', 'month', measures=['value']))
        self.assertEqual([(16.0,)], [row.measures for row in monthly])

    def test_hourly_to_daily_sum(self):
        lines = ['time,value'] + [f'1970-01-{1 + h // 24:02d}T{h % 24:02d}:00:00,5' for h in range(48)]
        source = self.write('hourly.csv', '\n'.join(lines) + '\n')
        out = self.dir / 'daily.csv'
        code, _ = run('convert', '--data', source, '--index', 'time', '--granularity', 'hour',
                      '--measures', 'value', '--to-granularity', 'day', '--stat', 'sum', '--out', out)
        self.assertEqual(EXIT_OK, code)
        daily = read_csv(out, SeriesSchema.from_names('time', 'day', measures=['value']))
        self.assertEqual([(120.0,), (120.0,)], [row.measures for row in daily])

    def test_refinement_is_refused(self):
        source = self.write('monthly.csv', 'date,value\n1970-01,1\n')
        code, _ = run('convert', '--data', source, '--index', 'date', '--granularity', 'month',
                      '--measures', 'value', '--to-granularity', 'day', '--out', self.dir / 'out.csv')
        self.assertEqual(EXIT_USAGE, code)
        self.assertFalse((self.dir / 'out.csv').exists())

    def test_to_sql_table(self):
        url = f'sqlite:///{self.dir / "series.db"}'
        code, _ = run('convert', '--data', DATA / 'clean.csv', '--to-granularity', 'month',
                      '--out', url, '--out-table', 'monthly', *DAY_OPTIONS)
        self.assertEqual(EXIT_OK, code)
        engine = sa.create_engine(url)
        try:
            ts = read_series_with_engine('monthly', engine, SeriesSchema.from_names('date', 'month', measures=['value']))
        finally:
            engine.dispose()
        self.assertEqual([(2.0,)], [row.measures for row in ts])

    def test_read_from_sql_table(self):
        url = f'sqlite:///{self.dir / "series.db"}'
        run('convert', '--data', DATA / 'gap.csv', '--to-granularity', 'month',
            '--out', url, '--out-table', 'monthly', *DAY_OPTIONS)
        code, _ = run('validate', '--data', url, '--table', 'monthly', '--index', 'date',
                      '--granularity', 'month', '--measures', 'value')
        self.assertEqual(EXIT_OK, code)


class TestPlot(CliTestCase):
    def spec(self, **extra):
        obj = {'layers': [{'data': 'sales', 'geometry': 'time_line', 'mapping': {'x': 'date', 'y': 'value'}}]}
        obj.update(extra)
        return self.write('plot.json', json.dumps(obj))

    def test_writes_svg(self):
        out = self.dir / 'plot.svg'
        code, _ = run('plot', '--spec', self.spec(), '--data', f'sales={DATA / "gap.csv"}', '--out', out, *DAY_OPTIONS)
        self.assertEqual(EXIT_OK, code)
        self.assertTrue(out.read_bytes().startswith(b'<?xml'))

    def test_datasets_declared_in_the_spec(self):
        spec = self.spec(data={'sales': {'path': str(DATA / 'clean.csv'), 'index': 'date',
                                         'granularity': 'day', 'measures': ['value']}})
        out = self.dir / 'plot.svg'
        self.assertEqual(EXIT_OK, run('plot', '--spec', spec, '--out', out)[0])
        self.assertTrue(out.exists())

    def test_bare_path_is_named_by_its_stem(self):
        source = self.write('sales.csv', (DATA / 'clean.csv').read_text())
        code, _ = run('plot', '--spec', self.spec(), '--data', source, '--out', self.dir / 'p.svg', *DAY_OPTIONS)
        self.assertEqual(EXIT_OK, code)

    def test_strict(self):
        args = ['--spec', self.spec(), '--data', f'sales={DATA / "duplicates.csv"}', '--keys', 'sensor',
                '--out', self.dir / 'plot.svg', *DAY_OPTIONS]
        self.assertEqual(EXIT_INVALID, run('plot', '--strict', *args)[0])
        self.assertFalse((self.dir / 'plot.svg').exists())
        self.assertEqual(EXIT_OK, run('plot', *args)[0])

    def test_contradictory_scale(self):
        spec = self.spec(scale_x={'warps': [0, 86400], 'time_warps': 'day'})
        code, _ = run('plot', '--spec', spec, '--data', f'sales={DATA / "clean.csv"}',
                      '--out', self.dir / 'plot.svg', *DAY_OPTIONS)
        self.assertEqual(EXIT_USAGE, code)

    def test_unknown_dataset(self):
        code, _ = run('plot', '--spec', self.spec(), '--out', self.dir / 'plot.svg')
        self.assertEqual(EXIT_USAGE, code)

    def test_missing_spec(self):
        self.assertEqual(EXIT_USAGE, run('plot', '--out', self.dir / 'plot.svg')[0])

    def test_custom_settings(self):
        config = self.write('chronoplot.toml', '[render]\nwidth = 321\n')
        out = self.dir / 'plot.svg'
        code, _ = run('--config', config, 'plot', '--spec', self.spec(), '--data', f'sales={DATA / "clean.csv"}',
                      '--out', out, *DAY_OPTIONS)
        self.assertEqual(EXIT_OK, code)
        self.assertIn(b'width="321.000"', out.read_bytes())


class TestArguments(unittest.TestCase):
    def test_subcommand_is_required(self):
        with self.assertRaises(SystemExit) as caught:
            main([])
        self.assertEqual(2, caught.exception.code)

    def test_unknown_subcommand(self):
        with self.assertRaises(ArgumentError):
            CliConfig('draw')

    def test_convert_needs_a_target(self):
        with self.assertRaises(ArgumentError):
            CliConfig('convert', data=('a.csv',), index='d', granularity='day', measures=('v',), out='b.csv')

    def test_one_source_for_validate(self):
        with self.assertRaises(ArgumentError):
            CliConfig('validate', data=('a.csv', 'b.csv'), index='d', granularity='day', measures=('v',))

    def test_source_names(self):
        cfg = CliConfig('plot', data=('sales=a.csv', 'dir/stock.csv'), index='d', granularity='day',
                        measures=('v',), spec='p.json', out='p.svg')
        self.assertEqual(['sales', 'stock'], [name for name, _ in cfg.sources()])
        self.assertEqual('a.csv', cfg.sources()[0][1].path)

    def test_sql_sources_are_named_by_table(self):
        cfg = CliConfig('validate', data=('sqlite:///x.db',), index='d', granularity='day',
                        measures=('v',), table='readings')
        (name, dataset), = cfg.sources()
        self.assertEqual(('readings', 'sqlite:///x.db', 'readings'), (name, dataset.path, dataset.table))
