"""
Command-line driver: ``chronoplot plot``, ``chronoplot validate`` and
``chronoplot convert``.

Exit codes: 0 success, 1 unreadable or malformed data, 2 invalid
arguments, configuration or plot specification, 3 validity violations
(always for ``validate``, only with ``--strict`` for ``plot``).
"""

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import sqlalchemy as sa

from chronoplot.config import load_settings
from chronoplot.exceptions import ArgumentError, ChronoplotError, IngestionError, SchemaError
from chronoplot.grammar.spec import DatasetSpec, load_plotspec
from chronoplot.plot import Plot, load_dataset
from chronoplot.series.aggregate import Stat, aggregate
from chronoplot.series.csvio import write_csv
from chronoplot.series.sql import write_series_with_engine
from chronoplot.series.table import SeriesSchema, TimeSeries
from chronoplot.series.validate import ValidationReport, fill_gaps, validate
from chronoplot.timecore.granularity import granularity
from chronoplot.timecore.timezones import load_timezones

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2
EXIT_INVALID = 3


@dataclass(frozen=True)
class CliConfig:
    """Parsed invocation; required options are checked per subcommand."""
    subcommand: str
    data: Tuple[str, ...] = ()
    index: Optional[str] = None
    granularity: Optional[str] = None
    tz: str = 'UTC'
    keys: Tuple[str, ...] = ()
    measures: Tuple[str, ...] = ()
    spec: Optional[str] = None
    out: Optional[str] = None
    tz_file: Optional[str] = None
    config: Optional[str] = None
    strict: bool = False
    fill_gaps: bool = False
    to_granularity: Optional[str] = None
    stat: str = Stat.MEAN.value
    table: Optional[str] = None
    out_table: Optional[str] = None
    json: bool = False

    def __post_init__(self) -> None:
        missing = []
        if self.subcommand == 'plot':
            missing += [f for f in ('spec', 'out') if getattr(self, f) is None]
        elif self.subcommand in ('validate', 'convert'):
            if len(self.data) != 1:
                raise ArgumentError(f'{self.subcommand} takes exactly one --data source')
            if self.subcommand == 'convert':
                missing += [f for f in ('to_granularity', 'out') if getattr(self, f) is None]
        else:
            raise ArgumentError(f'unknown subcommand {self.subcommand!r}')
        if self.data:
            missing += [f for f in ('index', 'granularity') if getattr(self, f) is None]
            if not self.measures:
                missing.append('measures')
        if missing:
            flags = ', '.join('--' + name.replace('_', '-') for name in missing)
            raise ArgumentError(f'{self.subcommand} requires {flags}')

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> 'CliConfig':
        return cls(
            subcommand=ns.command,
            data=tuple(ns.data or ()),
            index=ns.index,
            granularity=ns.granularity,
            tz=ns.tz,
            keys=_split(ns.keys),
            measures=_split(ns.measures),
            spec=getattr(ns, 'spec', None),
            out=ns.out,
            tz_file=ns.tz_file,
            config=ns.config,
            strict=getattr(ns, 'strict', False),
            fill_gaps=ns.fill_gaps,
            to_granularity=getattr(ns, 'to_granularity', None),
            stat=getattr(ns, 'stat', Stat.MEAN.value),
            table=ns.table,
            out_table=getattr(ns, 'out_table', None),
            json=getattr(ns, 'json', False),
        )

    def schema(self) -> SeriesSchema:
        return SeriesSchema.from_names(self.index, self.granularity, self.tz, self.keys, self.measures)

    def sources(self) -> List[Tuple[str, DatasetSpec]]:
        """
        One named dataset per ``--data`` value.

        ``name=path`` names the dataset; a bare path is named after the
        file stem, or after ``--table`` when reading SQL.
        """
        schema = self.schema()
        out = []
        for value in self.data:
            name, sep, path = value.partition('=')
            if not sep or '://' in name or not name:
                path = value
                name = self.table if self.table is not None else Path(value).stem
            out.append((name, DatasetSpec(path, schema, self.table)))
        return out


def _split(value: Optional[str]) -> Tuple[str, ...]:
    if not value:
        return ()
    return tuple(part.strip() for part in value.split(',') if part.strip())


def _prepare(cfg: CliConfig) -> None:
    if cfg.tz_file is not None:
        load_timezones(cfg.tz_file)


def _load(cfg: CliConfig, dataset: DatasetSpec) -> TimeSeries:
    ts = load_dataset(dataset)
    return fill_gaps(ts) if cfg.fill_gaps else ts


def _report_violations(report: ValidationReport) -> None:
    for message in report.messages():
        logger.error(message)


def cmd_plot(cfg: CliConfig) -> int:
    """Render the plot described by ``--spec`` to the SVG file ``--out``."""
    _prepare(cfg)
    settings = load_settings(cfg.config)
    spec = load_plotspec(cfg.spec)
    datasets: Dict[str, TimeSeries] = {}
    for name, dataset in [*spec.data.items(), *cfg.sources()]:
        datasets[name] = _load(cfg, dataset)
    plot = Plot(spec, datasets, settings)
    if cfg.strict:
        report = plot.validate()
        if not report.is_valid:
            _report_violations(report)
            return EXIT_INVALID
    document = plot.to_svg()
    Path(cfg.out).write_bytes(document)
    logger.info('wrote %s (%d bytes)', cfg.out, len(document))
    return EXIT_OK


def cmd_validate(cfg: CliConfig) -> int:
    """
    Check temporal uniqueness and completeness of one series.

    Findings go to standard output one per line, or as a JSON document
    with ``--json``; ``--out`` also writes the JSON report to a file.
    """
    _prepare(cfg)
    (_, dataset), = cfg.sources()
    report = validate(_load(cfg, dataset))
    document = json.dumps(report.to_dict(), indent=2, sort_keys=True) + '\n'
    if cfg.out is not None:
        Path(cfg.out).write_text(document, encoding='utf-8')
    if cfg.json:
        sys.stdout.write(document)
    else:
        for message in report.messages():
            sys.stdout.write(message + '\n')
    if not report.is_valid:
        logger.warning('%d duplicate(s), %d gap(s) found', len(report.duplicates), len(report.gaps))
        return EXIT_INVALID
    return EXIT_OK


def cmd_convert(cfg: CliConfig) -> int:
    """Aggregate one series to ``--to-granularity`` and write it as CSV or a SQL table."""
    _prepare(cfg)
    (_, dataset), = cfg.sources()
    coarse = aggregate(_load(cfg, dataset), granularity(cfg.to_granularity), cfg.stat)
    if cfg.out_table is not None:
        engine = sa.create_engine(cfg.out)
        try:
            write_series_with_engine(coarse, cfg.out_table, engine, if_exists='replace')
        finally:
            engine.dispose()
    else:
        write_csv(coarse, cfg.out)
    logger.info('wrote %d rows at %s', len(coarse), coarse.granularity)
    return EXIT_OK


COMMANDS: Dict[str, Callable[[CliConfig], int]] = {
    'plot': cmd_plot,
    'validate': cmd_validate,
    'convert': cmd_convert,
}


def exit_code_for(error: ChronoplotError) -> int:
    if isinstance(error, (IngestionError, SchemaError)):
        return EXIT_DATA
    return EXIT_USAGE


def _add_data_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group('data options')
    group.add_argument('--data', action='append', metavar='[NAME=]PATH',
                       help='CSV file, or SQLAlchemy URL with --table; repeatable for plot')
    group.add_argument('--index', help='name of the time column')
    group.add_argument('--granularity', help='granularity of the time column, e.g. day or hour')
    group.add_argument('--tz', default='UTC', help='time zone id of the index values (default: UTC)')
    group.add_argument('--keys', help='comma-separated key columns')
    group.add_argument('--measures', help='comma-separated measure columns')
    group.add_argument('--table', help='read the series from this SQL table')
    group.add_argument('--tz-file', help='register time zones from a transition file')
    group.add_argument('--fill-gaps', action='store_true', help='insert null rows for missing indices')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='chronoplot', description='Calendar-aware time series plots.')
    parser.add_argument('-v', '--verbose', action='store_true', help='log debug messages')
    parser.add_argument('--config', help='TOML settings file')
    commands = parser.add_subparsers(dest='command', required=True)

    plot = commands.add_parser('plot', help='render a plot spec to SVG')
    _add_data_options(plot)
    plot.add_argument('--spec', help='plot spec JSON file')
    plot.add_argument('--out', help='SVG output file')
    plot.add_argument('--strict', action='store_true', help='exit 3 on validity violations')

    check = commands.add_parser('validate', help='report duplicates and gaps')
    _add_data_options(check)
    check.add_argument('--out', help='write the JSON report to this file')
    check.add_argument('--json', action='store_true', help='print the JSON report')

    convert = commands.add_parser('convert', help='aggregate to a coarser granularity')
    _add_data_options(convert)
    convert.add_argument('--to-granularity', help='target granularity')
    convert.add_argument('--stat', default=Stat.MEAN.value, choices=[s.value for s in Stat])
    convert.add_argument('--out', help='CSV output file, or SQLAlchemy URL with --out-table')
    convert.add_argument('--out-table', help='write to this SQL table instead of CSV')
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )
    try:
        cfg = CliConfig.from_namespace(args)
        return COMMANDS[cfg.subcommand](cfg)
    except ChronoplotError as e:
        logger.error('%s', e)
        return exit_code_for(e)
    except OSError as e:
        logger.error('%s', e)
        return EXIT_USAGE
