import csv
import logging
from pathlib import Path
from typing import List, Optional, Union

from chronoplot.exceptions import IngestionError, SchemaError
from chronoplot.series.table import Measure, Row, SeriesSchema, TimeSeries
from chronoplot.timecore.granules import parse_point

logger = logging.getLogger(__name__)

NULL_TOKENS = ('', 'NA')


def parse_measure(text: Optional[str], line: int, column: str) -> Measure:
    if text is None or text.strip() in NULL_TOKENS:
        return None
    try:
        value = float(text)
    except ValueError:
        raise IngestionError(f'column {column!r}: {text!r} is not a number', line) from None
    if value != value or value in (float('inf'), float('-inf')):
        raise IngestionError(f'column {column!r}: {text!r} is not a finite number', line)
    return value


def format_measure(value: Measure) -> str:
    if value is None:
        return ''
    if value.is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def read_csv(path: Union[str, Path], schema: SeriesSchema) -> TimeSeries:
    """
    Load a comma-separated file as a time series.

    Parameters
    ----------
    path : str or Path
        UTF-8 file whose first row holds the column names.
    schema : SeriesSchema
        Index column, granularity, zone, key and measure columns.

    Returns
    -------
    TimeSeries
        Rows in file order, each tagged with its 1-based file line.

    Raises
    ------
    chronoplot.exceptions.SchemaError
        If a declared column is missing from the header.
    chronoplot.exceptions.IngestionError
        If an index or measure value does not parse.
    """
    path = Path(path)
    try:
        handle = path.open(newline='', encoding='utf-8')
    except OSError as e:
        raise IngestionError(f'cannot read {path}: {e}') from e
    with handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        missing = [name for name in schema.columns if name not in header]
        if missing:
            raise SchemaError(f'{path}: missing declared column(s) {", ".join(missing)}', missing)
        rows = read_records(((reader.line_num, record) for record in reader), schema)
    logger.debug('read %d rows from %s', len(rows), path)
    return TimeSeries(schema, tuple(rows))


def read_records(numbered, schema: SeriesSchema) -> List[Row]:
    """Convert ``(line, column->text mapping)`` pairs into rows."""
    rows = []
    for line, record in numbered:
        raw_index = record.get(schema.index)
        if raw_index is None:
            raise IngestionError(f'missing value for index column {schema.index!r}', line)
        point = parse_point(str(raw_index), schema.granularity, schema.tz, line)
        key = tuple('' if record.get(k) is None else str(record.get(k)) for k in schema.keys)
        measures = tuple(
            parse_measure(None if record.get(m) is None else str(record.get(m)), line, m)
            for m in schema.measures
        )
        rows.append(Row(point, key, measures, line))
    return rows


def write_csv(ts: TimeSeries, path: Union[str, Path]) -> None:
    """Write a series with ISO-formatted index values; nulls become empty fields."""
    path = Path(path)
    with path.open('w', newline='', encoding='utf-8') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(ts.schema.columns)
        for record in ts.records():
            writer.writerow([
                format_measure(record[c]) if c in ts.schema.measures else record[c]
                for c in ts.schema.columns
            ])
