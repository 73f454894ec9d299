"""
Reading and writing time series in SQL tables through SQLAlchemy.

Index values are stored as ISO-8601 text, keys as text and measures as
floats. Tables written here get the composite primary key
``(keys..., index)`` so the database itself enforces temporal uniqueness.
"""

import logging
from typing import Any, Dict, Generator, Optional, Sequence

import sqlalchemy as sa
from packaging import version
from sqlalchemy.engine import Engine
from sqlalchemy.orm import Session
from tinytim.data import column_names
from tinytim.rows import row_dicts_to_data

from chronoplot.exceptions import ConfigurationError, IngestionError, SchemaError
from chronoplot.series.csvio import read_records
from chronoplot.series.table import SeriesSchema, TimeSeries

logger = logging.getLogger(__name__)

_SQL_TYPES = {
    str: sa.Unicode,
    float: sa.Float,
}


def row_to_dict(row: sa.engine.row.Row) -> Dict[str, Any]:
    if version.parse(sa.__version__) >= version.parse('1.4'):
        return dict(row._mapping)
    else:
        return dict(row)


def get_table_from_engine(
    table_name: str,
    engine: Engine,
    schema: Optional[str] = None
) -> sa.Table:
    """
    Reflect a table.

    Raises
    ------
    chronoplot.exceptions.SchemaError
        If the table does not exist.
    """
    if table_name not in sa.inspect(engine).get_table_names(schema):
        raise SchemaError(f'table {table_name!r} does not exist')
    metadata = sa.MetaData(schema=schema)
    return sa.Table(table_name,
                    metadata,
                    autoload_with=engine,
                    extend_existing=True,
                    schema=schema)


def select_records_all_with_engine(
    table_name: str,
    engine: Engine,
    schema: Optional[str] = None,
    include_columns: Optional[Sequence[str]] = None
) -> Generator[Dict[str, Any], None, None]:
    """
    Select every record of a table, optionally restricted to some columns.
    """
    table = get_table_from_engine(table_name, engine, schema)
    if include_columns is not None:
        query = sa.select(*[table.c[name] for name in include_columns])
    else:
        query = sa.select(table)
    with engine.connect() as connection:
        results = connection.execute(query).fetchall()
    for row in results:
        yield row_to_dict(row)


def read_series_with_engine(
    table_name: str,
    engine: Engine,
    series_schema: SeriesSchema,
    schema: Optional[str] = None
) -> TimeSeries:
    """
    Load a time series from a SQL table.

    Parameters
    ----------
    table_name : str
        Table to read.
    engine : sqlalchemy.Engine
        Connected engine.
    series_schema : SeriesSchema
        Which columns hold the index, keys and measures.
    schema : Optional[str]
        Database schema name.

    Returns
    -------
    TimeSeries
        Rows in select order; row numbers count from 1.

    Raises
    ------
    chronoplot.exceptions.SchemaError
        If the table or a declared column is missing.
    chronoplot.exceptions.IngestionError
        If a stored index or measure does not parse.
    """
    table = get_table_from_engine(table_name, engine, schema)
    available = [c.name for c in table.columns]
    missing = [name for name in series_schema.columns if name not in available]
    if missing:
        raise SchemaError(f'table {table_name!r}: missing declared column(s) {", ".join(missing)}', missing)
    records = list(select_records_all_with_engine(table_name, engine, schema, series_schema.columns))
    rows = read_records(enumerate(records, start=1), series_schema)
    logger.debug('read %d rows from table %s', len(rows), table_name)
    return TimeSeries(series_schema, tuple(rows))


def create_series_table_with_engine(
    table_name: str,
    ts: TimeSeries,
    engine: Engine,
    schema: Optional[str] = None,
    if_exists: str = 'error'
) -> sa.Table:
    """
    Create a table shaped like ``ts``.

    ``if_exists`` is 'error', 'replace' (drop first) or 'append' (keep the
    existing table).
    """
    if if_exists not in ('error', 'replace', 'append'):
        raise ConfigurationError(f'if_exists must be error, replace or append, got {if_exists!r}')
    exists = table_name in sa.inspect(engine).get_table_names(schema)
    if exists and if_exists == 'append':
        return get_table_from_engine(table_name, engine, schema)
    if exists and if_exists == 'error':
        raise ConfigurationError(f'table {table_name!r} already exists')

    data = row_dicts_to_data(ts.records(), list(ts.schema.columns), None)
    primary_key = [*ts.schema.keys, ts.schema.index]
    names = column_names(data) if ts.rows else list(ts.schema.columns)
    cols = []
    for name in names:
        python_type = float if name in ts.schema.measures else str
        cols.append(sa.Column(name, _SQL_TYPES[python_type], primary_key=name in primary_key))

    metadata = sa.MetaData(schema=schema)
    table = sa.Table(table_name, metadata, *cols, schema=schema)
    with engine.begin() as connection:
        if exists:
            connection.execute(sa.schema.DropTable(table, if_exists=True))
        connection.execute(sa.schema.CreateTable(table))
    return get_table_from_engine(table_name, engine, schema)


def insert_records_with_session(
    table: sa.Table,
    records: Sequence[dict],
    session: Session
) -> None:
    if records:
        session.execute(table.insert(), list(records))


def write_series_with_engine(
    ts: TimeSeries,
    table_name: str,
    engine: Engine,
    schema: Optional[str] = None,
    if_exists: str = 'error'
) -> sa.Table:
    """
    Store a series in a SQL table, creating it when needed.

    Raises
    ------
    chronoplot.exceptions.IngestionError
        If the database rejects the rows, e.g. a duplicate (key, index)
        pair violating the primary key.
    """
    table = create_series_table_with_engine(table_name, ts, engine, schema, if_exists)
    try:
        with Session(engine) as session:
            insert_records_with_session(table, ts.records(), session)
            session.commit()
    except sa.exc.IntegrityError as e:
        raise IngestionError(f'table {table_name!r} rejected rows: {e.orig}') from e
    return table
