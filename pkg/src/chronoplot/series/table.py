from dataclasses import dataclass, field, replace
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from tinytim.rows import row_dicts_to_data

from chronoplot.exceptions import IncompatibleGranularity, SchemaError
from chronoplot.timecore.granularity import GranularitySpec, granularity
from chronoplot.timecore.granules import TimePoint, format_point

Key = Tuple[str, ...]
Measure = Optional[float]


@dataclass(frozen=True)
class SeriesSchema:
    """
    How to read a table as a time series.

    ``index`` names the time column, ``keys`` the columns identifying
    distinct series and ``measures`` the numeric columns.
    """
    index: str
    granularity: GranularitySpec
    tz: str = 'UTC'
    keys: Tuple[str, ...] = ()
    measures: Tuple[str, ...] = ()

    @classmethod
    def from_names(
        cls,
        index: str,
        granularity_name: str,
        tz: str = 'UTC',
        keys: Sequence[str] = (),
        measures: Sequence[str] = ()
    ) -> 'SeriesSchema':
        return cls(index, granularity(granularity_name), tz, tuple(keys), tuple(measures))

    @property
    def columns(self) -> Tuple[str, ...]:
        return (self.index, *self.keys, *self.measures)


@dataclass(frozen=True)
class Row:
    index: TimePoint
    key: Key
    measures: Tuple[Measure, ...]
    line: int = 0


@dataclass(frozen=True)
class TimeSeries:
    schema: SeriesSchema
    rows: Tuple[Row, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if not self.schema.measures:
            raise SchemaError('a time series needs at least one measure column')
        for row in self.rows:
            if row.index.granularity != self.schema.granularity or row.index.tz != self.schema.tz:
                raise IncompatibleGranularity(
                    f'row at line {row.line} is {row.index.granularity}@{row.index.tz}, '
                    f'table is {self.schema.granularity}@{self.schema.tz}')
            if len(row.key) != len(self.schema.keys) or len(row.measures) != len(self.schema.measures):
                raise SchemaError(f'row at line {row.line} does not match the table columns')

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[Row]:
        return iter(self.rows)

    def __repr__(self) -> str:
        return f'<TimeSeries {self.schema.granularity}@{self.schema.tz} {self.schema.columns} rows={len(self.rows)}>'

    @property
    def granularity(self) -> GranularitySpec:
        return self.schema.granularity

    @property
    def tz(self) -> str:
        return self.schema.tz

    def measure_position(self, name: str) -> int:
        try:
            return self.schema.measures.index(name)
        except ValueError:
            raise SchemaError(f'{name!r} is not a measure column') from None

    def key_position(self, name: str) -> int:
        try:
            return self.schema.keys.index(name)
        except ValueError:
            raise SchemaError(f'{name!r} is not a key column') from None

    def keys(self) -> List[Key]:
        """Distinct key tuples in order of first appearance."""
        return list(dict.fromkeys(row.key for row in self.rows))

    def by_key(self) -> Dict[Key, List[Row]]:
        groups: Dict[Key, List[Row]] = {}
        for row in self.rows:
            groups.setdefault(row.key, []).append(row)
        return groups

    def with_rows(self, rows: Sequence[Row]) -> 'TimeSeries':
        return replace(self, rows=tuple(rows))

    def records(self) -> List[Dict[str, Any]]:
        """Rows as dictionaries with the index formatted as ISO text."""
        out = []
        for row in self.rows:
            record: Dict[str, Any] = {self.schema.index: format_point(row.index)}
            record.update(zip(self.schema.keys, row.key))
            record.update(zip(self.schema.measures, row.measures))
            out.append(record)
        return out

    def to_data(self) -> Dict[str, list]:
        """Column-oriented view: column name -> list of values."""
        return row_dicts_to_data(self.records(), list(self.schema.columns), None)
