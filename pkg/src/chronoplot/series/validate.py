"""
Validity checks for time series tables.

Checks report problems rather than raising: a table that violates
temporal uniqueness or completeness can still be inspected and plotted.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from chronoplot.series.table import Key, Row, TimeSeries
from chronoplot.timecore.granules import TimePoint, format_point


@dataclass(frozen=True)
class Duplicate:
    key: Key
    point: TimePoint
    rows: Tuple[int, ...]


@dataclass(frozen=True)
class Gap:
    key: Key
    first: TimePoint
    last: TimePoint

    @property
    def size(self) -> int:
        return self.last.index - self.first.index + 1


@dataclass(frozen=True)
class Disorder:
    key: Key
    point: TimePoint
    row: int


@dataclass(frozen=True)
class ValidationReport:
    duplicates: Tuple[Duplicate, ...] = ()
    gaps: Tuple[Gap, ...] = ()
    disorder: Tuple[Disorder, ...] = field(default=(), compare=False)

    @property
    def is_valid(self) -> bool:
        return not self.duplicates and not self.gaps

    def merge(self, other: 'ValidationReport') -> 'ValidationReport':
        return ValidationReport(
            self.duplicates + other.duplicates,
            self.gaps + other.gaps,
            self.disorder + other.disorder
        )

    def messages(self) -> List[str]:
        """One human-readable line per finding."""
        lines = []
        for d in self.duplicates:
            rows = ', '.join(str(r) for r in d.rows)
            lines.append(f'duplicate: key {_key_text(d.key)} at {format_point(d.point)} (rows {rows})')
        for g in self.gaps:
            if g.size == 1:
                span = format_point(g.first)
            else:
                span = f'{format_point(g.first)} .. {format_point(g.last)}'
            lines.append(f'gap: key {_key_text(g.key)} missing {span} ({g.size} {g.first.granularity})')
        for o in self.disorder:
            lines.append(f'unordered: key {_key_text(o.key)} at {format_point(o.point)} (row {o.row})')
        return lines

    def to_dict(self) -> Dict[str, Any]:
        return {
            'is_valid': self.is_valid,
            'duplicates': [
                {'key': list(d.key), 'index': format_point(d.point), 'rows': list(d.rows)}
                for d in self.duplicates
            ],
            'gaps': [
                {'key': list(g.key), 'first': format_point(g.first),
                 'last': format_point(g.last), 'missing': g.size}
                for g in self.gaps
            ],
            'unordered': [
                {'key': list(o.key), 'index': format_point(o.point), 'row': o.row}
                for o in self.disorder
            ],
        }


def _key_text(key: Key) -> str:
    return '(' + ', '.join(key) + ')' if key else '()'


def check_unique(ts: TimeSeries) -> ValidationReport:
    """
    Report every (key, index) pair that occurs more than once.

    Uniqueness is per key: two series may share an index.

    Returns
    -------
    ValidationReport
        One ``Duplicate`` per repeated pair listing all its row numbers,
        in order of first occurrence.
    """
    seen: Dict[Tuple[Key, int], List[Row]] = {}
    for row in ts.rows:
        seen.setdefault((row.key, row.index.index), []).append(row)
    duplicates = tuple(
        Duplicate(rows[0].key, rows[0].index, tuple(r.line for r in rows))
        for rows in seen.values() if len(rows) > 1
    )
    return ValidationReport(duplicates=duplicates)


def detect_gaps(ts: TimeSeries) -> ValidationReport:
    """
    Report maximal runs of missing indices between each key's first and last index.
    """
    gaps: List[Gap] = []
    for key, rows in ts.by_key().items():
        indices = sorted({row.index.index for row in rows})
        template = rows[0].index
        for before, after in zip(indices, indices[1:]):
            if after - before > 1:
                gaps.append(Gap(key, template.shift(before + 1 - template.index),
                                template.shift(after - 1 - template.index)))
    return ValidationReport(gaps=tuple(gaps))


def check_order(ts: TimeSeries) -> ValidationReport:
    """Report rows whose index goes backwards relative to the previous row of the same key."""
    last: Dict[Key, int] = {}
    disorder: List[Disorder] = []
    for row in ts.rows:
        previous = last.get(row.key)
        if previous is not None and row.index.index < previous:
            disorder.append(Disorder(row.key, row.index, row.line))
        last[row.key] = row.index.index
    return ValidationReport(disorder=tuple(disorder))


def validate(ts: TimeSeries, contiguity: bool = True) -> ValidationReport:
    report = check_unique(ts).merge(check_order(ts))
    if contiguity:
        report = report.merge(detect_gaps(ts))
    return report


def fill_gaps(ts: TimeSeries) -> TimeSeries:
    """
    Make every key's index range complete by inserting rows with null measures.

    Inserted rows carry line number 0. The result lists each key's rows
    together, in index order.
    """
    empty = tuple(None for _ in ts.schema.measures)
    rows: List[Row] = []
    for key, members in ts.by_key().items():
        present = {row.index.index for row in members}
        template = members[0].index
        missing = [
            Row(template.shift(i - template.index), key, empty, 0)
            for i in range(min(present), max(present) + 1) if i not in present
        ]
        rows.extend(sorted(members + missing, key=lambda r: r.index.index))
    return ts.with_rows(rows)
