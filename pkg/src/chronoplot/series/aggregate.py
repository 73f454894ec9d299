from enum import Enum
from typing import Callable, Dict, List, Sequence, Tuple

from chronoplot.exceptions import IncompatibleGranularity
from chronoplot.series.table import Key, Measure, Row, SeriesSchema, TimeSeries
from chronoplot.timecore.granularity import GranularitySpec, refines
from chronoplot.timecore.granules import coarsen


class Stat(str, Enum):
    MEAN = 'mean'
    SUM = 'sum'
    MIN = 'min'
    MAX = 'max'
    FIRST = 'first'
    LAST = 'last'


_STATS: Dict[Stat, Callable[[List[float]], float]] = {
    Stat.MEAN: lambda values: sum(values) / len(values),
    Stat.SUM: sum,
    Stat.MIN: min,
    Stat.MAX: max,
    Stat.FIRST: lambda values: values[0],
    Stat.LAST: lambda values: values[-1],
}


def _summarise(values: Sequence[Measure], stat: Stat) -> Measure:
    present = [v for v in values if v is not None]
    if not present:
        return None
    return _STATS[stat](present)


def aggregate(
    ts: TimeSeries,
    coarser: GranularitySpec,
    stat: str = 'mean'
) -> TimeSeries:
    """
    Summarise a series at a coarser granularity.

    Parameters
    ----------
    ts : TimeSeries
        Input table.
    coarser : GranularitySpec
        Target granularity; the input granularity must refine it.
    stat : str
        One of mean, sum, min, max, first, last. Null measures are
        skipped; first/last follow index order.

    Returns
    -------
    TimeSeries
        One row per (key, coarse granule) holding at least one input row,
        keys in order of first appearance, granules ascending.

    Raises
    ------
    chronoplot.exceptions.IncompatibleGranularity
        If ``coarser`` is not above the input granularity in the lattice.
    """
    stat = Stat(stat)
    if coarser == ts.granularity or not refines(ts.granularity, coarser):
        raise IncompatibleGranularity(f'cannot aggregate {ts.granularity} into {coarser}')

    groups: Dict[Tuple[Key, int], List[Row]] = {}
    for row in sorted(ts.rows, key=lambda r: r.index.index):
        coarse = coarsen(row.index, coarser)
        groups.setdefault((row.key, coarse.index), []).append(row)

    key_order = {key: n for n, key in enumerate(ts.keys())}
    schema = SeriesSchema(ts.schema.index, coarser, ts.tz, ts.schema.keys, ts.schema.measures)
    rows = []
    for (key, _), members in sorted(groups.items(), key=lambda item: (key_order[item[0][0]], item[0][1])):
        measures = tuple(
            _summarise([m.measures[j] for m in members], stat)
            for j in range(len(ts.schema.measures))
        )
        rows.append(Row(coarsen(members[0].index, coarser), key, measures, members[0].line))
    return TimeSeries(schema, tuple(rows))
