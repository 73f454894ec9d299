"""
The grammar pipeline: datasets and a plot specification in, panels of
marks out.

Stages are pure functions of their inputs. Layers are positioned, a
single time scale is trained over all of them, geometries are built per
group and finally the coordinate system arranges marks into panels.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping as MappingType, Optional, Sequence, Tuple

from chronoplot.exceptions import SpecError
from chronoplot.grammar.breaks import Breaks, value_breaks
from chronoplot.grammar.coords import Loops, calendar_layout, localize_mark, loop_breaks, resolve_loops
from chronoplot.grammar.geoms import Mark, build_mark
from chronoplot.grammar.position import MappedPoint, Observation, position_time
from chronoplot.grammar.scale import LayerPoints, ScaleState, scale_points, train_scale
from chronoplot.grammar.spec import CoordVariant, Geometry, LayerSpec, PlotSpec
from chronoplot.series.table import Key, TimeSeries
from chronoplot.series.validate import ValidationReport, validate
from chronoplot.timecore.timezones import get_timezone

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PanelData:
    row: int
    col: int
    marks: Tuple[Mark, ...] = ()
    cycle: Optional[int] = None
    label: str = ''


@dataclass(frozen=True)
class Legend:
    """Palette entries of color-mapped layers: ``(key value, color index)`` in order of appearance."""
    title: str
    entries: Tuple[Tuple[str, int], ...]


@dataclass(frozen=True)
class BuiltPlot:
    """
    Resolved plot in data coordinates, ready for projection.

    Mark coordinates are ``(time, value)``; ``time_axis`` tells the
    renderer which screen axis carries time. In loop and calendar
    coordinates time is cycle-local and ``time_range`` is
    ``(0, longest cycle)``.
    """
    spec: PlotSpec
    scale: ScaleState
    time_axis: str
    time_range: Tuple[float, float]
    value_range: Tuple[float, float]
    time_breaks: Breaks
    value_breaks: Breaks
    panels: Tuple[PanelData, ...]
    rows: int = 1
    cols: int = 1
    loops: Optional[Loops] = None
    report: ValidationReport = field(default_factory=ValidationReport)
    legend: Optional[Legend] = None

    @property
    def is_polar(self) -> bool:
        return self.spec.coord.is_polar

    @property
    def marks(self) -> List[Mark]:
        return [mark for panel in self.panels for mark in panel.marks]


@dataclass(frozen=True)
class _LayerPlan:
    index: int
    layer: LayerSpec
    ts: TimeSeries
    time_axis: str
    value: int
    offset: Optional[int]
    group: Optional[int]
    color: Optional[int]


def _measure(ts: TimeSeries, column: str, where: str) -> int:
    if column not in ts.schema.measures:
        raise SpecError(f'{where}: {column!r} is not a measure column of the dataset')
    return ts.schema.measures.index(column)


def _key(ts: TimeSeries, column: Optional[str], where: str) -> Optional[int]:
    if column is None:
        return None
    if column not in ts.schema.keys:
        raise SpecError(f'{where}: {column!r} is not a key column of the dataset')
    return ts.schema.keys.index(column)


def _plan_layer(i: int, layer: LayerSpec, datasets: MappingType[str, TimeSeries]) -> _LayerPlan:
    where = f'layers[{i}]'
    if layer.data not in datasets:
        raise SpecError(f'{where}: unknown dataset {layer.data!r}')
    ts = datasets[layer.data]
    m = layer.mapping
    index = ts.schema.index
    if m.x == index and m.y != index:
        time_axis, value_column = 'x', m.y
        offset_column, stray = m.xtimeoffset, m.ytimeoffset
    elif m.y == index and m.x != index:
        time_axis, value_column = 'y', m.x
        offset_column, stray = m.ytimeoffset, m.xtimeoffset
    else:
        raise SpecError(f'{where}: exactly one of x and y must map the index column {index!r}')
    if stray is not None:
        raise SpecError(f'{where}: a time offset can only accompany the time aesthetic')
    return _LayerPlan(
        index=i,
        layer=layer,
        ts=ts,
        time_axis=time_axis,
        value=_measure(ts, value_column, f'{where}.mapping'),
        offset=None if offset_column is None else _measure(ts, offset_column, f'{where}.mapping'),
        group=_key(ts, m.group, f'{where}.mapping.group'),
        color=_key(ts, m.color, f'{where}.mapping.color')
    )


def _reference_tz(spec: PlotSpec) -> str:
    zones = list(dict.fromkeys(
        layer.position.reference_tz for layer in spec.layers if layer.position.reference_tz is not None
    ))
    if len(zones) > 1:
        raise SpecError(f'layers disagree on the reference time zone: {", ".join(zones)}')
    tz = zones[0] if zones else 'UTC'
    get_timezone(tz)
    return tz


def _observations(plan: _LayerPlan) -> List[Observation]:
    observations = []
    for row in plan.ts.rows:
        group: Key = row.key if plan.group is None else (row.key[plan.group],)
        observations.append(Observation(
            point=row.index,
            value=row.measures[plan.value],
            group=group,
            color=None if plan.color is None else row.key[plan.color],
            offset=None if plan.offset is None else row.measures[plan.offset],
            line=row.line
        ))
    return observations


def _by_group(points: Sequence[MappedPoint]) -> Dict[Key, List[MappedPoint]]:
    groups: Dict[Key, List[MappedPoint]] = {}
    for p in points:
        groups.setdefault(p.group, []).append(p)
    return groups


def _value_range(marks: Sequence[Mark]) -> Tuple[float, float]:
    values: List[float] = []
    for mark in marks:
        for seg in mark.segments:
            values.extend((seg.start[1], seg.end[1]))
        values.extend(dot.y for dot in mark.dots)
        for bar in mark.bars:
            values.extend((bar.y0, bar.y1))
        if mark.geometry is Geometry.AREA and mark.segments:
            values.append(0.0)
    if not values:
        return 0.0, 1.0
    lo, hi = min(values), max(values)
    if hi <= lo:
        return lo - 0.5, hi + 0.5
    return lo, hi


def build_plot(
    spec: PlotSpec,
    datasets: MappingType[str, TimeSeries],
    target: int = 5
) -> BuiltPlot:
    """
    Run the grammar over named datasets.

    Parameters
    ----------
    spec : PlotSpec
        Layers, scale and coordinate settings.
    datasets : mapping of str to TimeSeries
        Data referenced by the layers.
    target : int
        Default tick count when the scale sets none.

    Returns
    -------
    BuiltPlot
        Panels of marks plus the trained scale and the data validation
        report. Validity problems are logged as warnings, not raised.

    Raises
    ------
    chronoplot.exceptions.SpecError
        If a layer references a missing dataset or column, or layers
        disagree on which axis carries time.
    chronoplot.exceptions.ScaleError
        If the layers cannot share a time scale.
    chronoplot.exceptions.ConfigurationError
        On unknown zones, invalid landmarks or wrap widths.
    """
    plans = [_plan_layer(i, layer, datasets) for i, layer in enumerate(spec.layers)]
    axes = {plan.time_axis for plan in plans}
    if len(axes) > 1:
        raise SpecError('all layers must map time to the same aesthetic')
    time_axis = axes.pop()
    if spec.scale_axis is not None and spec.scale_axis != time_axis:
        raise SpecError(f'scale_{spec.scale_axis} configures a time scale but time is mapped to {time_axis}')
    if spec.coord.is_polar and time_axis != 'x':
        raise SpecError('polar loops need time on the x aesthetic')
    reference_tz = _reference_tz(spec)
    target = spec.scale.breaks or target

    report = ValidationReport()
    for name in dict.fromkeys(plan.layer.data for plan in plans):
        found = validate(datasets[name])
        for message in found.messages():
            logger.warning('%s: %s', name, message)
        report = report.merge(found)

    positioned = [
        position_time(_observations(plan), plan.layer.mode, reference_tz, spec.scale.align_mixed)
        for plan in plans
    ]
    state = train_scale(
        [LayerPoints(plan.ts.granularity, plan.layer.mode, points, plan.layer.geometry is Geometry.RECT)
         for plan, points in zip(plans, positioned)],
        spec.scale,
        reference_tz,
        target
    )

    colors: Dict[str, int] = {}
    marks: List[Mark] = []
    for plan, points in zip(plans, positioned):
        for group, members in _by_group(scale_points(points, state)).items():
            if plan.color is not None:
                color = colors.setdefault(members[0].color, len(colors))
            else:
                color = plan.index
            marks.append(build_mark(plan.layer.geometry, members, plan.index, group, color, state.to_scale))
    legend = None
    if colors:
        columns = dict.fromkeys(plan.layer.mapping.color for plan in plans if plan.color is not None)
        legend = Legend(', '.join(columns), tuple(colors.items()))

    coord = spec.coord
    if coord.variant is CoordVariant.CARTESIAN:
        value_range = _value_range(marks)
        return BuiltPlot(
            spec=spec,
            scale=state,
            time_axis=time_axis,
            time_range=state.limits,
            value_range=value_range,
            time_breaks=Breaks(state.breaks, state.labels),
            value_breaks=value_breaks(value_range, target),
            panels=(PanelData(0, 0, tuple(marks)),),
            report=report,
            legend=legend
        )

    loops = resolve_loops(coord, state)
    pieces = [localize_mark(mark, loops) for mark in marks]
    cycle_marks = [m for by_cycle in pieces for m in by_cycle.values()]
    if coord.variant is CoordVariant.LOOP:
        panels: Tuple[PanelData, ...] = (PanelData(0, 0, tuple(cycle_marks)),)
        rows = cols = 1
    else:
        layout = calendar_layout(range(loops.n_cycles), coord)
        panels = tuple(
            PanelData(row, col, tuple(by_cycle[k] for by_cycle in pieces if k in by_cycle), k, loops.cycle_label(k))
            for k, (row, col) in sorted(layout.items(), key=lambda item: item[1])
        )
        rows = 1 + max(row for row, _ in layout.values())
        cols = 1 + max(col for _, col in layout.values())
    value_range = _value_range(cycle_marks)
    return BuiltPlot(
        spec=spec,
        scale=state,
        time_axis=time_axis,
        time_range=(0.0, loops.extent),
        value_range=value_range,
        time_breaks=loop_breaks(loops, state, target),
        value_breaks=value_breaks(value_range, target),
        panels=panels,
        rows=rows,
        cols=cols,
        loops=loops,
        report=report,
        legend=legend
    )
