"""
Declarative plot specifications and their JSON form.

A specification names datasets, layers (a geometry plus an aesthetic
mapping from columns), one time scale and one coordinate system. The
JSON document is validated against ``chronoplot/schema/plotspec.schema.json``;
unknown fields, wrong types and contradictory settings raise ``SpecError``.
"""

import functools
import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from jsonschema import Draft202012Validator, ValidationError

from chronoplot.exceptions import SpecError
from chronoplot.series.table import SeriesSchema
from chronoplot.timecore.granularity import GranularitySpec, granularity

Landmark = Union[float, str]


class Geometry(str, Enum):
    TIME_LINE = 'time_line'
    POINT = 'point'
    STEP = 'step'
    AREA = 'area'
    RECT = 'rect'


class PositionMode(str, Enum):
    CIVIL = 'civil'
    ABSOLUTE = 'absolute'


class CoordVariant(str, Enum):
    CARTESIAN = 'cartesian'
    LOOP = 'loop'
    CALENDAR = 'calendar'


class CoordBase(str, Enum):
    CARTESIAN = 'cartesian'
    POLAR = 'polar'


class Direction(str, Enum):
    ROWS = 'rows'
    COLS = 'cols'


@dataclass(frozen=True)
class Mapping:
    x: str
    y: str
    xtimeoffset: Optional[str] = None
    ytimeoffset: Optional[str] = None
    color: Optional[str] = None
    group: Optional[str] = None

    def columns(self) -> List[str]:
        return [c for c in (self.x, self.y, self.xtimeoffset, self.ytimeoffset, self.color, self.group)
                if c is not None]


@dataclass(frozen=True)
class PositionTimeConfig:
    """``mode`` None means the geometry's default (civil for time lines)."""
    mode: Optional[PositionMode] = None
    reference_tz: Optional[str] = None


@dataclass(frozen=True)
class LayerSpec:
    data: str
    geometry: Geometry
    mapping: Mapping
    position: PositionTimeConfig = field(default_factory=PositionTimeConfig)

    @property
    def mode(self) -> PositionMode:
        if self.position.mode is not None:
            return self.position.mode
        return PositionMode.CIVIL if self.geometry is Geometry.TIME_LINE else PositionMode.ABSOLUTE


@dataclass(frozen=True)
class ScaleTimeConfig:
    align_mixed: float = 0.5
    warps: Optional[Tuple[Landmark, ...]] = None
    time_warps: Optional[GranularitySpec] = None
    breaks: Optional[int] = None

    def __post_init__(self) -> None:
        if isinstance(self.align_mixed, bool) or not 0 <= self.align_mixed <= 1:
            raise SpecError(f'align_mixed must be within [0, 1], got {self.align_mixed}')
        if self.warps is not None and self.time_warps is not None:
            raise SpecError('warps and time_warps are mutually exclusive')
        if self.warps is not None and len(self.warps) < 2:
            raise SpecError('warps needs at least two landmarks')
        if self.time_warps is not None and not self.time_warps.is_linear:
            raise SpecError(f'time_warps must be a linear granularity, got {self.time_warps}')
        if self.breaks is not None and self.breaks < 1:
            raise SpecError('breaks must be a positive tick count')

    @property
    def is_warped(self) -> bool:
        return self.warps is not None or self.time_warps is not None


@dataclass(frozen=True)
class CoordConfig:
    variant: CoordVariant = CoordVariant.CARTESIAN
    base: CoordBase = CoordBase.CARTESIAN
    loops: Optional[Tuple[Landmark, ...]] = None
    time_loops: Optional[GranularitySpec] = None
    direction: Direction = Direction.ROWS
    wrap: int = 1
    inner_radius: Optional[float] = None

    def __post_init__(self) -> None:
        looped = self.variant is not CoordVariant.CARTESIAN
        if looped and (self.loops is None) == (self.time_loops is None):
            raise SpecError(f'{self.variant.value} coordinates need exactly one of loops or time_loops')
        if not looped and (self.loops is not None or self.time_loops is not None):
            raise SpecError('loops and time_loops only apply to loop or calendar coordinates')
        if self.base is CoordBase.POLAR and self.variant is not CoordVariant.LOOP:
            raise SpecError('a polar base is only available for loop coordinates')
        if self.loops is not None and len(self.loops) < 2:
            raise SpecError('loops needs at least two landmarks')
        if self.time_loops is not None and not self.time_loops.is_linear:
            raise SpecError(f'time_loops must be a linear granularity, got {self.time_loops}')
        if self.inner_radius is not None and not 0 <= self.inner_radius < 1:
            raise SpecError('inner_radius must be within [0, 1)')

    @property
    def is_looped(self) -> bool:
        return self.variant is not CoordVariant.CARTESIAN

    @property
    def is_polar(self) -> bool:
        return self.base is CoordBase.POLAR


@dataclass(frozen=True)
class DatasetSpec:
    """
    Where a named dataset comes from.

    ``path`` is a CSV file, or an SQLAlchemy URL when ``table`` is set.
    """
    path: str
    schema: SeriesSchema
    table: Optional[str] = None


@dataclass(frozen=True)
class PlotSpec:
    layers: Tuple[LayerSpec, ...]
    scale: ScaleTimeConfig = field(default_factory=ScaleTimeConfig)
    coord: CoordConfig = field(default_factory=CoordConfig)
    title: str = ''
    labels: Dict[str, str] = field(default_factory=dict)
    data: Dict[str, DatasetSpec] = field(default_factory=dict)
    scale_axis: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.layers:
            raise SpecError('a plot needs at least one layer')


SCHEMA_PATH = Path(__file__).resolve().parent.parent / 'schema' / 'plotspec.schema.json'


@functools.lru_cache(maxsize=None)
def plotspec_validator() -> Draft202012Validator:
    """Validator for the shipped plot specification schema."""
    schema = json.loads(SCHEMA_PATH.read_text(encoding='utf-8'))
    return Draft202012Validator(schema)


def _where(error: ValidationError) -> str:
    where = 'plot'
    for part in error.absolute_path:
        where += f'[{part}]' if isinstance(part, int) else f'.{part}'
    return where


def check_plotspec(obj: Any) -> None:
    """
    Check a parsed JSON document against the shipped schema.

    Raises
    ------
    chronoplot.exceptions.SpecError
        Listing every violation as ``path: message``, ordered by path.
    """
    errors = sorted(plotspec_validator().iter_errors(obj), key=lambda e: [str(p) for p in e.absolute_path])
    if errors:
        lines = [f'{_where(e)}: {e.message}' for e in errors]
        raise SpecError('invalid plot specification:\n' + '\n'.join(lines), lines)


def _landmarks(value: Optional[List[Landmark]]) -> Optional[Tuple[Landmark, ...]]:
    if value is None:
        return None
    return tuple(v if isinstance(v, str) else float(v) for v in value)


def _granularity(name: Optional[str]) -> Optional[GranularitySpec]:
    return None if name is None else granularity(name)


def mapping_from_dict(obj: Dict[str, Any]) -> Mapping:
    return Mapping(**obj)


def layer_from_dict(obj: Dict[str, Any]) -> LayerSpec:
    pos = obj.get('position', {})
    return LayerSpec(
        data=obj['data'],
        geometry=Geometry(obj['geometry']),
        mapping=mapping_from_dict(obj['mapping']),
        position=PositionTimeConfig(
            mode=None if pos.get('mode') is None else PositionMode(pos['mode']),
            reference_tz=pos.get('reference_tz')
        )
    )


def scale_from_dict(obj: Dict[str, Any]) -> ScaleTimeConfig:
    return ScaleTimeConfig(
        align_mixed=float(obj.get('align_mixed', 0.5)),
        warps=_landmarks(obj.get('warps')),
        time_warps=_granularity(obj.get('time_warps')),
        breaks=obj.get('breaks')
    )


def coord_from_dict(obj: Dict[str, Any]) -> CoordConfig:
    inner = obj.get('inner_radius')
    return CoordConfig(
        variant=CoordVariant(obj.get('variant', 'cartesian')),
        base=CoordBase(obj.get('base', 'cartesian')),
        loops=_landmarks(obj.get('loops')),
        time_loops=_granularity(obj.get('time_loops')),
        direction=Direction(obj.get('direction', 'rows')),
        wrap=obj.get('wrap', 1),
        inner_radius=None if inner is None else float(inner)
    )


def dataset_from_dict(obj: Dict[str, Any], base_dir: Optional[Path] = None) -> DatasetSpec:
    path = obj['path']
    table = obj.get('table')
    if table is None and base_dir is not None and not Path(path).is_absolute():
        path = str(base_dir / path)
    schema = SeriesSchema(
        index=obj['index'],
        granularity=granularity(obj['granularity']),
        tz=obj.get('tz', 'UTC'),
        keys=tuple(obj.get('keys', ())),
        measures=tuple(obj['measures'])
    )
    return DatasetSpec(path, schema, table)


def plotspec_from_dict(obj: Any, base_dir: Optional[Path] = None) -> PlotSpec:
    """
    Build a ``PlotSpec`` from parsed JSON.

    The document is checked against the shipped schema first; settings
    that contradict each other are rejected by the configuration classes.
    Relative dataset paths are resolved against ``base_dir``.

    Raises
    ------
    chronoplot.exceptions.SpecError
        On unknown fields, wrong types, missing layers or contradictory
        scale and coordinate settings.
    """
    check_plotspec(obj)
    scale_axis = 'x' if 'scale_x' in obj else 'y' if 'scale_y' in obj else None
    return PlotSpec(
        layers=tuple(layer_from_dict(layer) for layer in obj['layers']),
        scale=scale_from_dict(obj.get(f'scale_{scale_axis or "x"}', {})),
        coord=coord_from_dict(obj.get('coord', {})),
        title=obj.get('title', ''),
        labels=dict(obj.get('labels', {})),
        data={name: dataset_from_dict(entry, base_dir) for name, entry in obj.get('data', {}).items()},
        scale_axis=scale_axis
    )


def load_plotspec(path: Union[str, Path]) -> PlotSpec:
    """
    Read a JSON plot specification; relative dataset paths resolve next to it.

    Raises
    ------
    chronoplot.exceptions.SpecError
        If the file is unreadable, not JSON or not a valid specification.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding='utf-8')
    except OSError as e:
        raise SpecError(f'cannot read spec {path}: {e}') from e
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f'{path}: invalid JSON: {e}') from e
    return plotspec_from_dict(obj, path.parent)
