"""
Time scales over layers of mixed granularity.

Training finds the common (greatest lower bound) granularity of all
layers, the extent of the unwarped time axis and, when warping is
requested, the landmarks of the piecewise-linear warp.
"""

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from dateutil.parser import isoparse

from chronoplot.exceptions import ConfigurationError, ScaleError
from chronoplot.grammar.breaks import compute_breaks
from chronoplot.grammar.position import MappedPoint
from chronoplot.grammar.spec import Landmark, PositionMode, ScaleTimeConfig
from chronoplot.timecore import calendar
from chronoplot.timecore.granularity import NOMINAL_SECONDS, GranularitySpec, glb_of, is_coarser
from chronoplot.timecore.granules import TimePoint, granule_bounds, granule_index_at, to_continuous
from chronoplot.timecore.timezones import get_timezone, wall_to_absolute

logger = logging.getLogger(__name__)

MAX_LANDMARKS = 100_000


class Space(str, Enum):
    CIVIL = 'civil'
    ABSOLUTE = 'absolute'


class Warp:
    """
    Piecewise-linear map sending landmark ``w[k]`` to ``k``.

    Inside ``[w[k], w[k+1])`` time maps to ``k + (t - w[k]) / (w[k+1] - w[k])``;
    beyond the outer landmarks the first and last intervals extend linearly.
    """

    def __init__(self, landmarks: Sequence[float]) -> None:
        w = np.asarray(landmarks, dtype=float)
        if w.ndim != 1 or len(w) < 2:
            raise ConfigurationError('a warp needs at least two landmarks')
        if not np.all(np.isfinite(w)) or np.any(np.diff(w) <= 0):
            raise ConfigurationError('warp landmarks must be finite and strictly increasing')
        self.landmarks = w

    def __repr__(self) -> str:
        return f'<Warp landmarks={len(self.landmarks)}>'

    def __call__(self, t: float) -> float:
        w = self.landmarks
        k = int(np.searchsorted(w, t, side='right')) - 1
        k = min(max(k, 0), len(w) - 2)
        return k + float((t - w[k]) / (w[k + 1] - w[k]))

    def inverse(self, u: float) -> float:
        w = self.landmarks
        k = min(max(int(np.floor(u)), 0), len(w) - 2)
        return float(w[k] + (u - k) * (w[k + 1] - w[k]))


def warp(t: float, landmarks: Sequence[float]) -> float:
    """
    Warp one instant; see ``Warp``.

    Raises
    ------
    chronoplot.exceptions.ConfigurationError
        If the landmarks are fewer than two or not strictly increasing.
    """
    return Warp(landmarks)(t)


@dataclass(frozen=True)
class LayerPoints:
    """Positioned points of one layer; ``spans`` extends the domain over whole granules."""
    granularity: GranularitySpec
    mode: PositionMode
    points: Sequence[MappedPoint]
    spans: bool = False


@dataclass(frozen=True)
class ScaleState:
    granularity: GranularitySpec
    domain: Tuple[float, float]
    space: Space = Space.ABSOLUTE
    tz: str = 'UTC'
    align: float = 0.5
    landmarks: Optional[Tuple[float, ...]] = None
    warp_granularity: Optional[GranularitySpec] = None
    warp_origin: int = 0
    indeterminate: Tuple[GranularitySpec, ...] = ()
    breaks: Tuple[float, ...] = ()
    labels: Tuple[str, ...] = ()
    _warp: Optional[Warp] = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self) -> None:
        if self.landmarks is not None:
            object.__setattr__(self, '_warp', Warp(self.landmarks))

    @property
    def axis_tz(self) -> str:
        """Zone whose clock the unwarped axis reads: wall readings are UTC arithmetic."""
        return 'UTC' if self.space is Space.CIVIL else self.tz

    @property
    def is_warped(self) -> bool:
        return self._warp is not None

    def to_scale(self, raw: float) -> float:
        if self._warp is None:
            return float(raw)
        return self._warp(raw)

    def from_scale(self, value: float) -> float:
        if self._warp is None:
            return float(value)
        return self._warp.inverse(value)

    @property
    def limits(self) -> Tuple[float, float]:
        return self.to_scale(self.domain[0]), self.to_scale(self.domain[1])


def parse_axis_position(value: Landmark, space: Space, tz: str = 'UTC') -> float:
    """
    Position of a landmark on the unwarped axis.

    Numbers are axis seconds. ISO-8601 text is a reading of the axis clock:
    the wall clock on a civil axis, the reference zone on an absolute one.
    An explicit offset names an absolute instant and is only allowed on an
    absolute axis.

    Raises
    ------
    chronoplot.exceptions.ConfigurationError
        If the text does not parse or carries an offset on a civil axis.
    """
    if not isinstance(value, str):
        return float(value)
    try:
        parsed = isoparse(value)
        day = calendar.ymd_to_day(parsed.year, parsed.month, parsed.day)
    except ValueError as e:
        raise ConfigurationError(f'landmark {value!r} is not ISO-8601: {e}') from e
    wall = day * calendar.SECONDS_PER_DAY + parsed.hour * 3600 + parsed.minute * 60 + parsed.second
    if parsed.tzinfo is not None:
        if space is Space.CIVIL:
            raise ConfigurationError(f'landmark {value!r}: civil axis landmarks are wall readings without an offset')
        return float(wall - int(parsed.utcoffset().total_seconds()))
    if space is Space.CIVIL:
        return float(wall)
    return float(wall_to_absolute(wall, tz))


def resolve_landmarks(values: Sequence[Landmark], space: Space, tz: str = 'UTC') -> Tuple[float, ...]:
    landmarks = tuple(parse_axis_position(v, space, tz) for v in values)
    if any(b <= a for a, b in zip(landmarks, landmarks[1:])):
        raise ConfigurationError('landmarks must be strictly increasing')
    return landmarks


def granule_landmarks(
    g: GranularitySpec,
    domain: Tuple[float, float],
    tz: str = 'UTC'
) -> Tuple[int, Tuple[float, ...]]:
    """
    Boundaries of the granules of ``g`` that intersect ``domain``.

    Returns
    -------
    Tuple[int, Tuple[float, ...]]
        Index of the first granule and its start followed by every later
        boundary up to the end of the granule holding ``domain[1]``.

    Raises
    ------
    chronoplot.exceptions.ConfigurationError
        If the domain holds more granules than can be used as landmarks.
    """
    lo, hi = domain
    first = granule_index_at(g, lo, tz)
    last = granule_index_at(g, hi, tz)
    if last - first + 2 > MAX_LANDMARKS:
        raise ConfigurationError(f'{g} would place {last - first + 2} landmarks; use a coarser granularity')
    return first, tuple(float(granule_bounds(g, k, tz)[0]) for k in range(first, last + 2))


def _domain(layers: Sequence[LayerPoints]) -> Optional[Tuple[float, float]]:
    values: List[float] = []
    for layer in layers:
        for p in layer.points:
            values.append(p.raw_x)
            if layer.spans:
                values.extend(p.raw_span)
    if not values:
        return None
    return min(values), max(values)


def train_scale(
    layers: Sequence[LayerPoints],
    cfg: Optional[ScaleTimeConfig] = None,
    reference_tz: str = 'UTC',
    target: int = 5
) -> ScaleState:
    """
    Train a time scale on every layer's positioned points.

    Parameters
    ----------
    layers : sequence of LayerPoints
        Layers with their granularity and positioning mode.
    cfg : ScaleTimeConfig
        Alignment and warping settings.
    reference_tz : str
        Reference zone of civil positioning; absolute axes read its clock.
    target : int
        Desired number of axis breaks.

    Returns
    -------
    ScaleState
        Common granularity, domain, resolved warp landmarks and breaks.

    Raises
    ------
    chronoplot.exceptions.ScaleError
        If there are no layers or a layer is not on a linear granularity.
    chronoplot.exceptions.ConfigurationError
        If warp landmarks are invalid or the reference zone is unknown.
    """
    cfg = cfg or ScaleTimeConfig()
    if not layers:
        raise ScaleError('nothing to train the scale on')
    for layer in layers:
        if not layer.granularity.is_linear:
            raise ScaleError(f'{layer.granularity} is not a linear granularity of the Gregorian calendar')
    get_timezone(reference_tz)

    common = glb_of([layer.granularity for layer in layers])
    indeterminate = tuple(sorted(
        {layer.granularity for layer in layers if is_coarser(layer.granularity, common)},
        key=lambda g: -NOMINAL_SECONDS[g.time_unit]
    ))
    for g in indeterminate:
        logger.warning('%s observations are placed at %.2f of their granule on a %s scale',
                       g, cfg.align_mixed, common)

    space = Space.CIVIL if any(layer.mode is PositionMode.CIVIL for layer in layers) else Space.ABSOLUTE
    state = ScaleState(common, (0.0, 0.0), space, reference_tz, cfg.align_mixed, indeterminate=indeterminate)
    domain = _domain(layers)
    if domain is None:
        bounds = granule_bounds(common, 0, state.axis_tz)
        domain = (float(bounds[0]), float(bounds[1]))
    elif domain[1] <= domain[0]:
        half = NOMINAL_SECONDS[common.time_unit] / 2
        domain = (domain[0] - half, domain[1] + half)
    state = replace(state, domain=domain)

    if cfg.warps is not None:
        state = replace(state, landmarks=resolve_landmarks(cfg.warps, space, state.axis_tz))
    elif cfg.time_warps is not None:
        origin, landmarks = granule_landmarks(cfg.time_warps, domain, state.axis_tz)
        state = replace(state, landmarks=landmarks, warp_granularity=cfg.time_warps, warp_origin=origin)

    breaks = compute_breaks(domain, common, cfg.breaks or target, state.axis_tz)
    state = replace(state,
                    breaks=tuple(state.to_scale(t) for t in breaks.positions),
                    labels=breaks.labels)
    logger.debug('trained %s scale on %s, domain %s, warped=%s', space.value, common, domain, state.is_warped)
    return state


def map_position(tp: TimePoint, st: ScaleState, align: Optional[float] = None) -> float:
    """
    Scale position of a time point placed ``align`` through its granule.

    Matches ``position_time`` followed by the scale: on a civil axis the
    point's own wall-clock reading is used.

    Raises
    ------
    chronoplot.exceptions.ArgumentError
        If ``align`` is outside ``[0, 1]``.
    """
    t = to_continuous(tp, st.align if align is None else align)
    if st.space is Space.CIVIL:
        t += get_timezone(tp.tz).offset_at(t)
    return st.to_scale(t)


def scale_points(points: Sequence[MappedPoint], st: ScaleState) -> List[MappedPoint]:
    """Points with ``x`` moved from the raw axis to scale units."""
    return [replace(p, x=st.to_scale(p.raw_x)) for p in points]
