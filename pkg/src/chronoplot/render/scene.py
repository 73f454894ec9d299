"""
Render scenes: panels of device-space shapes with axes and text.

A scene is fully resolved and free of data semantics; ``svg.to_svg``
only serializes it. Shapes are emitted layer by layer, then by group and
cycle, and panels row by row.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from chronoplot.config import Settings
from chronoplot.exceptions import RenderError
from chronoplot.grammar.breaks import Breaks
from chronoplot.grammar.geoms import XY, Mark, Segment, Style
from chronoplot.grammar.pipeline import BuiltPlot, Legend
from chronoplot.grammar.spec import CoordVariant, Geometry
from chronoplot.render.project import CartesianProjection, Point, PolarProjection, Viewport, check_finite

AXIS_COLOR = '#333333'
TICK_LENGTH = 4.0
TEXT_ADVANCE = 0.6
AREA_OPACITY = 0.4

Projection = Union[CartesianProjection, PolarProjection]


@dataclass(frozen=True)
class Polyline:
    points: Tuple[Point, ...]
    stroke: str
    width: float
    dashed: bool = False


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float
    fill: Optional[str] = None
    stroke: Optional[str] = None


@dataclass(frozen=True)
class Rectangle:
    x: float
    y: float
    width: float
    height: float
    fill: Optional[str] = None
    stroke: Optional[str] = None


@dataclass(frozen=True)
class Area:
    """Closed polygon filled with ``fill``."""
    points: Tuple[Point, ...]
    fill: str
    opacity: float = AREA_OPACITY


@dataclass(frozen=True)
class Text:
    position: Point
    text: str
    size: float
    anchor: str = 'middle'
    rotate: float = 0.0


Shape = Union[Polyline, Circle, Rectangle, Area]


@dataclass(frozen=True)
class Tick:
    line: Tuple[Point, Point]
    label: Optional[Text] = None


@dataclass(frozen=True)
class Panel:
    viewport: Viewport
    frame: Tuple[Shape, ...]
    marks: Tuple[Shape, ...] = ()
    ticks: Tuple[Tick, ...] = ()
    label: Optional[Text] = None
    row: int = 0
    col: int = 0
    polar: bool = False


@dataclass(frozen=True)
class Scene:
    width: int
    height: int
    panels: Tuple[Panel, ...] = ()
    texts: Tuple[Text, ...] = ()
    legend: Tuple[Shape, ...] = ()

    @property
    def marks(self) -> List[Shape]:
        return [shape for panel in self.panels for shape in panel.marks]


def chain(segments: Sequence[Segment]) -> List[Tuple[Style, List[XY]]]:
    """Join consecutive segments that touch and share style and cycle into vertex runs."""
    runs: List[Tuple[Style, List[XY], int]] = []
    for seg in segments:
        if runs and runs[-1][0] is seg.style and runs[-1][2] == seg.cycle and runs[-1][1][-1] == seg.start:
            runs[-1][1].append(seg.end)
        else:
            runs.append((seg.style, [seg.start, seg.end], seg.cycle))
    return [(style, vertices) for style, vertices, _ in runs]


def _color(mark: Mark, settings: Settings) -> str:
    return settings.palette[mark.color % len(settings.palette)]


def project(marks: Sequence[Mark], projection: Projection, settings: Settings) -> List[Shape]:
    """
    Device-space shapes for a panel's marks.

    Lines and steps become polylines (dashed where the grammar marked an
    offset jump), areas close each run down to zero, points become
    circles and bars rectangles, or wedges under a polar projection.

    Raises
    ------
    chronoplot.exceptions.RenderError
        If a coordinate does not project to a finite device position.
    """
    shapes: List[Shape] = []
    polar = isinstance(projection, PolarProjection)
    for mark in marks:
        color = _color(mark, settings)
        if mark.geometry is Geometry.AREA:
            for _, vertices in chain(mark.segments):
                outline = vertices + [(vertices[-1][0], 0.0), (vertices[0][0], 0.0), vertices[0]]
                points = projection.line(outline)
                check_finite(points)
                shapes.append(Area(tuple(points), color))
        else:
            for style, vertices in chain(mark.segments):
                points = projection.line(vertices)
                check_finite(points)
                shapes.append(Polyline(tuple(points), color, settings.line_width, style is Style.DASHED))
        for dot in mark.dots:
            center = projection(dot.x, dot.y)
            check_finite([center])
            shapes.append(Circle(center, settings.point_radius, fill=color))
        for bar in mark.bars:
            corners = [(bar.x0, bar.y0), (bar.x1, bar.y0), (bar.x1, bar.y1), (bar.x0, bar.y1), (bar.x0, bar.y0)]
            if polar:
                points = projection.line(corners)
                check_finite(points)
                shapes.append(Area(tuple(points), color, 0.8))
                continue
            (ax, ay), (bx, by) = projection(bar.x0, bar.y0), projection(bar.x1, bar.y1)
            check_finite([(ax, ay), (bx, by)])
            shapes.append(Rectangle(min(ax, bx), min(ay, by), abs(bx - ax), abs(by - ay), fill=color))
    return shapes


def _in_range(breaks: Breaks, bounds: Tuple[float, float]) -> List[Tuple[float, str]]:
    lo, hi = bounds
    eps = 1e-9 * max(1.0, abs(hi - lo))
    return [(p, label) for p, label in breaks.pairs() if lo - eps <= p <= hi + eps]


def _cartesian_axes(
    projection: CartesianProjection,
    horizontal: Tuple[Breaks, Tuple[float, float]],
    vertical: Tuple[Breaks, Tuple[float, float]],
    show_horizontal: bool,
    show_vertical: bool,
    font: float
) -> Tuple[Tuple[Shape, ...], Tuple[Tick, ...]]:
    vp = projection.viewport
    frame = (Rectangle(vp.x, vp.y, vp.width, vp.height, stroke=AXIS_COLOR),)
    ticks = []
    breaks, (lo, hi) = horizontal
    for p, label in _in_range(breaks, (lo, hi)):
        x = vp.x + (p - lo) / (hi - lo) * vp.width
        text = Text((x, vp.bottom + TICK_LENGTH + font), label, font) if show_horizontal else None
        ticks.append(Tick(((x, vp.bottom), (x, vp.bottom + TICK_LENGTH)), text))
    breaks, (lo, hi) = vertical
    for p, label in _in_range(breaks, (lo, hi)):
        y = vp.bottom - (p - lo) / (hi - lo) * vp.height
        text = Text((vp.x - TICK_LENGTH - 2, y + font * 0.35), label, font, 'end') if show_vertical else None
        ticks.append(Tick(((vp.x - TICK_LENGTH, y), (vp.x, y)), text))
    return frame, tuple(ticks)


def _polar_axes(
    projection: PolarProjection,
    time_breaks: Breaks,
    value_breaks: Breaks,
    font: float
) -> Tuple[Tuple[Shape, ...], Tuple[Tick, ...]]:
    center = projection.viewport.center
    outer = projection.radius
    frame: List[Shape] = [Circle(center, outer, stroke=AXIS_COLOR)]
    if projection.inner_radius > 0:
        frame.append(Circle(center, outer * projection.inner_radius, stroke=AXIS_COLOR))
    ticks = []
    lo, hi = projection.time_range
    for p, label in _in_range(time_breaks, (lo, hi)):
        if p >= hi:
            continue
        angle = projection.angle(p)
        x, y = projection.at(angle, outer + TICK_LENGTH + font * 0.8)
        ticks.append(Tick((projection.at(angle, outer), projection.at(angle, outer + TICK_LENGTH)),
                          Text((x, y + font * 0.35), label, font)))
    cx, cy = center
    for p, label in _in_range(value_breaks, projection.value_range):
        r = projection.radius_at(p)
        ticks.append(Tick(((cx, cy - r), (cx + TICK_LENGTH, cy - r)),
                          Text((cx + TICK_LENGTH + 2, cy - r + font * 0.35), label, font, 'start')))
    return tuple(frame), tuple(ticks)


def _legend(legend: Legend, x: float, y: float, font: float, settings: Settings) -> Tuple[List[Shape], List[Text]]:
    """Swatches and labels of a color key, stacked downwards from ``(x, y)``."""
    shapes: List[Shape] = []
    texts = [Text((x, y + font), legend.title, font, 'start')]
    for n, (value, color) in enumerate(legend.entries, start=1):
        row = y + n * (font + 4)
        fill = settings.palette[color % len(settings.palette)]
        shapes.append(Rectangle(x, row + 2, font, font, fill=fill))
        texts.append(Text((x + font + 4, row + font), value, font, 'start'))
    return shapes, texts


def _outer_cells(plot: BuiltPlot) -> Tuple[Dict[int, int], Dict[int, int]]:
    bottom: Dict[int, int] = {}
    left: Dict[int, int] = {}
    for panel in plot.panels:
        bottom[panel.col] = max(bottom.get(panel.col, panel.row), panel.row)
        left[panel.row] = min(left.get(panel.row, panel.col), panel.col)
    return bottom, left


def build_scene(plot: BuiltPlot, settings: Optional[Settings] = None) -> Scene:
    """
    Lay out a built plot on the canvas.

    Panels share one grid; calendar cells carry their cycle label and
    only the outer cells carry tick labels.

    Raises
    ------
    chronoplot.exceptions.RenderError
        If the canvas is too small for the grid or a domain is degenerate.
    """
    settings = settings or Settings()
    font = float(settings.font_size)
    advance = TEXT_ADVANCE * font
    pad = float(settings.padding)
    width, height = settings.width, settings.height
    spec = plot.spec
    transposed = plot.time_axis == 'y'
    if transposed:
        horizontal = (plot.value_breaks, plot.value_range)
        vertical = (plot.time_breaks, plot.time_range)
    else:
        horizontal = (plot.time_breaks, plot.time_range)
        vertical = (plot.value_breaks, plot.value_range)

    texts: List[Text] = []
    top = pad
    if spec.title:
        texts.append(Text((width / 2, pad + font * 1.3), spec.title, font * 1.3))
        top += font * 2
    if plot.is_polar:
        left = right = pad
        bottom = pad + font * 1.5
    else:
        widest = max((len(label) for label in vertical[0].labels), default=1)
        left = pad + font * 1.5 + widest * advance + TICK_LENGTH + 4
        right = pad + max((len(label) for label in horizontal[0].labels), default=1) * advance / 2
        bottom = pad + font * 2.5 + TICK_LENGTH + 4
    legend_w = 0.0
    if plot.legend is not None:
        longest = max([len(plot.legend.title)] + [len(value) for value, _ in plot.legend.entries])
        legend_w = font + 4 + longest * advance + pad
        right += legend_w

    first = spec.layers[0].mapping
    grid_w = width - left - right
    grid_h = height - top - bottom
    texts.append(Text((left + grid_w / 2, height - pad - font * 0.3), spec.labels.get('x', first.x), font))
    if not plot.is_polar:
        y = top + grid_h / 2
        texts.append(Text((pad + font, y), spec.labels.get('y', first.y), font, rotate=-90.0))

    band = font + 4 if spec.coord.variant is CoordVariant.CALENDAR else 0.0
    cell_w = (grid_w - pad * (plot.cols - 1)) / plot.cols
    cell_h = (grid_h - pad * (plot.rows - 1)) / plot.rows
    if cell_w <= 0 or cell_h - band <= 0:
        raise RenderError(f'a {width}x{height} canvas is too small for {plot.rows}x{plot.cols} panels')

    legend: List[Shape] = []
    if plot.legend is not None:
        legend, keys = _legend(plot.legend, width - legend_w, top, font, settings)
        texts.extend(keys)

    bottom_row, left_col = _outer_cells(plot)
    inner = spec.coord.inner_radius if spec.coord.inner_radius is not None else settings.inner_radius
    panels = []
    for data in plot.panels:
        x0 = left + data.col * (cell_w + pad)
        y0 = top + data.row * (cell_h + pad)
        viewport = Viewport(x0, y0 + band, cell_w, cell_h - band)
        if plot.is_polar:
            side = min(viewport.width, viewport.height) - 4 * font
            if side <= 0:
                raise RenderError('panel too small for a polar projection')
            cx, cy = viewport.center
            viewport = Viewport(cx - side / 2, cy - side / 2, side, side)
            projection: Projection = PolarProjection(viewport, plot.time_range, plot.value_range, inner)
            frame, ticks = _polar_axes(projection, plot.time_breaks, plot.value_breaks, font)
        else:
            projection = CartesianProjection(viewport, plot.time_range, plot.value_range, transposed)
            frame, ticks = _cartesian_axes(projection, horizontal, vertical,
                                           bottom_row[data.col] == data.row, left_col[data.row] == data.col, font)
        label = Text((x0 + 2, y0 + font), data.label, font, 'start') if data.label else None
        panels.append(Panel(viewport, frame, tuple(project(data.marks, projection, settings)),
                            ticks, label, data.row, data.col, plot.is_polar))
    return Scene(width, height, tuple(panels), tuple(texts), tuple(legend))
