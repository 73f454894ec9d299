"""
SVG serialization of scenes.

Every number is written with three decimals and elements are emitted in
scene order, so equal scenes give byte-identical documents.
"""

from typing import Sequence, Tuple

import svgwrite

from chronoplot.render.project import Point
from chronoplot.render.scene import AXIS_COLOR, Area, Circle, Polyline, Rectangle, Scene, Shape, Text

XML_DECLARATION = '<?xml version="1.0" encoding="utf-8" ?>\n'
DASH_PATTERN = '4,3'
FONT_FAMILY = 'sans-serif'


def fmt(value: float) -> str:
    text = '%.3f' % value
    return '0.000' if text == '-0.000' else text


def _point(p: Point) -> Tuple[str, str]:
    return fmt(p[0]), fmt(p[1])


def _path(points: Sequence[Point]) -> str:
    head, *rest = points
    commands = ['M%s,%s' % _point(head)]
    commands.extend('L%s,%s' % _point(p) for p in rest)
    commands.append('Z')
    return ' '.join(commands)


def _shape(dwg: svgwrite.Drawing, shape: Shape):
    if isinstance(shape, Polyline):
        extra = {'stroke_dasharray': DASH_PATTERN} if shape.dashed else {}
        return dwg.polyline([_point(p) for p in shape.points],
                            fill='none',
                            stroke=shape.stroke,
                            stroke_width=fmt(shape.width),
                            stroke_linejoin='round',
                            **extra)
    if isinstance(shape, Circle):
        return dwg.circle(center=_point(shape.center),
                          r=fmt(shape.radius),
                          fill=shape.fill or 'none',
                          stroke=shape.stroke or 'none')
    if isinstance(shape, Rectangle):
        return dwg.rect(insert=(fmt(shape.x), fmt(shape.y)),
                        size=(fmt(shape.width), fmt(shape.height)),
                        fill=shape.fill or 'none',
                        stroke=shape.stroke or 'none')
    if isinstance(shape, Area):
        return dwg.path(d=_path(shape.points),
                        fill=shape.fill,
                        fill_opacity=fmt(shape.opacity),
                        stroke='none')
    raise TypeError(f'cannot serialize {type(shape).__name__}')


def _text(dwg: svgwrite.Drawing, text: Text):
    x, y = _point(text.position)
    extra = {'transform': f'rotate({fmt(text.rotate)} {x} {y})'} if text.rotate else {}
    return dwg.text(text.text,
                    insert=(x, y),
                    font_size=fmt(text.size),
                    font_family=FONT_FAMILY,
                    text_anchor=text.anchor,
                    fill=AXIS_COLOR,
                    **extra)


def to_svg(scene: Scene) -> bytes:
    """
    Serialize a scene as an SVG 1.1 document.

    Uses only ``rect``, ``polyline``, ``circle``, ``path``, ``text`` and
    ``g`` elements; offset jumps are dashed with the pattern ``4,3``.
    """
    dwg = svgwrite.Drawing(size=(fmt(scene.width), fmt(scene.height)), profile='full', debug=False)
    dwg.add(dwg.rect(insert=(fmt(0), fmt(0)), size=(fmt(scene.width), fmt(scene.height)), fill='#ffffff'))
    for text in scene.texts:
        dwg.add(_text(dwg, text))
    for panel in scene.panels:
        group = dwg.g(class_='panel')
        for shape in panel.frame:
            group.add(_shape(dwg, shape))
        axis = dwg.g(class_='axis')
        for tick in panel.ticks:
            axis.add(dwg.polyline([_point(p) for p in tick.line], fill='none', stroke=AXIS_COLOR, stroke_width=fmt(1)))
            if tick.label is not None:
                axis.add(_text(dwg, tick.label))
        group.add(axis)
        marks = dwg.g(class_='marks')
        for shape in panel.marks:
            marks.add(_shape(dwg, shape))
        group.add(marks)
        if panel.label is not None:
            group.add(_text(dwg, panel.label))
        dwg.add(group)
    if scene.legend:
        key = dwg.g(class_='legend')
        for shape in scene.legend:
            key.add(_shape(dwg, shape))
        dwg.add(key)
    return (XML_DECLARATION + dwg.tostring() + '\n').encode('utf-8')
