from chronoplot.render.project import CartesianProjection, PolarProjection, Viewport
from chronoplot.render.scene import Area, Circle, Panel, Polyline, Rectangle, Scene, Text, Tick, build_scene, project
from chronoplot.render.svg import to_svg
