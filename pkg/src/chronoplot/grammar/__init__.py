from chronoplot.grammar.breaks import Breaks, compute_breaks, cycle_breaks, value_breaks
from chronoplot.grammar.coords import Loops, calendar_layout, localize_mark, loop_transform, resolve_loops
from chronoplot.grammar.geoms import Bar, Dot, Mark, Segment, Style, build_mark, build_time_line
from chronoplot.grammar.pipeline import BuiltPlot, Legend, PanelData, build_plot
from chronoplot.grammar.position import MappedPoint, Observation, position_time
from chronoplot.grammar.scale import LayerPoints, ScaleState, Space, Warp, map_position, train_scale, warp
from chronoplot.grammar.spec import (
    CoordBase,
    CoordConfig,
    CoordVariant,
    DatasetSpec,
    Direction,
    Geometry,
    LayerSpec,
    Mapping,
    PlotSpec,
    PositionMode,
    PositionTimeConfig,
    ScaleTimeConfig,
    load_plotspec,
    plotspec_from_dict,
)
