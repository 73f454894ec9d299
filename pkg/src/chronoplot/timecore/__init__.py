from chronoplot.timecore.granularity import (
    DAY,
    DAY_OF_MONTH,
    DAY_OF_WEEK,
    DAY_OF_YEAR,
    HOUR,
    HOUR_OF_DAY,
    MINUTE,
    MINUTE_OF_HOUR,
    MONTH,
    MONTH_OF_YEAR,
    SECOND,
    SECOND_OF_MINUTE,
    WEEK,
    WEEK_OF_YEAR,
    YEAR,
    CycleUnit,
    GranularitySpec,
    Kind,
    TimeUnit,
    circular_label,
    glb_granularity,
    glb_of,
    granularity,
    period_at,
    refines,
)
from chronoplot.timecore.granules import (
    TimePoint,
    coarsen,
    cycle_index,
    format_point,
    granule_bounds,
    granule_index_at,
    parse_point,
    refine,
    to_circular,
    to_continuous,
)
from chronoplot.timecore.timezones import (
    CivilLookup,
    CivilTime,
    LookupKind,
    TimeZone,
    Transition,
    absolute_to_civil,
    civil_to_absolute,
    get_timezone,
    load_timezones,
    register_timezone,
)
