from chronoplot.series.aggregate import Stat, aggregate
from chronoplot.series.csvio import read_csv, write_csv
from chronoplot.series.sql import read_series_with_engine, write_series_with_engine
from chronoplot.series.table import Row, SeriesSchema, TimeSeries
from chronoplot.series.validate import (
    Duplicate,
    Gap,
    ValidationReport,
    check_order,
    check_unique,
    detect_gaps,
    fill_gaps,
    validate,
)
