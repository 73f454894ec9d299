from pathlib import Path
from typing import Dict, Optional, Union

import sqlalchemy as sa

from chronoplot.config import Settings
from chronoplot.grammar.pipeline import BuiltPlot, build_plot
from chronoplot.grammar.spec import DatasetSpec, PlotSpec, load_plotspec
from chronoplot.render.scene import Scene, build_scene
from chronoplot.render.svg import to_svg
from chronoplot.series.csvio import read_csv
from chronoplot.series.sql import read_series_with_engine
from chronoplot.series.table import TimeSeries
from chronoplot.series.validate import ValidationReport, validate


def load_dataset(dataset: DatasetSpec) -> TimeSeries:
    """Read a dataset from its CSV file, or from a SQL table when one is named."""
    if dataset.table is not None:
        engine = sa.create_engine(dataset.path)
        try:
            return read_series_with_engine(dataset.table, engine, dataset.schema)
        finally:
            engine.dispose()
    return read_csv(dataset.path, dataset.schema)


class Plot:
    def __init__(
        self,
        spec: PlotSpec,
        datasets: Optional[Dict[str, TimeSeries]] = None,
        settings: Optional[Settings] = None
    ) -> None:
        self.spec = spec
        self.datasets: Dict[str, TimeSeries] = dict(datasets or {})
        self.settings = settings or Settings()

    def __repr__(self) -> str:
        return f'<Plot {self.spec.coord.variant.value} layers={len(self.spec.layers)} data={tuple(self.datasets)}>'

    @classmethod
    def from_file(
        cls,
        path: Union[str, Path],
        settings: Optional[Settings] = None
    ) -> 'Plot':
        """Load a JSON spec and every dataset it declares."""
        spec = load_plotspec(path)
        datasets = {name: load_dataset(dataset) for name, dataset in spec.data.items()}
        return cls(spec, datasets, settings)

    def add_data(self, name: str, ts: TimeSeries) -> 'Plot':
        self.datasets[name] = ts
        return self

    def validate(self) -> ValidationReport:
        """Merged validity report over the datasets the layers use."""
        report = ValidationReport()
        for name in dict.fromkeys(layer.data for layer in self.spec.layers):
            if name in self.datasets:
                report = report.merge(validate(self.datasets[name]))
        return report

    def build(self) -> BuiltPlot:
        return build_plot(self.spec, self.datasets, self.settings.break_target)

    def scene(self) -> Scene:
        return build_scene(self.build(), self.settings)

    def to_svg(self) -> bytes:
        return to_svg(self.scene())

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_bytes(self.to_svg())
