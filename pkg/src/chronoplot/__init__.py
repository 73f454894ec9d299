__version__ = '0.0.1'

from chronoplot.plot import Plot, load_dataset
from chronoplot import grammar, render, series, timecore
