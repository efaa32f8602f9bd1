"""CSV export and plot-script generation."""

from bandedge.export.plot import PlotKind, plot_script, write_plot_script
from bandedge.export.tables import (
    CsvFormatError,
    format_float,
    read_columns,
    read_pulse,
    write_density,
    write_pulse,
    write_spectrum,
    write_trajectory,
)

__all__ = [
    "CsvFormatError",
    "PlotKind",
    "format_float",
    "plot_script",
    "read_columns",
    "read_pulse",
    "write_density",
    "write_plot_script",
    "write_pulse",
    "write_spectrum",
    "write_trajectory",
]
