"""CSV codecs for spectra, trajectories, pulses and density-of-modes samples.

Floats are written with 17 significant digits, which round-trips every float64 exactly.
"""

import csv
import logging
from collections.abc import Iterable, Sequence
from pathlib import Path

import numpy as np
import numpy.typing as npt

from bandedge.dynamics.volterra import Trajectory
from bandedge.model.errors import BandedgeError
from bandedge.propagation.pulse import PulseField
from bandedge.spectra.table import SpectrumTable

logger = logging.getLogger(__name__)

SPECTRUM_HEADER = ("delta", "re_chi", "im_chi", "absorption")
DISPERSION_COLUMNS = ("dre_chi_ddelta", "group_velocity")
TRAJECTORY_HEADER = ("t", "re_a0", "im_a0", "re_a1", "im_a1")
PULSE_HEADER = ("t", "re_E", "im_E", "abs_E")
DENSITY_HEADER = ("x", "density")


class CsvFormatError(BandedgeError):
    """Raised when a CSV file does not have the expected header or values."""


def format_float(value: float) -> str:
    return f"{float(value):.16e}"


def _write(path: Path, header: Sequence[str], columns: Iterable[npt.ArrayLike]) -> None:
    data = [np.asarray(c, dtype=np.float64) for c in columns]
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in zip(*data, strict=True):
            writer.writerow(format_float(v) for v in row)
    logger.info("Wrote %d rows to %s", len(data[0]) if data else 0, path)


def read_columns(path: Path) -> dict[str, npt.NDArray[np.float64]]:
    """Read a CSV written by this module into one float array per header name."""
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.reader(f)
        try:
            header = next(reader)
        except StopIteration as e:
            raise CsvFormatError(f"{path} is empty") from e
        rows = list(reader)
    for number, row in enumerate(rows, start=2):
        if len(row) != len(header):
            raise CsvFormatError(
                f"{path}:{number}: expected {len(header)} values, found {len(row)}"
            )
    try:
        values = np.array([[float(v) for v in row] for row in rows], dtype=np.float64)
    except ValueError as e:
        raise CsvFormatError(f"{path}: {e}") from e
    values = values.reshape(len(rows), len(header))
    return {name: values[:, i] for i, name in enumerate(header)}


def write_spectrum(path: Path, table: SpectrumTable) -> None:
    header = list(SPECTRUM_HEADER)
    columns = [table.deltas, table.chi.real, table.chi.imag, table.absorption]
    if table.dre_chi_ddelta is not None and table.group_velocity is not None:
        header.extend(DISPERSION_COLUMNS)
        columns.extend([table.dre_chi_ddelta, table.group_velocity])
    _write(path, header, columns)


def write_trajectory(path: Path, trajectory: Trajectory) -> None:
    _write(
        path,
        TRAJECTORY_HEADER,
        [
            trajectory.times,
            trajectory.a0.real,
            trajectory.a0.imag,
            trajectory.a1.real,
            trajectory.a1.imag,
        ],
    )


def write_pulse(path: Path, pulse: PulseField) -> None:
    e = pulse.envelope
    _write(path, PULSE_HEADER, [pulse.times, e.real, e.imag, np.abs(e)])


def read_pulse(path: Path, carrier_detuning: float = 0.0) -> PulseField:
    columns = read_columns(path)
    missing = [name for name in PULSE_HEADER[:3] if name not in columns]
    if missing:
        raise CsvFormatError(f"{path} is missing pulse column(s): {', '.join(missing)}")
    envelope = columns["re_E"] + 1j * columns["im_E"]
    return PulseField(columns["t"], envelope, carrier_detuning)


def write_density(path: Path, offsets: npt.ArrayLike, density: npt.ArrayLike) -> None:
    _write(path, DENSITY_HEADER, [offsets, density])
