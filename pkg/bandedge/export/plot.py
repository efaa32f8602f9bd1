"""Generated matplotlib scripts that render exported CSV files."""

import logging
from enum import Enum
from pathlib import Path

logger = logging.getLogger(__name__)


class PlotKind(Enum):
    SPECTRUM = "spectrum"
    TRAJECTORY = "trajectory"
    PULSE = "pulse"
    DENSITY = "density"


_PREAMBLE = '''\
import matplotlib.pyplot as plt
import numpy as np

data = np.genfromtxt({csv!r}, delimiter=",", names=True)
fig, ax = plt.subplots()
'''

_BODIES = {
    PlotKind.SPECTRUM: '''\
ax.plot(data["delta"], data["absorption"], "k-", label="absorption")
ax.plot(data["delta"], data["re_chi"], "k--", label="dispersion")
ax.set_xlabel("delta (units of beta)")
ax.set_ylabel("chi (arb. units)")
''',
    PlotKind.TRAJECTORY: '''\
ax.plot(data["t"], np.hypot(data["re_a1"], data["im_a1"]), "k-", label="|a1|")
ax.set_xlabel("t (units of 1/beta)")
ax.set_ylabel("amplitude")
''',
    PlotKind.PULSE: '''\
ax.plot(data["t"], data["abs_E"], "k-", label="|E|")
ax.set_xlabel("t (units of 1/beta)")
ax.set_ylabel("envelope")
''',
    PlotKind.DENSITY: '''\
ax.plot(data["x"], data["density"], "k-", label="density of modes")
ax.set_xlabel("omega - omega_g (units of beta)")
ax.set_ylabel("rho (arb. units)")
''',
}

_EPILOGUE = '''\
ax.legend()
fig.savefig({image!r}, dpi=150)
'''


def plot_script(csv_path: Path, kind: PlotKind) -> str:
    image = csv_path.with_suffix(".png").name
    return (
        _PREAMBLE.format(csv=csv_path.name)
        + _BODIES[kind]
        + _EPILOGUE.format(image=image)
    )


def write_plot_script(csv_path: Path, kind: PlotKind) -> Path:
    """Write ``<csv stem>.py`` next to the CSV and return its path."""
    script_path = csv_path.with_suffix(".py")
    script_path.write_text(plot_script(csv_path, kind), encoding="utf-8")
    logger.info("Wrote %s plot script to %s", kind.value, script_path)
    return script_path
