"""Probe pulses and their propagation through band-edge media."""

from bandedge.propagation.medium import (
    BandwidthTooWide,
    MediumSlab,
    PulseAbsorbed,
    energy_retention,
    group_delay,
    propagate,
)
from bandedge.propagation.pulse import PulseField, gaussian_pulse

__all__ = [
    "BandwidthTooWide",
    "MediumSlab",
    "PulseAbsorbed",
    "PulseField",
    "energy_retention",
    "gaussian_pulse",
    "group_delay",
    "propagate",
]
