"""Bandedge - probe transparency near a photonic band edge: spectra, dynamics, pulses."""

__version__ = "0.1.0"

from bandedge.model import ReservoirModel, SystemParams
from bandedge.spectra import ScalingParams, spectrum, susceptibility

__all__ = ["ReservoirModel", "ScalingParams", "SystemParams", "spectrum", "susceptibility"]
