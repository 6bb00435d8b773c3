"""One-way wave-packet transport in 1D lattices with engineered bands,
and the self-imaging ring resonator that emulates them."""

__version__ = "0.1.0"

from .band import DispersionSpec, HoppingSet, evaluate, hoppings, reconstruct, ring_hoppings
from .cavity import CavityConfig, CavityField, Grating, InjectionSpec, Mask, metacrystal_period
from .ensemble import EnsembleSpec, run_ensemble
from .lattice import LatticeState, PotentialProfile, Trajectory, gaussian_packet

__all__ = [
    "DispersionSpec", "HoppingSet", "evaluate", "hoppings", "reconstruct", "ring_hoppings",
    "CavityConfig", "CavityField", "Grating", "InjectionSpec", "Mask", "metacrystal_period",
    "EnsembleSpec", "run_ensemble",
    "LatticeState", "PotentialProfile", "Trajectory", "gaussian_packet",
]
