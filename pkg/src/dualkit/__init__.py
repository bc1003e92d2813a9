"""Power-law duality in classical, semiclassical and quantum mechanics."""

from .duality import (
    DualityMap,
    PairClass,
    PowerPotential,
    classify_pair,
    exchange_energy_coupling,
    map_angular_momentum,
    map_multiterm,
    partner_exponent,
)
from .errors import DualkitError

__version__ = "0.1.0"

__all__ = [
    "DualityMap",
    "DualkitError",
    "PairClass",
    "PowerPotential",
    "classify_pair",
    "exchange_energy_coupling",
    "map_angular_momentum",
    "map_multiterm",
    "partner_exponent",
]
