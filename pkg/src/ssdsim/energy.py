"""Controller energy accounting.

The controller draws an approximately constant average power per interface
kind while moving data (the product of the reference study's energy and
bandwidth columns is flat to <1% within each interface), so energy per byte
is modeled as power divided by achieved bandwidth.

The bundled constants are calibrated against the reference tables, whose
bandwidth column is in binary megabytes per second (see docs/calibration.md);
``PowerModel.table_unit`` carries that scale so simulated byte rates divide
consistently.
"""

from __future__ import annotations

from dataclasses import dataclass
from statistics import mean
from typing import Dict, Mapping, Tuple

from .timing import InterfaceKind

MIB = 1024.0 * 1024.0


class EnergyError(ValueError):
    pass


def energy_per_byte(power_mw: float, bandwidth_bytes_per_s: float) -> float:
    """nJ per byte a controller spends moving data at the given rate.

    mW / (bytes/s) = mJ/byte * 1e-? -- concretely 1 mW over 1 MB/s is 1 nJ/B,
    so the conversion factor is 1e6.
    """
    if bandwidth_bytes_per_s <= 0:
        raise EnergyError("bandwidth must be > 0")
    if power_mw <= 0:
        raise EnergyError("power must be > 0")
    return power_mw * 1e6 / bandwidth_bytes_per_s


@dataclass(frozen=True)
class PowerModel:
    """Average controller power per interface kind.

    ``power_units`` are numerically mW when bandwidths are expressed in
    ``table_unit`` bytes (the reference tables' megabyte).  ``energy_for``
    performs the paired division for a raw byte rate.
    """

    power_units: Mapping[InterfaceKind, float]
    table_unit: float = MIB

    def __post_init__(self):
        for kind, value in self.power_units.items():
            if value <= 0:
                raise EnergyError(f"power for {kind} must be > 0")

    def energy_for(self, kind: InterfaceKind, bandwidth_bytes_per_s: float) -> float:
        """nJ/B at a simulated byte rate, consistent with the calibration unit."""
        return energy_per_byte(self.power_units[kind],
                               bandwidth_bytes_per_s * (1e6 / self.table_unit))


def calibrate_power(energy_table: Mapping[tuple, float],
                    bandwidth_table: Mapping[tuple, float],
                    ) -> Tuple[Dict[InterfaceKind, float], Dict[InterfaceKind, float]]:
    """Fit per-interface power constants from matching energy/bandwidth tables.

    Keys must identify (interface, configuration).  Returns the per-interface
    mean of energy*bandwidth plus the maximum relative deviation from that
    mean, a measure of how constant the product actually is.
    """
    products: Dict[InterfaceKind, list] = {}
    for key, e in energy_table.items():
        if key not in bandwidth_table:
            continue
        kind = key[0]
        if not isinstance(kind, InterfaceKind):
            raise EnergyError(f"table key {key!r} must start with an InterfaceKind")
        products.setdefault(kind, []).append(e * bandwidth_table[key])
    if not products:
        raise EnergyError("no overlapping configurations between the tables")
    powers: Dict[InterfaceKind, float] = {}
    deviations: Dict[InterfaceKind, float] = {}
    for kind, values in products.items():
        center = mean(values)
        powers[kind] = center
        deviations[kind] = max(abs(v - center) / center for v in values)
    return powers, deviations
