"""Reference measurements from the original hardware study of the three
interface designs, used by the regression (``verify``) command.

Three datasets, transcribed verbatim:

* ``WAY_SWEEP``   - single-channel bandwidth over 1..16 ways, both cell kinds,
  read and write, for CONV / SYNC / DDR (MB/s in the study's unit).
* ``CHANNEL_SWEEP`` - constant-capacity channel/way trades (1x16, 2x8, 4x4).
  ``None`` marks entries where the measurement pegged the host link.
* ``ENERGY``      - controller nJ/B for the single-cell-bit sweep.

The study's bandwidth megabyte is binary (2**20 bytes); docs/calibration.md
shows the fit that pins this down.
"""

from __future__ import annotations

from typing import Dict, Optional, Tuple

from .flash import CellKind
from .timing import InterfaceKind
from .workload import OpKind

CONV, SYNC, DDR = InterfaceKind.CONV, InterfaceKind.SYNC, InterfaceKind.DDR
SLC, MLC = CellKind.SLC, CellKind.MLC
R, W = OpKind.READ, OpKind.WRITE

WAY_COUNTS = (1, 2, 4, 8, 16)
CHANNEL_CONFIGS = ((1, 16), (2, 8), (4, 4))

# (cell, mode, ways) -> {interface: MB/s}
WAY_SWEEP: Dict[Tuple[CellKind, OpKind, int], Dict[InterfaceKind, float]] = {
    (SLC, W, 1):  {CONV: 7.77,  SYNC: 8.38,  DDR: 8.50},
    (SLC, W, 2):  {CONV: 15.22, SYNC: 16.59, DDR: 17.52},
    (SLC, W, 4):  {CONV: 28.94, SYNC: 31.90, DDR: 34.30},
    (SLC, W, 8):  {CONV: 39.78, SYNC: 55.36, DDR: 63.00},
    (SLC, W, 16): {CONV: 39.76, SYNC: 60.44, DDR: 97.35},
    (SLC, R, 1):  {CONV: 27.78, SYNC: 36.66, DDR: 47.89},
    (SLC, R, 2):  {CONV: 42.78, SYNC: 67.16, DDR: 70.47},
    (SLC, R, 4):  {CONV: 42.75, SYNC: 67.13, DDR: 117.68},
    (SLC, R, 8):  {CONV: 42.72, SYNC: 67.11, DDR: 117.64},
    (SLC, R, 16): {CONV: 42.69, SYNC: 67.11, DDR: 117.59},
    (MLC, W, 1):  {CONV: 4.43,  SYNC: 4.55,  DDR: 4.65},
    (MLC, W, 2):  {CONV: 8.36,  SYNC: 8.85,  DDR: 9.24},
    (MLC, W, 4):  {CONV: 15.24, SYNC: 16.75, DDR: 18.13},
    (MLC, W, 8):  {CONV: 25.86, SYNC: 29.72, DDR: 34.08},
    (MLC, W, 16): {CONV: 32.45, SYNC: 45.99, DDR: 57.23},
    (MLC, R, 1):  {CONV: 26.04, SYNC: 33.58, DDR: 42.69},
    (MLC, R, 2):  {CONV: 41.59, SYNC: 60.41, DDR: 77.19},
    (MLC, R, 4):  {CONV: 41.55, SYNC: 64.76, DDR: 101.61},
    (MLC, R, 8):  {CONV: 41.52, SYNC: 64.75, DDR: 110.56},
    (MLC, R, 16): {CONV: 41.50, SYNC: 64.73, DDR: 110.52},
}

# (cell, mode, channels, ways) -> {interface: MB/s or None when host-capped}
CHANNEL_SWEEP: Dict[Tuple[CellKind, OpKind, int, int], Dict[InterfaceKind, Optional[float]]] = {
    (SLC, W, 1, 16): {CONV: 39.76,  SYNC: 60.44,  DDR: 97.35},
    (SLC, W, 2, 8):  {CONV: 74.07,  SYNC: 101.99, DDR: 114.83},
    (SLC, W, 4, 4):  {CONV: 103.76, SYNC: 115.68, DDR: 123.52},
    (SLC, R, 1, 16): {CONV: 42.69,  SYNC: 67.11,  DDR: 117.59},
    (SLC, R, 2, 8):  {CONV: 81.44,  SYNC: 126.70, DDR: 224.82},
    (SLC, R, 4, 4):  {CONV: 155.35, SYNC: 237.61, DDR: None},
    (MLC, W, 1, 16): {CONV: 32.45,  SYNC: 45.99,  DDR: 57.23},
    (MLC, W, 2, 8):  {CONV: 48.72,  SYNC: 56.83,  DDR: 64.75},
    (MLC, W, 4, 4):  {CONV: 57.46,  SYNC: 63.55,  DDR: 68.49},
    (MLC, R, 1, 16): {CONV: 41.50,  SYNC: 64.73,  DDR: 110.52},
    (MLC, R, 2, 8):  {CONV: 79.32,  SYNC: 122.48, DDR: 201.42},
    (MLC, R, 4, 4):  {CONV: 150.94, SYNC: 230.17, DDR: None},
}

# (cell, mode, ways) -> {interface: nJ/B}; the study published the
# single-cell-bit sweep only.
ENERGY: Dict[Tuple[CellKind, OpKind, int], Dict[InterfaceKind, float]] = {
    (SLC, W, 1):  {CONV: 2.90, SYNC: 5.01, DDR: 5.47},
    (SLC, W, 2):  {CONV: 1.48, SYNC: 2.53, DDR: 2.65},
    (SLC, W, 4):  {CONV: 0.78, SYNC: 1.32, DDR: 1.36},
    (SLC, W, 8):  {CONV: 0.57, SYNC: 0.76, DDR: 0.74},
    (SLC, W, 16): {CONV: 0.57, SYNC: 0.69, DDR: 0.48},
    (SLC, R, 1):  {CONV: 0.81, SYNC: 1.15, DDR: 0.97},
    (SLC, R, 2):  {CONV: 0.53, SYNC: 0.63, DDR: 0.66},
    (SLC, R, 4):  {CONV: 0.53, SYNC: 0.63, DDR: 0.40},
    (SLC, R, 8):  {CONV: 0.53, SYNC: 0.63, DDR: 0.40},
    (SLC, R, 16): {CONV: 0.53, SYNC: 0.63, DDR: 0.40},
}

# Headline speedup ranges of DDR over CONV reported by the study (SLC).
HEADLINE_READ_RATIO = (1.65, 2.76)
HEADLINE_WRITE_RATIO = (1.09, 2.45)


def energy_bandwidth_tables():
    """The energy table and its matching bandwidth entries, keyed uniformly
    by (interface, cell, mode, ways) for the power calibration."""
    energy = {}
    bandwidth = {}
    for (cell, mode, ways), row in ENERGY.items():
        for kind, e in row.items():
            key = (kind, cell, mode, ways)
            energy[key] = e
            bandwidth[key] = WAY_SWEEP[(cell, mode, ways)][kind]
    return energy, bandwidth
