"""ssdsim: trace-driven simulation of SSD internals.

Core package layering:

* ``timing``    - exact clock-period/delay arithmetic for the interface kinds
* ``flash``     - NAND chip behavioral model (fetch/program/page register)
* ``bus``       - channel phase costs per protocol
* ``topology``  - channels x ways striping, host-link ceiling
* ``workload``  - trace generation and (de)serialization
* ``engine``    - the deterministic event core
* ``energy``    - controller power/energy accounting
* ``reference`` - bundled measurements of the original hardware study
* ``verify``    - regression of simulated results against those tables
* ``service``   - FastAPI wrapper; ``cli`` - thin client over it
"""

__version__ = "0.1.0"

from .engine import Stats, run
from .flash import CellKind, FlashProfile, NandChip
from .timing import ClockSpec, InterfaceKind, TimingParams
from .topology import SsdConfig
from .workload import OpKind, TraceRecord, gen_sequential, parse_trace, serialize_trace

__all__ = [
    "__version__",
    "CellKind", "ClockSpec", "FlashProfile", "InterfaceKind", "NandChip",
    "OpKind", "SsdConfig", "Stats", "TimingParams", "TraceRecord",
    "gen_sequential", "parse_trace", "run", "serialize_trace",
]
