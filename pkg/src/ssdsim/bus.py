"""Controller-to-chip channel model: command/address/data phase costs.

A channel is one shared medium: command and address cycles, data bursts and
the controller's per-page handling all occupy it exclusively.  Page costs are
affine in the page size with slope equal to the per-byte cycle of the resolved
clock.

Default overheads (see docs/calibration.md for the fits):

* 2 command + 5 address cycles per page operation, clocked single-data-rate
  at t_P in every interface kind.
* 4.5 us of controller work per page read (ECC check + firmware forwarding),
  solved from the saturated read rows of the reference measurements.
* 1.5 us per page write (streamed through the write FIFO with less firmware
  in the path), solved from the 16-way write rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .timing import ClockSpec, Ns, NumberLike, as_ns, ns_to_ps, per_byte_cycle

DEFAULT_CMD_CYCLES = 2
DEFAULT_ADDR_CYCLES = 5
DEFAULT_WRITE_OVERHEAD_NS = 1_500
DEFAULT_READ_OVERHEAD_NS = 4_500


class BusError(ValueError):
    pass


@dataclass(frozen=True)
class BusProtocol:
    """One channel's resolved interface: clock plus fixed per-page costs."""

    clock: ClockSpec
    cmd_cycles_write: int = DEFAULT_CMD_CYCLES
    cmd_cycles_read: int = DEFAULT_CMD_CYCLES
    addr_cycles: int = DEFAULT_ADDR_CYCLES
    write_page_overhead: Ns = as_ns(DEFAULT_WRITE_OVERHEAD_NS)
    read_page_overhead: Ns = as_ns(DEFAULT_READ_OVERHEAD_NS)

    def __post_init__(self):
        if min(self.cmd_cycles_write, self.cmd_cycles_read, self.addr_cycles) < 0:
            raise BusError("cycle counts must be >= 0")
        if self.write_page_overhead < 0 or self.read_page_overhead < 0:
            raise BusError("page overheads must be >= 0")

    # -- exact per-phase costs, integer picoseconds ------------------------

    @property
    def per_byte_ps(self) -> Fraction:
        return per_byte_cycle(self.clock)

    def cmd_addr_ps(self, write: bool) -> int:
        cycles = (self.cmd_cycles_write if write else self.cmd_cycles_read) + self.addr_cycles
        return cycles * self.clock.t_p_ps

    def data_phase_ps(self, n_bytes: int) -> int:
        if n_bytes <= 0:
            raise BusError("data phase needs at least one byte")
        return round(n_bytes * self.per_byte_ps)

    def write_phase_ps(self, page_size: int) -> int:
        """Full channel occupancy of one page write: cmd+addr, data burst,
        controller per-page handling."""
        return self.cmd_addr_ps(True) + self.data_phase_ps(page_size) + ns_to_ps(self.write_page_overhead)

    def read_data_ps(self, page_size: int) -> int:
        """Channel occupancy of the read data burst plus controller handling
        (the cmd/addr phase is issued separately, before the array fetch)."""
        return self.data_phase_ps(page_size) + ns_to_ps(self.read_page_overhead)


def page_write_bus_time(proto: BusProtocol, page_size: int) -> Ns:
    """Total channel time to move one page from controller to page register."""
    return Fraction(proto.write_phase_ps(page_size), 1000)


def page_read_bus_time(proto: BusProtocol, page_size: int) -> Ns:
    """Total channel time of one page read excluding the array fetch window
    (owned by the chip model): cmd/addr phase plus data burst plus overhead."""
    return Fraction(proto.cmd_addr_ps(False) + proto.read_data_ps(page_size), 1000)


def channel_peak_rate(proto: BusProtocol) -> float:
    """Upper bound on one channel's payload rate, bytes per second."""
    return float(1e12 / proto.per_byte_ps)


def make_protocol(clock: ClockSpec,
                  cmd_cycles: int = DEFAULT_CMD_CYCLES,
                  addr_cycles: int = DEFAULT_ADDR_CYCLES,
                  write_page_overhead_ns: NumberLike = DEFAULT_WRITE_OVERHEAD_NS,
                  read_page_overhead_ns: NumberLike = DEFAULT_READ_OVERHEAD_NS) -> BusProtocol:
    return BusProtocol(
        clock=clock,
        cmd_cycles_write=cmd_cycles,
        cmd_cycles_read=cmd_cycles,
        addr_cycles=addr_cycles,
        write_page_overhead=as_ns(write_page_overhead_ns),
        read_page_overhead=as_ns(read_page_overhead_ns),
    )
