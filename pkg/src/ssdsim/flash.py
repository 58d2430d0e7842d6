"""Behavioral model of a single NAND flash chip.

A chip is a page register plus a cell array.  Reads fetch a page from the
array into the register (t_R busy), writes program the register into the
array (t_PROG busy, several times longer).  While an array operation runs the
chip rejects every command; the engine serializes around that.

Bundled device profiles were back-solved from the single-way measurements in
the reference study (see docs/calibration.md) and rounded to datasheet-typical
values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .timing import NumberLike, Ns, as_ns, ns_to_ps


class FlashError(Exception):
    """Illegal command sequencing against a chip (issue while busy, etc.)."""


class CellKind(enum.Enum):
    SLC = "slc"
    MLC = "mlc"

    @classmethod
    def parse(cls, text: str) -> "CellKind":
        key = text.strip().lower()
        try:
            return cls(key)
        except ValueError:
            raise FlashError(f"unknown cell kind: {text!r}") from None


@dataclass(frozen=True)
class FlashProfile:
    """Per-device timing: array fetch, page program, register byte time, page size.

    ``t_byte`` is the register-to-latch transfer time; it acts as a floor on
    the interface clock period (the register transfer pipelines under the bus
    cycle), not as an additive per-byte chip latency.
    """

    cell_kind: CellKind
    t_r: Ns
    t_prog: Ns
    t_byte: Ns
    page_size: int

    def __post_init__(self):
        if not (self.t_prog > self.t_r > 0):
            raise FlashError("expected t_prog > t_r > 0")
        if self.t_byte <= 0:
            raise FlashError("t_byte must be > 0")
        if self.page_size <= 0 or self.page_size & (self.page_size - 1):
            raise FlashError("page_size must be a positive power of two")

    @property
    def t_r_ps(self) -> int:
        return ns_to_ps(self.t_r)

    @property
    def t_prog_ps(self) -> int:
        return ns_to_ps(self.t_prog)

    @classmethod
    def from_values(cls, cell_kind, t_r_ns: NumberLike, t_prog_ns: NumberLike,
                    t_byte_ns: NumberLike, page_size_bytes: int) -> "FlashProfile":
        kind = cell_kind if isinstance(cell_kind, CellKind) else CellKind.parse(str(cell_kind))
        return cls(kind, as_ns(t_r_ns), as_ns(t_prog_ns), as_ns(t_byte_ns), int(page_size_bytes))


# 25/200 us and 60/95 nm-class 60/800 us are the usual datasheet figures the
# calibration lands on; MLC programs ~3x slower than SLC and ships 4-KB pages.
SLC_PROFILE = FlashProfile(CellKind.SLC, as_ns(25_000), as_ns(200_000), as_ns(12), 2048)
MLC_PROFILE = FlashProfile(CellKind.MLC, as_ns(60_000), as_ns(800_000), as_ns(12), 4096)

DEFAULT_PROFILES = {CellKind.SLC: SLC_PROFILE, CellKind.MLC: MLC_PROFILE}


class ChipState(enum.Enum):
    IDLE = "idle"
    BUSY_FETCH = "busy_fetch"
    BUSY_PROGRAM = "busy_program"
    READY_TO_TRANSFER = "ready_to_transfer"


@dataclass
class NandChip:
    """One chip's dynamic state, driven by the single-threaded event engine.

    Timestamps are integer picoseconds.  ``busy_until`` is meaningful in the
    two busy states; ``registered_page`` is set exactly when a fetched page
    sits in the page register awaiting transfer.
    """

    profile: FlashProfile
    state: ChipState = ChipState.IDLE
    busy_until: int = 0
    registered_page: Optional[int] = None

    def is_available(self, now: int) -> bool:
        """True when a new array command could be accepted at ``now``.

        Boundary-inclusive: a chip whose busy window ends exactly at ``now``
        is available.
        """
        if self.state is ChipState.IDLE:
            return True
        if self.state in (ChipState.BUSY_FETCH, ChipState.BUSY_PROGRAM):
            return now >= self.busy_until
        return False  # READY_TO_TRANSFER: register still holds a page

    def _settle(self, now: int):
        # Busy windows expire lazily; the engine calls commands at or after
        # the completion timestamps it scheduled.
        if self.state is ChipState.BUSY_FETCH and now >= self.busy_until:
            self.state = ChipState.READY_TO_TRANSFER
        elif self.state is ChipState.BUSY_PROGRAM and now >= self.busy_until:
            self.state = ChipState.IDLE

    def issue_fetch(self, page: int, now: int) -> int:
        """Start an array-to-register fetch; returns the completion time."""
        self._settle(now)
        if self.state is not ChipState.IDLE:
            raise FlashError(f"fetch issued while chip is {self.state.value}")
        self.state = ChipState.BUSY_FETCH
        self.busy_until = now + self.profile.t_r_ps
        self.registered_page = page
        return self.busy_until

    def complete_fetch(self, now: int):
        if self.state is not ChipState.BUSY_FETCH or now < self.busy_until:
            raise FlashError("fetch completion out of order")
        self.state = ChipState.READY_TO_TRANSFER

    def release_register(self, now: int):
        """Page register drained to the bus; chip returns to idle."""
        self._settle(now)
        if self.state is not ChipState.READY_TO_TRANSFER:
            raise FlashError("no fetched page to release")
        self.state = ChipState.IDLE
        self.registered_page = None

    def load_register(self, page: int, now: int):
        """Bus finished streaming write data into the page register."""
        self._settle(now)
        if self.state is not ChipState.IDLE:
            raise FlashError(f"register load while chip is {self.state.value}")
        self.state = ChipState.READY_TO_TRANSFER
        self.registered_page = page

    def issue_program(self, now: int) -> int:
        """Start programming the registered page; returns the completion time."""
        self._settle(now)
        if self.state is not ChipState.READY_TO_TRANSFER:
            raise FlashError("program issued without a loaded page register")
        self.state = ChipState.BUSY_PROGRAM
        self.busy_until = now + self.profile.t_prog_ps
        self.registered_page = None
        return self.busy_until

    def complete_program(self, now: int):
        if self.state is not ChipState.BUSY_PROGRAM or now < self.busy_until:
            raise FlashError("program completion out of order")
        self.state = ChipState.IDLE
