"""Deterministic discrete-event core.

Scheduling model
----------------

Host requests are processed strictly in order: a request's page operations
are the unit of parallelism, and the next request begins only once every
operation of the current one has fully completed (last program finished, last
read byte delivered).  Within a request, page operations dispatch in
logical-page order as soon as their channel is free and their chip is
available, so bus transfers overlap the array busy windows of the other ways
on the channel.  When the next page in order targets a busy chip, dispatch
stalls; there is no reordering.

A write occupies its channel once (command/address cycles, the data burst and
the controller's per-page handling) and then programs off-bus.  A read issues
a short command/address phase, waits out the array fetch off-bus, then takes
the channel again for the data burst.  Command phases are granted ahead of
waiting data bursts: they are a handful of cycles and keep the next fetch
streaming; among data bursts the grant order is FIFO (page order, which under
round-robin striping is also lowest-way-first).

Time is integer picoseconds throughout.  Ties in the event queue break on
insertion order, so runs are bit-identical across platforms.

Because requests serialize, every request starting from the all-idle state
with the same page-location pattern schedules identically; ``run`` memoizes
per-request schedules on that pattern unless an event log is requested.
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .flash import NandChip
from .topology import SsdConfig, decompose_request
from .workload import OpKind, Trace


class EngineError(Exception):
    pass


class EventKind(enum.Enum):
    PAGE_OP_START = "PageOpStart"      # a channel phase begins (cmd, data or write burst)
    BUS_FREE = "BusFree"               # a channel phase ends
    CHIP_FETCH_DONE = "ChipFetchDone"  # array-to-register fetch completed
    CHIP_PROGRAM_DONE = "ChipProgramDone"
    REQUEST_DONE = "RequestDone"


@dataclass(frozen=True)
class Event:
    time_ps: int
    seq: int
    kind: EventKind
    channel: int
    way: int
    request: int

    def as_log_line(self) -> str:
        return f"{self.time_ps}\t{self.kind.value}\t{self.channel}\t{self.way}\t{self.request}"


class EventQueue:
    """Min-heap ordered by (time, insertion seq): FIFO among simultaneous events."""

    def __init__(self):
        self._heap: List[tuple] = []
        self._seq = 0

    def push(self, time_ps: int, payload) -> None:
        heapq.heappush(self._heap, (time_ps, self._seq, payload))
        self._seq += 1

    def pop_next(self) -> tuple:
        if not self._heap:
            raise EngineError("pop from empty event queue")
        return heapq.heappop(self._heap)

    def __len__(self) -> int:
        return len(self._heap)


@dataclass
class Stats:
    """Accumulated counters of one simulation run.

    Bandwidths are bytes per second over the elapsed window of the matching
    phase; for mixed read/write traces only the aggregate is defined.
    """

    bytes_read: int = 0
    bytes_written: int = 0
    elapsed_ps: int = 0
    per_channel_busy_ps: List[int] = field(default_factory=list)
    per_chip_busy_ps: List[int] = field(default_factory=list)
    read_bandwidth: Optional[float] = None   # bytes/s
    write_bandwidth: Optional[float] = None  # bytes/s
    total_bandwidth: float = 0.0
    capped: bool = False
    events: Optional[List[Event]] = None

    @property
    def elapsed_ns(self) -> float:
        return self.elapsed_ps / 1000.0


# internal event tags for the per-request simulation
_CMD_END = 0     # read cmd/addr phase released the channel
_WRITE_END = 1   # write burst released the channel; program continues off-bus
_DATA_END = 2    # read data burst released the channel; op complete
_FETCH_DONE = 3
_PROG_DONE = 4


@dataclass
class _Schedule:
    """Outcome of one request simulated from the all-idle state."""

    duration_ps: int
    channel_busy_ps: List[int]
    chip_busy_ps: List[int]
    events: List[Tuple[int, EventKind, int, int]]  # (relative time, kind, channel, way)


def _simulate_request(config: SsdConfig, ops: List[Tuple], want_events: bool) -> _Schedule:
    proto = config.protocol
    n_ch, n_ways = config.n_channels, config.n_ways
    page = config.page_size

    cmd_ps = proto.cmd_addr_ps(write=False)
    write_ps = proto.write_phase_ps(page)
    data_ps = proto.read_data_ps(page)
    fetch_ps = config.profile.t_r_ps
    prog_ps = config.profile.t_prog_ps

    chan_free = [0] * n_ch
    chips = [[NandChip(config.profile) for _ in range(n_ways)] for _ in range(n_ch)]
    pending_data: List[List[int]] = [[] for _ in range(n_ch)]  # op indices, FIFO

    chan_busy = [0] * n_ch
    chip_busy = [0] * (n_ch * n_ways)

    queue = EventQueue()
    events: List[Tuple[int, EventKind, int, int]] = []

    dispatch_idx = 0
    completed = 0
    finish = 0

    def log(t: int, kind: EventKind, c: int, w: int):
        if want_events:
            events.append((t, kind, c, w))

    def service(now: int):
        nonlocal dispatch_idx
        # 1. in-order dispatch; command phases and write bursts go first
        while dispatch_idx < len(ops):
            loc, _nbytes, is_write = ops[dispatch_idx]
            c, w = loc.channel, loc.way
            if chan_free[c] > now or not chips[c][w].is_available(now):
                break
            log(now, EventKind.PAGE_OP_START, c, w)
            if is_write:
                end = now + write_ps
                chan_free[c] = end
                chan_busy[c] += write_ps
                queue.push(end, (_WRITE_END, c, w, dispatch_idx))
            else:
                end = now + cmd_ps
                chan_free[c] = end
                chan_busy[c] += cmd_ps
                # the chip is claimed now; the fetch window starts when the
                # command/address cycles finish
                fetch_done = chips[c][w].issue_fetch(loc.page, end)
                chip_busy[c * n_ways + w] += fetch_ps
                queue.push(end, (_CMD_END, c, w, dispatch_idx))
                queue.push(fetch_done, (_FETCH_DONE, c, w, dispatch_idx))
            dispatch_idx += 1
        # 2. grant waiting read data bursts on idle channels, FIFO
        for c in range(n_ch):
            if pending_data[c] and chan_free[c] <= now:
                op_idx = pending_data[c].pop(0)
                w = ops[op_idx][0].way
                end = now + data_ps
                log(now, EventKind.PAGE_OP_START, c, w)
                chan_free[c] = end
                chan_busy[c] += data_ps
                queue.push(end, (_DATA_END, c, w, op_idx))

    service(0)
    while completed < len(ops):
        now, _seq, payload = queue.pop_next()
        tag, c, w, op_idx = payload
        if tag == _FETCH_DONE:
            chips[c][w].complete_fetch(now)
            pending_data[c].append(op_idx)
            log(now, EventKind.CHIP_FETCH_DONE, c, w)
        elif tag == _DATA_END:
            chips[c][w].release_register(now)
            completed += 1
            if now > finish:
                finish = now
            log(now, EventKind.BUS_FREE, c, w)
        elif tag == _WRITE_END:
            chips[c][w].load_register(ops[op_idx][0].page, now)
            prog_done = chips[c][w].issue_program(now)
            chip_busy[c * n_ways + w] += prog_ps
            queue.push(prog_done, (_PROG_DONE, c, w, op_idx))
            log(now, EventKind.BUS_FREE, c, w)
        elif tag == _PROG_DONE:
            chips[c][w].complete_program(now)
            completed += 1
            if now > finish:
                finish = now
            log(now, EventKind.CHIP_PROGRAM_DONE, c, w)
        else:  # _CMD_END
            log(now, EventKind.BUS_FREE, c, w)
        service(now)

    return _Schedule(finish, chan_busy, chip_busy, events)


def run(config: SsdConfig, trace: Trace, log_events: bool = False) -> Stats:
    """Simulate a trace; returns accumulated statistics.

    With ``log_events`` the full event record is kept on ``Stats.events`` and
    per-request memoization is disabled so the log covers every operation.
    """
    if not trace:
        raise EngineError("empty trace")

    stats = Stats(
        per_channel_busy_ps=[0] * config.n_channels,
        per_chip_busy_ps=[0] * config.n_chips,
    )
    log: List[Event] = []
    seq = 0
    clock = 0
    cache: Dict[tuple, _Schedule] = {}
    saw_read = saw_write = False

    for req_no, record in enumerate(trace):
        located = decompose_request(config, record)
        is_write = record.op is OpKind.WRITE
        ops = [(loc, nbytes, is_write) for loc, nbytes in located]

        if log_events:
            sched = _simulate_request(config, ops, want_events=True)
            for rel, kind, c, w in sched.events:
                log.append(Event(clock + rel, seq, kind, c, w, req_no))
                seq += 1
            log.append(Event(clock + sched.duration_ps, seq, EventKind.REQUEST_DONE, -1, -1, req_no))
            seq += 1
        else:
            first_page = record.offset // config.page_size
            key = (is_write, len(ops), first_page % config.n_chips)
            sched = cache.get(key)
            if sched is None:
                sched = _simulate_request(config, ops, want_events=False)
                cache[key] = sched

        for c in range(config.n_channels):
            stats.per_channel_busy_ps[c] += sched.channel_busy_ps[c]
        for i in range(config.n_chips):
            stats.per_chip_busy_ps[i] += sched.chip_busy_ps[i]

        clock += sched.duration_ps
        if is_write:
            stats.bytes_written += record.length
            saw_write = True
        else:
            stats.bytes_read += record.length
            saw_read = True

    stats.elapsed_ps = clock
    seconds = clock * 1e-12
    total = stats.bytes_read + stats.bytes_written
    stats.total_bandwidth = total / seconds
    if saw_read and not saw_write:
        stats.read_bandwidth = stats.bytes_read / seconds
    elif saw_write and not saw_read:
        stats.write_bandwidth = stats.bytes_written / seconds
    if log_events:
        stats.events = log
    return stats
