"""Experiment plans: cartesian sweeps over cells, modes, topology, interfaces.

``run_plan`` produces one result row per (cell, mode, channels, ways,
interface) in plan order.  Rows serialize to the CSV schema::

    cell,mode,channels,ways,interface,bandwidth_mb_s,energy_nj_b,capped

``bandwidth_mb_s`` is the host-capped rate in decimal MB/s.  ``energy_nj_b``
divides the calibrated controller power by the achieved (uncapped) rate.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .config import Settings, settings_from_values
from .engine import run
from .flash import CellKind
from .timing import InterfaceKind
from .topology import apply_host_cap
from .workload import OpKind, gen_sequential

CSV_HEADER = "cell,mode,channels,ways,interface,bandwidth_mb_s,energy_nj_b,capped"


class PlanError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentPlan:
    sweep: Tuple[Tuple[int, int], ...]            # (channels, ways) pairs
    interfaces: Tuple[InterfaceKind, ...]
    cells: Tuple[CellKind, ...]
    modes: Tuple[OpKind, ...]
    volume_bytes: int
    chunk_bytes: int

    def __post_init__(self):
        if not (self.sweep and self.interfaces and self.cells and self.modes):
            raise PlanError("plan must name at least one sweep point, interface, cell and mode")
        if self.volume_bytes < self.chunk_bytes or self.volume_bytes % self.chunk_bytes:
            raise PlanError("volume must be a positive multiple of the chunk size")

    @property
    def n_rows(self) -> int:
        return len(self.cells) * len(self.modes) * len(self.sweep) * len(self.interfaces)


def way_sweep_plan(volume_bytes: int = 64 * 1024 * 1024,
                   chunk_bytes: int = 64 * 1024,
                   channels: int = 1,
                   ways: Sequence[int] = (1, 2, 4, 8, 16)) -> ExperimentPlan:
    """The reference study's way-interleaving sweep: 60 rows at defaults."""
    return ExperimentPlan(
        sweep=tuple((channels, w) for w in ways),
        interfaces=(InterfaceKind.CONV, InterfaceKind.SYNC, InterfaceKind.DDR),
        cells=(CellKind.SLC, CellKind.MLC),
        modes=(OpKind.WRITE, OpKind.READ),
        volume_bytes=volume_bytes,
        chunk_bytes=chunk_bytes,
    )


def channel_sweep_plan(volume_bytes: int = 64 * 1024 * 1024,
                       chunk_bytes: int = 64 * 1024) -> ExperimentPlan:
    """Constant-capacity channel/way trade: 16 chips arranged three ways."""
    return ExperimentPlan(
        sweep=((1, 16), (2, 8), (4, 4)),
        interfaces=(InterfaceKind.CONV, InterfaceKind.SYNC, InterfaceKind.DDR),
        cells=(CellKind.SLC, CellKind.MLC),
        modes=(OpKind.WRITE, OpKind.READ),
        volume_bytes=volume_bytes,
        chunk_bytes=chunk_bytes,
    )


@dataclass
class ResultRow:
    cell: CellKind
    mode: OpKind
    channels: int
    ways: int
    interface: InterfaceKind
    raw_bytes_per_s: float       # achieved internal rate
    bytes_per_s: float           # after the host-link ceiling
    energy_nj_b: float
    capped: bool

    @property
    def bandwidth_mb_s(self) -> float:
        return self.bytes_per_s / 1e6

    def as_csv(self) -> str:
        return (f"{self.cell.value},{self.mode.value},{self.channels},{self.ways},"
                f"{self.interface.value},{self.bandwidth_mb_s:.2f},"
                f"{self.energy_nj_b:.3f},{str(self.capped).lower()}")


def run_single(settings: Settings, interface: InterfaceKind, cell: CellKind,
               channels: int, ways: int, mode: OpKind,
               volume_bytes: int, chunk_bytes: int) -> ResultRow:
    config = settings.ssd_config(interface, cell, channels, ways)
    trace = gen_sequential(volume_bytes, chunk_bytes, mode)
    stats = run(config, trace)
    raw = stats.total_bandwidth
    apply_host_cap(stats, config)
    reported = (stats.read_bandwidth if mode is OpKind.READ else stats.write_bandwidth)
    energy = settings.power_model.energy_for(interface, raw)
    return ResultRow(
        cell=cell, mode=mode, channels=channels, ways=ways, interface=interface,
        raw_bytes_per_s=raw, bytes_per_s=float(reported),
        energy_nj_b=energy, capped=stats.capped,
    )


def run_plan(plan: ExperimentPlan, settings: Settings | None = None) -> List[ResultRow]:
    settings = settings or settings_from_values({})
    rows: List[ResultRow] = []
    for cell in plan.cells:
        for mode in plan.modes:
            for channels, ways in plan.sweep:
                for interface in plan.interfaces:
                    try:
                        rows.append(run_single(settings, interface, cell, channels,
                                               ways, mode, plan.volume_bytes,
                                               plan.chunk_bytes))
                    except Exception as exc:
                        raise PlanError(
                            f"run failed for cell={cell.value} mode={mode.value} "
                            f"channels={channels} ways={ways} interface={interface.value}: {exc}"
                        ) from exc
    return rows


def rows_to_csv(rows: Sequence[ResultRow]) -> str:
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for row in rows:
        out.write(row.as_csv() + "\n")
    return out.getvalue()


def plan_from_dict(payload: Dict) -> ExperimentPlan:
    """Build a plan from a parsed JSON object (the ``sweep`` plan-file format)."""
    try:
        sweep = tuple((int(c), int(w)) for c, w in payload["sweep"])
        interfaces = tuple(InterfaceKind.parse(s) for s in payload["interfaces"])
        cells = tuple(CellKind.parse(s) for s in payload["cells"])
        modes = tuple(OpKind.parse(s) for s in payload["modes"])
    except KeyError as exc:
        raise PlanError(f"plan file missing key: {exc}") from None
    return ExperimentPlan(
        sweep=sweep, interfaces=interfaces, cells=cells, modes=modes,
        volume_bytes=int(payload.get("volume_bytes", 64 * 1024 * 1024)),
        chunk_bytes=int(payload.get("chunk_bytes", 64 * 1024)),
    )
