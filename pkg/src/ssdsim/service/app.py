"""HTTP face of the simulator.

The service is stateless: every request carries its full configuration, runs
a deterministic simulation and returns the numbers.  The CLI is a thin client
of these endpoints (in-process by default, remote with ``--server``).
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..bus import channel_peak_rate
from ..config import ConfigError, settings_from_values
from ..engine import EngineError, run
from ..experiments import (ExperimentPlan, PlanError, channel_sweep_plan,
                           rows_to_csv, run_plan, way_sweep_plan)
from ..flash import CellKind, FlashError
from ..timing import (InterfaceKind, TimingError, delayed_clock_offset,
                      dll_delay, resolve_clock, tpmin_conventional,
                      tpmin_proposed_board, tpmin_proposed_pad)
from ..topology import TopologyError, apply_host_cap
from ..verify import compare_tables
from ..workload import OpKind, TraceError, gen_sequential, parse_trace
from .schemas import (ClockDerivation, HealthResponse, SimulateRequest,
                      SimulateResponse, SweepRequest, SweepResponse, SweepRow,
                      TimingRequest, TimingResponse, VerifyCheck,
                      VerifyRequest, VerifyResponse)

_USER_ERRORS = (ConfigError, TraceError, TopologyError, PlanError,
                TimingError, FlashError, EngineError, ValueError)


def create_app() -> FastAPI:
    app = FastAPI(title="ssdsim", version=__version__,
                  description="Trace-driven simulator of SSD internals")

    @app.get("/health", response_model=HealthResponse)
    def health():
        return HealthResponse(status="ok", version=__version__)

    @app.post("/timing", response_model=TimingResponse)
    def timing(req: TimingRequest):
        try:
            settings = settings_from_values(req.config)
            p = settings.timing
            clocks = []
            for kind in InterfaceKind:
                if kind is InterfaceKind.CONV:
                    t_pmin = tpmin_conventional(p)
                else:
                    t_pmin = tpmin_proposed_board(p.t_s, p.t_h, p.t_diff, p.t_byte)
                spec = resolve_clock(kind, p, settings.freq_mhz_override)
                proto = settings.protocol_for(kind)
                clocks.append(ClockDerivation(
                    interface=kind.value,
                    t_pmin_ns=float(t_pmin),
                    frequency_mhz=spec.frequency_mhz,
                    t_p_ns=float(spec.t_p_ns),
                    per_byte_ns=float(proto.per_byte_ps) / 1000.0,
                    peak_rate_mb_s=channel_peak_rate(proto) / 1e6,
                ))
            conv_clock = resolve_clock(InterfaceKind.CONV, p, settings.freq_mhz_override)
            return TimingResponse(
                delayed_clock_offset_ns=float(delayed_clock_offset(p.alpha, conv_clock.t_p_ns)),
                dll_delay_ns=float(dll_delay(p.t_iod_max, p.t_rwebd_min, p.t_ios)),
                tpmin_pad_ns=float(tpmin_proposed_pad(p.t_ios, p.t_ioh, p.t_byte)),
                clocks=clocks,
            )
        except _USER_ERRORS as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/simulate", response_model=SimulateResponse)
    def simulate(req: SimulateRequest):
        try:
            settings = settings_from_values(req.config)
            interface = (InterfaceKind.parse(req.interface) if req.interface
                         else settings.interface)
            cell = CellKind.parse(req.cell) if req.cell else settings.cell_kind
            channels = req.channels if req.channels is not None else settings.channels
            ways = req.ways if req.ways is not None else settings.ways
            config = settings.ssd_config(interface, cell, channels, ways)
            if req.trace is not None:
                trace = parse_trace(req.trace)
            else:
                volume = (req.volume_mb * 1024 * 1024) if req.volume_mb else settings.volume_bytes
                chunk = (req.chunk_kb * 1024) if req.chunk_kb else settings.chunk_bytes
                trace = gen_sequential(volume, chunk, OpKind.parse(req.mode or settings.mode))
            stats = run(config, trace, log_events=req.log_events)
            raw = stats.total_bandwidth
            apply_host_cap(stats, config)
            reported = stats.read_bandwidth if stats.read_bandwidth is not None else stats.write_bandwidth
            return SimulateResponse(
                cell=cell.value, interface=interface.value,
                channels=channels, ways=ways,
                bandwidth_mb_s=None if reported is None else reported / 1e6,
                raw_bandwidth_mb_s=raw / 1e6,
                read_bandwidth_mb_s=None if stats.read_bandwidth is None else stats.read_bandwidth / 1e6,
                write_bandwidth_mb_s=None if stats.write_bandwidth is None else stats.write_bandwidth / 1e6,
                energy_nj_b=settings.power_model.energy_for(interface, raw),
                capped=stats.capped,
                elapsed_ns=stats.elapsed_ns,
                bytes_read=stats.bytes_read,
                bytes_written=stats.bytes_written,
                event_log=None if stats.events is None else [e.as_log_line() for e in stats.events],
            )
        except _USER_ERRORS as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/sweep", response_model=SweepResponse)
    def sweep(req: SweepRequest):
        try:
            settings = settings_from_values(req.config)
            plan = ExperimentPlan(
                sweep=tuple((int(c), int(w)) for c, w in req.sweep),
                interfaces=tuple(InterfaceKind.parse(s) for s in req.interfaces),
                cells=tuple(CellKind.parse(s) for s in req.cells),
                modes=tuple(OpKind.parse(s) for s in req.modes),
                volume_bytes=req.volume_mb * 1024 * 1024,
                chunk_bytes=req.chunk_kb * 1024,
            )
            rows = run_plan(plan, settings)
            return SweepResponse(
                rows=[SweepRow(
                    cell=r.cell.value, mode="read" if r.mode is OpKind.READ else "write",
                    channels=r.channels, ways=r.ways, interface=r.interface.value,
                    bandwidth_mb_s=r.bandwidth_mb_s, energy_nj_b=r.energy_nj_b,
                    capped=r.capped,
                ) for r in rows],
                csv=rows_to_csv(rows),
            )
        except _USER_ERRORS as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest):
        try:
            settings = settings_from_values(req.config)
            rows = run_plan(way_sweep_plan(), settings)
            rows += run_plan(channel_sweep_plan(), settings)
            report = compare_tables(rows, tolerance=req.tolerance,
                                    host_cap_bytes_per_s=settings.host_cap_bytes_per_s)
            return VerifyResponse(
                passed=report.passed,
                checks=[VerifyCheck(name=c.name, passed=c.passed, detail=c.detail)
                        for c in report.checks],
                text=report.text(),
            )
        except _USER_ERRORS as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    return app
