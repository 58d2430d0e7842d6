"""Request/response models of the simulation service."""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    version: str


class ClockDerivation(BaseModel):
    interface: str
    t_pmin_ns: float
    frequency_mhz: int
    t_p_ns: float
    per_byte_ns: float
    peak_rate_mb_s: float


class TimingRequest(BaseModel):
    # flat config keys (t_out_ns = 7.82, alpha = 0.5, ...); defaults apply
    config: Dict[str, str] = Field(default_factory=dict)


class TimingResponse(BaseModel):
    delayed_clock_offset_ns: float
    dll_delay_ns: float
    tpmin_pad_ns: float
    clocks: List[ClockDerivation]


class SimulateRequest(BaseModel):
    # unset fields fall back to the submitted config (and its defaults)
    cell: Optional[str] = None
    interface: Optional[str] = None
    channels: Optional[int] = None
    ways: Optional[int] = None
    mode: Optional[str] = None   # read | write; ignored when a trace is given
    volume_mb: Optional[int] = None
    chunk_kb: Optional[int] = None
    trace: Optional[List[str]] = None   # inline trace lines override the generator
    config: Dict[str, str] = Field(default_factory=dict)
    log_events: bool = False


class SimulateResponse(BaseModel):
    cell: str
    interface: str
    channels: int
    ways: int
    bandwidth_mb_s: Optional[float]      # reported (host-capped), decimal MB/s
    raw_bandwidth_mb_s: float
    read_bandwidth_mb_s: Optional[float]
    write_bandwidth_mb_s: Optional[float]
    energy_nj_b: float
    capped: bool
    elapsed_ns: float
    bytes_read: int
    bytes_written: int
    event_log: Optional[List[str]] = None


class SweepRequest(BaseModel):
    sweep: List[Tuple[int, int]] = Field(default_factory=lambda: [(1, 1)])
    interfaces: List[str] = Field(default_factory=lambda: ["conv", "sync", "ddr"])
    cells: List[str] = Field(default_factory=lambda: ["slc", "mlc"])
    modes: List[str] = Field(default_factory=lambda: ["write", "read"])
    volume_mb: int = 64
    chunk_kb: int = 64
    config: Dict[str, str] = Field(default_factory=dict)


class SweepRow(BaseModel):
    cell: str
    mode: str
    channels: int
    ways: int
    interface: str
    bandwidth_mb_s: float
    energy_nj_b: float
    capped: bool


class SweepResponse(BaseModel):
    rows: List[SweepRow]
    csv: str


class VerifyRequest(BaseModel):
    tolerance: float = 0.20
    config: Dict[str, str] = Field(default_factory=dict)


class VerifyCheck(BaseModel):
    name: str
    passed: bool
    detail: str


class VerifyResponse(BaseModel):
    passed: bool
    checks: List[VerifyCheck]
    text: str
