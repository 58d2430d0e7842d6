"""Key-value configuration: one flat file drives every knob.

Format: ``key = value`` lines, ``#`` comments.  Every key has a default
matching the reference experimental setup, so an empty config reproduces the
bundled study.

    # interface
    interface = ddr            # conv | sync | ddr
    freq_mhz =                 # blank: derive from the timing parameters
    cmd_cycles = 2
    addr_cycles = 5
    page_overhead_ns =         # sets both of the next two when given
    write_page_overhead_ns = 1500
    read_page_overhead_ns = 4500

    # flash device (defaults depend on cell_kind)
    cell_kind = slc            # slc | mlc
    t_r_ns = 25000
    t_prog_ns = 200000
    t_byte_ns = 12
    page_size_bytes = 2048

    # topology
    channels = 1
    ways = 1
    host_cap_mb_s = 300        # decimal MB/s
    way_major = false

    # board timing (ns; alpha dimensionless)
    t_out_ns = 7.82 ... t_diff_ns = 4.69, alpha = 0.5

    # controller power constants (units of the reference tables)
    power_conv_mw / power_sync_mw / power_ddr_mw

    # workload
    mode = read, chunk_kb = 64, volume_mb = 64
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, Mapping, Optional

from . import bus, reference
from .energy import PowerModel, calibrate_power
from .flash import DEFAULT_PROFILES, CellKind, FlashProfile
from .timing import InterfaceKind, TimingParams, resolve_clock
from .topology import DEFAULT_HOST_CAP_BYTES_PER_S, SsdConfig
from .workload import DEFAULT_CHUNK_BYTES, DEFAULT_VOLUME_BYTES


class ConfigError(ValueError):
    pass


def parse_config_text(lines: Iterable[str]) -> Dict[str, str]:
    values: Dict[str, str] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip().lower()] = value.strip()
    return values


def load_config(path: str | Path) -> Dict[str, str]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh)


def _default_powers() -> Dict[InterfaceKind, float]:
    energy, bandwidth = reference.energy_bandwidth_tables()
    powers, _dev = calibrate_power(energy, bandwidth)
    return powers


_TIMING_KEYS = {
    "t_out_ns": "t_out", "t_in_ns": "t_in", "t_s_ns": "t_s", "t_h_ns": "t_h",
    "t_ds_ns": "t_ds", "t_dh_ns": "t_dh", "t_rea_ns": "t_rea",
    "t_byte_ns": "t_byte", "t_diff_ns": "t_diff", "t_ios_ns": "t_ios",
    "t_ioh_ns": "t_ioh", "t_iod_max_ns": "t_iod_max",
    "t_rwebd_min_ns": "t_rwebd_min", "alpha": "alpha",
}

_BOOL_TRUE = {"1", "true", "yes", "on"}
_BOOL_FALSE = {"0", "false", "no", "off", ""}


def _get_bool(values: Mapping[str, str], key: str, default: bool) -> bool:
    raw = values.get(key)
    if raw is None:
        return default
    low = raw.lower()
    if low in _BOOL_TRUE:
        return True
    if low in _BOOL_FALSE:
        return False
    raise ConfigError(f"{key}: expected a boolean, got {raw!r}")


def _get_int(values: Mapping[str, str], key: str, default: Optional[int]) -> Optional[int]:
    raw = values.get(key)
    if raw in (None, ""):
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {raw!r}") from None


def _get_float(values: Mapping[str, str], key: str, default: Optional[float]) -> Optional[float]:
    raw = values.get(key)
    if raw in (None, ""):
        return default
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {raw!r}") from None


@dataclass
class Settings:
    """Everything a simulation run needs, resolved from config text."""

    timing: TimingParams
    cmd_cycles: int
    addr_cycles: int
    write_page_overhead_ns: float
    read_page_overhead_ns: float
    freq_mhz_override: Optional[int]
    profiles: Dict[CellKind, FlashProfile]
    host_cap_bytes_per_s: float
    way_major: bool
    chip_capacity_pages: Optional[int]
    power_model: PowerModel
    interface: InterfaceKind = InterfaceKind.DDR
    cell_kind: CellKind = CellKind.SLC
    channels: int = 1
    ways: int = 1
    mode: str = "read"
    chunk_bytes: int = DEFAULT_CHUNK_BYTES
    volume_bytes: int = DEFAULT_VOLUME_BYTES
    log_events: bool = False

    def protocol_for(self, kind: InterfaceKind) -> bus.BusProtocol:
        clock = resolve_clock(kind, self.timing, self.freq_mhz_override)
        return bus.make_protocol(
            clock,
            cmd_cycles=self.cmd_cycles,
            addr_cycles=self.addr_cycles,
            write_page_overhead_ns=self.write_page_overhead_ns,
            read_page_overhead_ns=self.read_page_overhead_ns,
        )

    def ssd_config(self, kind: InterfaceKind, cell: CellKind,
                   channels: int, ways: int) -> SsdConfig:
        return SsdConfig(
            n_channels=channels,
            n_ways=ways,
            protocol=self.protocol_for(kind),
            profile=self.profiles[cell],
            host_cap=self.host_cap_bytes_per_s,
            way_major=self.way_major,
            chip_capacity_pages=self.chip_capacity_pages,
        )


def settings_from_values(values: Mapping[str, str] | None = None) -> Settings:
    values = dict(values or {})

    timing_kwargs = {}
    for key, fieldname in _TIMING_KEYS.items():
        if key in values and values[key] != "":
            timing_kwargs[fieldname] = values[key]
    timing = TimingParams.from_values(**timing_kwargs) if timing_kwargs else TimingParams()

    shared_overhead = _get_float(values, "page_overhead_ns", None)
    write_overhead = _get_float(values, "write_page_overhead_ns",
                                shared_overhead if shared_overhead is not None
                                else bus.DEFAULT_WRITE_OVERHEAD_NS)
    read_overhead = _get_float(values, "read_page_overhead_ns",
                               shared_overhead if shared_overhead is not None
                               else bus.DEFAULT_READ_OVERHEAD_NS)

    profiles = dict(DEFAULT_PROFILES)
    profile_keys = ("t_r_ns", "t_prog_ns", "t_byte_ns", "page_size_bytes")
    if any(k in values for k in profile_keys) or "cell_kind" in values:
        cell = CellKind.parse(values.get("cell_kind", "slc"))
        base = profiles[cell]
        profiles[cell] = FlashProfile.from_values(
            cell,
            values.get("t_r_ns", base.t_r),
            values.get("t_prog_ns", base.t_prog),
            values.get("t_byte_ns", base.t_byte),
            _get_int(values, "page_size_bytes", base.page_size),
        )

    powers = _default_powers()
    for key, kind in (("power_conv_mw", InterfaceKind.CONV),
                      ("power_sync_mw", InterfaceKind.SYNC),
                      ("power_ddr_mw", InterfaceKind.DDR)):
        override = _get_float(values, key, None)
        if override is not None:
            powers[kind] = override

    host_cap_mb = _get_float(values, "host_cap_mb_s", None)
    host_cap = (host_cap_mb * 1e6) if host_cap_mb is not None else DEFAULT_HOST_CAP_BYTES_PER_S

    chunk_kb = _get_int(values, "chunk_kb", None)
    volume_mb = _get_int(values, "volume_mb", None)

    return Settings(
        timing=timing,
        cmd_cycles=_get_int(values, "cmd_cycles", bus.DEFAULT_CMD_CYCLES),
        addr_cycles=_get_int(values, "addr_cycles", bus.DEFAULT_ADDR_CYCLES),
        write_page_overhead_ns=write_overhead,
        read_page_overhead_ns=read_overhead,
        freq_mhz_override=_get_int(values, "freq_mhz", None),
        profiles=profiles,
        host_cap_bytes_per_s=host_cap,
        way_major=_get_bool(values, "way_major", False),
        chip_capacity_pages=_get_int(values, "chip_capacity_pages", None),
        power_model=PowerModel(power_units=powers),
        interface=InterfaceKind.parse(values.get("interface", "ddr")),
        cell_kind=CellKind.parse(values.get("cell_kind", "slc")),
        channels=_get_int(values, "channels", 1),
        ways=_get_int(values, "ways", 1),
        mode=values.get("mode", "read"),
        chunk_bytes=(chunk_kb * 1024) if chunk_kb is not None else DEFAULT_CHUNK_BYTES,
        volume_bytes=(volume_mb * 1024 * 1024) if volume_mb is not None else DEFAULT_VOLUME_BYTES,
        log_events=_get_bool(values, "log_events", False),
    )


def settings_from_file(path: str | Path | None) -> Settings:
    if path is None:
        return settings_from_values({})
    return settings_from_values(load_config(path))
