"""SSD-level composition: channels x ways, page striping, host-link ceiling.

Logical pages stripe channel-major: consecutive pages land on distinct
channels first, then on distinct ways within a channel, so a sequential
request spreads across every independent resource as fast as possible.  The
stripe unit is one page.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .bus import BusProtocol
from .flash import FlashProfile
from .workload import TraceRecord

DEFAULT_HOST_CAP_BYTES_PER_S = 300_000_000  # 3 Gbit/s serial host link


class TopologyError(ValueError):
    pass


@dataclass(frozen=True)
class PageLocation:
    channel: int
    way: int
    page: int


@dataclass(frozen=True)
class SsdConfig:
    n_channels: int
    n_ways: int
    protocol: BusProtocol
    profile: FlashProfile
    host_cap: float = DEFAULT_HOST_CAP_BYTES_PER_S  # bytes per second
    way_major: bool = False  # sensitivity switch: stripe ways before channels
    chip_capacity_pages: Optional[int] = None  # None: capacity unmodeled

    def __post_init__(self):
        if self.n_channels < 1 or self.n_ways < 1:
            raise TopologyError("need at least one channel and one way")
        if self.host_cap <= 0:
            raise TopologyError("host_cap must be > 0")
        if self.chip_capacity_pages is not None and self.chip_capacity_pages < 1:
            raise TopologyError("chip_capacity_pages must be >= 1 when set")

    @property
    def n_chips(self) -> int:
        return self.n_channels * self.n_ways

    @property
    def page_size(self) -> int:
        return self.profile.page_size


def map_page(config: SsdConfig, logical_page: int) -> PageLocation:
    """Channel-major round-robin striping (way-major behind the config switch)."""
    if logical_page < 0:
        raise TopologyError("logical page must be >= 0")
    if config.way_major:
        way = logical_page % config.n_ways
        channel = (logical_page // config.n_ways) % config.n_channels
    else:
        channel = logical_page % config.n_channels
        way = (logical_page // config.n_channels) % config.n_ways
    page = logical_page // config.n_chips
    return PageLocation(channel=channel, way=way, page=page)


def decompose_request(config: SsdConfig, record: TraceRecord) -> List[Tuple[PageLocation, int]]:
    """Split a host request into per-page operations in logical-page order.

    Requests must be page-aligned; the workloads this models issue chunk
    sizes that are whole multiples of the page.
    """
    page = config.page_size
    if record.length <= 0:
        raise TopologyError("zero-length request")
    if record.offset % page or record.length % page:
        raise TopologyError(
            f"request (offset={record.offset}, length={record.length}) "
            f"not aligned to {page}-byte pages"
        )
    first = record.offset // page
    count = record.length // page
    located = [(map_page(config, first + i), page) for i in range(count)]
    if config.chip_capacity_pages is not None:
        beyond = [loc for loc, _ in located if loc.page >= config.chip_capacity_pages]
        if beyond:
            raise TopologyError(
                f"request reaches page {beyond[0].page} on a chip of "
                f"{config.chip_capacity_pages} pages")
    return located


def apply_host_cap(stats: "Stats", config: SsdConfig) -> "Stats":
    """Clamp reported bandwidths to the host link; flags whether it bound.

    The host link is a reporting ceiling, not a modeled queue: the reference
    measurements only show it as saturated table entries.
    """
    capped = False
    for attr in ("read_bandwidth", "write_bandwidth"):
        raw = getattr(stats, attr)
        if raw is not None and raw > config.host_cap:
            setattr(stats, attr, float(config.host_cap))
            capped = True
    stats.capped = capped
    return stats
