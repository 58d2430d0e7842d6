"""Page striping, request decomposition, host-link ceiling."""

import pytest
from hypothesis import given, strategies as st

from ssdsim.config import settings_from_values
from ssdsim.engine import Stats
from ssdsim.flash import CellKind
from ssdsim.timing import InterfaceKind
from ssdsim.topology import (PageLocation, TopologyError, apply_host_cap,
                             decompose_request, map_page)
from ssdsim.workload import OpKind, TraceRecord


def make_config(channels=1, ways=1, cell=CellKind.SLC, host_cap_mb=300, way_major=False):
    settings = settings_from_values({"way_major": "true" if way_major else "false",
                                     "host_cap_mb_s": str(host_cap_mb)})
    return settings.ssd_config(InterfaceKind.DDR, cell, channels, ways)


class TestMapPage:
    def test_identity(self):
        assert map_page(make_config(4, 4), 0) == PageLocation(0, 0, 0)

    def test_channel_major_order(self):
        assert map_page(make_config(4, 4), 5) == PageLocation(1, 1, 0)

    def test_single_channel_many_ways(self):
        assert map_page(make_config(1, 16), 17) == PageLocation(0, 1, 1)

    def test_negative_page_rejected(self):
        with pytest.raises(TopologyError):
            map_page(make_config(2, 2), -1)

    @given(channels=st.integers(1, 4), ways=st.integers(1, 16),
           planes=st.integers(1, 4))
    def test_bijection(self, channels, ways, planes):
        config = make_config(channels, ways)
        total = channels * ways * planes
        seen = {(loc.channel, loc.way, loc.page)
                for loc in (map_page(config, p) for p in range(total))}
        assert len(seen) == total
        for c, w, pg in seen:
            assert c < channels and w < ways and pg < planes

    @given(channels=st.integers(1, 4), ways=st.integers(1, 16),
           page=st.integers(0, 10_000), way_major=st.booleans())
    def test_consecutive_pages_hit_distinct_chips(self, channels, ways, page, way_major):
        if channels * ways < 2:
            return
        config = make_config(channels, ways, way_major=way_major)
        a, b = map_page(config, page), map_page(config, page + 1)
        assert (a.channel, a.way) != (b.channel, b.way)


class TestDecompose:
    def test_64k_chunk_on_slc(self):
        ops = decompose_request(make_config(1, 16), TraceRecord(OpKind.WRITE, 0, 65536))
        assert len(ops) == 32
        assert all(n == 2048 for _loc, n in ops)
        assert [loc.way for loc, _ in ops[:17]] == [i % 16 for i in range(17)]

    def test_64k_chunk_on_mlc(self):
        ops = decompose_request(make_config(1, 16, cell=CellKind.MLC),
                                TraceRecord(OpKind.READ, 0, 65536))
        assert len(ops) == 16

    def test_single_page(self):
        ops = decompose_request(make_config(2, 2), TraceRecord(OpKind.READ, 2048, 2048))
        assert len(ops) == 1 and ops[0][0] == PageLocation(1, 0, 0)

    def test_unaligned_rejected(self):
        with pytest.raises(TopologyError):
            decompose_request(make_config(1, 1), TraceRecord(OpKind.WRITE, 100, 2048))
        with pytest.raises(TopologyError):
            decompose_request(make_config(1, 1), TraceRecord(OpKind.WRITE, 0, 1000))

    def test_capacity_bound_enforced(self):
        settings = settings_from_values({"chip_capacity_pages": "2"})
        config = settings.ssd_config(InterfaceKind.DDR, CellKind.SLC, 1, 2)
        ok = TraceRecord(OpKind.WRITE, 0, 4 * 2048)       # pages 0..1 per chip
        decompose_request(config, ok)
        too_big = TraceRecord(OpKind.WRITE, 0, 6 * 2048)  # page 2 on chip 0
        with pytest.raises(TopologyError, match="capacity|pages"):
            decompose_request(config, too_big)


class TestHostCap:
    def _stats(self, read_bps):
        return Stats(bytes_read=1, elapsed_ps=1, read_bandwidth=read_bps,
                     total_bandwidth=read_bps)

    def test_uncapped_below_ceiling(self):
        config = make_config(host_cap_mb=300)
        stats = apply_host_cap(self._stats(117.59e6), config)
        assert stats.read_bandwidth == 117.59e6 and not stats.capped

    def test_capped_above_ceiling(self):
        config = make_config(host_cap_mb=300)
        stats = apply_host_cap(self._stats(350e6), config)
        assert stats.read_bandwidth == 300e6 and stats.capped

    def test_zero_bandwidth_passthrough(self):
        config = make_config(host_cap_mb=300)
        stats = Stats(total_bandwidth=0.0)
        assert not apply_host_cap(stats, config).capped

    def test_invalid_topology_rejected(self):
        with pytest.raises(TopologyError):
            make_config(0, 4)
