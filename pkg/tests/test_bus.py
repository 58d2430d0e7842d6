"""Channel phase costs per protocol."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ssdsim.bus import (BusError, BusProtocol, channel_peak_rate,
                        make_protocol, page_read_bus_time, page_write_bus_time)
from ssdsim.timing import InterfaceKind, TimingParams, resolve_clock

BOARD = TimingParams()
CONV = resolve_clock(InterfaceKind.CONV, BOARD)
SYNC = resolve_clock(InterfaceKind.SYNC, BOARD)
DDR = resolve_clock(InterfaceKind.DDR, BOARD)


def proto(clock, cmd=2, addr=5, w_ovh=0, r_ovh=0):
    return make_protocol(clock, cmd_cycles=cmd, addr_cycles=addr,
                         write_page_overhead_ns=w_ovh, read_page_overhead_ns=r_ovh)


class TestPageWriteTime:
    def test_conventional_page_with_seven_cycles(self):
        p = proto(CONV)
        assert page_write_bus_time(p, 2048) == 7 * 20 + 2048 * 20  # 41_100 ns

    def test_ddr_page_no_overhead_cycles(self):
        p = proto(DDR, cmd=0, addr=0)
        assert page_write_bus_time(p, 2048) == 2048 * Fraction("6.024")  # 12_337.152 ns

    def test_zero_page_rejected(self):
        with pytest.raises(BusError):
            page_write_bus_time(proto(CONV), 0)


class TestPageReadTime:
    def test_conventional_with_controller_overhead(self):
        p = proto(CONV, cmd=0, addr=0, r_ovh=6000)
        assert page_read_bus_time(p, 2048) == 2048 * 20 + 6000  # 46_960 ns

    def test_ddr_with_controller_overhead(self):
        p = proto(DDR, cmd=0, addr=0, r_ovh=6000)
        assert page_read_bus_time(p, 2048) == 2048 * Fraction("6.024") + 6000

    def test_sync_single_byte_is_one_cycle(self):
        p = proto(SYNC, cmd=0, addr=0)
        assert page_read_bus_time(p, 1) == Fraction("12.048")


class TestPeakRate:
    def test_conventional_50_mb_s(self):
        assert channel_peak_rate(proto(CONV)) == pytest.approx(50e6)

    def test_ddr_166_mb_s(self):
        assert channel_peak_rate(proto(DDR)) == pytest.approx(1e12 / 6024)

    def test_sync_83_mb_s(self):
        assert channel_peak_rate(proto(SYNC)) == pytest.approx(1e12 / 12048)


class TestProperties:
    @given(page=st.integers(min_value=2, max_value=1 << 16))
    def test_ddr_strictly_beats_sync_at_equal_clock(self, page):
        sync_p, ddr_p = proto(SYNC), proto(DDR)
        assert page_write_bus_time(ddr_p, page) < page_write_bus_time(sync_p, page)
        assert page_read_bus_time(ddr_p, page) < page_read_bus_time(sync_p, page)

    @given(page=st.integers(min_value=1, max_value=1 << 16),
           extra=st.integers(min_value=1, max_value=4096))
    def test_page_time_affine_in_size(self, page, extra):
        p = proto(CONV, w_ovh=1500, r_ovh=4500)
        slope_w = page_write_bus_time(p, page + extra) - page_write_bus_time(p, page)
        slope_r = page_read_bus_time(p, page + extra) - page_read_bus_time(p, page)
        per_byte_ns = Fraction(20)
        assert slope_w == extra * per_byte_ns
        assert slope_r == extra * per_byte_ns

    def test_negative_overhead_rejected(self):
        with pytest.raises(BusError):
            make_protocol(CONV, write_page_overhead_ns=-1)

    def test_negative_cycles_rejected(self):
        with pytest.raises(BusError):
            BusProtocol(clock=CONV, addr_cycles=-1)
