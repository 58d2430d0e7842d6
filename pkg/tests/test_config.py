"""Config file parsing and settings resolution."""

import pytest

from ssdsim.config import (ConfigError, parse_config_text, settings_from_file,
                           settings_from_values)
from ssdsim.flash import CellKind
from ssdsim.timing import InterfaceKind


class TestParsing:
    def test_key_value_lines(self):
        values = parse_config_text(["channels = 4", "ways=2  # four by two"])
        assert values == {"channels": "4", "ways": "2"}

    def test_comments_and_blanks(self):
        assert parse_config_text(["# all defaults", "", "   "]) == {}

    def test_missing_equals_rejected(self):
        with pytest.raises(ConfigError, match="line 1"):
            parse_config_text(["channels 4"])

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "sim.cfg"
        path.write_text("interface = sync\nvolume_mb = 8\n")
        settings = settings_from_file(path)
        assert settings.interface is InterfaceKind.SYNC
        assert settings.volume_bytes == 8 << 20

    def test_no_file_means_defaults(self):
        assert settings_from_file(None).channels == 1


class TestDefaults:
    def test_overheads(self):
        s = settings_from_values({})
        assert s.write_page_overhead_ns == 1500
        assert s.read_page_overhead_ns == 4500

    def test_shared_overhead_key_sets_both(self):
        s = settings_from_values({"page_overhead_ns": "6000"})
        assert s.write_page_overhead_ns == 6000
        assert s.read_page_overhead_ns == 6000

    def test_split_key_wins_over_shared(self):
        s = settings_from_values({"page_overhead_ns": "6000",
                                  "read_page_overhead_ns": "5000"})
        assert s.write_page_overhead_ns == 6000
        assert s.read_page_overhead_ns == 5000

    def test_power_constants_calibrated(self):
        s = settings_from_values({})
        powers = s.power_model.power_units
        assert powers[InterfaceKind.CONV] == pytest.approx(22.607, abs=0.001)
        assert powers[InterfaceKind.DDR] == pytest.approx(46.705, abs=0.001)

    def test_power_override(self):
        s = settings_from_values({"power_ddr_mw": "50"})
        assert s.power_model.power_units[InterfaceKind.DDR] == 50.0


class TestProfileOverrides:
    def test_mlc_profile_fields(self):
        s = settings_from_values({"cell_kind": "mlc", "t_prog_ns": "600000"})
        prof = s.profiles[CellKind.MLC]
        assert prof.t_prog_ps == 600_000_000
        assert prof.page_size == 4096  # untouched default
        # other cell kind keeps its stock profile
        assert s.profiles[CellKind.SLC].t_prog_ps == 200_000_000

    def test_bad_value_reported_with_key(self):
        with pytest.raises(ConfigError, match="channels"):
            settings_from_values({"channels": "many"})

    def test_bad_bool_reported(self):
        with pytest.raises(ConfigError, match="way_major"):
            settings_from_values({"way_major": "maybe"})

    def test_freq_override_flows_to_clock(self):
        s = settings_from_values({"freq_mhz": "40", "interface": "conv"})
        proto = s.protocol_for(InterfaceKind.CONV)
        assert proto.clock.frequency_mhz == 40
