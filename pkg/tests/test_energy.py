"""Power constants and energy-per-byte arithmetic."""

import pytest

from ssdsim import reference
from ssdsim.energy import (MIB, EnergyError, PowerModel, calibrate_power,
                           energy_per_byte)
from ssdsim.timing import InterfaceKind

CONV, SYNC, DDR = InterfaceKind.CONV, InterfaceKind.SYNC, InterfaceKind.DDR


class TestEnergyPerByte:
    def test_reference_single_way_write(self):
        assert energy_per_byte(22.5, 7.77e6) == pytest.approx(2.90, abs=0.01)

    def test_reference_sixteen_way_write(self):
        assert energy_per_byte(46.6, 97.35e6) == pytest.approx(0.479, abs=0.001)

    def test_unit_identity(self):
        assert energy_per_byte(1.0, 1e6) == 1.0

    def test_zero_bandwidth_rejected(self):
        with pytest.raises(EnergyError):
            energy_per_byte(22.5, 0.0)

    def test_product_recovers_power(self):
        power = 42.115
        for bw in (8.38e6, 67.11e6, 1e6):
            assert energy_per_byte(power, bw) * bw / 1e6 == pytest.approx(power)


class TestCalibration:
    # independent oracle: elementwise products of the reference energy and
    # bandwidth columns, averaged per interface by plain arithmetic
    def expected_power(self, kind):
        products = []
        for key, row in reference.ENERGY.items():
            products.append(row[kind] * reference.WAY_SWEEP[key][kind])
        return sum(products) / len(products)

    def test_constants_match_elementwise_products(self):
        powers, deviations = calibrate_power(*reference.energy_bandwidth_tables())
        assert powers[CONV] == pytest.approx(self.expected_power(CONV))
        assert powers[SYNC] == pytest.approx(self.expected_power(SYNC))
        assert powers[DDR] == pytest.approx(self.expected_power(DDR))
        # the products are flat: that's what justifies a constant-power model
        assert all(dev < 0.03 for dev in deviations.values())

    def test_reference_magnitudes(self):
        powers, _ = calibrate_power(*reference.energy_bandwidth_tables())
        assert powers[CONV] == pytest.approx(22.5, rel=0.01)
        assert powers[SYNC] == pytest.approx(42.1, rel=0.01)
        assert powers[DDR] == pytest.approx(46.6, rel=0.01)

    def test_empty_intersection_rejected(self):
        with pytest.raises(EnergyError):
            calibrate_power({(CONV, 1): 2.9}, {(CONV, 2): 7.77})

    def test_spot_products(self):
        # 2.90 * 7.77 and 0.57 * 39.76 both sit near the CONV constant
        assert 2.90 * 7.77 == pytest.approx(22.5, rel=0.01)
        assert 0.57 * 39.76 == pytest.approx(22.5, rel=0.02)
        assert 5.01 * 8.38 == pytest.approx(42.1, rel=0.01)
        assert 5.47 * 8.50 == pytest.approx(46.6, rel=0.01)


class TestPowerModel:
    def test_energy_decreases_with_bandwidth(self):
        model = PowerModel(power_units={DDR: 46.7})
        energies = [model.energy_for(DDR, bw) for bw in (10e6, 50e6, 100e6, 300e6)]
        assert energies == sorted(energies, reverse=True)

    def test_table_unit_pairing(self):
        model = PowerModel(power_units={CONV: 22.607})
        # a rate of exactly one table-megabyte per second costs the constant
        assert model.energy_for(CONV, MIB) == pytest.approx(22.607)

    def test_crossover_threshold(self):
        # ddr costs more per byte until its bandwidth advantage over conv
        # exceeds the power ratio (~2.07x)
        model = PowerModel(power_units={CONV: 22.607, DDR: 46.705})
        ratio = 46.705 / 22.607
        conv_bw = 40e6
        assert model.energy_for(DDR, conv_bw * (ratio - 0.1)) > model.energy_for(CONV, conv_bw)
        assert model.energy_for(DDR, conv_bw * (ratio + 0.1)) < model.energy_for(CONV, conv_bw)

    def test_nonpositive_power_rejected(self):
        with pytest.raises(EnergyError):
            PowerModel(power_units={CONV: 0.0})
