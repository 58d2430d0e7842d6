"""Regression of simulated results against the bundled reference tables.

``compare_tables`` takes result rows (way sweep plus channel sweep) and
produces a structured report: bandwidth cells within tolerance, speedup
ratios, saturation structure, host-link ceiling flags, and controller energy.
Simulated byte rates are converted to the reference tables' binary-megabyte
unit before comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from . import reference
from .energy import MIB, calibrate_power
from .experiments import ResultRow
from .flash import CellKind
from .timing import InterfaceKind
from .workload import OpKind

CONV, SYNC, DDR = InterfaceKind.CONV, InterfaceKind.SYNC, InterfaceKind.DDR
SLC, MLC = CellKind.SLC, CellKind.MLC
R, W = OpKind.READ, OpKind.WRITE

BANDWIDTH_TOLERANCE = 0.20
RATIO_TOLERANCE = 0.15
ENERGY_TOLERANCE = 0.10
FLATNESS = 0.01          # "saturated" means within 1%
MIN_DDR_WRITE_GAIN = 1.4  # required 8-way -> 16-way growth
CONSTANCY_LIMIT = 0.03


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


@dataclass
class VerifyReport:
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def text(self) -> str:
        lines = [c.line() for c in self.checks]
        lines.append(f"{'PASS' if self.passed else 'FAIL'}  overall")
        return "\n".join(lines)


def _index(rows: Sequence[ResultRow]) -> Dict[tuple, ResultRow]:
    return {(r.cell, r.mode, r.channels, r.ways, r.interface): r for r in rows}


def _units(row: ResultRow) -> float:
    """Reported bandwidth in the reference tables' unit."""
    return row.bytes_per_s / MIB


def _raw_units(row: ResultRow) -> float:
    return row.raw_bytes_per_s / MIB


def _check_cells(index, keys_and_refs, tolerance, name) -> CheckResult:
    missing = []
    errors: List[Tuple[float, str]] = []
    for key, ref in keys_and_refs:
        row = index.get(key)
        if row is None:
            missing.append(key)
            continue
        err = (_units(row) - ref) / ref
        cell, mode, ch, ways, iface = key
        errors.append((err, f"{cell.value}/{mode.name.lower()}/{ch}ch/{ways}w/{iface.value} "
                            f"sim={_units(row):.2f} ref={ref:.2f} err={err:+.1%}"))
    if missing:
        return CheckResult(name, False, f"missing rows for {missing}")
    worst = sorted(errors, key=lambda e: -abs(e[0]))
    bad = [text for err, text in worst if abs(err) > tolerance]
    detail = (f"{len(errors) - len(bad)}/{len(errors)} cells within ±{tolerance:.0%}; "
              f"worst: {worst[0][1]}")
    if bad:
        detail += " | out of tolerance: " + "; ".join(bad)
    return CheckResult(name, not bad, detail)


def check_way_sweep(index, tolerance=BANDWIDTH_TOLERANCE) -> CheckResult:
    pairs = []
    for (cell, mode, ways), per_iface in reference.WAY_SWEEP.items():
        for iface, ref in per_iface.items():
            pairs.append(((cell, mode, 1, ways, iface), ref))
    return _check_cells(index, pairs, tolerance, "way-sweep bandwidth")


def check_channel_sweep(index, tolerance=BANDWIDTH_TOLERANCE) -> CheckResult:
    pairs = []
    cap_keys = []
    for (cell, mode, ch, ways), per_iface in reference.CHANNEL_SWEEP.items():
        for iface, ref in per_iface.items():
            key = (cell, mode, ch, ways, iface)
            if ref is None:
                cap_keys.append(key)
            else:
                pairs.append((key, ref))
    result = _check_cells(index, pairs, tolerance, "channel-sweep bandwidth")
    flag_fails = []
    for key in cap_keys:
        row = index.get(key)
        if row is None or not row.capped:
            flag_fails.append(key)
    if flag_fails:
        return CheckResult(result.name, False,
                           result.detail + f" | host-capped entries not capped in sim: {flag_fails}")
    return result


def check_ratios(index, tolerance=RATIO_TOLERANCE) -> CheckResult:
    problems = []
    details = []

    def ratio(cell, mode, ways):
        ddr = index[(cell, mode, 1, ways, DDR)].raw_bytes_per_s
        conv = index[(cell, mode, 1, ways, CONV)].raw_bytes_per_s
        return ddr / conv

    for mode, ways, ref in ((W, 16, reference.WAY_SWEEP[(SLC, W, 16)][DDR]
                             / reference.WAY_SWEEP[(SLC, W, 16)][CONV]),
                            (R, 16, reference.WAY_SWEEP[(SLC, R, 16)][DDR]
                             / reference.WAY_SWEEP[(SLC, R, 16)][CONV])):
        sim = ratio(SLC, mode, ways)
        details.append(f"16-way {mode.name.lower()} P/C={sim:.2f} (ref {ref:.2f})")
        if abs(sim - ref) / ref > tolerance:
            problems.append(f"16-way {mode.name.lower()} ratio {sim:.2f} vs {ref:.2f}")

    lo_r, hi_r = reference.HEADLINE_READ_RATIO
    lo_w, hi_w = reference.HEADLINE_WRITE_RATIO
    for ways in reference.WAY_COUNTS:
        rr = ratio(SLC, R, ways)
        wr = ratio(SLC, W, ways)
        if not (lo_r <= rr <= hi_r):
            problems.append(f"read ratio at {ways}-way {rr:.2f} outside [{lo_r}, {hi_r}]")
        if not (lo_w <= wr <= hi_w):
            problems.append(f"write ratio at {ways}-way {wr:.2f} outside [{lo_w}, {hi_w}]")

    detail = "; ".join(details) + "; headline ranges bracket all SLC way-sweep ratios"
    if problems:
        detail = "; ".join(problems)
    return CheckResult("speedup ratios", not problems, detail)


def check_saturation(index, flatness=FLATNESS, min_gain=MIN_DDR_WRITE_GAIN) -> CheckResult:
    bw = lambda mode, ways, iface: index[(SLC, mode, 1, ways, iface)].raw_bytes_per_s
    problems = []

    conv_w_8, conv_w_16 = bw(W, 8, CONV), bw(W, 16, CONV)
    if abs(conv_w_16 - conv_w_8) / conv_w_8 > flatness:
        problems.append(f"conv write not flat 8->16 ({conv_w_16 / conv_w_8:.3f}x)")

    ddr_gain = bw(W, 16, DDR) / bw(W, 8, DDR)
    if ddr_gain <= min_gain:
        problems.append(f"ddr write gain 8->16 only {ddr_gain:.2f}x (need >{min_gain})")

    conv_r_16 = bw(R, 16, CONV)
    for ways in (2, 4, 8):
        if abs(bw(R, ways, CONV) - conv_r_16) / conv_r_16 > flatness:
            problems.append(f"conv read not saturated from 2-way (at {ways}-way)")

    ddr_r_16 = bw(R, 16, DDR)
    for ways in (4, 8):
        if abs(bw(R, ways, DDR) - ddr_r_16) / ddr_r_16 > flatness:
            problems.append(f"ddr read not saturated from 4-way (at {ways}-way)")
    if bw(R, 2, DDR) >= (1 - flatness) * bw(R, 4, DDR):
        problems.append("ddr read already saturated at 2-way")

    detail = (f"conv write flat 8->16, ddr write gain {ddr_gain:.2f}x, "
              f"conv read flat from 2-way, ddr read flat from 4-way")
    if problems:
        detail = "; ".join(problems)
    return CheckResult("saturation structure", not problems, detail)


def check_host_ceiling(index, host_cap_bytes_per_s=300e6) -> CheckResult:
    problems = []
    for cell in (SLC, MLC):
        row = index.get((cell, R, 4, 4, DDR))
        if row is None:
            problems.append(f"{cell.value}: row missing")
        elif not row.capped:
            problems.append(f"{cell.value}: raw {row.raw_bytes_per_s / 1e6:.0f} MB/s not capped")
        elif abs(row.bytes_per_s - host_cap_bytes_per_s) > 1e-6 * host_cap_bytes_per_s:
            problems.append(f"{cell.value}: capped at {row.bytes_per_s / 1e6:.0f}, expected "
                            f"{host_cap_bytes_per_s / 1e6:.0f}")
    detail = "4ch/4way ddr reads pegged at the host link for both cell kinds"
    if problems:
        detail = "; ".join(problems)
    return CheckResult("host-link ceiling", not problems, detail)


def check_energy(index, tolerance=ENERGY_TOLERANCE,
                 constancy_limit=CONSTANCY_LIMIT) -> CheckResult:
    problems = []
    worst = (0.0, "")
    count = 0
    for (cell, mode, ways), per_iface in reference.ENERGY.items():
        for iface, ref in per_iface.items():
            row = index.get((cell, mode, 1, ways, iface))
            if row is None:
                problems.append(f"missing row {cell.value}/{mode.name}/{ways}w/{iface.value}")
                continue
            err = (row.energy_nj_b - ref) / ref
            count += 1
            if abs(err) > abs(worst[0]):
                worst = (err, f"{mode.name.lower()}/{ways}w/{iface.value} "
                              f"sim={row.energy_nj_b:.3f} ref={ref:.2f} err={err:+.1%}")
            if abs(err) > tolerance:
                problems.append(f"{mode.name.lower()}/{ways}w/{iface.value} energy "
                                f"{row.energy_nj_b:.3f} vs {ref:.2f} ({err:+.1%})")

    _powers, deviations = calibrate_power(*reference.energy_bandwidth_tables())
    for kind, dev in deviations.items():
        if dev > constancy_limit:
            problems.append(f"{kind.value} power constancy {dev:.1%} exceeds {constancy_limit:.0%}")

    detail = f"{count - sum(1 for p in problems if 'energy' in p)}/{count} " \
             f"entries within ±{tolerance:.0%}; worst: {worst[1]}"
    if problems:
        detail += " | " + "; ".join(problems)
    return CheckResult("controller energy", not problems, detail)


def check_energy_crossover(index) -> CheckResult:
    """The interface kind with the lowest energy flips to DDR at high
    interleaving; the reference orderings put that flip at 16-way writes and
    4-way reads."""
    problems = []

    def cheapest(mode, ways):
        energies = {iface: index[(SLC, mode, 1, ways, iface)].energy_nj_b
                    for iface in (CONV, SYNC, DDR)}
        return min(energies, key=energies.get)

    write_cross = next((w for w in reference.WAY_COUNTS if cheapest(W, w) is DDR), None)
    read_cross = next((w for w in reference.WAY_COUNTS if cheapest(R, w) is DDR), None)
    if write_cross != 16:
        problems.append(f"write-energy crossover at {write_cross}-way, expected 16")
    if read_cross != 4:
        problems.append(f"read-energy crossover at {read_cross}-way, expected 4")
    detail = f"ddr becomes cheapest at {write_cross}-way writes, {read_cross}-way reads"
    if problems:
        detail = "; ".join(problems)
    return CheckResult("energy crossover", not problems, detail)


def _guarded(name: str, check, *args) -> CheckResult:
    """Derived checks index specific rows; absent rows fail the check
    instead of aborting the whole report."""
    try:
        return check(*args)
    except KeyError as exc:
        return CheckResult(name, False, f"missing result row {exc.args[0]}")


def compare_tables(rows: Sequence[ResultRow],
                   tolerance: float = BANDWIDTH_TOLERANCE,
                   host_cap_bytes_per_s: float = 300e6) -> VerifyReport:
    index = _index(rows)
    report = VerifyReport()
    report.checks.append(check_way_sweep(index, tolerance))
    report.checks.append(check_channel_sweep(index, tolerance))
    report.checks.append(_guarded("speedup ratios", check_ratios, index))
    report.checks.append(_guarded("saturation structure", check_saturation, index))
    report.checks.append(check_host_ceiling(index, host_cap_bytes_per_s))
    report.checks.append(_guarded("controller energy", check_energy, index))
    report.checks.append(_guarded("energy crossover", check_energy_crossover, index))
    return report
