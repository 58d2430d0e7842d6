"""Clock-period and delay arithmetic for the three controller-flash interfaces.

Everything here is exact: durations are ``fractions.Fraction`` nanoseconds, so
two-decimal board measurements (7.82 ns, 4.69 ns, ...) survive arithmetic
without float drift.  Resolved clocks are stored as integer picoseconds; the
event engine downstream works purely in integer picoseconds.

The three interface kinds:

* ``CONV``  - asynchronous single-data-rate strobing (separate WEB/REB).
  The read cycle must cover strobe-out plus data-return plus FIFO setup,
  relaxed by the delayed controller clock (t_D = alpha * t_P).
* ``SYNC``  - strobe and data-valid signalling made synchronous, still one
  byte per cycle.
* ``DDR``   - synchronous with transfers on both strobe edges, two bytes per
  cycle at the same clock.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Union

Ns = Fraction  # durations in nanoseconds, exact

NumberLike = Union[int, float, str, Fraction, Decimal]

PS_PER_NS = 1000
NS_PER_US = 1000


class TimingError(ValueError):
    """Raised for out-of-domain timing inputs (negative delays, bad alpha)."""


def as_ns(value: NumberLike) -> Ns:
    """Coerce a user-supplied duration to an exact Fraction of nanoseconds.

    Floats go through their shortest decimal repr, so ``7.82`` means exactly
    7.82 ns rather than the nearest binary float.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(Decimal(str(value)))
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(Decimal(value))
    raise TypeError(f"cannot interpret {value!r} as nanoseconds")


def ns_to_ps(value: Ns) -> int:
    """Round an exact nanosecond quantity to integer picoseconds."""
    return round(value * PS_PER_NS)


class InterfaceKind(enum.Enum):
    CONV = "conv"
    SYNC = "sync"
    DDR = "ddr"

    @classmethod
    def parse(cls, text: str) -> "InterfaceKind":
        key = text.strip().lower()
        aliases = {
            "conv": cls.CONV,
            "conventional": cls.CONV,
            "sync": cls.SYNC,
            "sync_only": cls.SYNC,
            "ddr": cls.DDR,
            "proposed": cls.DDR,
        }
        if key not in aliases:
            raise TimingError(f"unknown interface kind: {text!r}")
        return aliases[key]


@dataclass(frozen=True)
class TimingParams:
    """Board/pad timing parameter set, nanoseconds.

    ``t_ds``/``t_dh`` (write-side setup/hold against the strobe) are carried
    and validated but enter no clock-period bound; the write cycle is set by
    the shared strobe period.
    """

    t_out: Ns = as_ns("7.82")   # controller FF -> flash strobe pad
    t_in: Ns = as_ns("1.65")    # controller IO pad -> read FIFO
    t_s: Ns = as_ns("0.25")     # FIFO setup
    t_h: Ns = as_ns("0.02")     # FIFO hold
    t_ds: Ns = as_ns(0)         # IO setup vs write strobe (unused in bounds)
    t_dh: Ns = as_ns(0)         # IO hold vs write strobe (unused in bounds)
    t_rea: Ns = as_ns(20)       # read latch -> controller pad
    t_byte: Ns = as_ns(12)      # page register <-> IO latch, floor on t_P
    t_diff: Ns = as_ns("4.69")  # strobe-vs-data board skew at the read FIFO
    t_ios: Ns = as_ns("0.25")   # IO setup vs data strobe (pad-level variant)
    t_ioh: Ns = as_ns("0.02")   # IO hold vs data strobe (pad-level variant)
    t_iod_max: Ns = as_ns(0)    # worst-case latch -> flash pad delay
    t_rwebd_min: Ns = as_ns(0)  # best-case strobe-in -> delay-loop delay
    alpha: Fraction = Fraction(1, 2)  # delayed-clock fraction, 0..1/2

    def __post_init__(self):
        for name in (
            "t_out", "t_in", "t_s", "t_h", "t_ds", "t_dh", "t_rea",
            "t_byte", "t_diff", "t_ios", "t_ioh", "t_iod_max", "t_rwebd_min",
        ):
            if getattr(self, name) < 0:
                raise TimingError(f"{name} must be >= 0")
        if self.t_byte <= 0:
            raise TimingError("t_byte must be > 0")
        if not (0 <= self.alpha <= Fraction(1, 2)):
            raise TimingError("alpha must lie in [0, 1/2]")

    @classmethod
    def from_values(cls, **kwargs: NumberLike) -> "TimingParams":
        coerced = {}
        for key, value in kwargs.items():
            if key == "alpha":
                coerced[key] = Fraction(Decimal(str(value))) if not isinstance(value, Fraction) else value
            else:
                coerced[key] = as_ns(value)
        return cls(**coerced)


@dataclass(frozen=True)
class ClockSpec:
    """A resolved interface clock: integer MHz, period in integer picoseconds."""

    kind: InterfaceKind
    t_p_ps: int
    frequency_mhz: int

    @property
    def t_p_ns(self) -> Ns:
        return Fraction(self.t_p_ps, PS_PER_NS)


def delayed_clock_offset(alpha: NumberLike, t_p: NumberLike) -> Ns:
    """Delay applied to the controller clock before latching read data."""
    a = alpha if isinstance(alpha, Fraction) else Fraction(Decimal(str(alpha)))
    period = as_ns(t_p)
    if not (0 <= a <= Fraction(1, 2)):
        raise TimingError("alpha must lie in [0, 1/2]")
    if period <= 0:
        raise TimingError("clock period must be > 0")
    return a * period


def dll_delay(t_iod_max: NumberLike, t_rwebd_min: NumberLike, t_ios: NumberLike) -> Ns:
    """Delay the in-chip loop applies to the strobe so the data strobe lands
    on stable data: worst-case data path minus best-case strobe path plus the
    setup margin.  A negative result means the board timing is inconsistent.
    """
    result = as_ns(t_iod_max) - as_ns(t_rwebd_min) + as_ns(t_ios)
    if result < 0:
        raise TimingError("negative strobe delay: data path faster than strobe path")
    return result


def tpmin_conventional(p: TimingParams) -> Ns:
    """Minimum clock period for the asynchronous interface.

    The read cycle serializes strobe-out and data-return; the delayed clock
    stretches the budget by alpha*t_P, hence the (1+alpha) divisor.  The
    register-to-latch byte time floors the period regardless.
    """
    path = (p.t_out + p.t_rea + p.t_in + p.t_s) / (1 + p.alpha)
    return max(path, p.t_byte)


def tpmin_proposed_pad(t_ios: NumberLike, t_ioh: NumberLike, t_byte: NumberLike) -> Ns:
    """Minimum period for the strobe-synchronous interface from pad-level
    setup/hold: one cycle carries two transfers, so the pair is doubled."""
    return max(2 * (as_ns(t_ios) + as_ns(t_ioh)), as_ns(t_byte))


def tpmin_proposed_board(t_s: NumberLike, t_h: NumberLike, t_diff: NumberLike,
                         t_byte: NumberLike) -> Ns:
    """Board-level variant of the synchronous minimum period: FIFO setup/hold
    plus strobe-vs-data interconnect skew, doubled for the two edges."""
    return max(2 * (as_ns(t_s) + as_ns(t_h) + as_ns(t_diff)), as_ns(t_byte))


def max_frequency_mhz(t_pmin: NumberLike) -> int:
    """Largest integer MHz whose period is >= the minimum period."""
    floor_ns = as_ns(t_pmin)
    if floor_ns <= 0:
        raise TimingError("minimum period must be > 0")
    return int(Fraction(1000) / floor_ns)


def resolve_clock(kind: InterfaceKind, params: TimingParams,
                  freq_mhz_override: int | None = None) -> ClockSpec:
    """Resolve an interface to its operating clock.

    Default path: conventional uses the asynchronous bound, the synchronous
    kinds use the board-level bound.  The resolved period is 1000/f MHz
    rounded to a picosecond.  An explicit frequency may underclock but never
    beat the minimum period the board timing allows.
    """
    if kind is InterfaceKind.CONV:
        t_pmin = tpmin_conventional(params)
    else:
        t_pmin = tpmin_proposed_board(params.t_s, params.t_h, params.t_diff, params.t_byte)
    if freq_mhz_override is not None:
        if freq_mhz_override <= 0:
            raise TimingError("frequency override must be positive")
        if Fraction(1000, freq_mhz_override) < t_pmin:
            raise TimingError(
                f"{freq_mhz_override} MHz beats the minimum period "
                f"{float(t_pmin):.3f} ns of the {kind.value} interface")
        freq = freq_mhz_override
    else:
        freq = max_frequency_mhz(t_pmin)
    t_p_ps = round(Fraction(1_000_000, freq))
    return ClockSpec(kind=kind, t_p_ps=t_p_ps, frequency_mhz=freq)


def per_byte_cycle(spec: ClockSpec) -> Fraction:
    """Bus data-phase cost of one byte, in picoseconds (exact Fraction).

    One byte per strobe cycle for the single-data-rate kinds; two bytes per
    cycle for DDR, so exactly half the period.
    """
    if spec.kind is InterfaceKind.DDR:
        return Fraction(spec.t_p_ps, 2)
    return Fraction(spec.t_p_ps)
