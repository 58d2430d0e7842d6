"""Host request traces: generation, parsing, serialization.

Trace text format, one request per line::

    # comment
    W <offset_bytes> <length_bytes>
    R <offset_bytes> <length_bytes>

The bundled experiments use strictly sequential fixed-size chunks, the access
pattern of streaming a large file on or off the disk.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, List, TextIO


class TraceError(ValueError):
    pass


class OpKind(enum.Enum):
    READ = "R"
    WRITE = "W"

    @classmethod
    def parse(cls, text: str) -> "OpKind":
        key = text.strip().upper()
        aliases = {"R": cls.READ, "READ": cls.READ, "W": cls.WRITE, "WRITE": cls.WRITE}
        if key not in aliases:
            raise TraceError(f"unknown op: {text!r}")
        return aliases[key]


@dataclass(frozen=True)
class TraceRecord:
    op: OpKind
    offset: int
    length: int

    def __post_init__(self):
        if self.length <= 0:
            raise TraceError("record length must be > 0")
        if self.offset < 0:
            raise TraceError("record offset must be >= 0")


Trace = List[TraceRecord]

DEFAULT_CHUNK_BYTES = 64 * 1024
# 64 MB per phase: 1024 chunks, enough that one request's worth of ramp is
# invisible in the reported bandwidth.
DEFAULT_VOLUME_BYTES = 64 * 1024 * 1024


def gen_sequential(total: int, chunk: int, op: OpKind) -> Trace:
    """Sequential fixed-chunk trace covering ``total`` bytes from offset 0."""
    if chunk <= 0 or total < chunk:
        raise TraceError("need total >= chunk > 0")
    if total % chunk:
        raise TraceError(f"total {total} not divisible by chunk {chunk}")
    return [TraceRecord(op, offset, chunk) for offset in range(0, total, chunk)]


def parse_trace(stream: Iterable[str]) -> Trace:
    trace: Trace = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise TraceError(f"line {lineno}: expected 'R|W offset length', got {raw!r}")
        try:
            op = OpKind.parse(parts[0])
            offset, length = int(parts[1]), int(parts[2])
            trace.append(TraceRecord(op, offset, length))
        except (TraceError, ValueError) as exc:
            raise TraceError(f"line {lineno}: {exc}") from None
    return trace


def serialize_trace(trace: Trace, stream: TextIO | None = None) -> str:
    lines = [f"{rec.op.value} {rec.offset} {rec.length}" for rec in trace]
    text = "\n".join(lines) + ("\n" if lines else "")
    if stream is not None:
        stream.write(text)
    return text
