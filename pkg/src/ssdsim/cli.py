"""Command-line runner: a thin client of the simulation service.

Subcommands::

    ssdsim timing   [--config FILE]                    clock derivations
    ssdsim simulate --cell slc --interface ddr ...     one configuration
    ssdsim sweep    (--plan FILE | --paper | ...)      CSV over a plan
    ssdsim verify   [--tolerance 0.2]                  regression vs the
                                                       bundled reference tables
    ssdsim serve    [--host H] [--port P]              run the HTTP service

Every data subcommand accepts ``--server URL`` to target a remote service;
without it the service runs in-process.  ``verify`` exits 0 on PASS and 1 on
FAIL; usage/config errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .client import ApiClient, ServiceError
from .config import ConfigError, load_config


def _read_config(path: str | None) -> dict:
    if not path:
        return {}
    return {k: v for k, v in load_config(path).items()}


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_timing(args) -> int:
    client = ApiClient(args.server)
    result = client.timing(_read_config(args.config))
    print(f"delayed clock offset : {result['delayed_clock_offset_ns']:.3f} ns")
    print(f"strobe dll delay     : {result['dll_delay_ns']:.3f} ns")
    print(f"pad-level t_p,min    : {result['tpmin_pad_ns']:.3f} ns")
    print(f"{'iface':6} {'t_p,min':>9} {'freq':>6} {'t_p':>9} {'ns/byte':>8} {'peak MB/s':>10}")
    for clk in result["clocks"]:
        print(f"{clk['interface']:6} {clk['t_pmin_ns']:9.3f} {clk['frequency_mhz']:4d}MHz "
              f"{clk['t_p_ns']:9.3f} {clk['per_byte_ns']:8.3f} {clk['peak_rate_mb_s']:10.1f}")
    return 0


def cmd_simulate(args) -> int:
    client = ApiClient(args.server)
    payload = dict(config=_read_config(args.config), log_events=bool(args.event_log))
    for key in ("cell", "interface", "channels", "ways", "mode", "volume_mb", "chunk_kb"):
        value = getattr(args, key)
        if value is not None:
            payload[key] = value
    if args.trace:
        payload["trace"] = Path(args.trace).read_text(encoding="utf-8").splitlines()
    result = client.simulate(**payload)
    for key in ("cell", "interface", "channels", "ways"):
        print(f"{key:22}: {result[key]}")
    for key, unit in (("bandwidth_mb_s", "MB/s"), ("raw_bandwidth_mb_s", "MB/s"),
                      ("energy_nj_b", "nJ/B"), ("elapsed_ns", "ns")):
        value = result[key]
        if value is not None:
            print(f"{key:22}: {value:.3f} {unit}")
    print(f"{'capped':22}: {result['capped']}")
    print(f"{'bytes read/written':22}: {result['bytes_read']} / {result['bytes_written']}")
    if args.event_log and result.get("event_log") is not None:
        Path(args.event_log).write_text("\n".join(result["event_log"]) + "\n", encoding="utf-8")
        print(f"{'event log':22}: {args.event_log} ({len(result['event_log'])} events)")
    return 0


def cmd_sweep(args) -> int:
    client = ApiClient(args.server)
    payload: dict = {"config": _read_config(args.config)}
    if args.plan:
        plan = json.loads(Path(args.plan).read_text(encoding="utf-8"))
        payload.update(plan)
    elif args.paper:
        payload.update({
            "sweep": [[1, 1], [1, 2], [1, 4], [1, 8], [1, 16], [2, 8], [4, 4]],
            "interfaces": ["conv", "sync", "ddr"],
            "cells": ["slc", "mlc"],
            "modes": ["write", "read"],
        })
    else:
        payload.update({
            "sweep": [[args.channels, w] for w in args.ways],
            "interfaces": args.interfaces.split(","),
            "cells": args.cells.split(","),
            "modes": args.modes.split(","),
        })
    if args.volume_mb:
        payload["volume_mb"] = args.volume_mb
    if args.chunk_kb:
        payload["chunk_kb"] = args.chunk_kb
    result = client.sweep(**payload)
    _emit(result["csv"], args.output)
    return 0


def cmd_verify(args) -> int:
    client = ApiClient(args.server)
    result = client.verify(args.tolerance, _read_config(args.config))
    print(result["text"])
    return 0 if result["passed"] else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ssdsim", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key=value config file")
        p.add_argument("--server", help="remote service URL (default: in-process)")

    p = sub.add_parser("timing", help="print clock-period derivations")
    common(p)
    p.set_defaults(func=cmd_timing)

    p = sub.add_parser("simulate", help="run one configuration")
    common(p)
    p.add_argument("--cell", choices=["slc", "mlc"], help="default: config / slc")
    p.add_argument("--interface", choices=["conv", "sync", "ddr"],
                   help="default: config / ddr")
    p.add_argument("--channels", type=int)
    p.add_argument("--ways", type=int)
    p.add_argument("--mode", choices=["read", "write"])
    p.add_argument("--volume-mb", type=int)
    p.add_argument("--chunk-kb", type=int)
    p.add_argument("--trace", help="trace file (R|W offset length per line)")
    p.add_argument("--event-log", help="write the event log to this file")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="run an experiment plan, emit CSV")
    common(p)
    p.add_argument("--plan", help="JSON plan file")
    p.add_argument("--paper", action="store_true",
                   help="the bundled reference-study sweep (way + channel configs)")
    p.add_argument("--channels", type=int, default=1)
    p.add_argument("--ways", type=lambda s: [int(x) for x in s.split(",")],
                   default=[1, 2, 4, 8, 16])
    p.add_argument("--interfaces", default="conv,sync,ddr")
    p.add_argument("--cells", default="slc,mlc")
    p.add_argument("--modes", default="write,read")
    p.add_argument("--volume-mb", type=int)
    p.add_argument("--chunk-kb", type=int)
    p.add_argument("--output", "-o", help="CSV output path (default: stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="regression vs the bundled reference tables")
    common(p)
    p.add_argument("--tolerance", type=float, default=0.20)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ServiceError, ConfigError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
