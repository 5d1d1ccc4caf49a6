"""Command-line front end: ``shruti <command> ...``."""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from shruti.analysis import (
    AveragingConvention,
    Rounding,
    deviation_table,
    read_singer_csv,
    singer_report,
    table5,
)
from shruti.core import (
    DEGREES,
    DistributionKind,
    InputError,
    format_ratio,
    ratio_to_cents,
    scale,
)
from shruti.scale_io import (
    FORMATS,
    TONIC_RANGE,
    RenderSpec,
    emit_report,
    emit_scl,
    format_rows,
    frequency_table,
    render_wav,
)

logger = logging.getLogger(__name__)

ALL_KINDS = [k.value for k in DistributionKind]
MODEL_KINDS = [k.value for k in DistributionKind if k.is_model]


def _tonic(text: str) -> float:
    try:
        hz = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    lo, hi = TONIC_RANGE
    if not lo <= hz <= hi:
        raise argparse.ArgumentTypeError(f"tonic {text} Hz outside [{lo:g}, {hi:g}]")
    return hz


def _build_parser() -> argparse.ArgumentParser:
    # --format is accepted before or after the subcommand
    fmt_parent = argparse.ArgumentParser(add_help=False)
    fmt_parent.add_argument(
        "--format", choices=FORMATS, default=argparse.SUPPRESS, help="output format (default plain)"
    )

    parser = argparse.ArgumentParser(
        prog="shruti",
        description="22-shruti generator functions: tables, comparisons, scale files and tones.",
    )
    parser.add_argument("--format", choices=FORMATS, default="plain", help="output format")
    sub = parser.add_subparsers(dest="command", metavar="command", required=True)

    p = sub.add_parser("table", parents=[fmt_parent], help="list the 23 degrees of a distribution")
    p.add_argument("kind", choices=ALL_KINDS, help="distribution: " + ", ".join(ALL_KINDS))

    p = sub.add_parser(
        "compare", parents=[fmt_parent], help="cents deviation of a model from the experimental values"
    )
    p.add_argument("kind", choices=MODEL_KINDS)
    p.add_argument(
        "--rounding",
        choices=[r.value for r in Rounding],
        help="compare the exact ratio or the ratio rounded to 3 decimals "
        "(default: 3dp for f, exact otherwise)",
    )
    p.add_argument(
        "--avg",
        choices=[c.value for c in AveragingConvention],
        help="divide the summed row differences by 21 or 22 "
        "(default: interior22 for f, interior21 otherwise)",
    )

    sub.add_parser("table5", parents=[fmt_parent], help="average deviation of the four models")

    p = sub.add_parser("freq", parents=[fmt_parent], help="frequencies of every degree for a tonic")
    p.add_argument("kind", choices=ALL_KINDS)
    p.add_argument("--tonic", type=_tonic, required=True, help="tonic frequency in Hz (20-5000)")

    p = sub.add_parser("scl", parents=[fmt_parent], help="export a Scala .scl scale file")
    p.add_argument("kind", choices=ALL_KINDS)
    p.add_argument("--out", help="write to this path instead of stdout")
    p.add_argument("--cents", action="store_true", help="write degrees as cents, not ratios")
    p.add_argument("--description", help="description line of the file")

    p = sub.add_parser("render", parents=[fmt_parent], help="render all 23 degrees as a WAV file")
    p.add_argument("kind", choices=ALL_KINDS)
    p.add_argument("--tonic", type=_tonic, required=True, help="tonic frequency in Hz (20-5000)")
    p.add_argument("--out", help="output .wav path (default: raw bytes to stdout)")
    p.add_argument("--dur", type=float, default=1.0, help="seconds per note (default 1.0)")
    p.add_argument("--rate", type=int, default=44100, help="sample rate in Hz (default 44100)")
    p.add_argument("--fade", type=float, default=0.01, help="fade in/out seconds (default 0.01)")
    p.add_argument("--amplitude", type=float, default=0.8, help="peak as fraction of full scale")

    p = sub.add_parser(
        "analyze", parents=[fmt_parent], help="score singers' sung ratios against a distribution"
    )
    p.add_argument(
        "--in", dest="path", required=True, help="CSV of singer_id,value[,target_index] rows"
    )
    p.add_argument("--kind", choices=ALL_KINDS, default="f", help="reference distribution (default f)")
    return parser


def _cmd_table(args) -> str:
    kind = DistributionKind.parse(args.kind)
    rows = []
    for z, r in zip(DEGREES, scale(kind)):
        ratio = f"{float(r):.3f}" if kind is DistributionKind.EXPERIMENTAL else format_ratio(r)
        rows.append([str(z), ratio, f"{float(r):.3f}", f"{ratio_to_cents(r):.2f}"])
    return format_rows(
        ["z", "ratio", "decimal", "cents"], rows, fmt=args.format, meta={"kind": kind.value}
    )


def _cmd_compare(args) -> str:
    return emit_report(deviation_table(args.kind, args.rounding, args.avg), args.format)


def _cmd_table5(args) -> str:
    rows = [[k.value, k.label, f"{avg:.2f}"] for k, avg in table5().items()]
    return format_rows(["kind", "distribution", "average_cents"], rows, fmt=args.format)


def _cmd_freq(args) -> str:
    return emit_report(frequency_table(args.tonic, args.kind), args.format)


def _write_or_print(data, out):
    if out is None:
        if isinstance(data, bytes):
            sys.stdout.buffer.write(data)
            sys.stdout.flush()
            return None
        return data
    mode = "wb" if isinstance(data, bytes) else "w"
    with open(out, mode, **({} if mode == "wb" else {"encoding": "utf-8", "newline": "\n"})) as fh:
        fh.write(data)
    logger.info("wrote %s", out)
    return None


def _cmd_scl(args):
    return _write_or_print(emit_scl(args.kind, args.description, args.cents), args.out)


def _cmd_render(args):
    spec = RenderSpec(
        sample_rate=args.rate, note_duration=args.dur, fade=args.fade, amplitude=args.amplitude
    )
    return _write_or_print(render_wav(frequency_table(args.tonic, args.kind), spec), args.out)


def _cmd_analyze(args) -> str:
    try:
        records = read_singer_csv(args.path)
    except OSError as exc:
        raise InputError(f"{args.path}: {exc.strerror}") from None
    except InputError as exc:
        raise InputError(f"{args.path}: {exc}") from None
    return emit_report(singer_report(records, args.kind), args.format)


COMMANDS = {
    "table": _cmd_table,
    "compare": _cmd_compare,
    "table5": _cmd_table5,
    "freq": _cmd_freq,
    "scl": _cmd_scl,
    "render": _cmd_render,
    "analyze": _cmd_analyze,
}


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        output = COMMANDS[args.command](args)
    except InputError as exc:
        print(f"shruti {args.command}: error: {exc}", file=sys.stderr)
        return 1
    if output:
        sys.stdout.write(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
