"""Frequency tables, Scala files, WAV rendering and report formatting."""
from __future__ import annotations

import csv
import io
import json
import math
import re
import wave
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from shruti.analysis import DeviationReport, Rounding, SingerReport
from shruti.core import (
    DEGREES,
    N_DEGREES,
    DistributionKind,
    InputError,
    format_ratio,
    ratio_to_cents,
    scale,
)

TONIC_RANGE = (20.0, 5000.0)
SCL_COUNT = N_DEGREES - 1

Degree = Union[Fraction, float]  # Fraction is a ratio, float is cents


class SclParseError(InputError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class FrequencyTable:
    tonic_hz: float
    kind: DistributionKind
    entries: tuple  # (z, hz)

    @property
    def frequencies(self) -> list:
        return [hz for _, hz in self.entries]


def frequency_table(tonic_hz: float, kind) -> FrequencyTable:
    """Degree frequencies above ``tonic_hz``; each is one rounding of the exact product."""
    kind = DistributionKind.parse(kind)
    tonic = float(tonic_hz)
    lo, hi = TONIC_RANGE
    if not lo <= tonic <= hi:
        raise InputError(f"tonic {tonic_hz} Hz outside [{lo:g}, {hi:g}]")
    exact_tonic = Fraction(tonic)
    entries = tuple((z, float(exact_tonic * r)) for z, r in zip(DEGREES, scale(kind)))
    return FrequencyTable(tonic, kind, entries)


def _degree_cents(d: Degree) -> float:
    return ratio_to_cents(d) if isinstance(d, Fraction) else float(d)


@dataclass(frozen=True)
class ScaleDocument:
    """22 degrees above an implicit 1/1, ending on the octave."""

    description: str
    degrees: tuple

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))
        if len(self.degrees) != SCL_COUNT:
            raise InputError(f"scale needs {SCL_COUNT} degrees, got {len(self.degrees)}")
        cents = [_degree_cents(d) for d in self.degrees]
        if any(b <= a for a, b in zip(cents, cents[1:])) or cents[0] <= 0:
            raise InputError("scale degrees must be strictly increasing above 1/1")
        last = self.degrees[-1]
        if not (last == Fraction(2) if isinstance(last, Fraction) else math.isclose(last, 1200.0)):
            raise InputError("last scale degree must be the octave")

    @classmethod
    def from_kind(cls, kind, description: str | None = None, cents: bool = False):
        kind = DistributionKind.parse(kind)
        ratios = scale(kind)[1:]
        degrees = tuple(ratio_to_cents(r) for r in ratios) if cents else ratios
        return cls(description or f"{kind.label} 22-shruti scale", degrees)

    @classmethod
    def from_scl(cls, text: str) -> "ScaleDocument":
        description, degrees = _parse(text)
        return cls(description, degrees)

    def to_scl(self, comments: Sequence[str] = ()) -> str:
        lines = [f"! {c}" for c in comments]
        lines.append(self.description)
        lines.append(f" {len(self.degrees)}")
        lines.append("!")
        for d in self.degrees:
            lines.append(" " + (format_ratio(d) if isinstance(d, Fraction) else f"{d:.5f}"))
        return "\n".join(lines) + "\n"


def emit_scl(kind, description: str | None = None, cents: bool = False) -> str:
    kind = DistributionKind.parse(kind)
    doc = ScaleDocument.from_kind(kind, description, cents)
    return doc.to_scl(comments=[f"shruti-{kind.value}.scl"])


_INT = re.compile(r"^[+-]?\d+$")
_RATIO = re.compile(r"^([+-]?\d+)/([+-]?\d+)$")
_CENTS = re.compile(r"^[+-]?(\d+\.\d*|\.\d+)$")


def _parse_degree(token: str, lineno: int) -> Degree:
    if _CENTS.match(token):
        return float(token)
    m = _RATIO.match(token)
    if m:
        num, den = int(m.group(1)), int(m.group(2))
        if num <= 0 or den <= 0:
            raise SclParseError(lineno, f"nonpositive ratio {token!r}")
        return Fraction(num, den)
    if _INT.match(token):
        num = int(token)
        if num <= 0:
            raise SclParseError(lineno, f"nonpositive ratio {token!r}")
        return Fraction(num)
    raise SclParseError(lineno, f"malformed pitch {token!r}")


def _parse(text: str) -> tuple[str, list]:
    description = None
    count = None
    degrees: list = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.startswith("!"):
            continue
        if description is None:
            description = line.strip()
            continue
        stripped = line.strip()
        if count is None:
            token = stripped.split()[0] if stripped else ""
            if not _INT.match(token) or int(token) < 0:
                raise SclParseError(lineno, f"expected note count, got {stripped!r}")
            count = int(token)
            continue
        if not stripped:
            continue
        if len(degrees) == count:
            raise SclParseError(lineno, f"more pitches than the declared {count}")
        degrees.append(_parse_degree(stripped.split()[0], lineno))
    if description is None or count is None:
        raise SclParseError(len(text.splitlines()) + 1, "missing description or note count")
    if len(degrees) != count:
        raise SclParseError(
            len(text.splitlines()), f"declared {count} pitches, found {len(degrees)}"
        )
    return description, degrees


def parse_scl(text: str) -> list:
    """Pitch values of a Scala file: Fraction for ratio lines, float cents otherwise."""
    return _parse(text)[1]


@dataclass(frozen=True)
class RenderSpec:
    sample_rate: int = 44100
    note_duration: float = 1.0
    fade: float = 0.01
    amplitude: float = 0.8

    def __post_init__(self):
        if not 8000 <= self.sample_rate <= 192000:
            raise InputError(f"sample rate {self.sample_rate} outside [8000, 192000]")
        if not 0 < 2 * self.fade <= self.note_duration:
            raise InputError("need 0 < 2 * fade <= note duration")
        if not 0 < self.amplitude <= 1:
            raise InputError(f"amplitude {self.amplitude} outside (0, 1]")

    @property
    def samples_per_note(self) -> int:
        return round(self.note_duration * self.sample_rate)

    @property
    def peak(self) -> int:
        return round(self.amplitude * 32767)


def render_samples(table: FrequencyTable, spec: RenderSpec) -> np.ndarray:
    """int16 samples of all notes back to back, each with linear fades."""
    n = spec.samples_per_note
    n_fade = max(1, min(round(spec.fade * spec.sample_rate), n // 2))
    envelope = np.ones(n)
    ramp = np.arange(n_fade) / n_fade
    envelope[:n_fade] = ramp
    envelope[n - n_fade :] = ramp[::-1]
    t = np.arange(n) / spec.sample_rate
    notes = [np.sin(2 * np.pi * hz * t) * envelope for hz in table.frequencies]
    signal = np.concatenate(notes) * spec.peak
    return np.rint(signal).astype(np.int16)


def render_wav(table: FrequencyTable, spec: RenderSpec | None = None) -> bytes:
    spec = spec or RenderSpec()
    samples = render_samples(table, spec)
    buf = io.BytesIO()
    with wave.open(buf, "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(spec.sample_rate)
        w.writeframes(samples.astype("<i2").tobytes())
    return buf.getvalue()


# ---------------------------------------------------------------------------
# reports

FORMATS = ("plain", "csv", "json")


def _decimal(r: Fraction, places: int = 3) -> str:
    return f"{float(r):.{places}f}"


def _model_cell(report: DeviationReport, model: Fraction) -> str:
    if report.rounding is Rounding.MODEL_ROUNDED_3DP:
        return _decimal(model)
    return format_ratio(model)


def _table_rows(obj) -> tuple[list, list, list]:
    """Header, rows of cell strings, and trailing summary lines."""
    if isinstance(obj, DeviationReport):
        header = ["z", "model", "reference", "diff_cents"]
        rows = [
            [str(r.z), _model_cell(obj, r.model), _decimal(r.reference), f"{r.diff_cents:.2f}"]
            for r in obj.rows
        ]
        return header, rows, [["average", "", "", f"{obj.average_cents:.2f}"]]
    if isinstance(obj, FrequencyTable):
        header = ["z", "ratio", "cents", "hz"]
        ratios = scale(obj.kind)
        rows = []
        for (z, hz), r in zip(obj.entries, ratios):
            ratio = _decimal(r) if obj.kind is DistributionKind.EXPERIMENTAL else format_ratio(r)
            rows.append([str(z), ratio, f"{ratio_to_cents(r):.2f}", f"{hz:.3f}"])
        return header, rows, []
    if isinstance(obj, SingerReport):
        header = ["singer", "notes", "average_cents"]
        rows = [[sid, str(n), f"{avg:.3f}"] for sid, avg, n in obj.per_singer]
        return header, rows, [["grand_average", "", f"{obj.grand_average:.3f}"]]
    raise TypeError(f"cannot format {type(obj).__name__}")


def _plain(header, rows, summary) -> str:
    all_rows = [header] + rows + summary
    widths = [max(len(r[i]) for r in all_rows) for i in range(len(header))]
    out = []
    for i, row in enumerate(all_rows):
        if i == len(rows) + 1 and summary:
            out.append("  ".join("-" * w for w in widths))
        out.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip())
        if i == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"


def format_rows(header, rows, summary=(), fmt: str = "plain", meta: dict | None = None) -> str:
    fmt = fmt or "plain"
    if fmt == "plain":
        return _plain(header, list(rows), list(summary))
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        writer.writerows(summary)
        return buf.getvalue()
    if fmt == "json":
        doc = dict(meta or {})
        doc["rows"] = [dict(zip(header, row)) for row in rows]
        for row in summary:
            doc[row[0]] = row[-1]
        return json.dumps(doc, indent=2) + "\n"
    raise InputError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def _meta(obj) -> dict:
    if isinstance(obj, DeviationReport):
        return {
            "kind": obj.kind.value,
            "rounding": obj.rounding.value,
            "convention": obj.convention.value,
        }
    if isinstance(obj, FrequencyTable):
        return {"kind": obj.kind.value, "tonic_hz": obj.tonic_hz}
    return {"kind": obj.kind.value}


def emit_report(obj, fmt: str = "plain") -> str:
    """Render a deviation report, frequency table or singer report as text.

    Cells are strings with fixed precision (exact ratios, cents to 2 places,
    Hz to 3 places), so every format carries identical values.
    """
    header, rows, summary = _table_rows(obj)
    return format_rows(header, rows, summary, fmt, _meta(obj))
