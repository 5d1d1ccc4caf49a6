"""Deviation tables against the experimental distribution and singer scoring."""
from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from shruti.core import (
    DEGREES,
    N_DEGREES,
    DistributionKind,
    InputError,
    check_index,
    diff_cents,
    ratio_to_cents,
    scale,
)

KindLike = Union[str, DistributionKind]

SUNG_RANGE = (0.5, 4.0)


class Rounding(enum.Enum):
    EXACT_MODEL = "exact"
    MODEL_ROUNDED_3DP = "3dp"

    @classmethod
    def parse(cls, name: Union[str, "Rounding"]) -> "Rounding":
        if isinstance(name, cls):
            return name
        for r in cls:
            if name in (r.value, r.name.lower()):
                return r
        raise InputError(f"unknown rounding {name!r}; expected exact or 3dp")


class AveragingConvention(enum.Enum):
    """Divisor applied to the sum of all 23 row differences.

    The terminal rows are always 0, so dividing by 21 averages the interior
    degrees only.  The generalized table was published with divisor 22.
    """

    INTERIOR21 = "interior21"
    INTERIOR22 = "interior22"

    @property
    def divisor(self) -> int:
        return 21 if self is AveragingConvention.INTERIOR21 else 22

    @classmethod
    def parse(cls, name: Union[str, "AveragingConvention"]) -> "AveragingConvention":
        if isinstance(name, cls):
            return name
        for c in cls:
            if name in (c.value, c.name.lower()):
                return c
        raise InputError(f"unknown averaging convention {name!r}")


def default_conventions(kind: KindLike) -> tuple[Rounding, AveragingConvention]:
    """Conventions under which the published tables are reproduced."""
    if DistributionKind.parse(kind) is DistributionKind.GENERALIZED:
        return Rounding.MODEL_ROUNDED_3DP, AveragingConvention.INTERIOR22
    return Rounding.EXACT_MODEL, AveragingConvention.INTERIOR21


def round_3dp(ratio: Fraction) -> Fraction:
    """Round half up to three decimals, exactly."""
    return Fraction(math.floor(ratio * 1000 + Fraction(1, 2)), 1000)


@dataclass(frozen=True)
class DeviationRow:
    z: int
    model: Fraction
    reference: Fraction
    diff_cents: float


@dataclass(frozen=True)
class DeviationReport:
    kind: DistributionKind
    rows: tuple
    average_cents: float
    convention: AveragingConvention
    rounding: Rounding

    def __post_init__(self):
        if len(self.rows) != N_DEGREES:
            raise InputError(f"a deviation report needs {N_DEGREES} rows")

    def recompute_average(self) -> float:
        return math.fsum(r.diff_cents for r in self.rows) / self.convention.divisor


def deviation_table(
    kind: KindLike,
    rounding: Union[str, Rounding, None] = None,
    convention: Union[str, AveragingConvention, None] = None,
) -> DeviationReport:
    """Per-degree cents distance of a model distribution from the experimental one.

    Parameters
    ----------
    kind : DistributionKind or str
        One of the four model distributions.
    rounding : Rounding, optional
        ``EXACT_MODEL`` compares the exact ratio; ``MODEL_ROUNDED_3DP`` first
        rounds the model to three decimals.  Defaults per kind.
    convention : AveragingConvention, optional
        Divisor for the average.  Defaults per kind.
    """
    kind = DistributionKind.parse(kind)
    if not kind.is_model:
        raise InputError("deviation tables compare a model distribution to the reference")
    default_rounding, default_convention = default_conventions(kind)
    rounding = Rounding.parse(rounding) if rounding is not None else default_rounding
    convention = (
        AveragingConvention.parse(convention) if convention is not None else default_convention
    )

    rows = []
    for z, model, ref in zip(DEGREES, scale(kind), scale(DistributionKind.EXPERIMENTAL)):
        if rounding is Rounding.MODEL_ROUNDED_3DP:
            model = round_3dp(model)
        rows.append(DeviationRow(z, model, ref, diff_cents(model, ref)))
    average = math.fsum(r.diff_cents for r in rows) / convention.divisor
    return DeviationReport(kind, tuple(rows), average, convention, rounding)


def table5() -> dict:
    """Average deviation of each model distribution under its default conventions."""
    return {kind: deviation_table(kind).average_cents for kind in _TABLE5_ORDER}


_TABLE5_ORDER = (
    DistributionKind.WESTERN_COMPILATION,
    DistributionKind.DEVAL,
    DistributionKind.NAGOJI_ROW,
    DistributionKind.GENERALIZED,
)


def octave_reduce(value: float) -> float:
    """Fold a positive ratio into [1, 2) by octave steps."""
    if not value > 0 or math.isinf(value):
        raise InputError(f"cannot octave-reduce {value!r}")
    while value >= 2.0:
        value /= 2.0
    while value < 1.0:
        value *= 2.0
    return value


def _check_sung(value: float) -> float:
    value = float(value)
    lo, hi = SUNG_RANGE
    if not lo < value < hi:
        raise InputError(f"sung ratio {value} outside ({lo}, {hi})")
    return value


def nearest_shruti(value: float, kind: KindLike = DistributionKind.GENERALIZED) -> tuple[int, float]:
    """Closest degree to ``value`` in cents, ties going to the lower index."""
    reduced = octave_reduce(_check_sung(value))
    best_z, best = 0, math.inf
    for z, ratio in zip(DEGREES, scale(kind)):
        d = diff_cents(reduced, ratio)
        if d < best:
            best_z, best = z, d
    return best_z, best


def octave_equivalent_diff(value: float, target: Fraction) -> float:
    """Cents from ``value`` to ``target`` after moving ``value`` by whole octaves."""
    c = ratio_to_cents(value) - ratio_to_cents(target)
    return abs(c - 1200.0 * round(c / 1200.0))


@dataclass(frozen=True)
class SingerRecord:
    singer_id: str
    sung_values: tuple
    target_indices: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "sung_values", tuple(float(v) for v in self.sung_values))
        for v in self.sung_values:
            try:
                _check_sung(v)
            except InputError as exc:
                raise InputError(f"singer {self.singer_id!r}: {exc}") from None
        if self.target_indices is not None:
            targets = tuple(self.target_indices)
            if len(targets) != len(self.sung_values):
                raise InputError(
                    f"singer {self.singer_id!r}: {len(targets)} target indices for "
                    f"{len(self.sung_values)} sung values"
                )
            for z in targets:
                check_index(z)
            object.__setattr__(self, "target_indices", targets)


@dataclass(frozen=True)
class SingerReport:
    kind: DistributionKind
    per_singer: tuple  # (singer_id, average cents, note count)
    grand_average: float


def singer_average(record: SingerRecord, kind: KindLike = DistributionKind.GENERALIZED) -> float:
    if not record.sung_values:
        raise InputError(f"singer {record.singer_id!r} has no sung values")
    ratios = scale(kind)
    diffs = []
    for i, sung in enumerate(record.sung_values):
        if record.target_indices is not None:
            diffs.append(octave_equivalent_diff(sung, ratios[record.target_indices[i] - 1]))
        else:
            diffs.append(nearest_shruti(sung, kind)[1])
    return math.fsum(diffs) / len(diffs)


def singer_report(
    records: Sequence[SingerRecord], kind: KindLike = DistributionKind.GENERALIZED
) -> SingerReport:
    """Average cents per singer and the unweighted mean over singers.

    Notes are weighted equally.  A note with a target index is compared with
    that degree (octave-equivalently); otherwise with its nearest degree.
    """
    kind = DistributionKind.parse(kind)
    records = list(records)
    if not records:
        raise InputError("no singer records")
    per_singer = []
    for record in records:
        per_singer.append((record.singer_id, singer_average(record, kind), len(record.sung_values)))
    grand = math.fsum(avg for _, avg, _ in per_singer) / len(per_singer)
    return SingerReport(kind, tuple(per_singer), grand)


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def parse_singer_csv(text: str) -> list[SingerRecord]:
    """Parse ``singer_id,value[,target_index]`` rows, header optional.

    Rows of one singer need not be contiguous; singers keep first-seen order.
    """
    values: dict[str, list] = {}
    targets: dict[str, list] = {}
    rows = list(csv.reader(io.StringIO(text)))
    for lineno, row in enumerate(rows, start=1):
        row = [cell.strip() for cell in row]
        if not any(row) or row[0].startswith("#"):
            continue
        if lineno == 1 and len(row) >= 2 and not _is_number(row[1]):
            continue  # header
        if len(row) not in (2, 3):
            raise InputError(f"line {lineno}: expected singer_id,value[,target_index]")
        singer, raw_value = row[0], row[1]
        if not singer:
            raise InputError(f"line {lineno}: empty singer id")
        try:
            sung = float(raw_value)
        except ValueError:
            raise InputError(f"line {lineno}: bad value {raw_value!r}") from None
        if not SUNG_RANGE[0] < sung < SUNG_RANGE[1]:
            raise InputError(f"line {lineno}: sung ratio {sung} outside {SUNG_RANGE}")
        target = None
        if len(row) == 3 and row[2]:
            try:
                target = check_index(int(row[2]))
            except (ValueError, InputError):
                raise InputError(f"line {lineno}: bad target index {row[2]!r}") from None
        values.setdefault(singer, []).append(sung)
        targets.setdefault(singer, []).append(target)

    if not values:
        raise InputError("no singer data found")
    records = []
    for singer, sung in values.items():
        tgt = targets[singer]
        if all(t is not None for t in tgt):
            records.append(SingerRecord(singer, tuple(sung), tuple(tgt)))
        elif all(t is None for t in tgt):
            records.append(SingerRecord(singer, tuple(sung)))
        else:
            raise InputError(f"singer {singer!r}: target indices given for some rows only")
    return records


def read_singer_csv(path) -> list[SingerRecord]:
    with open(path, encoding="utf-8") as fh:
        return parse_singer_csv(fh.read())

