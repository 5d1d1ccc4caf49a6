import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shruti.analysis import (
    AveragingConvention,
    Rounding,
    SingerRecord,
    deviation_table,
    nearest_shruti,
    octave_reduce,
    parse_singer_csv,
    round_3dp,
    singer_report,
    table5,
)
from shruti.core import DEGREES, MODEL_KINDS, DistributionKind, InputError, diff_cents, scale

import tables

F_VALUES = [float(r) for r in scale("f")]


def test_experimental_reference_matches_table():
    ref = scale(DistributionKind.EXPERIMENTAL)
    assert [f"{float(v):.3f}" for v in ref] == tables.EXPERIMENTAL
    assert ref[0] == 1 and ref[-1] == 2
    assert all(b > a for a, b in zip(ref, ref[1:]))
    assert ref[7] == Fraction(1227, 1000)


@pytest.mark.parametrize(
    "kind,expected",
    [("wc", tables.DIFF_WC), ("deval", tables.DIFF_DEVAL), ("nagoji", tables.DIFF_NAGOJI)],
)
def test_theoretical_rows(kind, expected):
    report = deviation_table(kind, Rounding.EXACT_MODEL)
    assert [r.diff_cents for r in report.rows] == pytest.approx(expected, abs=0.02)


def test_generalized_rows():
    report = deviation_table("f", Rounding.MODEL_ROUNDED_3DP)
    assert [r.diff_cents for r in report.rows] == pytest.approx(tables.DIFF_GENERALIZED, abs=0.02)
    assert report.rows[12].diff_cents == pytest.approx(6.07, abs=0.02)


def test_generalized_exact_model_differs_from_published_row3():
    # the published 3.25 needs the 3-decimal value 1.067; exact 16/15 gives 2.71
    exact = deviation_table("f", Rounding.EXACT_MODEL)
    assert exact.rows[2].diff_cents == pytest.approx(2.71, abs=0.01)


@pytest.mark.parametrize(
    "kind,rounding,convention,expected",
    [
        ("wc", "exact", "interior21", 12.92),
        ("deval", "exact", "interior21", 14.33),
        ("nagoji", "exact", "interior21", 14.88),
        ("f", "3dp", "interior22", 4.04),
    ],
)
def test_averages(kind, rounding, convention, expected):
    report = deviation_table(kind, rounding, convention)
    assert report.average_cents == pytest.approx(expected, abs=0.02)
    assert report.average_cents == pytest.approx(report.recompute_average(), abs=1e-9)


def test_default_conventions_reproduce_table5():
    assert {k.value: v for k, v in table5().items()} == pytest.approx(tables.TABLE5, abs=0.02)
    t5 = table5()
    wc, dv, nr, f = (t5[k] for k in MODEL_KINDS)
    assert f < wc < dv < nr


@pytest.mark.parametrize("kind", MODEL_KINDS)
@pytest.mark.parametrize("rounding", list(Rounding))
def test_report_invariants(kind, rounding):
    for convention in AveragingConvention:
        report = deviation_table(kind, rounding, convention)
        assert len(report.rows) == 23
        assert all(r.diff_cents >= 0 for r in report.rows)
        assert report.rows[0].diff_cents == 0 and report.rows[-1].diff_cents == 0
        assert math.isclose(report.average_cents, report.recompute_average(), abs_tol=1e-9)


def test_divisors():
    assert AveragingConvention.INTERIOR21.divisor == 21
    assert AveragingConvention.INTERIOR22.divisor == 22
    a = deviation_table("wc", convention="interior21").average_cents
    b = deviation_table("wc", convention="interior22").average_cents
    assert a * 21 == pytest.approx(b * 22)


def test_experimental_not_comparable():
    with pytest.raises(InputError):
        deviation_table("exp")


def test_round_3dp_half_up():
    assert round_3dp(Fraction(10625, 10000)) == Fraction(1063, 1000)
    assert round_3dp(Fraction(49, 40)) == Fraction(1225, 1000)
    assert [f"{float(round_3dp(r)):.3f}" for r in scale("f")] == tables.GENERALIZED_3DP


# --- nearest degree -----------------------------------------------------------


def _brute_nearest(value, kind):
    v = value
    while v >= 2:
        v /= 2
    while v < 1:
        v *= 2
    dists = [abs(1200 * math.log2(v / float(r))) for r in scale(kind)]
    best = min(dists)
    return dists.index(best) + 1, best


@pytest.mark.parametrize(
    "value,kind,z,diff",
    [(1.5, "f", 14, 0.0), (3.0, "f", 14, 0.0), (1.227, "wc", 8, 32.15), (0.75, "f", 14, 0.0)],
)
def test_nearest_shruti_examples(value, kind, z, diff):
    got_z, got_diff = nearest_shruti(value, kind)
    assert got_z == z
    assert got_diff == pytest.approx(diff, abs=0.01)


@given(st.floats(min_value=0.501, max_value=3.999), st.sampled_from([k.value for k in MODEL_KINDS]))
def test_nearest_shruti_matches_brute_force(value, kind):
    z, d = nearest_shruti(value, kind)
    bz, bd = _brute_nearest(value, kind)
    assert d == pytest.approx(bd, abs=1e-9)
    if z != bz:  # only on near-ties
        assert math.isclose(diff_cents(octave_reduce(value), scale(kind)[bz - 1]), d, abs_tol=1e-9)


def test_nearest_shruti_tie_goes_low():
    lo, hi = scale("wc")[0], scale("wc")[1]
    mid = math.sqrt(float(lo) * float(hi))
    z, _ = nearest_shruti(mid, "wc")
    assert z in (1, 2)
    # geometric midpoint in exact terms lies on a tie to within float error
    assert nearest_shruti(mid * (1 - 1e-12), "wc")[0] == 1


@pytest.mark.parametrize("bad", [0.5, 4.0, 0.1, -1.0])
def test_nearest_shruti_domain(bad):
    with pytest.raises(InputError):
        nearest_shruti(bad, "f")


# --- singer pipeline ----------------------------------------------------------


def test_exact_singer_scores_zero():
    report = singer_report([SingerRecord("S01", F_VALUES)])
    assert report.per_singer[0][1] == pytest.approx(0.0, abs=1e-9)
    assert report.grand_average == pytest.approx(0.0, abs=1e-9)


def test_exact_singer_with_targets_scores_zero():
    report = singer_report([SingerRecord("S01", F_VALUES, tuple(DEGREES))])
    assert report.grand_average == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("targets", [None, tuple(DEGREES)])
def test_uniform_detuning(targets):
    sharp = [v * 2 ** (5 / 1200) for v in F_VALUES]
    report = singer_report([SingerRecord("S01", sharp, targets)])
    assert report.per_singer[0][1] == pytest.approx(5.0, abs=0.001)


def test_grand_average_is_unweighted_mean():
    a = SingerRecord("a", [v * 2 ** (3 / 1200) for v in F_VALUES])
    b = SingerRecord("b", [F_VALUES[13] * 2 ** (-7 / 1200)])
    report = singer_report([a, b])
    assert report.per_singer[0][1] == pytest.approx(3.0, abs=1e-6)
    assert report.per_singer[1][1] == pytest.approx(7.0, abs=1e-6)
    assert report.grand_average == pytest.approx(5.0, abs=1e-6)


sung = st.lists(st.floats(min_value=1.001, max_value=1.999), min_size=1, max_size=20)


@settings(max_examples=60)
@given(sung, st.data())
def test_octave_shift_invariance(values, data):
    shifts = data.draw(st.lists(st.sampled_from([0.5, 1.0, 2.0]), min_size=len(values), max_size=len(values)))
    shifted = [v * s for v, s in zip(values, shifts)]
    base = singer_report([SingerRecord("s", values)]).grand_average
    moved = singer_report([SingerRecord("s", shifted)]).grand_average
    assert moved == pytest.approx(base, abs=1e-9)
    targets = data.draw(st.lists(st.integers(1, 23), min_size=len(values), max_size=len(values)))
    base = singer_report([SingerRecord("s", values, targets)]).grand_average
    moved = singer_report([SingerRecord("s", shifted, targets)]).grand_average
    assert moved == pytest.approx(base, abs=1e-9)


def test_singer_errors():
    with pytest.raises(InputError):
        singer_report([])
    with pytest.raises(InputError, match="S09"):
        singer_report([SingerRecord("S09", [])])
    with pytest.raises(InputError, match="S02"):
        SingerRecord("S02", [1.2, 5.0])
    with pytest.raises(InputError):
        SingerRecord("S03", [1.2, 1.3], [4])


def test_parse_singer_csv():
    text = "singer_id,value,target_index\nS1,1.5,14\nS2,1.25\nS1,1.0,1\n\nS2,1.333\n"
    text = text.replace("S2,1.25\n", "S2,1.25,\n")
    records = parse_singer_csv(text)
    assert [r.singer_id for r in records] == ["S1", "S2"]
    assert records[0].sung_values == (1.5, 1.0)
    assert records[0].target_indices == (14, 1)
    assert records[1].target_indices is None


def test_parse_singer_csv_headerless():
    records = parse_singer_csv("a,1.1\na,1.2\n")
    assert records[0].sung_values == (1.1, 1.2)


@pytest.mark.parametrize(
    "text,match",
    [
        ("", "no singer data"),
        ("singer_id,value\n", "no singer data"),
        ("a,1.1\na,abc\n", "line 2"),
        ("a,1.1\na,9.0\n", "line 2"),
        ("a,1.1,30\n", "line 1"),
        ("a,1.1,2\na,1.2\n", "'a'"),
        ("a\n", "line 1"),
    ],
)
def test_parse_singer_csv_errors(text, match):
    with pytest.raises(InputError, match=match):
        parse_singer_csv(text)
