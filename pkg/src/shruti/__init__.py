"""Closed-form 22-shruti generator functions and tools built on them."""
from shruti.analysis import (
    AveragingConvention,
    DeviationReport,
    Rounding,
    SingerRecord,
    SingerReport,
    deviation_table,
    nearest_shruti,
    singer_report,
)
from shruti.core import (
    DistributionKind,
    IndicatorProfile,
    InputError,
    PrimeExponents,
    Ratio,
    deval,
    diff_cents,
    generalized,
    nagoji_row,
    ratio_to_cents,
    scale,
    value,
    western_compilation,
)
from shruti.estimator import ShrutiQuantizer
from shruti.scale_io import (
    FrequencyTable,
    RenderSpec,
    ScaleDocument,
    emit_report,
    emit_scl,
    frequency_table,
    parse_scl,
    render_wav,
)

__version__ = "0.1.0"
