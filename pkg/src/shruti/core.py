"""
Exact generator functions for the 23-degree shruti scale.

Every degree ``z`` in 1..23 (unison through octave) is produced by closed
forms built from three greatest-integer brackets::

    A = [(z + 2 - s)/4 + g^2 - g]
    B = [(z - 1 - s)/2 + g]
    C = [(z - s)/4 - g^2]

    ratio = 2^(8A - 4B - 3C) * 3^(4B - 5A - C) * 5^(2C - B)

where ``g`` is a step function (0 below a break index, -1/2 from it on) and
``s`` an index shift that is nonzero only at a handful of degrees.  The
three historical distributions (Western Compilation, Deval, Nagoji Row)
add small indicator-driven corrections to the exponents.  The generalized
function is the sum of two half-weighted terms of the same family.

Note on the generalized function: the 2-exponent of its first term uses
``+7 * gamma``.  With ``-7 * gamma`` the value at z = 21 drops below unison
(about 0.9376), which contradicts the published 1.826; ``+7`` gives
263/144 = 1.8264 exactly.

All ratios are :class:`fractions.Fraction` values, so identity and ordering
are exact.  Floats appear only in cents.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping, Union

Ratio = Fraction
Number = Union[Fraction, int, float]

N_DEGREES = 23
DEGREES = range(1, N_DEGREES + 1)
ENUMERATION_BOUND = 16

_HALF = Fraction(1, 2)


class InputError(ValueError):
    """Raised for out-of-domain or malformed user input."""


class DistributionKind(enum.Enum):
    WESTERN_COMPILATION = "wc"
    DEVAL = "deval"
    NAGOJI_ROW = "nagoji"
    GENERALIZED = "f"
    EXPERIMENTAL = "exp"

    @property
    def label(self) -> str:
        return _LABELS[self]

    @property
    def is_model(self) -> bool:
        return self is not DistributionKind.EXPERIMENTAL

    @classmethod
    def parse(cls, name: Union[str, "DistributionKind"]) -> "DistributionKind":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower()
        for kind in cls:
            if key in (kind.value, kind.name.lower()):
                return kind
        raise InputError(
            f"unknown distribution {name!r}; expected one of "
            + ", ".join(k.value for k in cls)
        )


_LABELS = {
    DistributionKind.WESTERN_COMPILATION: "Western Compilation",
    DistributionKind.DEVAL: "Deval",
    DistributionKind.NAGOJI_ROW: "Nagoji Row",
    DistributionKind.GENERALIZED: "Generalized F(z)",
    DistributionKind.EXPERIMENTAL: "Experimental",
}

MODEL_KINDS = tuple(k for k in DistributionKind if k.is_model)


def check_index(z: int) -> int:
    if isinstance(z, bool) or not isinstance(z, int):
        raise InputError(f"shruti index must be an integer, got {z!r}")
    if not 1 <= z <= N_DEGREES:
        raise InputError(f"shruti index must be in 1..{N_DEGREES}, got {z}")
    return z


@dataclass(frozen=True)
class PrimeExponents:
    """Exponents of 2, 3, 5 and 7; ``to_ratio`` is exact."""

    e2: int = 0
    e3: int = 0
    e5: int = 0
    e7: int = 0

    def to_ratio(self) -> Fraction:
        num = den = 1
        for prime, exp in ((2, self.e2), (3, self.e3), (5, self.e5), (7, self.e7)):
            if exp >= 0:
                num *= prime**exp
            else:
                den *= prime ** (-exp)
        return Fraction(num, den)

    @classmethod
    def from_ratio(cls, ratio: Fraction) -> "PrimeExponents":
        ratio = Fraction(ratio)
        if ratio <= 0:
            raise InputError(f"ratio must be positive, got {ratio}")
        exps = []
        num, den = ratio.numerator, ratio.denominator
        for prime in (2, 3, 5, 7):
            e = 0
            while num % prime == 0:
                num //= prime
                e += 1
            while den % prime == 0:
                den //= prime
                e -= 1
            exps.append(e)
        if num != 1 or den != 1:
            raise InputError(f"{ratio} has prime factors above 7")
        return cls(*exps)

    def __add__(self, other: "PrimeExponents") -> "PrimeExponents":
        return PrimeExponents(
            self.e2 + other.e2, self.e3 + other.e3, self.e5 + other.e5, self.e7 + other.e7
        )


# ---------------------------------------------------------------------------
# indicator functions


def g_step(z: int, first_negative_index: int) -> Fraction:
    """0 for ``z`` below the break, -1/2 from the break on."""
    if first_negative_index not in (13, 14):
        raise InputError(f"break index must be 13 or 14, got {first_negative_index}")
    return Fraction(0) if z < first_negative_index else -_HALF


def _in_range(values) -> frozenset:
    return frozenset(
        int(v) for v in values if Fraction(v).denominator == 1 and 1 <= v <= N_DEGREES
    )


def _parity_sign(z: int) -> int:
    # [z/7] zero or even -> +1, odd -> -1
    return 1 if (z // 7) % 2 == 0 else -1


@lru_cache(maxsize=None)
def enumerate_k_support() -> frozenset:
    """Degrees hit by 2^(1-[(n-1)/2]) * 3^[(n-1)/2] * 5^[n/2] for n = 1..16."""
    values = []
    for n in range(1, ENUMERATION_BOUND + 1):
        q = (n - 1) // 2
        values.append(Fraction(2) ** (1 - q) * 3**q * 5 ** (n // 2))
    return _in_range(values)


@lru_cache(maxsize=None)
def enumerate_p_support() -> frozenset:
    return _in_range(
        2 + 7 * ((n + 1) // 3) + 4 * (n // 3) + 2 * ((n - 1) // 3)
        for n in range(1, ENUMERATION_BOUND + 1)
    )


@lru_cache(maxsize=None)
def enumerate_psi_support() -> frozenset:
    return _in_range(
        8 + 9 * ((n + 1) // 3) + 2 * (n // 3) + (n - 1) // 3
        for n in range(1, ENUMERATION_BOUND + 1)
    )


@lru_cache(maxsize=None)
def enumerate_alpha_support() -> frozenset:
    return _in_range(20 * n - 18 for n in range(1, ENUMERATION_BOUND + 1))


def _signed(support) -> dict:
    return {z: _parity_sign(z) for z in sorted(support)}


@dataclass(frozen=True)
class IndicatorProfile:
    """Supports of every indicator used by the generator functions.

    The literal sets below are what the generators read.  They are checked
    against the brute-force enumerations in the test suite.
    """

    g1_break: int = 13
    g_break: int = 14
    h_support: frozenset = frozenset({13})
    h1_support: frozenset = frozenset({11, 13})
    t_support: frozenset = frozenset({10})
    beta_support: frozenset = frozenset({5})
    gamma_support: frozenset = frozenset({21})
    k_support: frozenset = frozenset({2, 10, 15})
    p_signed_support: Mapping[int, int] = field(
        default_factory=lambda: {2: 1, 9: -1, 13: -1, 15: 1, 22: -1}
    )
    psi_support: frozenset = frozenset({8, 17, 19, 20})
    alpha_signed_support: Mapping[int, int] = field(
        default_factory=lambda: {2: 1, 22: -1}
    )

    @classmethod
    def enumerated(cls) -> "IndicatorProfile":
        """Profile built from the enumeration formulas alone."""
        return cls(
            k_support=enumerate_k_support(),
            p_signed_support=_signed(enumerate_p_support()),
            psi_support=enumerate_psi_support(),
            alpha_signed_support=_signed(enumerate_alpha_support()),
        )


PROFILE = IndicatorProfile()


def p_value(z: int) -> int:
    return PROFILE.p_signed_support.get(z, 0)


def psi_alpha_values(z: int) -> tuple[int, int]:
    return int(z in PROFILE.psi_support), PROFILE.alpha_signed_support.get(z, 0)


# ---------------------------------------------------------------------------
# generator functions


def bracket_exponents(z: int, g: Fraction, shift: int = 0) -> PrimeExponents:
    """The shared 2/3/5 exponent core for step value ``g`` and index shift."""
    a = math.floor(Fraction(z + 2 - shift, 4) + g * g - g)
    b = math.floor(Fraction(z - 1 - shift, 2) + g)
    c = math.floor(Fraction(z - shift, 4) - g * g)
    return PrimeExponents(8 * a - 4 * b - 3 * c, 4 * b - 5 * a - c, 2 * c - b)


def western_compilation_exponents(z: int) -> PrimeExponents:
    check_index(z)
    return bracket_exponents(z, g_step(z, PROFILE.g1_break), int(z in PROFILE.h_support))


def deval_exponents(z: int) -> PrimeExponents:
    check_index(z)
    k = int(z in PROFILE.k_support)
    t = int(z in PROFILE.t_support)
    core = bracket_exponents(z, g_step(z, PROFILE.g1_break), int(z in PROFILE.h1_support))
    return core + PrimeExponents(-10 * k + 4 * t, 6 * k - 4 * t, -k + t, k)


def nagoji_row_exponents(z: int) -> PrimeExponents:
    check_index(z)
    p = p_value(z)
    core = bracket_exponents(z, g_step(z, PROFILE.g_break))
    return core + PrimeExponents(-11 * p, 4 * p, 2 * p)


def generalized_terms(z: int) -> tuple[PrimeExponents, PrimeExponents]:
    """Exponent vectors of the two addends of the generalized function."""
    check_index(z)
    g = g_step(z, PROFILE.g_break)
    psi, alpha = psi_alpha_values(z)
    beta = int(z in PROFILE.beta_support)
    gamma = int(z in PROFILE.gamma_support)
    first = bracket_exponents(z, g, psi) + PrimeExponents(
        -11 * alpha + 6 * beta + 7 * gamma - 1,
        4 * alpha - 2 * beta - 3 * gamma,
        2 * alpha - gamma,
        -beta,
    )
    second = bracket_exponents(z, g) + PrimeExponents(-1)
    return first, second


def western_compilation(z: int) -> Fraction:
    return western_compilation_exponents(z).to_ratio()


def deval(z: int) -> Fraction:
    return deval_exponents(z).to_ratio()


def nagoji_row(z: int) -> Fraction:
    return nagoji_row_exponents(z).to_ratio()


def generalized(z: int) -> Fraction:
    first, second = generalized_terms(z)
    return first.to_ratio() + second.to_ratio()


# Measured degree values, three decimals, unison first.
EXPERIMENTAL_VALUES = (
    "1.000", "1.048", "1.065", "1.117", "1.134", "1.189", "1.208", "1.227",
    "1.267", "1.328", "1.349", "1.399", "1.429", "1.506", "1.579", "1.604",
    "1.630", "1.682", "1.739", "1.791", "1.824", "1.908", "2.000",
)  # fmt: skip


def experimental(z: int) -> Fraction:
    return Fraction(EXPERIMENTAL_VALUES[check_index(z) - 1])


GENERATORS: dict[DistributionKind, Callable[[int], Fraction]] = {
    DistributionKind.WESTERN_COMPILATION: western_compilation,
    DistributionKind.DEVAL: deval,
    DistributionKind.NAGOJI_ROW: nagoji_row,
    DistributionKind.GENERALIZED: generalized,
    DistributionKind.EXPERIMENTAL: experimental,
}


def value(kind: Union[str, DistributionKind], z: int) -> Fraction:
    return GENERATORS[DistributionKind.parse(kind)](z)


@lru_cache(maxsize=None)
def _scale(kind: DistributionKind) -> tuple:
    return tuple(GENERATORS[kind](z) for z in DEGREES)


def scale(kind: Union[str, DistributionKind]) -> tuple:
    """All 23 degree ratios of ``kind``, unison first."""
    return _scale(DistributionKind.parse(kind))


# ---------------------------------------------------------------------------
# cents


def ratio_to_cents(value: Number) -> float:
    """Interval size in cents, ``1200 * log2(value)``."""
    if isinstance(value, Fraction):
        if value <= 0:
            raise InputError(f"cents need a positive ratio, got {value}")
        # log of numerator and denominator separately keeps large terms exact
        return 1200.0 * (math.log2(value.numerator) - math.log2(value.denominator))
    value = float(value)
    if not value > 0 or math.isinf(value):
        raise InputError(f"cents need a positive finite ratio, got {value}")
    return 1200.0 * math.log2(value)


def diff_cents(a: Number, b: Number) -> float:
    """Unsigned distance between two ratios in cents."""
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        if a <= 0 or b <= 0:
            raise InputError(f"cents need positive ratios, got {a} and {b}")
        return 0.0 if a == b else abs(ratio_to_cents(a / b))
    ca, cb = ratio_to_cents(a), ratio_to_cents(b)
    return 0.0 if a == b else abs(ca - cb)


def cents_to_ratio(cents: float) -> float:
    return 2.0 ** (cents / 1200.0)


def format_ratio(ratio: Fraction) -> str:
    """``n/d`` with the denominator always written, e.g. ``2/1``."""
    return f"{ratio.numerator}/{ratio.denominator}"
