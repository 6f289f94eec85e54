"""S-value core: validated P-values, information units, surprisal arithmetic,
the coin-toss gauge, and the two-sided-P to one-sided-sigma translation."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .specfun import normal_quantile


class InfoUnit(enum.Enum):
    """Information unit fixed by the log base: 2 -> bits, e -> nats, 10 -> dits."""

    BITS = "bits"
    NATS = "nats"
    DITS = "dits"

    @property
    def nats_per_unit(self) -> float:
        return _NATS_PER_UNIT[self]

    @classmethod
    def from_name(cls, name: str) -> "InfoUnit":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(
                f"unknown information unit {name!r}; expected one of bits, nats, dits"
            ) from None


_NATS_PER_UNIT = {
    InfoUnit.BITS: math.log(2.0),
    InfoUnit.NATS: 1.0,
    InfoUnit.DITS: math.log(10.0),
}


@dataclass(frozen=True)
class PValue:
    """A probability in the half-open interval (0, 1].

    Zero is rejected at construction: its surprisal is infinite and every
    downstream formula would stop being total.
    """

    value: float

    def __post_init__(self) -> None:
        v = self.value
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ValueError(f"P-value must be a real number, got {v!r}")
        if math.isnan(v) or not (0.0 < v <= 1.0):
            raise ValueError(
                f"P-value must lie in the half-open interval (0, 1], got {v!r}"
            )
        object.__setattr__(self, "value", float(v))


@dataclass(frozen=True)
class SValue:
    """A non-negative surprisal with an explicit information unit.

    The unit is carried rather than normalized away: reports quote bits, nats
    and dits side by side, and an explicit tag prevents silent scale errors.
    """

    value: float
    unit: InfoUnit

    def __post_init__(self) -> None:
        v = self.value
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ValueError(f"S-value must be a real number, got {v!r}")
        if math.isnan(v) or v < 0.0:
            raise ValueError(f"S-value must be >= 0, got {v!r}")
        if not isinstance(self.unit, InfoUnit):
            raise ValueError(f"unit must be an InfoUnit, got {self.unit!r}")
        object.__setattr__(self, "value", float(v) + 0.0)  # normalize -0.0


def surprisal(p: PValue, unit: InfoUnit = InfoUnit.BITS) -> SValue:
    """Surprisal -log_base(p) in the requested unit; 0 at p = 1."""
    return SValue(-math.log(p.value) / unit.nats_per_unit, unit)


def convert(s: SValue, target: InfoUnit) -> SValue:
    """Rescale a surprisal to another unit (identity when already there)."""
    if target is s.unit:
        return s
    return SValue(s.value * (s.unit.nats_per_unit / target.nats_per_unit), target)


def from_surprisal(s: SValue) -> PValue:
    """Invert surprisal: the P-value whose surprisal in s.unit equals s.value."""
    return PValue(math.exp(-s.value * s.unit.nats_per_unit))


def coin_toss_gauge(p: PValue) -> int:
    """Surprisal in bits rounded half-to-even: "all heads in k tosses" gauge.

    The gauge coin is tested one-sidedly for loading toward heads, so the
    reading is one-sided even when p itself came from a two-sided test.
    """
    return round(surprisal(p, InfoUnit.BITS).value)


def two_sided_to_sigma(p: PValue) -> float:
    """Upper one-sided standard-normal cutoff whose exceedance probability is p.

    This is the physics-style translation of a two-sided P-value into a
    one-sided sigma (p = 0.05 -> 1.645). Undefined at p = 1, where the cutoff
    is -infinity.
    """
    if p.value == 1.0:
        raise ValueError("two_sided_to_sigma is undefined at p = 1 (sigma = -inf)")
    # Phi^-1(1 - p) computed as -Phi^-1(p) to keep precision for tiny p.
    return -normal_quantile(p.value) + 0.0
