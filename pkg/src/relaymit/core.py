"""Core types and scalar helpers shared by every rate evaluator.

Conventions used throughout the package:

* noise variance is 1 at every receiver, so transmit powers are SNRs;
* all rates are in bits per channel use, logs are base 2;
* channel gains are complex; only magnitudes enter the rate formulas;
* a zero source-destination gain marks the multihop topology.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING

if TYPE_CHECKING:  # pragma: no cover - import cycle guard for type hints only
    from .optimize import SchemeParams

__all__ = [
    "DomainError",
    "ChannelGains",
    "PowerBudget",
    "SplitPowerBudget",
    "RateResult",
    "cap_fn",
    "pos_part",
    "db_to_linear",
    "linear_to_db",
]

# Arguments of cap_fn this far below zero are treated as roundoff and clamped;
# anything lower is a genuine domain violation.
_NEG_TOL = 1e-12


class DomainError(ValueError):
    """Raised when a numeric argument leaves its contractual domain."""


def cap_fn(x: float) -> float:
    """Gaussian capacity map ``C(x) = log2(1 + x)``.

    ``x`` is an SNR and must be nonnegative; values in ``[-1e-12, 0)`` are
    clamped to 0 (roundoff), anything smaller raises :class:`DomainError`.
    """
    if math.isnan(x):
        raise DomainError("cap_fn argument is NaN")
    if x < 0.0:
        if x < -_NEG_TOL:
            raise DomainError(f"cap_fn argument {x} below domain [0, inf)")
        x = 0.0
    return math.log2(1.0 + x)


def pos_part(x):
    """Positive part ``max(x, 0)``; works on scalars and numpy arrays."""
    if isinstance(x, (int, float)):
        return x if x > 0 else 0.0 * x
    import numpy as np

    return np.maximum(x, 0.0)


def db_to_linear(x_db: float) -> float:
    """Convert decibels to a linear power ratio: ``10**(x/10)``."""
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    """Convert a linear power ratio to decibels: ``10*log10(x)``; needs x > 0."""
    if not x > 0.0:
        raise DomainError(f"linear_to_db argument {x} must be positive")
    return 10.0 * math.log10(x)


def _check_finite_complex(name: str, value: complex) -> complex:
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise DomainError(f"{name} must be finite, got {value}")
    return value


def _check_nonneg(name: str, value: float) -> float:
    value = float(value)
    if math.isnan(value) or value < 0.0:
        raise DomainError(f"{name} must be >= 0, got {value}")
    return value


@dataclass(frozen=True)
class ChannelGains:
    """Complex gains of the four links.

    ``h_sr``: source->relay, ``h_sd``: source->destination,
    ``h_rd``: relay->destination, ``h_i``: interferer->destination.
    ``h_sd == 0`` selects the multihop topology (no direct link).
    """

    h_sr: complex
    h_sd: complex
    h_rd: complex
    h_i: complex

    def __post_init__(self) -> None:
        for name in ("h_sr", "h_sd", "h_rd", "h_i"):
            object.__setattr__(self, name, _check_finite_complex(name, getattr(self, name)))

    @property
    def multihop(self) -> bool:
        return self.h_sd == 0

    @property
    def a_sr(self) -> float:
        return abs(self.h_sr)

    @property
    def a_sd(self) -> float:
        return abs(self.h_sd)

    @property
    def a_rd(self) -> float:
        return abs(self.h_rd)

    @property
    def a_i(self) -> float:
        return abs(self.h_i)


@dataclass(frozen=True)
class PowerBudget:
    """Linear transmit powers (= SNRs at unit noise) and the interferer's rate.

    ``p_s``: source power, ``p_r``: relay power, ``p_i``: interferer power,
    ``r_i``: rate of the structured interference codebook (bits/use).
    """

    p_s: float
    p_r: float
    p_i: float = 0.0
    r_i: float = 0.0

    def __post_init__(self) -> None:
        for name in ("p_s", "p_r", "p_i", "r_i"):
            object.__setattr__(self, name, _check_nonneg(name, getattr(self, name)))


@dataclass(frozen=True)
class SplitPowerBudget:
    """Budget with the source power pre-split across its two bands.

    ``p_sr``: source power on the source->relay band, ``p_sd``: source power
    on the direct band, ``p_r``: relay power, ``r_i``: interferer rate,
    ``p_i``: interferer power (0 when no interferer is present).
    """

    p_sr: float
    p_sd: float
    p_r: float
    r_i: float = 0.0
    p_i: float = 0.0

    def __post_init__(self) -> None:
        for name in ("p_sr", "p_sd", "p_r", "r_i", "p_i"):
            object.__setattr__(self, name, _check_nonneg(name, getattr(self, name)))


@dataclass(frozen=True)
class RateResult:
    """Outcome of one scheme evaluation.

    ``rate``: achieved rate (>= 0, bits/use);
    ``scheme``: scheme identifier string;
    ``params``: optimizer argmax (None for closed-form schemes);
    ``branch_values``: labelled rate-bound branches evaluated at the argmax,
    whose clamped minimum reproduces ``rate``;
    ``std_error``: Monte Carlo standard error of the binding branch (None for
    deterministic evaluations).
    """

    rate: float
    scheme: str
    params: "SchemeParams | None" = None
    branch_values: tuple[tuple[str, float], ...] = field(default_factory=tuple)
    std_error: float | None = None

    def __post_init__(self) -> None:
        if not (self.rate >= 0.0 and math.isfinite(self.rate)):
            raise DomainError(f"rate must be finite and >= 0, got {self.rate}")
        if self.branch_values:
            m = min(v for _, v in self.branch_values)
            if abs(max(m, 0.0) - self.rate) > 1e-9:
                raise DomainError(
                    f"rate {self.rate} does not match min over branches {m}"
                )

    @property
    def binding_branch(self) -> str | None:
        if not self.branch_values:
            return None
        return min(self.branch_values, key=lambda kv: kv[1])[0]
