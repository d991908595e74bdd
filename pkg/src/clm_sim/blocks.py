"""Pure piecewise primitives shared by the dynamic load models.

Saturations, deadbands, sign splits and rate limiting as plain stateless
functions; anything with memory (timers, minimum trackers) lives in the
owning model. One-sided limiters use ``math.inf`` for the open side, never
a large finite placeholder, so clipping on that side is exactly impossible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

NO_LIMIT = math.inf


@dataclass(frozen=True)
class SatLimits:
    """Lower/upper clip pair for a saturation block."""

    lo: float = -NO_LIMIT
    hi: float = NO_LIMIT

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError(f"saturation limits need lo <= hi, got ({self.lo}, {self.hi})")


@dataclass(frozen=True)
class DeadbandLimits:
    """Deadband knees; the band must bracket zero (db_lo <= 0 <= db_hi)."""

    db_lo: float
    db_hi: float

    def __post_init__(self):
        if not (self.db_lo <= 0.0 <= self.db_hi):
            raise ValueError(
                f"deadband knees must bracket zero, got ({self.db_lo}, {self.db_hi})"
            )


def saturate(x: float, lim: SatLimits) -> float:
    """Clip x into [lim.lo, lim.hi]; continuous, monotone, idempotent."""
    if x >= lim.hi:
        return lim.hi
    if x <= lim.lo:
        return lim.lo
    return x


def deadband(x: float, db: DeadbandLimits) -> float:
    """Zero inside the band, knee-offset passthrough outside it.

    Returns x - db_hi above the band, x - db_lo below it, 0 inside;
    continuous at both knees.
    """
    if x > db.db_hi:
        return x - db.db_hi
    if x < db.db_lo:
        return x - db.db_lo
    return 0.0


def pos_part(x: float) -> float:
    """x for x > 0, else 0."""
    return x if x > 0.0 else 0.0


def neg_part(x: float) -> float:
    """x for x <= 0, else 0; pos_part(x) + neg_part(x) == x exactly."""
    return x if x <= 0.0 else 0.0


def rate_limit(candidate_derivative: float, lim: SatLimits) -> float:
    """Clip a candidate derivative (pu/s) into the ramp band lim.lo..lim.hi.

    The band is expected to bracket zero (ramp-down negative, ramp-up
    positive); validated where the owning parameters are constructed.
    """
    return saturate(candidate_derivative, lim)
