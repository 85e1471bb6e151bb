"""Shared configuration: the enumeration cap for brute-force oracles."""

from __future__ import annotations

import os

ENUM_CAP_ENV = "PRYMTHETA_ENUM_CAP"
DEFAULT_ENUM_CAP = 8

# fixed seed for sampled oracle checks where exhaustive enumeration is too slow
DEFAULT_SEED = 20240611


class EnumerationCapExceeded(ValueError):
    """Raised when an exhaustive enumeration is requested beyond the cap."""


def enumeration_cap() -> int:
    raw = os.environ.get(ENUM_CAP_ENV)
    if raw is None or raw == "":
        return DEFAULT_ENUM_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{ENUM_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{ENUM_CAP_ENV} must be positive, got {cap}")
    return cap


def check_cap(g: int, cap: int | None = None) -> None:
    limit = enumeration_cap() if cap is None else cap
    if g > limit:
        raise EnumerationCapExceeded(
            f"genus {g} exceeds the enumeration cap {limit} (set {ENUM_CAP_ENV} to raise it)"
        )
