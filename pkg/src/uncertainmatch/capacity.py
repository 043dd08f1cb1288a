"""Explicit enumeration and magnitude guards.

Brute-force oracles refuse instances whose search space exceeds
``ENUMERATION_LIMIT`` choices, and parsers reject magnitudes that
could make 64-bit window sums overflow.  The environment variable
``UM_CAPACITY_OVERRIDE`` raises the enumeration guard for research
runs.
"""

from __future__ import annotations

import os

from .errors import CapacityError

ENUMERATION_LIMIT = 1 << 20

# Magnitude bounds enforced at parse time: sums of up to 2**20 items
# of absolute value below 2**40 stay within 64 bits.
MAX_ABS_MAGNITUDE = 1 << 40
MAX_ITEMS = 1 << 20


def enumeration_limit() -> int:
    override = os.environ.get("UM_CAPACITY_OVERRIDE")
    if override:
        return max(ENUMERATION_LIMIT, int(override))
    return ENUMERATION_LIMIT


def check_enumeration(size: int, what: str) -> None:
    limit = enumeration_limit()
    if size > limit:
        raise CapacityError(
            f"{what}: search space of {size} exceeds the enumeration "
            f"guard of {limit} (set UM_CAPACITY_OVERRIDE to raise it)"
        )
