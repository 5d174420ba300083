"""Runtime knobs.

EXCHANGE_KIT_CAP     soft ceiling on ring enumeration (default 4096)
EXCHANGE_KIT_KERNEL  'fast' or 'pure' to force a kernel backend at import
"""

from __future__ import annotations

import os

DEFAULT_CAP = 4096


def enumeration_cap() -> int:
    """Current enumeration cap; re-read on every call so tests can tweak it."""
    raw = os.environ.get("EXCHANGE_KIT_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_CAP
    return value if value > 0 else DEFAULT_CAP
