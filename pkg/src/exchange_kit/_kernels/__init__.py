"""Kernel dispatch: compiled backend when available, pure Python otherwise.

The public functions here take a RingTables plus element indices and return
plain Python values.  Set EXCHANGE_KIT_KERNEL=pure to force the fallback even
when the extension is importable (useful for benchmarking and parity tests).
"""

from __future__ import annotations

import os

import numpy as np

from . import pure
from .tables import RingTables, build_tables

__all__ = [
    "BACKEND", "RingTables", "build_tables",
    "idempotent_indices", "inverse_table", "unit_indices",
    "left_multiple_indices", "right_multiple_indices", "left_witness",
    "suitable_search", "first_unsuitable", "inner_inverse", "first_nonregular",
    "power_inner_inverse", "first_non_pi_regular", "stable_power",
    "first_non_strongly_pi_regular", "first_non_dedekind",
    "first_cohopf_violation", "radical_indices", "closure_indices",
]

_impl = None
if os.environ.get("EXCHANGE_KIT_KERNEL", "").lower() != "pure":
    try:
        from . import _fast as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = None

FAST = _impl is not None
BACKEND = "fast" if FAST else "pure"
if not FAST:
    _impl = pure


def _mul(t: RingTables):
    return t.mul if FAST else t.mul_rows()


def _add(t: RingTables):
    return t.add if FAST else t.add_rows()


def _neg(t: RingTables):
    return t.neg if FAST else t.neg_row()


def idempotent_indices(t: RingTables):
    if t.idem_cache is None:
        t.idem_cache = _impl.idempotent_indices(_mul(t))
    return t.idem_cache


def inverse_table(t: RingTables):
    if t.inv_cache is None:
        t.inv_cache = _impl.inverse_table(_mul(t), t.one)
    return t.inv_cache


def unit_indices(t: RingTables):
    return [i for i, j in enumerate(inverse_table(t)) if j >= 0]


def _opt(i):
    """Backends use -1 as the no-hit sentinel; expose None instead."""
    return None if i is None or i < 0 else int(i)


def left_multiple_indices(t: RingTables, x: int):
    return tuple(_impl.left_multiple_indices(_mul(t), x))


def right_multiple_indices(t: RingTables, x: int):
    return tuple(_impl.right_multiple_indices(_mul(t), x))


def left_witness(t: RingTables, x: int, target: int):
    return _opt(_impl.left_witness(_mul(t), x, target))


def suitable_search(t: RingTables, x: int):
    hit = _impl.suitable_search(_add(t), _mul(t), _neg(t), t.one, x)
    return None if hit is None else (int(hit[0]), int(hit[1]))


def first_unsuitable(t: RingTables):
    return _opt(_impl.first_unsuitable(_add(t), _mul(t), _neg(t), t.one))


def inner_inverse(t: RingTables, phi: int):
    return _opt(_impl.inner_inverse(_mul(t), phi))


def first_nonregular(t: RingTables):
    return _opt(_impl.first_nonregular(_mul(t)))


def power_inner_inverse(t: RingTables, phi: int, nmax: int | None = None):
    hit = _impl.power_inner_inverse(_mul(t), phi, nmax or t.n)
    return None if hit is None else (int(hit[0]), int(hit[1]))


def first_non_pi_regular(t: RingTables, nmax: int | None = None):
    return _opt(_impl.first_non_pi_regular(_mul(t), nmax or t.n))


def stable_power(t: RingTables, x: int, nmax: int | None = None):
    return _opt(_impl.stable_power(_mul(t), x, nmax or t.n))


def first_non_strongly_pi_regular(t: RingTables, nmax: int | None = None):
    return _opt(_impl.first_non_strongly_pi_regular(_mul(t), nmax or t.n))


def first_non_dedekind(t: RingTables):
    hit = _impl.first_non_dedekind(_mul(t), t.one)
    return None if hit is None else (int(hit[0]), int(hit[1]))


def first_cohopf_violation(t: RingTables):
    return _opt(_impl.first_cohopf_violation(_mul(t), t.one, t.zero, inverse_table(t)))


def radical_indices(t: RingTables):
    inv = inverse_table(t)
    if FAST:
        mask = np.array([1 if j >= 0 else 0 for j in inv], dtype=np.uint8)
    else:
        mask = [j >= 0 for j in inv]
    return _impl.radical_indices(_add(t), _mul(t), _neg(t), t.one, mask)


def closure_indices(t: RingTables, gens, left: bool = True, right: bool = True):
    return _impl.closure_indices(_add(t), _mul(t), t.zero, list(gens), left, right)
