"""Desk-scale resource caps.

PBW and tensor sizes grow very quickly with N, the number of tensor slots
and the total degree, so every entry point checks against a single set of
limits.  Exceeding one raises :class:`CapExceeded` instead of hanging.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, replace


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Caps:
    max_n: int = 6
    max_slots: int = 6
    max_degree: int = 8


_current = Caps()


def current() -> Caps:
    return _current


@contextmanager
def override(**limits):
    """Temporarily raise (or lower) the caps, e.g. ``override(max_degree=10)``."""
    global _current
    saved = _current
    _current = replace(saved, **limits)
    try:
        yield _current
    finally:
        _current = saved


def check_n(n: int) -> None:
    if n > _current.max_n:
        raise CapExceeded(f"N={n} exceeds the cap max_n={_current.max_n}")


def check_slots(m: int) -> None:
    if m > _current.max_slots:
        raise CapExceeded(f"{m} tensor slots exceed the cap max_slots={_current.max_slots}")


def check_degree(d: int) -> None:
    if d > _current.max_degree:
        raise CapExceeded(f"degree {d} exceeds the cap max_degree={_current.max_degree}")
