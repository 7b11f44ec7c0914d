"""Configurable size bounds for the exponential enumerations.

Every bound is multiplied by the ``FAMTOP_GUARD_SCALE`` environment variable
when the defaults are first read.  ``use_guards`` overrides bounds for the
duration of a ``with`` block (the setting is context-local, so concurrent
callers do not see each other's overrides).
"""

from __future__ import annotations

import contextlib
import contextvars
import dataclasses
import os
from typing import Iterator

from .errors import SizeGuardExceeded


@dataclasses.dataclass(frozen=True)
class Guards:
    max_points: int = 64
    max_candidates: int = 10**6
    max_family: int = 2**20
    max_catalog_points: int = 4
    max_function_space: int = 5

    def __post_init__(self) -> None:
        for f in dataclasses.fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"guard {f.name} must be positive")

    def scaled(self, factor: float) -> "Guards":
        return Guards(
            **{
                f.name: max(1, int(getattr(self, f.name) * factor))
                for f in dataclasses.fields(self)
            }
        )


def _env_defaults() -> Guards:
    raw = os.environ.get("FAMTOP_GUARD_SCALE")
    if not raw:
        return Guards()
    return Guards().scaled(float(raw))


_current: contextvars.ContextVar[Guards | None] = contextvars.ContextVar(
    "famtop_guards", default=None
)


def get_guards() -> Guards:
    g = _current.get()
    if g is None:
        g = _env_defaults()
    return g


@contextlib.contextmanager
def use_guards(**overrides: int) -> Iterator[Guards]:
    g = dataclasses.replace(get_guards(), **overrides)
    token = _current.set(g)
    try:
        yield g
    finally:
        _current.reset(token)


def check(guard: str, value: int) -> None:
    bound = getattr(get_guards(), guard)
    if value > bound:
        raise SizeGuardExceeded(guard, value, bound)
