"""Auxiliary-word accounting.

Construction code charges the words held by its working structures
(position sets, pair trackers, segment lists, tree nodes) to the meter that
is active in the current context. The text itself is never charged. With no
meter active every call is a no-op.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Iterator, Optional


@dataclass
class AuxMeter:
    current: int = 0
    peak: int = 0

    def alloc(self, words: int) -> None:
        self.current += words
        if self.current > self.peak:
            self.peak = self.current

    def free(self, words: int) -> None:
        self.current -= words


_active: ContextVar[Optional[AuxMeter]] = ContextVar("sparsesuffix_aux_meter", default=None)


@contextmanager
def track_aux_words() -> Iterator[AuxMeter]:
    """Activate a fresh meter for the enclosed block."""
    meter = AuxMeter()
    token = _active.set(meter)
    try:
        yield meter
    finally:
        _active.reset(token)


def charge(words: int) -> None:
    meter = _active.get()
    if meter is not None:
        meter.alloc(int(words))


def release(words: int) -> None:
    meter = _active.get()
    if meter is not None:
        meter.free(int(words))


@contextmanager
def held(words: int) -> Iterator[None]:
    """Charge ``words`` for the duration of the block."""
    charge(words)
    try:
        yield
    finally:
        release(words)
