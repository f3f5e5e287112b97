"""Read-only text wrapper with 1-based positions."""

from __future__ import annotations

import os
from typing import Union

import numpy as np

from .errors import InputError

TextLike = Union["Text", bytes, bytearray, memoryview, str, np.ndarray]


class Text:
    """Immutable byte sequence addressed as ``t_1 .. t_n``.

    The symbols live in a read-only ``uint8`` array (possibly a memory map),
    which is never counted as auxiliary memory.
    """

    __slots__ = ("data",)

    def __init__(self, data: np.ndarray) -> None:
        if data.dtype != np.uint8 or data.ndim != 1:
            raise InputError("text must be a 1-d uint8 array")
        if data.flags.writeable:
            data = data.view()
            data.flags.writeable = False
        self.data = data

    @classmethod
    def from_bytes(cls, raw: bytes | bytearray | memoryview) -> "Text":
        return cls(np.frombuffer(bytes(raw), dtype=np.uint8))

    @classmethod
    def from_file(cls, path: str | os.PathLike) -> "Text":
        """Map a file read-only; an empty file gives an empty text."""
        if os.path.getsize(path) == 0:
            return cls(np.zeros(0, dtype=np.uint8))
        return cls(np.memmap(path, dtype=np.uint8, mode="r"))

    @property
    def n(self) -> int:
        return int(self.data.shape[0])

    def __len__(self) -> int:
        return self.n

    def symbol(self, i: int) -> int:
        """Return ``t_i`` (1-based)."""
        if not 1 <= i <= self.n:
            raise InputError(f"position {i} out of range [1,{self.n}]")
        return int(self.data[i - 1])

    def tobytes(self) -> bytes:
        return self.data.tobytes()

    def __repr__(self) -> str:
        head = self.data[:16].tobytes()
        return f"Text(n={self.n}, head={head!r})"


def as_text(obj: TextLike) -> Text:
    """Coerce bytes, str (latin-1), or a uint8 array into a :class:`Text`."""
    if isinstance(obj, Text):
        return obj
    if isinstance(obj, str):
        return Text.from_bytes(obj.encode("latin-1"))
    if isinstance(obj, np.ndarray):
        return Text(np.ascontiguousarray(obj, dtype=np.uint8))
    return Text.from_bytes(obj)


def check_position(text: Text, i: int) -> None:
    if not 1 <= i <= text.n:
        raise InputError(f"position {i} out of range [1,{text.n}]")
