"""Dense mixed-radix indexing for transmitter-rooted relay paths.

A path ``p0·x1···xl`` records one chain of relays: what ``x_{l-1}`` told
``x_l`` about what ... ``p0`` said. Every path starts at the transmitter,
so only the tail labels carry information; a path with tail length ``l``
is addressed by its tail read as a base-``n`` number, and layer ``l``
starts at offset ``sum(n**j for j < l)``. Full-information trees are
exponential in the round count, so construction is guarded to desk scale.
"""

from __future__ import annotations

import numpy as np

Path = tuple[int, ...]

MAX_LAYER_SIZE = 10**7


class ScenarioSizeError(ValueError):
    """Raised when the requested path tree exceeds the in-memory guard."""


class PathError(ValueError):
    """Raised for paths outside the space (bad labels, length, or root)."""


class PathSpace:
    """Index space for paths with tail lengths ``0..max_tail``."""

    def __init__(self, n: int, max_tail: int):
        if n < 1:
            raise ValueError("need at least one process")
        if max_tail < 0:
            raise ValueError("max_tail must be nonnegative")
        if n**max_tail > MAX_LAYER_SIZE:
            raise ScenarioSizeError(
                f"path tree too large: {n}**{max_tail} > {MAX_LAYER_SIZE}"
            )
        self.n = n
        self.max_tail = max_tail
        self.layer_sizes = tuple(n**l for l in range(max_tail + 1))
        offsets = np.zeros(max_tail + 2, dtype=np.int64)
        np.cumsum(self.layer_sizes, out=offsets[1:])
        self.offsets = offsets
        self.size = int(offsets[-1])

    def check_path(self, path: Path, transmitter: int) -> None:
        if not path or path[0] != transmitter:
            raise PathError(f"path {path} must start at transmitter {transmitter}")
        if len(path) - 1 > self.max_tail:
            raise PathError(f"path {path} longer than {self.max_tail + 1}")
        for label in path:
            if not 0 <= label < self.n:
                raise PathError(f"label {label} outside 0..{self.n - 1}")

    def tail_value(self, path: Path) -> int:
        value = 0
        for label in path[1:]:
            value = value * self.n + label
        return value

    def index(self, path: Path, transmitter: int) -> int:
        self.check_path(path, transmitter)
        return int(self.offsets[len(path) - 1]) + self.tail_value(path)

    def decode(self, idx: int, transmitter: int) -> Path:
        if not 0 <= idx < self.size:
            raise PathError(f"index {idx} out of range")
        tail_len = int(np.searchsorted(self.offsets, idx, side="right")) - 1
        value = idx - int(self.offsets[tail_len])
        tail = []
        for _ in range(tail_len):
            tail.append(value % self.n)
            value //= self.n
        return (transmitter, *reversed(tail))

    def iter_layer(self, tail_len: int, transmitter: int):
        """Paths of one tail length, in index (= per-layer lexicographic) order."""
        for value in range(self.layer_sizes[tail_len]):
            tail = []
            v = value
            for _ in range(tail_len):
                tail.append(v % self.n)
                v //= self.n
            yield (transmitter, *reversed(tail))

    def iter_paths_lex(self, transmitter: int):
        """All paths in global lexicographic order (prefix before extension)."""

        def walk(path: Path):
            yield path
            if len(path) - 1 < self.max_tail:
                for label in range(self.n):
                    yield from walk(path + (label,))

        yield from walk((transmitter,))
