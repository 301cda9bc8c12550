"""st-reachability on weighted monotone lattices, static and dynamic.

A lattice is stored column by column as Python integers: bit ``r`` of
column ``c`` is the weight of vertex (c, r).  One column step of the
reachability DP is then a handful of big-integer operations: seeds coming
from the left (and lower-left, when diagonal edges exist) are propagated
upwards along runs of activated vertices with a single carry-propagating
addition.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from typing import Iterable, Sequence

import numpy as np


def column_masks(weights: np.ndarray) -> list[int]:
    """Pack a (cols x rows) 0/1 array into per-column bit masks."""
    w = np.asarray(weights, dtype=np.uint8)
    out = []
    for col in w:
        packed = np.packbits(col[::-1])
        val = int.from_bytes(packed.tobytes(), "big")
        pad = (-len(col)) % 8
        out.append(val >> pad)
    return out


def _propagate(w: int, seeds: int) -> int:
    seeds &= w
    return w & (((w + seeds) ^ w) | seeds)


def _step(w: int, prev: int, diagonal: bool) -> int:
    return _propagate(w, prev | (prev << 1) if diagonal else prev)


def sweep_columns(cols: Sequence[int], diagonal: bool, start: int = 0, prev: int | None = None) -> int:
    """Reach mask of the last column, starting at column ``start``.

    ``prev`` is the reach mask of column ``start - 1``; ``None`` means the
    sweep begins at the source (0, 0).
    """
    c = start
    if prev is None:
        prev = _propagate(cols[0], 1)
        c = 1
    for k in range(c, len(cols)):
        prev = _step(cols[k], prev, diagonal)
    return prev


def lattice_reachable(weights: np.ndarray, diagonal: bool = True) -> bool:
    cols = column_masks(weights)
    last = sweep_columns(cols, diagonal)
    return bool((last >> (weights.shape[1] - 1)) & 1)


class ReachabilityBackend(ABC):
    """Dynamic st-reachability on an N_v x N_h lattice with right/up/diagonal edges.

    Counters: ``updates`` counts effective weight changes, ``queries`` counts
    reachability queries and ``query_cells`` the lattice cells scanned.
    """

    name = "abstract"

    def __init__(self):
        self.updates = 0
        self.queries = 0
        self.query_cells = 0
        self.n_cols = self.n_rows = 0

    def init(self, weights: np.ndarray) -> None:
        self.n_cols, self.n_rows = weights.shape
        self._cols = column_masks(weights)
        self._reset()

    def _reset(self) -> None:
        pass

    def weight(self, col: int, row: int) -> int:
        return (self._cols[col] >> row) & 1

    def set_weight(self, col: int, row: int, w: int) -> None:
        bit = 1 << row
        old = self._cols[col]
        new = old | bit if w else old & ~bit
        if new != old:
            self._cols[col] = new
            self.updates += 1
            self._touched(col)

    def _touched(self, col: int) -> None:
        pass

    @abstractmethod
    def query(self) -> bool: ...

    def offline_process(self, weights: np.ndarray, updates: Iterable[tuple[int, int, int]]) -> list[bool]:
        """Answer after the initial lattice and after each update in turn."""
        self.init(weights)
        out = [self.query()]
        for col, row, w in updates:
            self.set_weight(col, row, w)
            out.append(self.query())
        return out

    def snapshot(self) -> np.ndarray:
        arr = np.zeros((self.n_cols, self.n_rows), dtype=np.uint8)
        for c, m in enumerate(self._cols):
            for r in range(self.n_rows):
                arr[c, r] = (m >> r) & 1
        return arr


class BaselineBackend(ReachabilityBackend):
    """Full monotone DP per query."""

    name = "baseline"

    def query(self) -> bool:
        self.queries += 1
        self.query_cells += self.n_cols * self.n_rows
        last = sweep_columns(self._cols, diagonal=True)
        return bool((last >> (self.n_rows - 1)) & 1)


class BlockedBackend(ReachabilityBackend):
    """Caches the DP frontier at column-block boundaries.

    An update in block b invalidates only the frontiers after b, so a query
    re-sweeps from the first stale block onwards.
    """

    name = "blocked"

    def _reset(self) -> None:
        self.block = max(1, math.isqrt(self.n_cols))
        self.n_blocks = -(-self.n_cols // self.block)
        self._frontier: list[int | None] = [None] * (self.n_blocks + 1)
        self._valid = 0  # frontier[0.._valid] are current; frontier[0] is the source
        self._answer = False

    def _touched(self, col: int) -> None:
        self._valid = min(self._valid, col // self.block)

    def query(self) -> bool:
        self.queries += 1
        if self._valid < self.n_blocks:
            b = self._valid
            prev = self._frontier[b]
            for k in range(b, self.n_blocks):
                lo, hi = k * self.block, min(self.n_cols, (k + 1) * self.block)
                cols = self._cols[lo:hi]
                if k == 0:
                    prev = sweep_columns(cols, diagonal=True)
                else:
                    prev = sweep_columns(cols, diagonal=True, start=0, prev=prev)
                self._frontier[k + 1] = prev
                self.query_cells += (hi - lo) * self.n_rows
            self._valid = self.n_blocks
            self._answer = bool((prev >> (self.n_rows - 1)) & 1)
        return self._answer


BACKENDS = {"baseline": BaselineBackend, "blocked": BlockedBackend}


def make_backend(name: str) -> ReachabilityBackend:
    try:
        return BACKENDS[name]()
    except KeyError:
        raise ValueError(f"unknown backend {name!r}") from None
