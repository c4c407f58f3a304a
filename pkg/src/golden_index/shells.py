"""Enumeration of integer vectors by exact squared Euclidean norm.

Z^8 vectors are produced shell by shell (all vectors of one squared norm at
a time) by composing Z^2 and Z^4 shells, which keeps peak memory bounded and
lets callers stop as soon as their search is complete.
"""

from __future__ import annotations

import math

import numpy as np


def _shell2(e: int) -> np.ndarray:
    """All (x, y) in Z^2 with x^2 + y^2 = e."""
    out = []
    r = math.isqrt(e)
    for x in range(-r, r + 1):
        rem = e - x * x
        y = math.isqrt(rem)
        if y * y == rem:
            out.append((x, y))
            if y:
                out.append((x, -y))
    if not out:
        return np.empty((0, 2), dtype=np.int64)
    return np.array(out, dtype=np.int64)


class ShellCache:
    """Grow-on-demand cache of Z^2 and Z^4 shells."""

    def __init__(self):
        self._s2: list[np.ndarray] = []
        self._s4: list[np.ndarray] = []

    def shell2(self, e: int) -> np.ndarray:
        while len(self._s2) <= e:
            self._s2.append(_shell2(len(self._s2)))
        return self._s2[e]

    def shell4(self, e: int) -> np.ndarray:
        while len(self._s4) <= e:
            t = len(self._s4)
            parts = []
            for e1 in range(t + 1):
                a = self.shell2(e1)
                b = self.shell2(t - e1)
                if len(a) == 0 or len(b) == 0:
                    continue
                left = np.repeat(a, len(b), axis=0)
                right = np.tile(b, (len(a), 1))
                parts.append(np.hstack([left, right]))
            if parts:
                self._s4.append(np.vstack(parts))
            else:
                self._s4.append(np.empty((0, 4), dtype=np.int64))
        return self._s4[e]

    def shell8(self, e: int, box: np.ndarray | None = None) -> np.ndarray:
        """All of Z^8 with squared norm e, optionally clipped to |x_j| <= box[j]."""
        parts = []
        for e1 in range(e + 1):
            a = self.shell4(e1)
            b = self.shell4(e - e1)
            if len(a) == 0 or len(b) == 0:
                continue
            if box is not None:
                a = a[np.all(np.abs(a) <= box[:4], axis=1)]
                b = b[np.all(np.abs(b) <= box[4:], axis=1)]
                if len(a) == 0 or len(b) == 0:
                    continue
            left = np.repeat(a, len(b), axis=0)
            right = np.tile(b, (len(a), 1))
            parts.append(np.hstack([left, right]))
        if not parts:
            return np.empty((0, 8), dtype=np.int64)

        return np.vstack(parts)


_GLOBAL_CACHE = ShellCache()


def shell8(e: int, box: np.ndarray | None = None) -> np.ndarray:
    return _GLOBAL_CACHE.shell8(e, box)
