"""Counter-based random streams: every draw is a pure hash of its key.

Replaying an evolution run must not depend on the order in which values
happen to be drawn, so nothing here keeps sequential generator state.
Uniforms come from a splitmix-style 64-bit mix of (key parts, index) and
normals from a Box-Muller pair of such uniforms.
"""

from __future__ import annotations

import math

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB
_TWO53 = float(1 << 53)


def mix64(x: int) -> int:
    x &= _MASK
    x = ((x ^ (x >> 30)) * _MIX_A) & _MASK
    x = ((x ^ (x >> 27)) * _MIX_B) & _MASK
    return x ^ (x >> 31)


def fold(*parts: int) -> int:
    """Chain integer key parts into one 64-bit state (order sensitive)."""
    h = 0x8B72E3606AF1D3A2
    for p in parts:
        h = mix64(h ^ (p & _MASK))
    return h


def unit(*parts: int) -> float:
    """Uniform float in [0, 1) keyed entirely by the given parts."""
    return (fold(*parts) >> 11) / _TWO53


def _mix64_array(x: np.ndarray) -> np.ndarray:
    x = x ^ (x >> np.uint64(30))
    x = x * np.uint64(_MIX_A)
    x = x ^ (x >> np.uint64(27))
    x = x * np.uint64(_MIX_B)
    return x ^ (x >> np.uint64(31))


def unit_array(base: int, n: int) -> np.ndarray:
    """n uniforms in [0, 1); element i depends only on (base, i)."""
    idx = np.arange(n, dtype=np.uint64)
    x = np.uint64(base & _MASK) + idx * np.uint64(_GOLDEN)
    return (_mix64_array(x) >> np.uint64(11)) / _TWO53


def fold_arrays(*parts: np.ndarray) -> np.ndarray:
    """Vector version of fold over aligned arrays of key parts."""
    h = np.full(parts[0].shape, 0x8B72E3606AF1D3A2, dtype=np.uint64)
    for p in parts:
        h = _mix64_array(h ^ p.astype(np.uint64))
    return h


def unit_matrix(bases: np.ndarray, m: int) -> np.ndarray:
    """(len(bases), m) uniforms; entry (i, j) depends only on (bases[i], j)."""
    idx = np.arange(1, m + 1, dtype=np.uint64)
    x = bases[:, None] + idx[None, :] * np.uint64(_GOLDEN)
    return (_mix64_array(x) >> np.uint64(11)) / _TWO53


def normal_array(base: int, n: int) -> np.ndarray:
    """n standard normals via Box-Muller; element i depends only on (base, i)."""
    # offset keeps u1 strictly inside (0, 1) so the log is finite
    u1 = (unit_array(fold(base, 0), n) * _TWO53 + 0.5) / (_TWO53 + 1.0)
    u2 = unit_array(fold(base, 1), n)
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * math.pi * u2)


class KeyedRng:
    """Per-gene draw source for one genome-producing step.

    The key fixes (seed, generation, candidate, attempt); each request adds
    a stream id so crossover and mutation never share values.
    """

    def __init__(self, *key: int):
        self._state = fold(*key)

    def units(self, n: int, stream: int) -> np.ndarray:
        return unit_array(fold(self._state, stream), n)

    def normals(self, n: int, stream: int) -> np.ndarray:
        return normal_array(fold(self._state, stream), n)


class ConstRng:
    """Test double returning a fixed uniform and zero normals."""

    def __init__(self, value: float = 0.5):
        self.value = value

    def units(self, n: int, stream: int) -> np.ndarray:
        return np.full(n, self.value)

    def normals(self, n: int, stream: int) -> np.ndarray:
        return np.zeros(n)
