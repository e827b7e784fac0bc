"""SplitMix64 (Steele, Lea & Flood 2014), the fixed PRNG for all sampling.

Pure 64-bit integer mixing, so streams are bit-identical across platforms
and Python versions; reports built from a given seed are byte-stable.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) via rejection; unbiased for any n >= 1."""
        if n <= 0:
            raise ValueError("below() needs n >= 1")
        threshold = ((1 << 64) // n) * n
        while True:
            r = self.next64()
            if r < threshold:
                return r % n
