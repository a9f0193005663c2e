"""Deterministic PRNG used by the topology generator.

Graphs must be bit-reproducible from a seed across platforms and across
implementations, so the generator is pinned to a fully specified
algorithm instead of ``random.Random``:

* State setup: SplitMix64.  Starting from the 64-bit seed, each step is
  ``state = (state + 0x9E3779B97F4A7C15) mod 2^64`` followed by the mix
  ``z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
  z *= 0x94D049BB133111EB; z ^= z >> 31`` (all mod 2^64).  Four outputs
  seed the xoshiro state ``s0..s3``.
* Stream: xoshiro256++.  Output is ``rotl64(s0 + s3, 23) + s0``; the
  state update is ``t = s1 << 17; s2 ^= s0; s3 ^= s1; s1 ^= s2;
  s0 ^= s3; s2 ^= t; s3 = rotl64(s3, 45)`` (all mod 2^64).
* Doubles: ``(next_u64() >> 11) * 2^-53``, uniform on ``[0, 1)``.

Any implementation following this recipe reproduces identical draw
streams, and therefore identical topologies, from identical seeds.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1
_DOUBLE_SCALE = 2.0 ** -53


def _splitmix64(state: int):
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK


class Xoshiro256PlusPlus:
    """xoshiro256++ stream seeded through SplitMix64."""

    __slots__ = ("_s0", "_s1", "_s2", "_s3")

    def __init__(self, seed: int):
        state = seed & _MASK
        state, self._s0 = _splitmix64(state)
        state, self._s1 = _splitmix64(state)
        state, self._s2 = _splitmix64(state)
        state, self._s3 = _splitmix64(state)

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        result = (_rotl((s0 + s3) & _MASK, 23) + s0) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return result

    def random(self) -> float:
        """Uniform double in ``[0, 1)`` from the top 53 bits."""
        return (self.next_u64() >> 11) * _DOUBLE_SCALE

    def uniform(self, lo: float, hi: float) -> float:
        """Uniform double in ``[lo, hi)``; consumes exactly one draw."""
        return lo + (hi - lo) * self.random()

    def randrange(self, n: int) -> int:
        """Integer in ``[0, n)`` by modulo reduction (bias < 2^-50 for
        practical n; acceptable for instance sampling, documented for
        reproducibility)."""
        if n <= 0:
            raise ValueError("randrange needs n > 0")
        return self.next_u64() % n
