"""Deterministic 64-bit random stream used by every stochastic operator.

All randomness in this package flows through an explicitly passed
:class:`SplitMix64` stream, which makes every run a pure function of its
seed. The generator is intentionally tiny so the numba kernel
(``_kernel.py``) can carry a bit-exact twin of it; stream-equality between
the two implementations is covered by tests.

Draw primitives and their stream cost:

* :meth:`SplitMix64.next_u64` - one 64-bit output (one state step).
* :meth:`SplitMix64.random` - one ``next_u64`` (top 53 bits scaled to [0, 1)).
* :meth:`SplitMix64.randbelow` - one ``next_u64`` (modulo reduction).
* :meth:`SplitMix64.sample_indices` - exactly ``k`` ``next_u64`` draws
  (partial Fisher-Yates).
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """SplitMix64 generator over Python ints masked to 64 bits.

    The seed is taken modulo 2**64. Identical seeds yield identical
    streams, on any platform, in any backend.
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & MASK64

    def next_u64(self) -> int:
        """Advance the state and return the next 64-bit value."""
        self._state = (self._state + _GOLDEN) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) built from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n).

        Uses plain modulo reduction; the bias (< n / 2**64) is far below
        anything observable here and keeps the draw bit-identical across
        backends.
        """
        if n < 1:
            raise ValueError(f"randbelow requires n >= 1, got {n}")
        return self.next_u64() % n

    def sample_indices(self, k: int, n: int) -> list[int]:
        """Return k distinct uniform indices from range(n).

        Partial Fisher-Yates shuffle; consumes exactly k draws.
        """
        if not 0 <= k <= n:
            raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
        idx = list(range(n))
        for i in range(k):
            j = i + self.randbelow(n - i)
            idx[i], idx[j] = idx[j], idx[i]
        return idx[:k]
