"""Seeded integer sampling with a fixed output sequence.

Draws come from the raw 64-bit output of numpy's PCG64 bit generator, which
is stable across platforms and numpy releases.  Bounded integers use
rejection sampling, so there is no modulo bias.
"""

from __future__ import annotations

import numpy as np

_TWO64 = 1 << 64


class Sampler:
    """Uniform integers in ``[0, n)`` from a seeded PCG64 stream."""

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._bits = np.random.PCG64(self.seed)

    def below(self, n: int) -> int:
        if n < 1:
            raise ValueError("need n >= 1")
        limit = _TWO64 - (_TWO64 % n)
        while True:
            w = int(self._bits.random_raw())
            if w < limit:
                return w % n

    def many_below(self, n: int, size: int) -> np.ndarray:
        """``size`` independent draws, same sequence as repeated ``below``."""
        if n < 1:
            raise ValueError("need n >= 1")
        limit = _TWO64 - (_TWO64 % n)
        out = np.empty(size, dtype=np.int64)
        filled = 0
        while filled < size:
            raw = self._bits.random_raw(size - filled)
            if limit != _TWO64:
                raw = raw[raw < np.uint64(limit)]
            take = raw % np.uint64(n)
            out[filled:filled + take.size] = take.astype(np.int64)
            filled += take.size
        return out


def derive_seed(master: int, index: int) -> int:
    """Independent 64-bit seed for trial ``index`` of a run seeded by ``master``."""
    words = np.random.SeedSequence([int(master), int(index)]).generate_state(
        2, np.uint32)
    return int(words[0]) | (int(words[1]) << 32)


def fresh_seed() -> int:
    """A new 63-bit seed from OS entropy (callers should print it)."""
    return int(np.random.SeedSequence().generate_state(1, np.uint64)[0]) >> 1
