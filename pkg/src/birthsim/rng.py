"""Deterministic, partition-independent random number streams.

Every stochastic node in a simulated cohort draws its uniforms from a
counter-based stream addressed by ``(master_seed, stream label, individual
index)``. The draw for individual ``i`` on stream ``s`` is a pure function of
that triple, so results never depend on simulation order, block size, or the
number of worker threads. Streams are realized as SplitMix64 sequences whose
initial state mixes the seed with a hash of the label; SplitMix64's output
function is a bijective 64-bit finalizer with good avalanche behaviour, which
is plenty for Monte Carlo use at these scales.
"""

from __future__ import annotations

import hashlib

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)

# uniforms are built from the top 53 bits of the mixed word
_U53 = 2.0 ** -53


def _mix64(x: np.ndarray | np.uint64) -> np.ndarray | np.uint64:
    """SplitMix64 finalizer, vectorized over uint64 (wrapping arithmetic)."""
    x = np.uint64(x) if np.isscalar(x) else x.astype(np.uint64, copy=True)
    with np.errstate(over="ignore"):
        x ^= x >> np.uint64(30)
        x *= _MIX1
        x ^= x >> np.uint64(27)
        x *= _MIX2
        x ^= x >> np.uint64(31)
    return x


def stream_id(label: str) -> np.uint64:
    """Stable 64-bit identifier for a named stream (platform independent)."""
    digest = hashlib.blake2b(label.encode("utf-8"), digest_size=8).digest()
    return np.uint64(int.from_bytes(digest, "little"))


class NoiseSource:
    """Uniform draws addressed by (master seed, stream label, index).

    ``uniforms(label, start, count)`` returns draws ``start .. start+count-1``
    of the stream, so a worker owning individuals ``[a, b)`` reproduces
    exactly the slice a single-threaded run would have produced.
    """

    def __init__(self, master_seed: int):
        if not 0 <= int(master_seed) < 2**64:
            raise ValueError("master_seed must fit in 64 bits")
        self.master_seed = int(master_seed)
        self._seed_word = _mix64(np.uint64(self.master_seed) ^ _GOLDEN)

    def _base(self, label: str) -> np.uint64:
        return _mix64(self._seed_word ^ stream_id(label))

    def uniforms(self, label: str, start: int, count: int) -> np.ndarray:
        """Uniform(0,1) draws ``start .. start+count-1`` of stream ``label``."""
        idx = np.arange(start, start + count, dtype=np.uint64)
        with np.errstate(over="ignore"):
            state = self._base(label) + idx * _GOLDEN
            words = _mix64(state)
        return (words >> np.uint64(11)).astype(np.float64) * _U53

    def derive_seed(self, label: str) -> int:
        """A fresh 64-bit seed for an independent sub-experiment."""
        return int(_mix64(self._base(label) ^ _GOLDEN))


def derive_seed(master_seed: int, label: str) -> int:
    return NoiseSource(master_seed).derive_seed(label)
