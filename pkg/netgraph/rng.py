"""Seed derivation for every stochastic routine in the project.

A master seed is folded with a sequence of stream ids through splitmix64,
so a stream depends only on (seed, purpose, index) and never on how work
is scheduled.
"""
import hashlib

import numpy as np

MASK64 = (1 << 64) - 1


def splitmix64(value):
    value = (value + 0x9E3779B97F4A7C15) & MASK64
    z = value
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _stream_key(stream_id):
    if isinstance(stream_id, (int, np.integer)):
        return int(stream_id) & MASK64
    digest = hashlib.blake2b(str(stream_id).encode('utf-8'), digest_size=8).digest()
    return int.from_bytes(digest, 'little')


def derive_seed(seed, *stream):
    state = splitmix64(int(seed) & MASK64)
    for stream_id in stream:
        state = splitmix64(state ^ _stream_key(stream_id))
    return state


def make_rng(seed, *stream):
    """Return an independent ``numpy.random.Generator`` for ``(seed, *stream)``."""
    return np.random.Generator(np.random.PCG64(derive_seed(seed, *stream)))
