"""Deterministic derivation of independent random streams.

One master seed fans out into substreams keyed by string tags (typically
candidate ids), so a candidate's draws never depend on its position in the
pool and results are reproducible bit for bit.
"""

from __future__ import annotations

import hashlib

import numpy as np


def substream(seed: int, *tags: object) -> np.random.Generator:
    """Return a generator derived from ``seed`` and a sequence of tags.

    The same ``(seed, tags)`` pair always yields an identical stream;
    distinct tags yield statistically independent streams.
    """
    payload = "\x1f".join([str(int(seed)), *map(str, tags)]).encode()
    digest = hashlib.blake2b(payload, digest_size=32).digest()
    words = [int.from_bytes(digest[i : i + 4], "little") for i in range(0, 32, 4)]
    return np.random.default_rng(np.random.SeedSequence(words))


def derive_seed(seed: int, *tags: object) -> int:
    """Collapse ``(seed, tags)`` into a new 63-bit master seed.

    Used where a component needs an integer seed of its own (for example
    one seed per sweep trial) rather than a generator.
    """
    payload = "\x1f".join([str(int(seed)), *map(str, tags)]).encode()
    digest = hashlib.blake2b(payload, digest_size=8).digest()
    return int.from_bytes(digest, "little") >> 1
