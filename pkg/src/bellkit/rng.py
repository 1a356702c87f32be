"""Seed handling.

All sampling in the package is driven by numpy's PCG64 generator.  Every
sampling entry point takes an explicit integer seed; independent streams for
the same experiment (e.g. the hidden-variable draw and the setting choice)
are derived by spawning children of one ``SeedSequence``, which guarantees
the streams are disjoint by construction.
"""

from __future__ import annotations

import numpy as np

__all__ = ["generator", "split"]


def generator(seed: int) -> np.random.Generator:
    """A PCG64 generator for the given seed."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def split(seed: int, n: int) -> list[np.random.Generator]:
    """``n`` independent generators derived from one master seed.

    Stream ``i`` depends only on ``(seed, i)``, never on how the other
    streams are consumed.
    """
    children = np.random.SeedSequence(seed).spawn(n)
    return [np.random.Generator(np.random.PCG64(c)) for c in children]
