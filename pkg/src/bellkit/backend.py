"""Kernel backend selection and chunked (thread-parallel) tallying.

The compiled Cython kernels are preferred when importable; the numpy twins
are the fallback.  ``BELLKIT_KERNELS=python|compiled`` forces a choice.
Because every kernel maps pre-drawn arrays to exact integer counts, results
are identical across backends, and chunked runs merged by summation are
identical to single-pass runs regardless of thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from types import ModuleType

import numpy as np

from . import _kernels_py

__all__ = ["kernels", "backend_name", "available_backends", "get_backend", "tally_chunked"]


def _load_compiled() -> ModuleType | None:
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        return None
    return _kernels


def get_backend(name: str | None = None) -> ModuleType:
    """Resolve a kernel module by name ('compiled', 'python', or None=auto)."""
    if name is None:
        name = os.environ.get("BELLKIT_KERNELS", "").strip() or "auto"
    if name == "python":
        return _kernels_py
    if name == "compiled":
        compiled = _load_compiled()
        if compiled is None:
            raise ImportError("compiled kernels requested but the extension is not built")
        return compiled
    if name == "auto":
        return _load_compiled() or _kernels_py
    raise ValueError(f"unknown kernel backend {name!r}")


def available_backends() -> list[str]:
    names = ["python"]
    if _load_compiled() is not None:
        names.append("compiled")
    return names


kernels = get_backend()


def backend_name() -> str:
    return kernels.BACKEND_NAME


def tally_chunked(fn, arrays: list[np.ndarray], n: int, threads: int = 1, **kwargs):
    """Apply a tally kernel over row chunks and merge by summation.

    ``arrays`` are the length-``n`` inputs; scalar kwargs pass through.  The
    merged result equals the single-pass result exactly, so the output does
    not depend on ``threads``.
    """
    if threads <= 1 or n < 2:
        return fn(*arrays, **kwargs)
    bounds = np.linspace(0, n, threads + 1, dtype=int)
    chunks = [
        [a[lo:hi] for a in arrays] for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo
    ]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(lambda args: fn(*args, **kwargs), chunks))
    first = parts[0]
    if isinstance(first, tuple):
        return tuple(sum(p[i] for p in parts) for i in range(len(first)))
    return sum(parts)
