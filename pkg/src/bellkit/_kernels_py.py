"""Pure-numpy tally kernels.

Signature-identical to the compiled module `_kernels`; every function takes
pre-drawn input arrays and returns exact integer counts, so both backends
(and any chunked parallel run merged by summation) produce bit-identical
results.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "python"


def ghz_line_tally(codes, lines, sat):
    """Per-line (events, violations) for assignment codes and chosen lines.

    ``sat[code, line]`` is 1 when the assignment satisfies that line's parity.
    """
    codes = np.ascontiguousarray(codes, dtype=np.uint8)
    lines = np.ascontiguousarray(lines, dtype=np.uint8)
    n_lines = sat.shape[1]
    events = np.bincount(lines, minlength=n_lines).astype(np.int64)
    ok = np.asarray(sat, dtype=np.uint8)[codes, lines]
    violations = np.bincount(lines[ok == 0], minlength=n_lines).astype(np.int64)
    return events, violations


def masked_choice_tally(ok_masks, choices, n_settings):
    """Per-setting (events, violations); a round violates when its chosen
    setting's bit is clear in the round's OK mask."""
    ok_masks = np.ascontiguousarray(ok_masks, dtype=np.uint32)
    choices = np.ascontiguousarray(choices, dtype=np.uint8)
    events = np.bincount(choices, minlength=n_settings).astype(np.int64)
    bad = (ok_masks >> choices) & np.uint32(1) == 0
    violations = np.bincount(choices[bad], minlength=n_settings).astype(np.int64)
    return events, violations


def equal_count(a, b):
    """Number of positions where the two +-1 arrays agree."""
    a = np.ascontiguousarray(a, dtype=np.int8)
    b = np.ascontiguousarray(b, dtype=np.int8)
    return int(np.count_nonzero(a == b))


def code_histogram(codes, size):
    """Exact histogram of small non-negative integer codes."""
    codes = np.ascontiguousarray(codes, dtype=np.uint16)
    return np.bincount(codes, minlength=size).astype(np.int64)
