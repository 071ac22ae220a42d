"""Kernel selection and the flattened window sampling program.

The hot loop (drawing hundreds of millions of uniform positions) lives in a
compiled Cython extension when available; a numpy implementation with the
identical draw order is the fallback.  Set ``ESCBIAS_PURE_PYTHON=1`` to force
the fallback.  Both return bit-identical results for the same seed, so the
choice never affects analysis output, only speed.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidCandidateCount
from .schemes import Allocated, Rated, Sequential, VotingScheme

ALLOCATED = 0
SEQUENTIAL = 1
RATED = 2


def _select_implementation():
    if not os.environ.get("ESCBIAS_PURE_PYTHON"):
        try:
            from . import _kernel

            return _kernel, True
        except ImportError:
            pass
    from . import _kernel_py

    return _kernel_py, False


_impl, USING_EXTENSION = _select_implementation()


def implementation_name() -> str:
    return "cython" if USING_EXTENSION else "python"


@dataclass(frozen=True)
class WindowProgram:
    """Per-year sampling instructions for one giver's window, flattened.

    ``counts`` holds the candidate count for allocated and sequential years
    and the juror count for rated years (whose draw is field-size free).
    """

    kinds: np.ndarray
    counts: np.ndarray
    offsets: np.ndarray
    lengths: np.ndarray
    scores: np.ndarray

    @property
    def n_years(self) -> int:
        return len(self.kinds)

    @property
    def draws_per_sample(self) -> int:
        per_year = np.where(
            self.kinds == SEQUENTIAL,
            self.lengths,
            np.where(self.kinds == RATED, self.counts, 1),
        )
        return int(per_year.sum())


def build_program(years: Sequence[tuple[VotingScheme, int]]) -> WindowProgram:
    """Flatten (scheme, candidate count) pairs, one per window year."""
    kinds, counts, offsets, lengths, flat = [], [], [], [], []
    for scheme, candidate_count in years:
        if candidate_count < 1:
            raise InvalidCandidateCount(
                f"candidate count must be >= 1, got {candidate_count}"
            )
        offsets.append(len(flat))
        if isinstance(scheme, Allocated):
            kinds.append(ALLOCATED)
            counts.append(candidate_count)
            flat.extend(scheme.scores)
            lengths.append(len(scheme.scores))
        elif isinstance(scheme, Sequential):
            kinds.append(SEQUENTIAL)
            counts.append(candidate_count)
            flat.extend(scheme.points)
            lengths.append(len(scheme.points))
        elif isinstance(scheme, Rated):
            kinds.append(RATED)
            counts.append(scheme.juror_count)
            flat.extend(scheme.juror_scores)
            lengths.append(len(scheme.juror_scores))
        else:
            raise TypeError(f"unknown scheme {scheme!r}")
    as_i64 = lambda xs: np.asarray(xs, dtype=np.int64)
    return WindowProgram(
        as_i64(kinds), as_i64(counts), as_i64(offsets), as_i64(lengths), as_i64(flat)
    )


def sample_window_means(program: WindowProgram, n_samples: int, bit_generator) -> np.ndarray:
    """Draw ``n_samples`` window means, advancing ``bit_generator`` in place."""
    return _impl.sample_window_means(
        program.kinds,
        program.counts,
        program.offsets,
        program.lengths,
        program.scores,
        n_samples,
        bit_generator,
    )
