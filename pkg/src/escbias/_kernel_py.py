"""Pure-numpy sampling kernel, bit-compatible with the compiled extension.

Both kernels consume one PCG64 double per elementary draw, in the same
order (sample-major, then year, then point/juror within the year), and map
uniforms to positions with the same ``int(u * k)`` truncation.  Given the
same bit generator state they return bit-identical mean arrays.
"""

from __future__ import annotations

import numpy as np

ALLOCATED = 0
SEQUENTIAL = 1
RATED = 2

_CHUNK_ROWS = 65536


def sample_window_means(kinds, counts, offsets, lengths, scores, n_samples, bit_generator):
    """Draw ``n_samples`` window-mean scores for one flattened year program."""
    gen = np.random.Generator(bit_generator)
    n_years = len(kinds)
    draws_per_year = np.where(
        kinds == SEQUENTIAL, lengths, np.where(kinds == RATED, counts, 1)
    )
    draws = int(draws_per_year.sum())

    out = np.empty(n_samples, dtype=np.float64)
    done = 0
    while done < n_samples:
        rows = min(_CHUNK_ROWS, n_samples - done)
        u = gen.random((rows, draws))
        totals = np.zeros(rows, dtype=np.int64)
        col = 0
        for y in range(n_years):
            kind = kinds[y]
            c = counts[y]
            off = offsets[y]
            ln = lengths[y]
            if kind == ALLOCATED:
                position = (u[:, col] * c).astype(np.int64)
                col += 1
                reachable = min(ln, c)
                padded = np.zeros(c, dtype=np.int64)
                padded[:reachable] = scores[off : off + reachable]
                totals += padded[position]
            elif kind == SEQUENTIAL:
                for j in range(ln):
                    hits = (u[:, col] * c).astype(np.int64) == 0
                    col += 1
                    totals += scores[off + j] * hits
            else:
                for _ in range(c):  # rated: counts holds the juror count
                    index = (u[:, col] * ln).astype(np.int64)
                    col += 1
                    totals += scores[off + index]
        out[done : done + rows] = totals / n_years
        done += rows
    return out
