import numpy as np
import pytest
from numpy.random import PCG64

from escbias import _kernel_py
from escbias.errors import InvalidCandidateCount
from escbias.kernel import USING_EXTENSION, build_program, sample_window_means
from escbias.schemes import (
    Allocated,
    JUROR_POINTS,
    POINTS_1975,
    POINTS_MID_SIXTIES,
    Rated,
    Sequential,
    TEN_SINGLE_POINTS,
    sample_score,
    scheme_for_year,
)

MIXED_WINDOW = [
    (Sequential(TEN_SINGLE_POINTS), 16),
    (Allocated(POINTS_1975), 9),  # fewer candidates than listed scores
    (Sequential(POINTS_MID_SIXTIES), 17),
    (Rated(JUROR_POINTS), 18),
    (Allocated(POINTS_1975), 24),
]


def _raw(impl, program, n, seed):
    return impl.sample_window_means(
        program.kinds, program.counts, program.offsets, program.lengths,
        program.scores, n, PCG64(seed),
    )


def test_program_layout():
    program = build_program(MIXED_WINDOW)
    assert program.n_years == 5
    assert list(program.kinds) == [1, 0, 1, 2, 0]
    # rated years store the juror count, not the field size
    assert list(program.counts) == [16, 9, 17, 2, 24]
    assert program.draws_per_sample == 10 + 1 + 3 + 2 + 1


def test_program_rejects_bad_candidate_count():
    with pytest.raises(InvalidCandidateCount):
        build_program([(Allocated(POINTS_1975), 0)])


@pytest.mark.skipif(not USING_EXTENSION, reason="compiled kernel not built")
def test_extension_matches_fallback_bit_for_bit():
    program = build_program(MIXED_WINDOW)
    from escbias import _kernel

    fast = _raw(_kernel, program, 40_000, 2024)
    slow = _raw(_kernel_py, program, 40_000, 2024)
    assert np.array_equal(fast, slow)


def test_kernel_matches_single_draw_sampler():
    """The batch kernels replay the documented one-draw-at-a-time sampler."""
    program = build_program(MIXED_WINDOW)
    batch = sample_window_means(program, 500, PCG64(99))
    gen = np.random.Generator(PCG64(99))
    loop = np.array([
        sum(sample_score(scheme, count, gen) for scheme, count in MIXED_WINDOW) / 5
        for _ in range(500)
    ])
    assert np.array_equal(batch, loop)


def test_fallback_chunking_preserves_stream(monkeypatch):
    program = build_program([(scheme_for_year(1975), 21)] * 5)
    whole = _raw(_kernel_py, program, 300, 5)
    monkeypatch.setattr(_kernel_py, "_CHUNK_ROWS", 7)
    chunked = _raw(_kernel_py, program, 300, 5)
    assert np.array_equal(whole, chunked)


def test_generator_state_advances_across_calls():
    program = build_program([(scheme_for_year(1980), 20)])
    bg = PCG64(31)
    first = sample_window_means(program, 100, bg)
    second = sample_window_means(program, 100, bg)
    combined = sample_window_means(program, 200, PCG64(31))
    assert np.array_equal(np.concatenate([first, second]), combined)
