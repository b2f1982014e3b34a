"""Exact distributions and moments for the no-feedback card guessing game.

A deck of n cards is riffle shuffled (once, or k times) and the player
commits all n guesses in advance. This package computes the distribution of
the number of correct guesses exactly: three generating-function tiers of
increasing speed, combinatorial closed forms recovered by exact
interpolation, a nested-sum expectation for any sequence count, and
brute-force plus Monte Carlo oracles to check everything against.
"""

__version__ = "0.1.0"

from .core import (
    GFPoly,
    GuardError,
    Rat,
    RatPoly,
    ShuffleSpec,
    binom,
    d_operator,
    decompose_l_alpha,
    eval_at_one,
    poly_mul,
)
from .shuffle import (
    SampleReport,
    count_correct,
    gen_slow,
    gen_slow_c,
    gsr_sample,
    optimal_guess,
    word_to_permutation,
)
from .tiers import f_a, f_b, f_full_fast, f_full_fastest, g_half, g_half_ns
from .moments import (
    MomentReport,
    assemble_raw_from_halves,
    central_and_standardized,
    distribution_table,
    excess_e,
    half_moment_numeric,
    raw_moment,
)
from .closedform import (
    ClosedHalfMoment,
    InterpolationError,
    MomentExpression,
    assemble_moment_expression,
    building_block,
    closed_form_ex,
    interpolate_half_moment,
    m_r_bruteforce,
    partition_combine,
)
from .kshuffle import expected_top_half, expected_total, leading_term
from .series import SeriesGF, series_expand

__all__ = [
    "GFPoly",
    "GuardError",
    "Rat",
    "RatPoly",
    "ShuffleSpec",
    "binom",
    "d_operator",
    "decompose_l_alpha",
    "eval_at_one",
    "poly_mul",
    "SampleReport",
    "count_correct",
    "gen_slow",
    "gen_slow_c",
    "gsr_sample",
    "optimal_guess",
    "word_to_permutation",
    "f_a",
    "f_b",
    "f_full_fast",
    "f_full_fastest",
    "g_half",
    "g_half_ns",
    "MomentReport",
    "assemble_raw_from_halves",
    "central_and_standardized",
    "distribution_table",
    "excess_e",
    "half_moment_numeric",
    "raw_moment",
    "ClosedHalfMoment",
    "InterpolationError",
    "MomentExpression",
    "assemble_moment_expression",
    "building_block",
    "closed_form_ex",
    "interpolate_half_moment",
    "m_r_bruteforce",
    "partition_combine",
    "expected_top_half",
    "expected_total",
    "leading_term",
    "SeriesGF",
    "series_expand",
    "__version__",
]
