"""Riffle shuffle sample space, guessing strategy, and samplers.

A deck of n cards starts as 1..n. Shuffling k times splits it into c = 2^k
increasing sequences; the sample space is encoded as words of length n over
the alphabet {1..c}, where letter m at position j means position j receives
the next unused card of the m-th increasing sequence. Every word is a
distinct outcome (the identity permutation keeps its multiplicity), so the
space has exactly c^n elements and each is equally likely.

The guessing strategy: at top-half position i guess floor(i/c) + 1, and
mirror through n+1 in the bottom half. For c = 2 this is 1,2,2,3,3,... and
..., n-1, n-1, n.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .core import GFPoly, GuardError, ShuffleSpec

# Every word over {1..c} of length <= this bound is enumerable in one call.
SLOW_WORD_LIMIT = 10**7
# One-shuffle exhaustive enumeration guard.
SLOW_N_LIMIT = 20

Permutation = tuple[int, ...]
SequenceWord = tuple[int, ...]


def optimal_guess(spec: ShuffleSpec, i: int) -> int:
    """Best guess for position i (1-based) under the mirrored strategy."""
    n = spec.n
    if not 1 <= i <= n:
        raise ValueError(f"position must be in 1..{n}, got {i}")
    if i <= spec.h:
        return i // spec.c + 1
    return n + 1 - ((n + 1 - i) // spec.c + 1)


def guess_vector(spec: ShuffleSpec) -> list[int]:
    return [optimal_guess(spec, i) for i in range(1, spec.n + 1)]


def word_to_permutation(word) -> Permutation:
    """Decode a sequence word into the shuffled permutation.

    Pile m holds the next block of consecutive labels, block sizes given by
    the letter counts; position j then takes the next unused card of pile
    word[j]. Cards of one pile appear in increasing order.
    """
    c = max(word, default=1)
    if word and min(word) < 1:
        raise ValueError("word letters must be >= 1")
    counts = [0] * (c + 2)
    for m in word:
        counts[m] += 1
    nxt = [0] * (c + 2)
    for m in range(1, c + 1):
        nxt[m + 1] = nxt[m] + counts[m]
    out = []
    for m in word:
        nxt[m] += 1
        out.append(nxt[m])
    return tuple(out)


def count_correct(perm, spec: ShuffleSpec) -> int:
    """Number of positions where the permutation matches the strategy."""
    if len(perm) != spec.n:
        raise ValueError(f"permutation length {len(perm)} != n={spec.n}")
    return sum(1 for p, g in zip(perm, guess_vector(spec)) if p == g)


def gen_slow(spec: ShuffleSpec) -> GFPoly:
    """Distribution of correct guesses after one shuffle, by enumeration.

    Walks all 2^n words; coefficient i of the result counts outcomes with i
    correct guesses, and the value at q=1 is 2^n.
    """
    if spec.c != 2:
        raise ValueError("gen_slow is the one-shuffle (c=2) enumerator; use gen_slow_c")
    if spec.n > SLOW_N_LIMIT:
        raise GuardError(
            f"gen_slow enumerates 2^n outcomes; n={spec.n} exceeds the guard {SLOW_N_LIMIT}"
        )
    return gen_slow_c(spec)


def gen_slow_c(spec: ShuffleSpec) -> GFPoly:
    """Distribution of correct guesses over all c^n sequence words.

    This is the brute-force oracle: it scores every word independently, with
    no shortcuts shared with the recurrence-based tiers.
    """
    n, c = spec.n, spec.c
    if c**n > SLOW_WORD_LIMIT:
        raise GuardError(f"gen_slow_c would enumerate {c}^{n} > {SLOW_WORD_LIMIT} words")
    guesses = guess_vector(spec)
    coeffs = [0] * (n + 1)
    positions = range(n)
    for word in product(range(1, c + 1), repeat=n):
        counts = [0] * (c + 2)
        for m in word:
            counts[m] += 1
        offset = [0] * (c + 2)
        for m in range(1, c + 1):
            offset[m + 1] = offset[m] + counts[m]
        nxt = offset
        hits = 0
        for j in positions:
            m = word[j]
            nxt[m] += 1
            if nxt[m] == guesses[j]:
                hits += 1
        coeffs[hits] += 1
    return GFPoly(coeffs)


# --- seeded sampling -------------------------------------------------------
#
# RNG contract: trial t draws from its own SplitMix64 stream whose initial
# state is (seed + (t+1) * 0x9E3779B97F4A7C15) mod 2^64. Letters come from
# successive 64-bit outputs via threshold rejection (no rejection when c is
# a power of two). Results therefore depend only on (seed, trial index) and
# are bit-stable across runs and thread schedules.

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _splitmix64_stream(state: int):
    while True:
        state = (state + _GOLDEN) & _MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        yield z ^ (z >> 31)


def sample_word(spec: ShuffleSpec, seed: int, trial: int) -> SequenceWord:
    """Uniform word in {1..c}^n for the given (seed, trial)."""
    c = spec.c
    stream = _splitmix64_stream((seed + (trial + 1) * _GOLDEN) & _MASK)
    limit = (1 << 64) - ((1 << 64) % c)
    letters = []
    for _ in range(spec.n):
        x = next(stream)
        while x >= limit:
            x = next(stream)
        letters.append(x % c + 1)
    return tuple(letters)


@dataclass(frozen=True)
class SampleReport:
    """Empirical summary of seeded shuffle trials."""

    n: int
    c: int
    trials: int
    seed: int
    mean: Fraction
    second_moment: Fraction
    variance: Fraction
    histogram: dict[int, int]
    rng: str = "splitmix64"

    @property
    def stderr_of_mean(self) -> float:
        if self.trials < 2:
            return float("inf")
        return (float(self.variance) / (self.trials - 1)) ** 0.5


def gsr_sample(spec: ShuffleSpec, trials: int, seed: int) -> SampleReport:
    """Score `trials` seeded shuffles and report moments and a histogram."""
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    n, c = spec.n, spec.c
    guesses = guess_vector(spec)
    limit = (1 << 64) - ((1 << 64) % c)
    histogram: dict[int, int] = {}
    for t in range(trials):
        stream = _splitmix64_stream((seed + (t + 1) * _GOLDEN) & _MASK)
        nxt = [0] * (c + 2)
        counts = [0] * (c + 2)
        word = []
        for _ in range(n):
            x = next(stream)
            while x >= limit:
                x = next(stream)
            m = x % c + 1
            word.append(m)
            counts[m] += 1
        for m in range(1, c + 1):
            nxt[m + 1] = nxt[m] + counts[m]
        hits = 0
        for j, m in enumerate(word):
            nxt[m] += 1
            if nxt[m] == guesses[j]:
                hits += 1
        histogram[hits] = histogram.get(hits, 0) + 1
    total = sum(v * k for k, v in histogram.items())
    total2 = sum(v * k * k for k, v in histogram.items())
    mean = Fraction(total, trials)
    second = Fraction(total2, trials)
    return SampleReport(
        n=n,
        c=c,
        trials=trials,
        seed=seed,
        mean=mean,
        second_moment=second,
        variance=second - mean * mean,
        histogram=dict(sorted(histogram.items())),
    )
