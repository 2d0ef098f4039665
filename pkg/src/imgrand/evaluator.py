"""Randomized pixel-difference evaluation of an image.

Each trial pulls ``m`` disjoint pixel pairs in a random spatial configuration
and checks whether their mean absolute difference lies in the Z-test
acceptance interval. ``N`` trials make a round, and the score is the best
round's pass fraction over ``T`` rounds.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateImageError, DomainTooSmallError
from .imgio import GrayImage, histogram
from .sampling import RNG_ALGORITHM, PairSample, get_sampler, trial_rng
from .stats import (MIN_PAIRS, CriticalInterval, DiffStats, clamp_pairs, critical_values,
                    diff_distribution, diff_stats, optimal_m_raw, uniform_stats)

THREADS_ENV = "IMGRAND_THREADS"
_UINT64_MAX = 2**64 - 1


class Mode(str, enum.Enum):
    SHUFFLING = "shuffling"
    ENCRYPTION = "encryption"


class Verdict(str, enum.Enum):
    INDISTINGUISHABLE = "IndistinguishableFromRandom"
    DISTINGUISHABLE = "Distinguishable"
    DEGENERATE = "DegenerateImage"


class DistributionSource(str, enum.Enum):
    SAMPLE_HISTOGRAM = "SampleHistogram"
    UNIFORM = "Uniform"


@dataclass(frozen=True)
class EvaluationConfig:
    alpha: float = 0.05
    n_tests: int = 1000
    t_rounds: int = 10
    pairs: int | None = None
    lam: float | None = None
    mode: Mode = Mode.SHUFFLING
    seed: int = 0
    sampler: str = "blocks"

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if self.n_tests < 1:
            raise ValueError(f"n_tests must be >= 1, got {self.n_tests}")
        if self.t_rounds < 1:
            raise ValueError(f"t_rounds must be >= 1, got {self.t_rounds}")
        if self.pairs is not None and self.pairs < 1:
            raise ValueError(f"pairs must be >= 1, got {self.pairs}")
        if self.lam is not None and not self.lam > 0:
            raise ValueError(f"lambda must be > 0, got {self.lam!r}")
        if not 0 <= self.seed <= _UINT64_MAX:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        get_sampler(self.sampler)


@dataclass(frozen=True)
class EvaluationReport:
    score: float
    round_passes: tuple[int, ...]
    interval: CriticalInterval | None
    stats: DiffStats
    pairs_used: int | None
    pairs_raw: int | None
    lam: float
    mode: Mode
    verdict: Verdict
    config_echo: EvaluationConfig
    distribution_source: DistributionSource
    rng: str = RNG_ALGORITHM
    extras: dict = field(default_factory=dict)


def mean_abs_difference(image: GrayImage | np.ndarray, sample: PairSample) -> float:
    """Mean of ``|y_l - y_k|`` over the sampled pairs, summed exactly in integers."""
    pixels = image.pixels if isinstance(image, GrayImage) else np.asarray(image)
    a = pixels[sample.left[:, 0], sample.left[:, 1]].astype(np.int64)
    b = pixels[sample.right[:, 0], sample.right[:, 1]].astype(np.int64)
    return int(np.abs(a - b).sum()) / sample.m


def resolve_threads(threads: int | None = None) -> int:
    """Worker count: explicit argument, else ``IMGRAND_THREADS`` (0 or unset = auto)."""
    if threads is None:
        raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
        try:
            threads = int(raw)
        except ValueError:
            raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if threads < 0:
        raise ValueError(f"thread count must be >= 0, got {threads}")
    if threads == 0:
        threads = os.cpu_count() or 1
    return threads


def reference_stats(image: GrayImage, mode: Mode) -> tuple[DiffStats, DistributionSource]:
    if Mode(mode) is Mode.ENCRYPTION:
        return uniform_stats(image.levels), DistributionSource.UNIFORM
    return diff_stats(diff_distribution(histogram(image))), DistributionSource.SAMPLE_HISTOGRAM


def default_lambda(stats: DiffStats, levels: int) -> float:
    return stats.mean / levels


def _run_round(pixels, shape, m, interval, n_tests, seed, t, sampler, check) -> int:
    lo, hi = interval.lower, interval.upper
    passes = 0
    for i in range(n_tests):
        sample = sampler(shape, m, trial_rng(seed, t, i))
        if check:
            assert sample.is_disjoint() and sample.within(shape)
        if lo <= mean_abs_difference(pixels, sample) <= hi:
            passes += 1
    return passes


def run_evaluation(image: GrayImage, config: EvaluationConfig | None = None, *,
                   threads: int | None = None, check_pairs: bool = False) -> EvaluationReport:
    """Score how indistinguishable ``image`` is from a perfectly shuffled one.

    In shuffling mode the null model uses the image's own histogram; in
    encryption mode it uses the uniform distribution over all levels. Rounds are
    spread across ``threads`` workers; each trial draws from its own
    ``(seed, round, trial)`` stream, so the report does not depend on the
    worker count.

    Raises :class:`DomainTooSmallError` for images under 60 pixels or a
    ``pairs`` override outside ``[30, |image| // 2]``.
    """
    config = config or EvaluationConfig()
    size = image.size
    if size < 2 * MIN_PAIRS:
        raise DomainTooSmallError(f"image of {size} pixels cannot host {MIN_PAIRS} disjoint pairs")
    if config.pairs is not None and not MIN_PAIRS <= config.pairs <= size // 2:
        raise DomainTooSmallError(
            f"pairs={config.pairs} outside [{MIN_PAIRS}, {size // 2}] for a {size}-pixel image")

    stats, source = reference_stats(image, config.mode)
    lam = config.lam if config.lam is not None else default_lambda(stats, image.levels)
    common = dict(stats=stats, lam=lam, mode=config.mode, config_echo=config,
                  distribution_source=source, extras={"sampler": config.sampler})

    try:
        if config.pairs is not None:
            raw = used = config.pairs
        else:
            raw = optimal_m_raw(stats, size, lam)
            used = clamp_pairs(raw, size)
        interval = critical_values(stats, used, config.alpha)
    except DegenerateImageError:
        return EvaluationReport(score=0.0, round_passes=(0,) * config.t_rounds, interval=None,
                                pairs_used=config.pairs, pairs_raw=config.pairs,
                                verdict=Verdict.DEGENERATE, **common)

    sampler = get_sampler(config.sampler)
    args = (image.pixels, image.shape, used, interval, config.n_tests, config.seed)
    workers = min(resolve_threads(threads), config.t_rounds)
    if workers == 1:
        passes = [_run_round(*args, t, sampler, check_pairs) for t in range(config.t_rounds)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            passes = list(pool.map(lambda t: _run_round(*args, t, sampler, check_pairs),
                                   range(config.t_rounds)))

    best = max(passes)
    score = best / config.n_tests
    # Compare counts, not floats: best >= (1 - alpha) * N.
    passed = best >= (1.0 - config.alpha) * config.n_tests - 1e-9
    verdict = Verdict.INDISTINGUISHABLE if passed else Verdict.DISTINGUISHABLE
    return EvaluationReport(score=score, round_passes=tuple(passes), interval=interval,
                            pairs_used=used, pairs_raw=raw, verdict=verdict, **common)


def evaluate_encryption(image: GrayImage, config: EvaluationConfig | None = None,
                        **kwargs) -> EvaluationReport:
    """:func:`run_evaluation` against the uniform (perfectly encrypted) model."""
    config = config or EvaluationConfig()
    if config.mode is not Mode.ENCRYPTION:
        config = EvaluationConfig(**{**config.__dict__, "mode": Mode.ENCRYPTION})
    return run_evaluation(image, config, **kwargs)
