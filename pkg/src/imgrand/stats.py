"""Theory of pixel differences in perfectly shuffled images.

A perfectly shuffled image has i.i.d. pixels drawn from its own intensity
histogram. Everything here is a pure function of that histogram (or of the
number of intensity levels, for the uniform/encrypted case).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateImageError, DomainTooSmallError, InvalidDistributionError
from .special import inv_norm_cdf

NORM_TOL = 1e-12
MIN_PAIRS = 30


def _as_probs(probs, name: str) -> np.ndarray:
    arr = np.array(probs, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 2:
        raise InvalidDistributionError(f"{name} needs at least 2 levels, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise InvalidDistributionError(f"{name} has negative or non-finite entries")
    total = math.fsum(arr)
    if abs(total - 1.0) > NORM_TOL:
        raise InvalidDistributionError(f"{name} sums to {total!r}, not 1")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class IntensityDistribution:
    """Normalized histogram ``p_k`` over ``levels`` intensity scales."""

    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "probs", _as_probs(self.probs, "IntensityDistribution"))

    @property
    def levels(self) -> int:
        return int(self.probs.size)

    @classmethod
    def uniform(cls, levels: int) -> IntensityDistribution:
        _check_levels(levels)
        return cls(np.full(levels, 1.0 / levels))

    @classmethod
    def from_counts(cls, counts) -> IntensityDistribution:
        counts = np.asarray(counts, dtype=np.int64)
        total = int(counts.sum())
        if total <= 0:
            raise InvalidDistributionError("histogram has no samples")
        return cls(counts / total)

    def __eq__(self, other):
        if not isinstance(other, IntensityDistribution):
            return NotImplemented
        return np.array_equal(self.probs, other.probs)

    def __repr__(self):
        return f"IntensityDistribution(levels={self.levels})"


@dataclass(frozen=True, eq=False)
class DiffDistribution:
    """Distribution of ``|x_l - x_k|`` for two distinct pixels, over ``d = 0..L-1``."""

    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "probs", _as_probs(self.probs, "DiffDistribution"))

    @property
    def levels(self) -> int:
        return int(self.probs.size)

    def __eq__(self, other):
        if not isinstance(other, DiffDistribution):
            return NotImplemented
        return np.array_equal(self.probs, other.probs)

    def __repr__(self):
        return f"DiffDistribution(levels={self.levels})"


@dataclass(frozen=True)
class DiffStats:
    mean: float
    variance: float

    @property
    def std(self) -> float:
        return math.sqrt(self.variance)


@dataclass(frozen=True)
class CriticalInterval:
    """Closed acceptance region ``[lower, upper]`` for the sample mean difference."""

    lower: float
    upper: float
    alpha: float
    pairs: int

    def __contains__(self, value: float) -> bool:
        return self.lower <= value <= self.upper


def _check_levels(levels: int) -> None:
    if int(levels) != levels or levels < 2:
        raise ValueError(f"levels must be an integer >= 2, got {levels!r}")


def diff_distribution(p: IntensityDistribution) -> DiffDistribution:
    """Pixel-difference distribution of a perfectly shuffled image.

    ``P_0 = sum p_k^2`` and ``P_d = 2 sum_{k>=d} p_{k-d} p_k``, i.e. twice the
    lag-``d`` autocorrelation of the histogram.
    """
    if not isinstance(p, IntensityDistribution):
        p = IntensityDistribution(p)
    probs = p.probs
    levels = probs.size
    # Full autocorrelation; index levels-1+d holds sum_k p_k p_{k+d}.
    if levels > 512:
        n = 1 << (2 * levels - 1).bit_length()
        spec = np.fft.rfft(probs, n)
        auto = np.fft.irfft(spec * np.conj(spec), n)[:levels]
        # FFT round-off can leave tiny negatives where the exact value is 0.
        auto = np.clip(auto, 0.0, None)
    else:
        auto = np.correlate(probs, probs, mode="full")[levels - 1:]
    out = 2.0 * auto
    out[0] = auto[0]
    out /= math.fsum(out)
    return DiffDistribution(out)


def uniform_diff_distribution(levels: int) -> DiffDistribution:
    """Triangular difference distribution of a uniformly distributed image."""
    _check_levels(levels)
    d = np.arange(levels, dtype=np.float64)
    out = 2.0 * (levels - d) / float(levels) ** 2
    out[0] = 1.0 / levels
    return DiffDistribution(out)


def diff_stats(pd: DiffDistribution) -> DiffStats:
    if not isinstance(pd, DiffDistribution):
        pd = DiffDistribution(pd)
    d = np.arange(pd.levels, dtype=np.float64)
    mean = math.fsum(d * pd.probs)
    variance = math.fsum(d * d * pd.probs) - mean * mean
    if variance < 0:
        # Relative tolerance: sum d^2 P_d can be ~1e9 for 16-bit images.
        if variance < -NORM_TOL * max(1.0, mean * mean):
            raise ArithmeticError(f"negative variance {variance!r}")
        variance = 0.0
    return DiffStats(mean, variance)


def uniform_stats(levels: int) -> DiffStats:
    """Closed-form mean and variance of the triangular difference distribution."""
    _check_levels(levels)
    L = float(levels)
    return DiffStats((L * L - 1.0) / (3.0 * L), (L * L - 1.0) * (L * L + 2.0) / (18.0 * L * L))


def _require_spread(stats: DiffStats) -> None:
    if stats.variance <= 0:
        raise DegenerateImageError("pixel-difference variance is zero (constant image)")


def critical_values(stats: DiffStats, m: int, alpha: float) -> CriticalInterval:
    """Two-sided Z-test acceptance interval for the mean of ``m`` pair differences."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    _require_spread(stats)
    half = -inv_norm_cdf(alpha / 2.0) * stats.std / math.sqrt(m)
    return CriticalInterval(stats.mean - half, stats.mean + half, alpha, int(m))


def z_statistic(sample_mean: float, stats: DiffStats, m: int) -> float:
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    _require_spread(stats)
    return (sample_mean - stats.mean) / (stats.std / math.sqrt(m))


def pair_loss(m: float, stats: DiffStats, domain_size: int, lam: float) -> float:
    """Accuracy/localization trade-off ``sigma^2/m + lam * m^2 / |domain|``."""
    return stats.variance / m + lam * m * m / domain_size


def optimal_m_raw(stats: DiffStats, domain_size: int, lam: float) -> int:
    """Ceiling of the continuous minimizer of :func:`pair_loss`, unclamped."""
    _require_spread(stats)
    if domain_size < 1:
        raise ValueError(f"domain_size must be >= 1, got {domain_size}")
    if not lam > 0:
        raise ValueError(f"lambda must be > 0, got {lam!r}")
    cube = stats.variance * domain_size / (2.0 * lam)
    root = round(cube ** (1.0 / 3.0))
    # Correct the float cube root so exact cubes are not bumped up by one.
    if root ** 3 == cube:
        return max(1, int(root))
    return max(1, math.ceil(cube ** (1.0 / 3.0)))


def optimal_m(stats: DiffStats, domain_size: int, lam: float) -> int:
    """Loss-optimal pair count, clamped to ``[30, domain_size // 2]``.

    Below 30 pairs the normal approximation is not trusted, and more than
    ``domain_size // 2`` pairs cannot be disjoint.
    """
    if domain_size < 2 * MIN_PAIRS:
        raise DomainTooSmallError(
            f"domain of {domain_size} pixels cannot host {MIN_PAIRS} disjoint pairs")
    raw = optimal_m_raw(stats, domain_size, lam)
    return clamp_pairs(raw, domain_size)


def clamp_pairs(m: int, domain_size: int) -> int:
    return min(max(m, MIN_PAIRS), domain_size // 2)
