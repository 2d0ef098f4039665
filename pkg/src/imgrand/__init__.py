"""Pixel-difference randomness evaluation for shuffled and encrypted images."""

__version__ = "0.1.0"

from .errors import (CipherUnavailableError, DegenerateImageError, DomainTooSmallError,  # noqa: E402
                     ImgrandError, InvalidDistributionError, PgmError)
from .evaluator import (EvaluationConfig, EvaluationReport, Mode, Verdict,  # noqa: E402
                        evaluate_encryption, mean_abs_difference, run_evaluation)
from .imgio import (GrayImage, Pattern, histogram, load_pgm, read_pgm, save_pgm,  # noqa: E402
                    synth_iid, synth_structured, write_pgm)
from .sampling import PairSample, sample_block_pairs, sample_disjoint_pairs  # noqa: E402
from .special import (binomial_tail, inv_norm_cdf, norm_cdf, pass_count_moments,  # noqa: E402
                      type_one_error_bound)
from .stats import (CriticalInterval, DiffDistribution, DiffStats,  # noqa: E402
                    IntensityDistribution, critical_values, diff_distribution, diff_stats,
                    optimal_m, uniform_diff_distribution, uniform_stats, z_statistic)
from .transforms import (TransformKey, arnold_shuffle, block_cipher_adapter,  # noqa: E402
                         logistic_encrypt, rcs_shuffle, rpm_shuffle)
