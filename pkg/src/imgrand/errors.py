"""Exception types raised across the package."""

from __future__ import annotations


class ImgrandError(Exception):
    """Base class for all package errors."""


class InvalidDistributionError(ImgrandError, ValueError):
    """A probability vector is negative, unnormalized or mis-sized."""


class DegenerateImageError(ImgrandError):
    """Pixel-difference variance is zero, so the Z statistic is undefined.

    A constant image carries no randomness; the evaluator turns this into a
    score of 0 with a ``DegenerateImage`` verdict.
    """


class DomainTooSmallError(ImgrandError, ValueError):
    """The image cannot host the requested number of disjoint pixel pairs."""


class PgmError(ImgrandError, ValueError):
    """Malformed PGM input. ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class CipherUnavailableError(ImgrandError):
    """No block cipher implementation was supplied or could be loaded."""
