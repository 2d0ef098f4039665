"""Random disjoint pixel-pair configurations.

Every sampler returns ``m`` pairs whose ``2m`` locations are pairwise
distinct, so pair differences of a perfectly shuffled image are i.i.d.

``blocks`` (default)
    A random ``h x w`` window (first ``m`` pixels in raster order) paired with
    the adjacent window to its right, below, below-right or below-left. The
    window shape is drawn uniformly over the feasible heights, so a trial can
    probe anything from near neighbours (tall narrow windows) to pixels a
    window-width apart.
``uniform``
    ``2m`` locations drawn uniformly without replacement, paired by draw order.
    Spatially blind: every image looks perfectly shuffled to this sampler.
``offset:DY,DX``
    Random left locations, each paired with the pixel displaced by ``(DY, DX)``.

Trial randomness comes from PCG64 seeded by
``SeedSequence(seed, spawn_key=(round, trial))``, so any trial can be
reproduced on its own regardless of execution order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainTooSmallError

RNG_ALGORITHM = "PCG64 via numpy SeedSequence(entropy=seed, spawn_key=(round, trial))"

# (row, col) multipliers of the window size giving the partner window.
_DIRECTIONS = ((0, 1), (1, 0), (1, 1), (1, -1))


def trial_rng(seed: int, round_index: int, trial_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(round_index), int(trial_index)))
    return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True, eq=False)
class PairSample:
    """``left[i]`` is paired with ``right[i]``; both are ``(m, 2)`` arrays of (row, col)."""

    left: np.ndarray
    right: np.ndarray

    @property
    def m(self) -> int:
        return len(self.left)

    def is_disjoint(self) -> bool:
        both = np.concatenate([self.left, self.right])
        return len(np.unique(both, axis=0)) == len(both)

    def within(self, shape: tuple[int, int]) -> bool:
        both = np.concatenate([self.left, self.right])
        return bool(np.all(both >= 0) and np.all(both < np.asarray(shape)))


def _check_room(shape, m):
    size = shape[0] * shape[1]
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if 2 * m > size:
        raise DomainTooSmallError(f"{size} pixels cannot host {m} disjoint pairs")


def sample_disjoint_pairs(shape: tuple[int, int], m: int, rng: np.random.Generator) -> PairSample:
    """Uniform draw of ``2m`` distinct locations, alternately assigned left/right."""
    _check_room(shape, m)
    flat = rng.choice(shape[0] * shape[1], size=2 * m, replace=False)
    coords = np.stack(np.divmod(flat, shape[1]), axis=1)
    return PairSample(coords[0::2], coords[1::2])


@lru_cache(maxsize=64)
def _feasible_heights(shape: tuple[int, int], m: int) -> tuple[np.ndarray, ...]:
    H, W = shape
    hs = np.arange(1, min(m, H) + 1)
    ws = -(-m // hs)
    out = []
    for a, b in _DIRECTIONS:
        ok = (hs * (1 + a) <= H) & (ws * (1 + abs(b)) <= W)
        out.append(hs[ok])
    return tuple(out)


def sample_block_pairs(shape: tuple[int, int], m: int, rng: np.random.Generator) -> PairSample:
    """Adjacent-window configuration; falls back to uniform if no window fits."""
    _check_room(shape, m)
    H, W = shape
    feasible = _feasible_heights((H, W), m)
    choices = [k for k in range(len(_DIRECTIONS)) if feasible[k].size]
    if not choices:
        return sample_disjoint_pairs(shape, m, rng)
    k = choices[int(rng.integers(len(choices)))]
    a, b = _DIRECTIONS[k]
    heights = feasible[k]
    h = int(heights[rng.integers(heights.size)])
    w = -(-m // h)
    r0 = int(rng.integers(0, H - h * (1 + a) + 1))
    c_lo = w if b < 0 else 0
    c_hi = W - w - (w if b > 0 else 0)
    c0 = int(rng.integers(c_lo, c_hi + 1))
    i = np.arange(m)
    left = np.stack([r0 + i // w, c0 + i % w], axis=1)
    right = left + np.array([a * h, b * w])
    return PairSample(left, right)


def make_offset_sampler(dy: int, dx: int):
    """Sampler pairing random pixels with their ``(dy, dx)`` neighbours."""
    if dy == 0 and dx == 0:
        raise ValueError("offset must be nonzero")

    def sample_offset_pairs(shape, m, rng):
        _check_room(shape, m)
        H, W = shape
        rows = H - abs(dy)
        cols = W - abs(dx)
        if rows <= 0 or cols <= 0:
            raise DomainTooSmallError(f"offset ({dy}, {dx}) does not fit a {H}x{W} image")
        r_base, c_base = max(0, -dy), max(0, -dx)
        used = set()
        left = []
        # Greedy over a random order of anchors; every accepted pair is disjoint
        # from those before it.
        for anchor in rng.permutation(rows * cols):
            r, c = divmod(int(anchor), cols)
            p = (r + r_base, c + c_base)
            q = (p[0] + dy, p[1] + dx)
            if p in used or q in used:
                continue
            used.add(p)
            used.add(q)
            left.append(p)
            if len(left) == m:
                break
        else:
            raise DomainTooSmallError(f"could not place {m} disjoint pairs at offset ({dy}, {dx})")
        left = np.array(left)
        return PairSample(left, left + np.array([dy, dx]))

    sample_offset_pairs.__name__ = f"offset:{dy},{dx}"
    return sample_offset_pairs


def get_sampler(name: str):
    if name == "blocks":
        return sample_block_pairs
    if name == "uniform":
        return sample_disjoint_pairs
    if name.startswith("offset:"):
        try:
            dy, dx = (int(v) for v in name[len("offset:"):].split(","))
        except ValueError:
            raise ValueError(f"bad offset sampler {name!r}, expected offset:DY,DX") from None
        return make_offset_sampler(dy, dx)
    raise ValueError(f"unknown sampler {name!r}")
