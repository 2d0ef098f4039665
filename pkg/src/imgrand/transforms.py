"""Reference shuffling and encryption transforms.

These are test subjects for the evaluator, not security primitives. The
logistic-map cipher here is a minimal XOR keystream construction of our own.
"""

from __future__ import annotations

import enum
import hashlib
import importlib
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import CipherUnavailableError
from .imgio import GrayImage, image_bytes, image_from_bytes

BLOCK = 16
LOGISTIC_R = 3.99999
LOGISTIC_BURN_IN = 1000

BlockFn = Callable[[bytes, bytes], bytes]


@dataclass(frozen=True)
class TransformKey:
    seed: int = 0
    iterations: int | None = None
    cipher_key: bytes | None = None

    def __post_init__(self):
        if self.iterations is not None and self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


def _rng(key: TransformKey) -> np.random.Generator:
    return np.random.default_rng(key.seed)


# --- shuffles -------------------------------------------------------------

def rpm_shuffle(image: GrayImage, key: TransformKey) -> GrayImage:
    """Uniformly random permutation of all pixel positions (Fisher-Yates)."""
    flat = _rng(key).permutation(image.pixels.ravel())
    return image.with_pixels(flat.reshape(image.shape))


def rcs_permutations(image: GrayImage, key: TransformKey) -> tuple[np.ndarray, np.ndarray]:
    rng = _rng(key)
    return rng.permutation(image.height), rng.permutation(image.width)


def rcs_shuffle(image: GrayImage, key: TransformKey) -> GrayImage:
    """Permute whole rows, then whole columns, with independent permutations."""
    rows, cols = rcs_permutations(image, key)
    return image.with_pixels(image.pixels[rows][:, cols])


def rcs_unshuffle(image: GrayImage, key: TransformKey) -> GrayImage:
    rows, cols = rcs_permutations(image, key)
    out = np.empty_like(image.pixels)
    out[np.ix_(rows, cols)] = image.pixels
    return image.with_pixels(out)


def arnold_map(x, y, n: int, iterations: int = 1):
    """Cat-map image of points ``(x, y)`` on the ``n x n`` torus."""
    for _ in range(iterations):
        x, y = (x + y) % n, (x + 2 * y) % n
    return x, y


def arnold_period(n: int) -> int:
    """Smallest ``k >= 1`` with cat-map power ``k`` equal to the identity mod ``n``."""
    if n == 1:
        return 1
    # Iterate the matrix [[1, 1], [1, 2]] itself rather than every point.
    a, b, c, d = 1, 1, 1, 2
    k = 1
    while (a % n, b % n, c % n, d % n) != (1, 0, 0, 1):
        a, b, c, d = (a + c) % n, (b + d) % n, (a + 2 * c) % n, (b + 2 * d) % n
        k += 1
    return k


def arnold_shuffle(image: GrayImage, key: TransformKey) -> GrayImage:
    """Move the pixel at (x=col, y=row) to ``((x + y) mod N, (x + 2y) mod N)``.

    Applied ``key.iterations`` times (default 1). Square images only.
    """
    if image.height != image.width:
        raise ValueError(f"Arnold map needs a square image, got {image.width}x{image.height}")
    n = image.width
    iterations = key.iterations or 1
    # The map has finite period, so reduce the work.
    iterations %= arnold_period(n)
    y, x = np.indices((n, n))
    nx, ny = arnold_map(x, y, n, iterations)
    out = np.empty_like(image.pixels)
    out[ny, nx] = image.pixels
    return image.with_pixels(out)


# --- logistic-map stream cipher -----------------------------------------------

def logistic_initial_state(seed: int) -> float:
    """Map a seed to a starting point strictly inside (0.1, 0.9)."""
    k = int(np.random.default_rng(seed).integers(0, 2**53))
    return 0.1 + 0.8 * (k + 0.5) / 2**53


def logistic_keystream(seed: int, count: int) -> np.ndarray:
    x = logistic_initial_state(seed)
    r = LOGISTIC_R
    for _ in range(LOGISTIC_BURN_IN):
        x = r * x * (1.0 - x)
    out = np.empty(count, dtype=np.uint8)
    scale = 2.0**32
    for n in range(count):
        x = r * x * (1.0 - x)
        out[n] = int(x * scale) & 0xFF
    return out


def logistic_encrypt(image: GrayImage, key: TransformKey) -> GrayImage:
    """XOR pixels in raster order with a logistic-map keystream. Self-inverse."""
    if image.levels != 256:
        raise ValueError(f"logistic encryption needs an 8-bit image, got levels={image.levels}")
    stream = logistic_keystream(key.seed, image.size).reshape(image.shape)
    return image.with_pixels(image.pixels ^ stream)


# --- block cipher modes ------------------------------------------------------------

class BlockMode(str, enum.Enum):
    ECB = "ecb"
    CBC = "cbc"


@dataclass(frozen=True)
class BlockCipherResult:
    """Ciphertext image (padding dropped) plus what is needed to decrypt."""

    image: GrayImage
    ciphertext: bytes
    iv: bytes | None
    padding: int
    mode: BlockMode


def _derive(seed: int, label: bytes) -> bytes:
    return hashlib.sha256(label + seed.to_bytes(8, "big")).digest()[:BLOCK]


def derive_key(key: TransformKey) -> bytes:
    return key.cipher_key if key.cipher_key is not None else _derive(key.seed, b"imgrand-key")


def derive_iv(seed: int) -> bytes:
    return _derive(seed, b"imgrand-iv")


def _xor(a: bytes, b: bytes) -> bytes:
    return (int.from_bytes(a, "big") ^ int.from_bytes(b, "big")).to_bytes(BLOCK, "big")


def encrypt_bytes(plain: bytes, mode: BlockMode, encrypt_block: BlockFn, key: bytes,
                  iv: bytes | None = None) -> bytes:
    if len(plain) % BLOCK:
        raise ValueError(f"plaintext length {len(plain)} is not a multiple of {BLOCK}")
    out = bytearray()
    prev = iv
    for start in range(0, len(plain), BLOCK):
        block = plain[start:start + BLOCK]
        if mode is BlockMode.CBC:
            block = _xor(block, prev)
        ct = encrypt_block(block, key)
        if len(ct) != BLOCK:
            raise ValueError(f"block cipher returned {len(ct)} bytes, expected {BLOCK}")
        out += ct
        prev = ct
    return bytes(out)


def decrypt_bytes(cipher: bytes, mode: BlockMode, decrypt_block: BlockFn, key: bytes,
                  iv: bytes | None = None) -> bytes:
    if len(cipher) % BLOCK:
        raise ValueError(f"ciphertext length {len(cipher)} is not a multiple of {BLOCK}")
    out = bytearray()
    prev = iv
    for start in range(0, len(cipher), BLOCK):
        ct = cipher[start:start + BLOCK]
        block = decrypt_block(ct, key)
        if mode is BlockMode.CBC:
            block = _xor(block, prev)
        out += block
        prev = ct
    return bytes(out)


def block_cipher_adapter(image: GrayImage, mode: BlockMode | str,
                         encrypt_block: BlockFn | None, key: TransformKey) -> BlockCipherResult:
    """Encrypt raster-order image bytes with a caller-supplied 128-bit block cipher.

    The byte stream is zero-padded to a whole number of blocks. The returned
    image keeps only the first ``len(plaintext)`` ciphertext bytes so padding
    never enters the evaluated region; the full ciphertext is kept for
    decryption. The CBC IV is derived from ``key.seed``.
    """
    if encrypt_block is None:
        raise CipherUnavailableError("no block cipher supplied; pass encrypt_block")
    if image.levels not in (256, 65536):
        raise ValueError(f"block encryption needs an 8- or 16-bit image, got levels={image.levels}")
    mode = BlockMode(mode)
    plain = image_bytes(image)
    padding = -len(plain) % BLOCK
    iv = derive_iv(key.seed) if mode is BlockMode.CBC else None
    cipher = encrypt_bytes(plain + bytes(padding), mode, encrypt_block, derive_key(key), iv)
    out = image_from_bytes(cipher[:len(plain)], image.width, image.height, image.levels)
    return BlockCipherResult(out, cipher, iv, padding, mode)


def block_cipher_decrypt(result: BlockCipherResult, decrypt_block: BlockFn,
                         key: TransformKey) -> bytes:
    """Recover the zero-padded plaintext bytes."""
    return decrypt_bytes(result.ciphertext, result.mode, decrypt_block, derive_key(key), result.iv)


def aes_block_functions() -> tuple[BlockFn, BlockFn]:
    """AES-128 single-block encrypt/decrypt backed by the ``cryptography`` package."""
    try:
        from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes
    except ImportError as exc:
        raise CipherUnavailableError(
            "AES needs the 'cryptography' package (pip install cryptography)") from exc

    cache: dict[tuple[str, bytes], object] = {}

    def _ctx(direction, key):
        ctx = cache.get((direction, key))
        if ctx is None:
            c = Cipher(algorithms.AES(key), modes.ECB())
            ctx = cache[(direction, key)] = c.encryptor() if direction == "e" else c.decryptor()
        return ctx

    def encrypt_block(block: bytes, key: bytes) -> bytes:
        return _ctx("e", key).update(block)

    def decrypt_block(block: bytes, key: bytes) -> bytes:
        return _ctx("d", key).update(block)

    return encrypt_block, decrypt_block


def load_cipher_provider(spec: str) -> tuple[BlockFn, BlockFn | None]:
    """Resolve ``"aes"`` or ``"module:attr"`` to block encrypt/decrypt functions.

    ``attr`` names either an encrypt function or an ``(encrypt, decrypt)`` tuple.
    """
    if spec == "aes":
        return aes_block_functions()
    mod_name, _, attr = spec.partition(":")
    if not mod_name or not attr:
        raise CipherUnavailableError(f"cipher provider {spec!r} must be 'aes' or 'module:attr'")
    try:
        obj = getattr(importlib.import_module(mod_name), attr)
    except (ImportError, AttributeError) as exc:
        raise CipherUnavailableError(f"cannot load cipher provider {spec!r}: {exc}") from exc
    if isinstance(obj, tuple):
        return obj[0], obj[1]
    return obj, None
