"""Command-line front end.

Exit codes for ``evaluate``: 0 when the image is indistinguishable from a
perfectly shuffled (or encrypted) one, 1 when it is distinguishable or
degenerate, 2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import CipherUnavailableError, DegenerateImageError, ImgrandError
from .evaluator import (EvaluationConfig, Mode, Verdict, default_lambda, reference_stats,
                        run_evaluation)
from .imgio import load_pgm, read_pgm, save_pgm, sha256_hex
from .report import ReportDocument
from .stats import MIN_PAIRS, clamp_pairs, critical_values, optimal_m_raw
from .transforms import (TransformKey, arnold_shuffle, block_cipher_adapter,
                         load_cipher_provider, logistic_encrypt, rcs_shuffle, rpm_shuffle)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be a 64-bit unsigned integer: {text}")
    return value


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--image", required=True, help="input PGM (P2 or P5)")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.SHUFFLING.value)
    p.add_argument("--alpha", type=float, default=0.05, help="significance level (default 0.05)")
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="localization weight for the optimal pair count (default mean/L)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="imgrand", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("evaluate", help="score an image against the perfectly shuffled model")
    _add_model_flags(ev)
    ev.add_argument("--n", type=int, default=1000, help="tests per round (default 1000)")
    ev.add_argument("--t", type=int, default=10, help="rounds (default 10)")
    ev.add_argument("--m", type=int, default=None, help="pairs per test (default: optimal)")
    ev.add_argument("--seed", type=_seed, default=0)
    ev.add_argument("--sampler", default="blocks",
                    help="pair configuration: blocks (default), uniform, offset:DY,DX")
    ev.add_argument("--json", dest="json_out", default=None,
                    help="write the JSON report here instead of stdout")

    tr = sub.add_parser("transform", help="shuffle or encrypt an image")
    tr.add_argument("--image", required=True)
    tr.add_argument("--method", required=True,
                    choices=["rpm", "rcs", "arnold", "lme", "ecb", "cbc"])
    tr.add_argument("--seed", type=_seed, default=0)
    tr.add_argument("--iterations", type=int, default=None, help="Arnold map rounds")
    tr.add_argument("--cipher-provider", default=None,
                    help="block cipher for ecb/cbc: 'aes' or 'module:attr'")
    tr.add_argument("--cipher-key", default=None, help="16-byte key as hex (default: from seed)")
    tr.add_argument("--out", required=True)

    st = sub.add_parser("stats", help="print mean, std, m* and the critical interval")
    _add_model_flags(st)
    st.add_argument("--header", action="store_true", help="print a column header first")
    return parser


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise UsageError(f"--alpha must lie in (0, 1), got {alpha}")


def cmd_evaluate(args) -> int:
    _check_alpha(args.alpha)
    try:
        config = EvaluationConfig(alpha=args.alpha, n_tests=args.n, t_rounds=args.t,
                                  pairs=args.m, lam=args.lam, mode=Mode(args.mode),
                                  seed=args.seed, sampler=args.sampler)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    with open(args.image, "rb") as fh:
        raw = fh.read()
    image = read_pgm(raw)
    report = run_evaluation(image, config)
    doc = ReportDocument(image_path=args.image, image_sha256=sha256_hex(raw), report=report)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(doc.to_json())
    else:
        sys.stdout.write(doc.to_json())
    print(f"score={report.score:.3f} verdict={report.verdict.value} m={report.pairs_used}",
          file=sys.stderr)
    return EXIT_PASS if report.verdict is Verdict.INDISTINGUISHABLE else EXIT_FAIL


def cmd_transform(args) -> int:
    image = load_pgm(args.image)
    key_bytes = None
    if args.cipher_key is not None:
        try:
            key_bytes = bytes.fromhex(args.cipher_key)
        except ValueError:
            raise UsageError("--cipher-key must be hex") from None
        if len(key_bytes) != 16:
            raise UsageError("--cipher-key must be 16 bytes (32 hex digits)")
    try:
        key = TransformKey(seed=args.seed, iterations=args.iterations, cipher_key=key_bytes)
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    method = args.method
    if method in ("ecb", "cbc"):
        if args.cipher_provider is None:
            raise CipherUnavailableError(
                f"{method} needs a block cipher: pass --cipher-provider aes or module:attr")
        encrypt_block, _ = load_cipher_provider(args.cipher_provider)
        result = block_cipher_adapter(image, method, encrypt_block, key)
        out = result.image
        info = {"method": method, "padding": result.padding,
                "iv": None if result.iv is None else result.iv.hex()}
    else:
        fn = {"rpm": rpm_shuffle, "rcs": rcs_shuffle, "arnold": arnold_shuffle,
              "lme": logistic_encrypt}[method]
        try:
            out = fn(image, key)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        info = {"method": method}
    save_pgm(out, args.out)
    print(json.dumps(info), file=sys.stderr)
    return 0


def cmd_stats(args) -> int:
    _check_alpha(args.alpha)
    image = load_pgm(args.image)
    stats, _ = reference_stats(image, Mode(args.mode))
    if args.header:
        print("mu, sigma, m*, interval")
    lam = args.lam if args.lam is not None else default_lambda(stats, image.levels)
    try:
        raw = optimal_m_raw(stats, image.size, lam)
        m = clamp_pairs(raw, image.size)
        iv = critical_values(stats, m, args.alpha)
    except DegenerateImageError:
        print(f"{stats.mean:.2f}, {stats.std:.2f}, n/a, n/a")
        print("degenerate image: zero pixel-difference variance, Z-test undefined",
              file=sys.stderr)
        return 0
    if image.size < 2 * MIN_PAIRS:
        print(f"warning: {image.size} pixels cannot host {MIN_PAIRS} disjoint pairs",
              file=sys.stderr)
    print(f"{stats.mean:.2f}, {stats.std:.2f}, {m}, {iv.lower:.2f}~{iv.upper:.2f}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"evaluate": cmd_evaluate, "transform": cmd_transform, "stats": cmd_stats}
    try:
        return handler[args.command](args)
    except (UsageError, ImgrandError, OSError, ValueError) as exc:
        print(f"imgrand {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
