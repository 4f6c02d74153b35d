"""Command-line front end.

Subcommands: keygen, embed, extract, decrypt, psnr, bench. Exit codes are
0 on success, 1 on usage errors, 2 on domain errors; a failing run writes
no output files because every command computes results before touching the
filesystem.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import codec, imagefile, metrics, paillier
from .errors import StegoError
from .prng import SplitMix64, system_rng

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage problems by default; this tool reserves 2
    # for domain errors, so usage exits 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _hiding_key(text: str) -> int:
    if len(text) != 16:
        raise argparse.ArgumentTypeError(
            f"hiding key must be exactly 16 hex digits, got {len(text)}")
    try:
        return int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"hiding key is not hex: {text!r}")


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed is not an integer: {text!r}")
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return value


def _cmd_keygen(args) -> int:
    pk, sk = paillier.keygen(args.bits, system_rng(),
                             deterministic_g=not args.random_g)
    pub = args.out + ".pub"
    priv = args.out + ".priv"
    paillier.save_public_key(pk, pub)
    paillier.save_private_key(sk, priv)
    print(f"wrote {pub} and {priv} (n has {pk.n.bit_length()} bits)")
    return EXIT_OK


def _cmd_embed(args) -> int:
    cover = imagefile.load_pgm(args.cover)
    payload = codec.Payload(Path(args.payload).read_bytes())
    pk = paillier.load_public_key(args.pubkey)
    rng = SplitMix64(args.seed) if args.seed is not None else system_rng()
    stego = codec.embed(cover, payload, pk, args.hiding_key, rng)
    render = imagefile.render_rgb(stego) if args.render else None
    imagefile.save_container(stego, args.out)
    if render is not None:
        imagefile.save_png(render, args.render)
    print(f"embedded {len(payload.data)} bytes into "
          f"{cover.width}x{cover.height} cover -> {args.out}")
    return EXIT_OK


def _cmd_extract(args) -> int:
    stego = imagefile.load_container(args.stego)
    payload = codec.extract(stego, args.hiding_key)
    Path(args.out).write_bytes(payload.data)
    print(f"extracted {len(payload.data)} bytes -> {args.out}")
    return EXIT_OK


def _cmd_decrypt(args) -> int:
    stego = imagefile.load_container(args.stego)
    sk = paillier.load_private_key(args.privkey)
    cover = codec.decrypt_reconstruct(stego, sk)
    imagefile.save_pgm(cover, args.out)
    print(f"reconstructed {cover.width}x{cover.height} cover -> {args.out}")
    return EXIT_OK


def _cmd_psnr(args) -> int:
    a = imagefile.load_pgm(args.image_a)
    b = imagefile.load_pgm(args.image_b)
    report = metrics.psnr(a, b)
    print(report.summary())
    if args.plot:
        metrics.save_difference_figure(a, b, report, args.plot)
    return EXIT_OK


def _cmd_bench(args) -> int:
    report = metrics.bench_exponentiation(args.bits, args.trials, system_rng())
    print(report.summary())
    if args.plot:
        metrics.save_bench_figure(report, args.plot)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pailstego",
                     description="separable steganography in Paillier ciphertext pairs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a keypair")
    p.add_argument("--bits", type=int, required=True, help="modulus width in bits")
    p.add_argument("--out", required=True, help="path prefix for .pub/.priv files")
    p.add_argument("--random-g", action="store_true",
                   help="draw g randomly instead of n+1")
    p.set_defaults(func=_cmd_keygen)

    p = sub.add_parser("embed", help="hide a payload in an encrypted cover")
    p.add_argument("--cover", required=True, help="binary PGM cover image")
    p.add_argument("--payload", required=True, help="file with the secret bytes")
    p.add_argument("--pubkey", required=True, help="public key file")
    p.add_argument("--hiding-key", type=_hiding_key, required=True,
                   help="16 hex digits selecting the traversal")
    p.add_argument("--out", required=True, help="carrier container to write")
    p.add_argument("--render", help="also write an RGB view as PNG")
    p.add_argument("--seed", type=_seed,
                   help="64-bit seed for deterministic randomizers")
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("extract", help="read the payload back out")
    p.add_argument("--stego", required=True, help="carrier container")
    p.add_argument("--hiding-key", type=_hiding_key, required=True,
                   help="16 hex digits selecting the traversal")
    p.add_argument("--out", required=True, help="file for the payload bytes")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("decrypt", help="reconstruct the cover image")
    p.add_argument("--stego", required=True, help="carrier container")
    p.add_argument("--privkey", required=True, help="private key file")
    p.add_argument("--out", required=True, help="PGM to write")
    p.set_defaults(func=_cmd_decrypt)

    p = sub.add_parser("psnr", help="compare two PGM images")
    p.add_argument("image_a", help="reference image")
    p.add_argument("image_b", help="image to compare")
    p.add_argument("--plot", help="write a difference heatmap PNG")
    p.set_defaults(func=_cmd_psnr)

    p = sub.add_parser("bench", help="count Montgomery products per operation")
    p.add_argument("--bits", type=int, required=True, help="exponent width")
    p.add_argument("--trials", type=int, required=True, help="number of trials")
    p.add_argument("--plot", help="write a histogram PNG of the counts")
    p.set_defaults(func=_cmd_bench)

    return parser


def run(argv=None) -> int:
    """Parse and dispatch; returns the process exit code instead of exiting."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except StegoError as exc:
        print(f"pailstego: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"pailstego: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        # bench precondition violations and kin count as domain errors too
        print(f"pailstego: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run(sys.argv[1:]))
