"""Separable image steganography over Paillier encryption.

The public surface: Montgomery contexts for the arithmetic, the
cryptosystem, the pair-order embedding codec, file formats, and the
quality/cost reports.
"""

from .codec import (GrayImage, Payload, StegoImage, decrypt_reconstruct,
                    embed, extract, pixel_order, split_pixel)
from .errors import StegoError
from .imagefile import (RgbRender, container_bytes, derender_rgb, load_container,
                        load_pgm, render_rgb, save_container, save_pgm, save_png)
from .metrics import (BenchReport, QualityReport, bench_exponentiation,
                      pixel_rate, psnr, throughput)
from .montmath import MontCtx
from .paillier import (PrivateKey, PublicKey, decrypt, draw_randomizer, encrypt,
                       hom_add, hom_scalar, keygen, keypair_from_primes,
                       load_private_key, load_public_key, save_private_key,
                       save_public_key)
from .prng import SplitMix64, rand_below, system_rng

__version__ = "0.1.0"

__all__ = [
    "BenchReport", "GrayImage", "MontCtx", "Payload", "PrivateKey",
    "PublicKey", "QualityReport", "RgbRender", "SplitMix64", "StegoError",
    "StegoImage", "bench_exponentiation", "container_bytes", "decrypt",
    "decrypt_reconstruct", "derender_rgb", "draw_randomizer", "embed",
    "encrypt", "extract", "hom_add", "hom_scalar", "keygen",
    "keypair_from_primes", "load_container", "load_pgm", "load_private_key",
    "load_public_key", "pixel_order", "pixel_rate", "psnr", "rand_below",
    "render_rgb", "save_container", "save_pgm", "save_png",
    "save_private_key", "save_public_key", "split_pixel", "system_rng",
    "throughput",
]
