"""Separable embedding of payload bits into encrypted pixel pairs.

Each cover sample p is split into halves m1 + m2 = p and both halves are
encrypted separately. The pair's order carries one payload bit: the larger
ciphertext first means 1, the smaller first means 0. Since semantically
secure encryptions of the halves almost never compare equal, and are redrawn
when they do, the bit survives without touching the plaintext.

The two receiver paths never meet: extraction compares integers and needs
only the traversal key, reconstruction sums each pair homomorphically and
decrypts with only the private key. Either may run first.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import paillier
from .errors import (KeyMismatch, MalformedFrame, ModulusTooSmall,
                     PayloadTooLarge, PixelOutOfRange, TiedPair)
from .prng import SplitMix64

LENGTH_BITS = 32        # big-endian payload byte count, leading the frame
MAX_TIE_RETRIES = 64
MIN_EMBED_MODULUS = 256  # pixel sums reach 255, so n must exceed that


@dataclass
class GrayImage:
    """8-bit grayscale picture, samples row-major."""

    width: int
    height: int
    samples: bytes

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("image dimensions must be positive")
        if len(self.samples) != self.width * self.height:
            raise ValueError(
                f"expected {self.width * self.height} samples, got {len(self.samples)}")


@dataclass
class StegoImage:
    """Carrier: one ciphertext pair per cover pixel, row-major, plus n."""

    width: int
    height: int
    n: int
    pairs: list

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("carrier dimensions must be positive")
        if len(self.pairs) != self.width * self.height:
            raise ValueError(
                f"expected {self.width * self.height} pairs, got {len(self.pairs)}")


@dataclass
class Payload:
    """The secret bytes a carrier transports."""

    data: bytes


def split_pixel(p: int) -> tuple[int, int]:
    """Halve a sample so the parts sum back exactly: (floor(p/2), p - floor(p/2))."""
    if not 0 <= p <= 255:
        raise PixelOutOfRange(f"sample must lie in [0, 255], got {p}")
    m1 = p >> 1
    return m1, p - m1


def pixel_order(key: int, count: int) -> list[int]:
    """Key-determined traversal of pixel indices.

    A SplitMix64 stream seeded with the 64-bit key drives a Fisher-Yates
    shuffle of range(count); same key and count, same order, everywhere.
    """
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    perm = list(range(count))
    rng = SplitMix64(key)
    for i in range(count - 1, 0, -1):
        j = rng.next_word() % (i + 1)
        perm[i], perm[j] = perm[j], perm[i]
    return perm


def _framed(payload: Payload, capacity_bits: int) -> bytes:
    frame = len(payload.data).to_bytes(LENGTH_BITS // 8, "big") + payload.data
    if 8 * len(frame) > capacity_bits:
        raise PayloadTooLarge(
            f"framed payload needs {8 * len(frame)} bits, carrier holds {capacity_bits}")
    return frame


def embed(cover: GrayImage, payload: Payload, pk: paillier.PublicKey,
          hiding_key: int, rng) -> StegoImage:
    """Encrypt the cover and weave the framed payload into pair order.

    Pixels are visited in pixel_order(hiding_key); the i-th visited pixel
    carries frame bit i, and pixels past the frame carry 0. Ties between the
    two fresh ciphertexts are re-randomized a bounded number of times.
    """
    if pk.n < MIN_EMBED_MODULUS:
        raise ModulusTooSmall(
            f"embedding needs n > 255 to carry pixel sums, got n={pk.n}")
    capacity = cover.width * cover.height
    frame = _framed(payload, capacity)
    frame_bits = 8 * len(frame)
    pairs: list = [None] * capacity
    for slot, pix in enumerate(pixel_order(hiding_key, capacity)):
        if slot < frame_bits:
            bit = (frame[slot >> 3] >> (7 - (slot & 7))) & 1
        else:
            bit = 0
        m1, m2 = split_pixel(cover.samples[pix])
        first = paillier.encrypt(pk, m1, paillier.draw_randomizer(pk, rng))
        second = paillier.encrypt(pk, m2, paillier.draw_randomizer(pk, rng))
        retries = 0
        while first == second:
            if retries == MAX_TIE_RETRIES:
                raise TiedPair(f"pixel {pix}: {MAX_TIE_RETRIES} redraws, still tied")
            second = paillier.encrypt(pk, m2, paillier.draw_randomizer(pk, rng))
            retries += 1
        if bit == 1:
            if first < second:
                first, second = second, first
        elif first > second:
            first, second = second, first
        pairs[pix] = (first, second)
    return StegoImage(cover.width, cover.height, pk.n, pairs)


def extract(stego: StegoImage, hiding_key: int) -> Payload:
    """Read the payload back out of pair order alone; no decryption key."""
    capacity = len(stego.pairs)
    bits = []
    for pix in pixel_order(hiding_key, capacity):
        first, second = stego.pairs[pix]
        if first == second:
            raise TiedPair(f"pixel {pix}: pair compares equal, carries no bit")
        bits.append(1 if first > second else 0)
    if capacity < LENGTH_BITS:
        raise MalformedFrame(f"carrier too small for a length prefix: {capacity} bits")
    length = 0
    for b in bits[:LENGTH_BITS]:
        length = (length << 1) | b
    if LENGTH_BITS + 8 * length > capacity:
        raise MalformedFrame(
            f"declared {length} payload bytes, carrier holds {capacity} bits")
    data = bytearray(length)
    for i in range(length):
        byte = 0
        for b in bits[LENGTH_BITS + 8 * i:LENGTH_BITS + 8 * i + 8]:
            byte = (byte << 1) | b
        data[i] = byte
    return Payload(bytes(data))


def decrypt_reconstruct(stego: StegoImage, sk: paillier.PrivateKey) -> GrayImage:
    """Recover the cover losslessly: decrypt the homomorphic sum of each pair."""
    if sk.n != stego.n:
        raise KeyMismatch(f"carrier modulus {stego.n} != key modulus {sk.n}")
    out = bytearray(len(stego.pairs))
    for i, (first, second) in enumerate(stego.pairs):
        value = paillier.decrypt(sk, first * second % sk.n_sq)
        if value > 255:
            raise PixelOutOfRange(f"pixel {i} reconstructs to {value}")
        out[i] = value
    return GrayImage(stego.width, stego.height, bytes(out))
