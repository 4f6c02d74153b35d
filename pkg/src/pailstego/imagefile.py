"""File formats: binary PGM covers, the PST1 carrier container, RGB renders.

PST1 is a flat big-endian layout: magic, 32-bit width and height, a 16-bit
modulus byte length, the modulus, then width*height ciphertext pairs with
every ciphertext stored in exactly twice the modulus length. When n^2 fits
24 bits, a carrier can also be rendered as an RGB picture, one ciphertext
per pixel, which is a faithful and invertible view of the same data.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

from .codec import GrayImage, StegoImage
from .errors import (BadMagic, CiphertextOutOfRange, LengthMismatch,
                     ModulusTooLargeForRender, TruncatedFile,
                     UnsupportedFormat)

MAGIC = b"PST1"
_RGB_LIMIT = 1 << 24


# --- PGM covers ---

def load_pgm(path) -> GrayImage:
    """Read a binary (P5) PGM with maxval 255; comments allowed in the header."""
    data = Path(path).read_bytes()
    if data[:2] != b"P5":
        raise UnsupportedFormat(f"{path}: not a binary PGM (P5) file")
    pos = 2
    fields = []
    while len(fields) < 3:
        if pos >= len(data):
            raise TruncatedFile(f"{path}: header ends early")
        c = data[pos]
        if c in b" \t\r\n":
            pos += 1
        elif c in b"#":
            while pos < len(data) and data[pos] not in b"\n":
                pos += 1
        elif c in b"0123456789":
            start = pos
            while pos < len(data) and data[pos] in b"0123456789":
                pos += 1
            fields.append(int(data[start:pos]))
        else:
            raise UnsupportedFormat(f"{path}: junk byte {c:#x} in header")
    width, height, maxval = fields
    if maxval != 255:
        raise UnsupportedFormat(f"{path}: only maxval 255 is supported, got {maxval}")
    if width < 1 or height < 1:
        raise UnsupportedFormat(f"{path}: bad dimensions {width}x{height}")
    # exactly one whitespace byte separates maxval from the raster
    if pos >= len(data) or data[pos] not in b" \t\r\n":
        raise UnsupportedFormat(f"{path}: raster must follow one whitespace byte")
    pos += 1
    raster = data[pos:pos + width * height]
    if len(raster) < width * height:
        raise TruncatedFile(
            f"{path}: raster holds {len(raster)} of {width * height} samples")
    return GrayImage(width, height, bytes(raster))


def save_pgm(img: GrayImage, path) -> None:
    Path(path).write_bytes(
        b"P5\n%d %d\n255\n" % (img.width, img.height) + img.samples)


# --- PST1 carriers ---

def container_bytes(stego: StegoImage) -> bytes:
    """Serialize a carrier; the same pairs always give the same bytes."""
    n = stego.n
    n_sq = n * n
    mod_len = (n.bit_length() + 7) // 8
    cipher_len = 2 * mod_len
    out = bytearray()
    out += MAGIC
    out += struct.pack(">IIH", stego.width, stego.height, mod_len)
    out += n.to_bytes(mod_len, "big")
    for first, second in stego.pairs:
        for c in (first, second):
            if not 0 < c < n_sq:
                raise CiphertextOutOfRange(f"ciphertext {c} not in (0, {n_sq})")
            out += c.to_bytes(cipher_len, "big")
    return bytes(out)


def save_container(stego: StegoImage, path) -> None:
    Path(path).write_bytes(container_bytes(stego))


def load_container(path) -> StegoImage:
    data = Path(path).read_bytes()
    if data[:4] != MAGIC:
        raise BadMagic(f"{path}: expected {MAGIC!r} magic")
    if len(data) < 14:
        raise LengthMismatch(f"{path}: {len(data)} bytes is shorter than any header")
    width, height, mod_len = struct.unpack(">IIH", data[4:14])
    if width < 1 or height < 1 or mod_len < 1:
        raise LengthMismatch(f"{path}: degenerate header {width}x{height}, {mod_len}")
    n_end = 14 + mod_len
    if len(data) < n_end:
        raise LengthMismatch(f"{path}: header claims {mod_len} modulus bytes")
    n = int.from_bytes(data[14:n_end], "big")
    n_sq = n * n
    cipher_len = 2 * mod_len
    expected = n_end + width * height * 2 * cipher_len
    if len(data) != expected:
        raise LengthMismatch(
            f"{path}: {width}x{height} pairs need {expected} bytes, file has {len(data)}")
    pairs = []
    pos = n_end
    for _ in range(width * height):
        first = int.from_bytes(data[pos:pos + cipher_len], "big")
        second = int.from_bytes(data[pos + cipher_len:pos + 2 * cipher_len], "big")
        for c in (first, second):
            if not 0 < c < n_sq:
                raise CiphertextOutOfRange(f"{path}: ciphertext {c} not in (0, {n_sq})")
        pairs.append((first, second))
        pos += 2 * cipher_len
    return StegoImage(width, height, n, pairs)


# --- RGB renders ---

@dataclass
class RgbRender:
    """24-bit RGB view of a carrier, two output pixels per cover pixel."""

    width: int
    height: int
    channels: bytes  # 3 bytes per pixel, row-major

    def __post_init__(self):
        if len(self.channels) != 3 * self.width * self.height:
            raise ValueError("channel buffer does not match dimensions")


def render_rgb(stego: StegoImage) -> RgbRender:
    """Map each ciphertext to one RGB pixel, pair members side by side."""
    if stego.n * stego.n > _RGB_LIMIT:
        raise ModulusTooLargeForRender(
            f"n^2 = {stego.n * stego.n} exceeds 24-bit pixels")
    buf = bytearray()
    for first, second in stego.pairs:
        buf += first.to_bytes(3, "big")
        buf += second.to_bytes(3, "big")
    return RgbRender(2 * stego.width, stego.height, bytes(buf))


def derender_rgb(render: RgbRender, n: int) -> StegoImage:
    """Invert render_rgb given the modulus the carrier was built with."""
    if render.width % 2 != 0:
        raise LengthMismatch(f"render width {render.width} is not a pair multiple")
    n_sq = n * n
    pairs = []
    for pos in range(0, len(render.channels), 6):
        first = int.from_bytes(render.channels[pos:pos + 3], "big")
        second = int.from_bytes(render.channels[pos + 3:pos + 6], "big")
        for c in (first, second):
            if not 0 < c < n_sq:
                raise CiphertextOutOfRange(f"pixel value {c} not in (0, {n_sq})")
        pairs.append((first, second))
    return StegoImage(render.width // 2, render.height, n, pairs)


def save_png(render: RgbRender, path) -> None:
    from PIL import Image
    img = Image.frombytes("RGB", (render.width, render.height), render.channels)
    img.save(Path(path), format="PNG")
