"""Exception types raised across the library.

Everything derives from StegoError (itself a ValueError) so callers can
catch one base for any domain failure while pinpoint handlers stay possible.
"""


class StegoError(ValueError):
    """Base class for all domain errors raised by this package."""


# --- modular arithmetic ---

class EvenModulus(StegoError):
    """Montgomery contexts require an odd modulus."""


class ModulusTooSmall(StegoError):
    """Modulus below the minimum the operation supports."""


class OutOfRange(StegoError):
    """Operand outside [0, modulus) or a negative exponent."""


# --- cryptosystem ---

class InvalidBits(StegoError):
    """Requested key width outside the supported range."""


class PrimeSearchExhausted(StegoError):
    """Retry budget spent without finding suitable primes."""


class MessageOutOfRange(StegoError):
    """Plaintext not in [0, n)."""


class BadRandomizer(StegoError):
    """Randomizer not a unit of Z_n."""


class CiphertextOutOfRange(StegoError):
    """Ciphertext not in (0, n^2)."""


class MalformedCiphertext(StegoError):
    """Decryption hit a value outside the ciphertext group."""


class KeyFormatError(StegoError):
    """Key file does not parse."""


# --- embedding / extraction ---

class PayloadTooLarge(StegoError):
    """Framed payload exceeds the carrier capacity."""


class MalformedFrame(StegoError):
    """Extracted length prefix is inconsistent with the carrier."""


class TiedPair(StegoError):
    """A ciphertext pair compares equal, so it cannot carry a bit."""


class KeyMismatch(StegoError):
    """Private key modulus differs from the carrier modulus."""


class PixelOutOfRange(StegoError):
    """Reconstructed sample exceeds 255."""


# --- file formats ---

class UnsupportedFormat(StegoError):
    """Image file is not the binary 8-bit grayscale form this reads."""


class TruncatedFile(StegoError):
    """File ends before the declared raster does."""


class BadMagic(StegoError):
    """Container does not start with the expected magic."""


class LengthMismatch(StegoError):
    """Container size disagrees with its header."""


class ModulusTooLargeForRender(StegoError):
    """Ciphertexts do not fit a 24-bit RGB pixel."""


# --- metrics ---

class DimensionMismatch(StegoError):
    """Images compared for quality must share dimensions."""


class DivideByZero(StegoError):
    """A rate formula was fed a zero denominator."""
