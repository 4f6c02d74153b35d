import random

import pytest

from pailstego.codec import GrayImage
from pailstego.paillier import keypair_from_primes


@pytest.fixture
def toy_keys():
    # n = 35: small enough to check everything exhaustively
    return keypair_from_primes(5, 7)


@pytest.fixture
def embed_keys():
    # n = 323: smallest convenient modulus above the 255 pixel-sum bound
    return keypair_from_primes(17, 19)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def make_cover(width: int, height: int, seed: int = 7) -> GrayImage:
    r = random.Random(seed)
    return GrayImage(width, height, bytes(r.randrange(256) for _ in range(width * height)))


@pytest.fixture
def cover_16():
    return make_cover(16, 16)
