"""Paillier cryptosystem with all cipher exponentiation on the Montgomery core.

Keys work mod n^2 for an RSA-style modulus n = p*q. Encryption computes
g^m * r^n in one fused double exponentiation; decryption applies the private
exponent and the L function, where L(x) = (x - 1) / n divides exactly on
every honest ciphertext. Addition of plaintexts is multiplication of
ciphertexts, and plaintext scaling is a ciphertext power, which is all the
embedding layer needs.
"""

from __future__ import annotations

import math
from pathlib import Path

from .errors import (BadRandomizer, CiphertextOutOfRange, InvalidBits,
                     KeyFormatError, MalformedCiphertext, MessageOutOfRange,
                     PrimeSearchExhausted)
from .montmath import MontCtx
from .prng import rand_below

MIN_BITS = 9        # smallest n that still splits into two odd primes sanely
MAX_BITS = 2048
MR_ROUNDS = 40
_PUBLIC_MAGIC = "paillier-public v1"
_PRIVATE_MAGIC = "paillier-private v1"


class PublicKey:
    """Encryption half: modulus n, generator g, shared context mod n^2."""

    def __init__(self, n: int, g: int, ctx: MontCtx | None = None) -> None:
        self.n = n
        self.g = g
        self.n_sq = n * n
        self.ctx = ctx if ctx is not None else MontCtx(self.n_sq)

    def __eq__(self, other) -> bool:
        return isinstance(other, PublicKey) and (self.n, self.g) == (other.n, other.g)

    def __repr__(self) -> str:
        return f"PublicKey(n={self.n}, g={self.g})"


class PrivateKey:
    """Decryption half: lambda and mu precomputed, context mod n^2."""

    def __init__(self, n: int, lam: int, mu: int, ctx: MontCtx | None = None) -> None:
        self.n = n
        self.lam = lam
        self.mu = mu
        self.n_sq = n * n
        self.ctx = ctx if ctx is not None else MontCtx(self.n_sq)

    def __eq__(self, other) -> bool:
        return (isinstance(other, PrivateKey)
                and (self.n, self.lam, self.mu) == (other.n, other.lam, other.mu))

    def __repr__(self) -> str:
        return f"PrivateKey(n={self.n})"


def is_prime(x: int, rng) -> bool:
    """Trial division up to 16 bits, Miller-Rabin with 40 rounds above."""
    if x < 2:
        return False
    if x < 4:
        return True
    if x & 1 == 0:
        return False
    if x.bit_length() <= 16:
        f = 3
        while f * f <= x:
            if x % f == 0:
                return False
            f += 2
        return True
    d = x - 1
    s = 0
    while d & 1 == 0:
        d >>= 1
        s += 1
    for _ in range(MR_ROUNDS):
        a = 2 + rand_below(rng, x - 3)
        y = pow(a, d, x)
        if y == 1 or y == x - 1:
            continue
        for _ in range(s - 1):
            y = y * y % x
            if y == x - 1:
                break
        else:
            return False
    return True


def _random_prime(bits: int, rng) -> int:
    # top bit forced so products land at the target width, low bit forced odd
    budget = 64 * bits + 512
    top = 1 << (bits - 1)
    for _ in range(budget):
        cand = top | rand_below(rng, top) | 1
        if is_prime(cand, rng):
            return cand
    raise PrimeSearchExhausted(f"no {bits}-bit prime in {budget} draws")


def _lfunc(x: int, n: int) -> int:
    if (x - 1) % n != 0:
        raise MalformedCiphertext(f"L-function input {x} is not 1 mod {n}")
    return (x - 1) // n


def keypair_from_primes(p: int, q: int, deterministic_g: bool = True,
                        rng=None) -> tuple[PublicKey, PrivateKey]:
    """Assemble a keypair from two known odd primes; primality is trusted.

    deterministic_g picks g = n + 1; otherwise g is drawn from rng until the
    order condition gcd(L(g^lambda mod n^2), n) = 1 holds.
    """
    if p == q:
        raise ValueError("p and q must be distinct")
    if p < 3 or q < 3 or p & 1 == 0 or q & 1 == 0:
        raise ValueError("p and q must be odd primes, at least 3")
    n = p * q
    if math.gcd(n, (p - 1) * (q - 1)) != 1:
        raise ValueError("pq shares a factor with (p-1)(q-1)")
    lam = math.lcm(p - 1, q - 1)
    ctx = MontCtx(n * n)
    if deterministic_g:
        g = n + 1
        mu = pow(_lfunc(ctx.mont_exp(g, lam), n), -1, n)
    else:
        if rng is None:
            raise ValueError("random g selection needs an rng")
        while True:
            g = 1 + rand_below(rng, n * n - 1)
            if math.gcd(g, n) != 1:
                continue
            w = ctx.mont_exp(g, lam)
            if (w - 1) % n != 0:
                continue
            ell = (w - 1) // n
            if math.gcd(ell, n) == 1:
                mu = pow(ell, -1, n)
                break
    return PublicKey(n, g, ctx), PrivateKey(n, lam, mu, ctx)


def keygen(bits: int, rng, deterministic_g: bool = True) -> tuple[PublicKey, PrivateKey]:
    """Generate a keypair whose modulus has exactly `bits` bits."""
    if not MIN_BITS <= bits <= MAX_BITS:
        raise InvalidBits(f"bits must lie in [{MIN_BITS}, {MAX_BITS}], got {bits}")
    for _ in range(256):
        p = _random_prime((bits + 1) // 2, rng)
        q = _random_prime(bits // 2, rng)
        if p == q:
            continue
        n = p * q
        if n.bit_length() != bits:
            continue
        if math.gcd(n, (p - 1) * (q - 1)) != 1:
            continue
        return keypair_from_primes(p, q, deterministic_g=deterministic_g, rng=rng)
    raise PrimeSearchExhausted(f"no workable prime pair for {bits}-bit modulus")


def draw_randomizer(pk: PublicKey, rng) -> int:
    """Uniform unit of Z_n: rejection-sample [1, n) until coprime with n."""
    while True:
        r = 1 + rand_below(rng, pk.n - 1)
        if math.gcd(r, pk.n) == 1:
            return r


def encrypt(pk: PublicKey, m: int, r: int) -> int:
    """g^m * r^n mod n^2 in a single fused double exponentiation."""
    if not 0 <= m < pk.n:
        raise MessageOutOfRange(f"message must lie in [0, {pk.n}), got {m}")
    if not 1 <= r < pk.n or math.gcd(r, pk.n) != 1:
        raise BadRandomizer(f"randomizer must be a unit of Z_{pk.n}, got {r}")
    return pk.ctx.mont_sim_exp(pk.g, r, m, pk.n)


def decrypt(sk: PrivateKey, c: int) -> int:
    """L(c^lambda mod n^2) * mu mod n."""
    if not 0 < c < sk.n_sq:
        raise CiphertextOutOfRange(f"ciphertext must lie in (0, {sk.n_sq}), got {c}")
    return _lfunc(sk.ctx.mont_exp(c, sk.lam), sk.n) * sk.mu % sk.n


def hom_add(pk: PublicKey, c1: int, c2: int) -> int:
    """Ciphertext of m1 + m2 mod n: the plain product of the ciphertexts."""
    for c in (c1, c2):
        if not 0 < c < pk.n_sq:
            raise CiphertextOutOfRange(f"ciphertext must lie in (0, {pk.n_sq}), got {c}")
    return c1 * c2 % pk.n_sq


def hom_scalar(pk: PublicKey, c: int, scalar: int) -> int:
    """Ciphertext of scalar * m mod n: the ciphertext raised to the scalar."""
    if not 0 < c < pk.n_sq:
        raise CiphertextOutOfRange(f"ciphertext must lie in (0, {pk.n_sq}), got {c}")
    return pk.ctx.mont_exp(c, scalar)


# --- key files: one magic line, then name=<lowercase hex> lines ---

def save_public_key(pk: PublicKey, path) -> None:
    Path(path).write_text(f"{_PUBLIC_MAGIC}\nn={pk.n:x}\ng={pk.g:x}\n")


def save_private_key(sk: PrivateKey, path) -> None:
    Path(path).write_text(
        f"{_PRIVATE_MAGIC}\nn={sk.n:x}\nlambda={sk.lam:x}\nmu={sk.mu:x}\n")


def _parse_key_file(path, magic: str, names: tuple[str, ...]) -> list[int]:
    try:
        lines = Path(path).read_text().splitlines()
    except UnicodeDecodeError as exc:
        raise KeyFormatError(f"{path}: not a text key file") from exc
    if not lines or lines[0] != magic:
        raise KeyFormatError(f"{path}: expected '{magic}' header")
    if len(lines) < 1 + len(names):
        raise KeyFormatError(f"{path}: missing fields, wanted {names}")
    values = []
    for name, line in zip(names, lines[1:]):
        prefix = name + "="
        if not line.startswith(prefix):
            raise KeyFormatError(f"{path}: expected '{name}=<hex>', got '{line}'")
        try:
            values.append(int(line[len(prefix):], 16))
        except ValueError as exc:
            raise KeyFormatError(f"{path}: bad hex in '{line}'") from exc
    return values


def load_public_key(path) -> PublicKey:
    n, g = _parse_key_file(path, _PUBLIC_MAGIC, ("n", "g"))
    return PublicKey(n, g)


def load_private_key(path) -> PrivateKey:
    n, lam, mu = _parse_key_file(path, _PRIVATE_MAGIC, ("n", "lambda", "mu"))
    return PrivateKey(n, lam, mu)
