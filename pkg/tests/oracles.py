"""Hand-rolled reference arithmetic that the library is checked against.

Deliberately naive: plain modular products, one at a time, so these share
no code path with the Montgomery implementations they verify.
"""


def naive_modpow(g: int, e: int, n: int) -> int:
    """Right-to-left square and multiply on plain % products."""
    acc = 1 % n
    g = g % n
    while e:
        if e & 1:
            acc = acc * g % n
        g = g * g % n
        e >>= 1
    return acc


def mont_product_oracle(a: int, b: int, k: int, n: int) -> int:
    """a * b * R^-1 mod n computed directly from the definition."""
    r_inv = pow(1 << k, -1, n)
    return a * b * r_inv % n


def exp_montp_cost(e: int) -> int:
    """Products a single left-to-right scan spends: squarings, multiplies,
    domain entry and exit."""
    if e == 0:
        return 0
    return e.bit_length() + bin(e).count("1") + 2


def sim_montp_cost(e0: int, e1: int) -> int:
    """Products the shared-chain double scan spends: 4 setup, one squaring
    per position, one multiply per nonzero bit pair, 1 exit."""
    if e0 == 0 and e1 == 0:
        return 0
    width = max(e0.bit_length(), e1.bit_length())
    nonzero = sum(1 for i in range(width) if ((e0 >> i) | (e1 >> i)) & 1)
    return 4 + width + nonzero + 1
