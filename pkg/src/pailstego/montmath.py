"""Modular arithmetic in the Montgomery domain.

A context maps one odd modulus n to the radix R = 2^k, k = bitlen(n), and
precomputes the constants every product needs. Residues live in the domain
as x*R mod n; the product of two domain values is REDC(a*b) = a*b*R^-1 mod n,
so a whole exponentiation runs on shifts and masks with no interior division.

Every Montgomery product is tallied. The counter is the cost model the
benchmark reports: counts are aggregated per thread and summed on read, so
hot loops pay one plain integer add per product instead of a lock.

Exponentiation is left-to-right binary. The double-base variant shares one
squaring chain between both exponents and multiplies by g0, g1, or their
precomputed product depending on the current bit pair, which is what makes
it cheaper than two separate scans.
"""

from __future__ import annotations

import threading

from .errors import EvenModulus, ModulusTooSmall, OutOfRange

WORD_BITS = 64


class MontCtx:
    """Constants and the product counter for one odd modulus >= 3.

    Fields are frozen after construction except the counter, which may be
    bumped concurrently from any thread; mul_count() returns the total.
    """

    __slots__ = ("modulus", "k", "r_mod_n", "r2_mod_n", "n_prime",
                 "_mask", "_np_r", "_local", "_cells", "_cells_lock")

    def __init__(self, modulus: int) -> None:
        if modulus < 3:
            raise ModulusTooSmall(f"modulus must be at least 3, got {modulus}")
        if modulus & 1 == 0:
            raise EvenModulus(f"modulus must be odd, got {modulus}")
        k = modulus.bit_length()
        r = 1 << k
        self.modulus = modulus
        self.k = k
        self._mask = r - 1
        self.r_mod_n = r % modulus
        self.r2_mod_n = (r * r) % modulus
        # n' satisfies n * n' == -1 both mod 2^64 (the word form callers can
        # inspect) and mod R (the form REDC actually folds with)
        word = 1 << WORD_BITS
        self.n_prime = word - pow(modulus, -1, word)
        self._np_r = r - pow(modulus, -1, r)
        self._local = threading.local()
        self._cells = []
        self._cells_lock = threading.Lock()

    # counter plumbing: one mutable cell per thread, registry summed on read

    def _cell(self) -> list:
        try:
            return self._local.cell
        except AttributeError:
            cell = [0]
            with self._cells_lock:
                self._cells.append(cell)
            self._local.cell = cell
            return cell

    def mul_count(self) -> int:
        """Total Montgomery products issued on this context, all threads."""
        with self._cells_lock:
            return sum(cell[0] for cell in self._cells)

    def _redc(self, t: int) -> int:
        # t < n*R on every call path, so one conditional subtract suffices
        n = self.modulus
        u = (t + ((t * self._np_r) & self._mask) * n) >> self.k
        return u - n if u >= n else u

    def _check(self, x: int, name: str) -> int:
        if not 0 <= x < self.modulus:
            raise OutOfRange(f"{name} must lie in [0, {self.modulus}), got {x}")
        return x

    def to_domain(self, x: int) -> int:
        """x -> x*R mod n."""
        return self.mont_mul(x, self.r2_mod_n)

    def from_domain(self, x_md: int) -> int:
        """x*R mod n -> x."""
        return self.mont_mul(x_md, 1)

    def mont_mul(self, a: int, b: int) -> int:
        """One Montgomery product a*b*R^-1 mod n of reduced operands."""
        self._check(a, "a")
        self._check(b, "b")
        out = self._redc(a * b)
        self._cell()[0] += 1
        return out

    def mont_exp(self, g: int, e: int) -> int:
        """g**e mod n, left-to-right binary over Montgomery products.

        Costs bitlen(e) squarings plus one multiply per set bit, plus the
        domain entry and exit products. e == 0 short-circuits to 1.
        """
        self._check(g, "base")
        if e < 0:
            raise OutOfRange(f"exponent must be nonnegative, got {e}")
        if e == 0:
            return 1
        n = self.modulus
        k = self.k
        mask = self._mask
        np_r = self._np_r
        count = 1
        t = g * self.r2_mod_n
        gm = (t + ((t * np_r) & mask) * n) >> k
        if gm >= n:
            gm -= n
        acc = self.r_mod_n
        for i in range(e.bit_length() - 1, -1, -1):
            t = acc * acc
            acc = (t + ((t * np_r) & mask) * n) >> k
            if acc >= n:
                acc -= n
            count += 1
            if (e >> i) & 1:
                t = acc * gm
                acc = (t + ((t * np_r) & mask) * n) >> k
                if acc >= n:
                    acc -= n
                count += 1
        acc = (acc + ((acc * np_r) & mask) * n) >> k
        if acc >= n:
            acc -= n
        count += 1
        self._cell()[0] += count
        return acc

    def mont_sim_exp(self, g0: int, g1: int, e0: int, e1: int) -> int:
        """g0**e0 * g1**e1 mod n over one shared squaring chain.

        Four products up front (both bases into the domain, their product,
        the accumulator seed), then per bit position one squaring and at
        most one multiply chosen by the (e0, e1) bit pair. Both exponents
        zero short-circuits to 1.
        """
        self._check(g0, "g0")
        self._check(g1, "g1")
        if e0 < 0 or e1 < 0:
            raise OutOfRange("exponents must be nonnegative")
        if e0 == 0 and e1 == 0:
            return 1
        n = self.modulus
        k = self.k
        mask = self._mask
        np_r = self._np_r
        r2 = self.r2_mod_n
        g0m = self._redc(g0 * r2)
        g1m = self._redc(g1 * r2)
        g01m = self._redc(g0m * g1m)
        acc = self._redc(r2)  # R^2 * 1 * R^-1 = R mod n, the domain identity
        count = 4
        for i in range(max(e0.bit_length(), e1.bit_length()) - 1, -1, -1):
            t = acc * acc
            acc = (t + ((t * np_r) & mask) * n) >> k
            if acc >= n:
                acc -= n
            count += 1
            pair = ((e0 >> i) & 1) | (((e1 >> i) & 1) << 1)
            if pair:
                if pair == 1:
                    t = acc * g0m
                elif pair == 2:
                    t = acc * g1m
                else:
                    t = acc * g01m
                acc = (t + ((t * np_r) & mask) * n) >> k
                if acc >= n:
                    acc -= n
                count += 1
        acc = (acc + ((acc * np_r) & mask) * n) >> k
        if acc >= n:
            acc -= n
        count += 1
        self._cell()[0] += count
        return acc
