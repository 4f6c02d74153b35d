import random
import threading

import pytest

from pailstego.errors import EvenModulus, ModulusTooSmall, OutOfRange
from pailstego.montmath import MontCtx

from oracles import exp_montp_cost, mont_product_oracle, naive_modpow, sim_montp_cost


def random_odd(rng, bits):
    return (1 << (bits - 1)) | rng.getrandbits(bits - 1) | 1


class TestContext:
    def test_constants_for_35(self):
        ctx = MontCtx(35)
        assert ctx.k == 6
        assert ctx.r_mod_n == 29  # 64 mod 35
        assert ctx.r2_mod_n == 1  # 4096 mod 35
        assert ctx.mul_count() == 0

    def test_word_inverse_invariant(self, rng):
        for bits in (2, 6, 17, 64, 255, 1024):
            n = random_odd(rng, bits) if bits > 2 else 3
            ctx = MontCtx(n)
            assert (n * ctx.n_prime + 1) % (1 << 64) == 0

    def test_smallest_modulus(self):
        ctx = MontCtx(3)
        # R = 4, the smallest power of two above n
        assert ctx.r_mod_n == 1
        assert ctx.from_domain(ctx.to_domain(2)) == 2

    def test_even_rejected(self):
        with pytest.raises(EvenModulus):
            MontCtx(4)
        with pytest.raises(EvenModulus):
            MontCtx(1 << 20)

    def test_too_small_rejected(self):
        with pytest.raises(ModulusTooSmall):
            MontCtx(1)
        with pytest.raises(ModulusTooSmall):
            MontCtx(-7)


class TestDomainMaps:
    def test_examples(self):
        ctx = MontCtx(35)
        assert ctx.to_domain(17) == 3  # 17*64 mod 35
        assert ctx.to_domain(0) == 0
        assert ctx.from_domain(3) == 17
        assert ctx.from_domain(0) == 0

    def test_out_of_range(self):
        ctx = MontCtx(35)
        with pytest.raises(OutOfRange):
            ctx.to_domain(35)
        with pytest.raises(OutOfRange):
            ctx.to_domain(-1)
        with pytest.raises(OutOfRange):
            ctx.from_domain(36)

    def test_round_trip_exhaustive(self):
        # spot the two ends of the small-modulus range
        for n in (35, 4095):
            ctx = MontCtx(n)
            for x in range(n):
                assert ctx.from_domain(ctx.to_domain(x)) == x

    def test_round_trip_random_wide(self, rng):
        for bits in (64, 256, 1024):
            n = random_odd(rng, bits)
            ctx = MontCtx(n)
            for _ in range(50):
                x = rng.randrange(n)
                assert ctx.from_domain(ctx.to_domain(x)) == x


class TestMontMul:
    def test_example(self):
        ctx = MontCtx(35)
        assert ctx.mont_mul(3, 20) == 25  # 3*20*29 mod 35

    def test_domain_identity(self):
        ctx = MontCtx(35)
        for x in (0, 1, 17, 34):
            x_md = ctx.to_domain(x)
            assert ctx.mont_mul(x_md, ctx.r_mod_n) == x_md

    def test_exhaustive_against_oracle(self):
        ctx = MontCtx(35)
        for a in range(35):
            for b in range(35):
                assert ctx.mont_mul(a, b) == mont_product_oracle(a, b, 6, 35)

    def test_random_against_oracle(self, rng):
        for bits in (12, 64, 256):
            for _ in range(200):
                n = random_odd(rng, bits)
                ctx = MontCtx(n)
                a = rng.randrange(n)
                b = rng.randrange(n)
                assert ctx.mont_mul(a, b) == mont_product_oracle(a, b, ctx.k, n)

    def test_products_compose_like_plain_multiplication(self, rng):
        # (a*b)*c == a*(b*c) carried through the domain
        n = random_odd(rng, 48)
        ctx = MontCtx(n)
        for _ in range(100):
            a, b, c = (rng.randrange(n) for _ in range(3))
            am, bm, cm = ctx.to_domain(a), ctx.to_domain(b), ctx.to_domain(c)
            left = ctx.mont_mul(ctx.mont_mul(am, bm), cm)
            right = ctx.mont_mul(am, ctx.mont_mul(bm, cm))
            assert left == right
            assert ctx.from_domain(left) == a * b * c % n

    def test_operand_range_enforced(self):
        ctx = MontCtx(35)
        with pytest.raises(OutOfRange):
            ctx.mont_mul(35, 1)
        with pytest.raises(OutOfRange):
            ctx.mont_mul(1, -2)


class TestMontExp:
    def test_examples(self):
        ctx = MontCtx(35)
        assert ctx.mont_exp(2, 12) == 1  # 4096 mod 35
        assert ctx.mont_exp(2, 0) == 1
        assert ctx.mont_exp(0, 5) == 0
        assert ctx.mont_exp(0, 0) == 1

    def test_exhaustive_small(self):
        ctx = MontCtx(35)
        for g in range(35):
            for e in range(16):
                assert ctx.mont_exp(g, e) == naive_modpow(g, e, 35)

    def test_random_against_square_and_multiply(self, rng):
        for bits in (12, 64):
            for _ in range(300):
                n = random_odd(rng, bits)
                ctx = MontCtx(n)
                g = rng.randrange(n)
                e = rng.getrandbits(bits)
                assert ctx.mont_exp(g, e) == naive_modpow(g, e, n)

    def test_wide_against_builtin(self, rng):
        for bits in (256, 1024):
            n = random_odd(rng, bits)
            ctx = MontCtx(n)
            for _ in range(25):
                g = rng.randrange(n)
                e = rng.getrandbits(bits)
                assert ctx.mont_exp(g, e) == pow(g, e, n)

    def test_negative_exponent_rejected(self):
        with pytest.raises(OutOfRange):
            MontCtx(35).mont_exp(2, -1)


class TestMontSimExp:
    def test_examples(self):
        ctx = MontCtx(35)
        assert ctx.mont_sim_exp(2, 3, 1, 1) == 6
        assert ctx.mont_sim_exp(2, 3, 4, 2) == 4  # 16*9 mod 35
        assert ctx.mont_sim_exp(2, 3, 0, 0) == 1

    def test_exhaustive_small(self):
        ctx = MontCtx(35)
        for g0 in range(0, 35, 3):
            for g1 in range(0, 35, 4):
                for e0 in range(4):
                    for e1 in range(4):
                        want = naive_modpow(g0, e0, 35) * naive_modpow(g1, e1, 35) % 35
                        assert ctx.mont_sim_exp(g0, g1, e0, e1) == want

    def test_matches_two_single_exponentiations(self, rng):
        for bits in (12, 64):
            for _ in range(250):
                n = random_odd(rng, bits)
                ctx = MontCtx(n)
                g0, g1 = rng.randrange(n), rng.randrange(n)
                e0, e1 = rng.getrandbits(bits), rng.getrandbits(bits)
                want = ctx.mont_exp(g0, e0) * ctx.mont_exp(g1, e1) % n
                assert ctx.mont_sim_exp(g0, g1, e0, e1) == want

    def test_one_exponent_zero_degenerates(self, rng):
        n = random_odd(rng, 32)
        ctx = MontCtx(n)
        g0, g1 = rng.randrange(n), rng.randrange(n)
        e = rng.getrandbits(31)
        assert ctx.mont_sim_exp(g0, g1, e, 0) == ctx.mont_exp(g0, e)
        assert ctx.mont_sim_exp(g0, g1, 0, e) == ctx.mont_exp(g1, e)

    def test_zero_base(self, rng):
        n = random_odd(rng, 16)
        ctx = MontCtx(n)
        assert ctx.mont_sim_exp(0, 3, 2, 5) == 0
        # unused zero base must not poison the result
        assert ctx.mont_sim_exp(0, 3, 0, 5) == naive_modpow(3, 5, n)


class TestCounter:
    def test_mont_mul_counts_one(self):
        ctx = MontCtx(35)
        ctx.mont_mul(3, 20)
        assert ctx.mul_count() == 1
        ctx.to_domain(17)
        ctx.from_domain(3)
        assert ctx.mul_count() == 3

    def test_exp_count_model(self, rng):
        n = random_odd(rng, 64)
        ctx = MontCtx(n)
        for e in (1, 12, 0b1000000, rng.getrandbits(64)):
            before = ctx.mul_count()
            ctx.mont_exp(rng.randrange(n), e)
            assert ctx.mul_count() - before == exp_montp_cost(e)

    def test_sim_count_model(self, rng):
        n = random_odd(rng, 64)
        ctx = MontCtx(n)
        for _ in range(20):
            e0, e1 = rng.getrandbits(64), rng.getrandbits(48)
            before = ctx.mul_count()
            ctx.mont_sim_exp(rng.randrange(n), rng.randrange(n), e0, e1)
            assert ctx.mul_count() - before == sim_montp_cost(e0, e1)

    def test_single_set_bit_pair_cost(self):
        # one squaring per position, exactly one pair multiply, 5 constants
        k = 64
        ctx = MontCtx((1 << k) - 59)  # odd, k bits
        e = 1 << (k - 1)
        before = ctx.mul_count()
        ctx.mont_sim_exp(2, 3, e, e)
        assert ctx.mul_count() - before == k + 6

    def test_dense_pair_cost_band(self, rng):
        # dense exponents: about 1.75k + 5 products, never two scans' worth
        k = 64
        deltas = []
        for _ in range(200):
            n = random_odd(rng, k)
            ctx = MontCtx(n)
            e0 = (1 << (k - 1)) | rng.getrandbits(k - 1)
            e1 = (1 << (k - 1)) | rng.getrandbits(k - 1)
            before = ctx.mul_count()
            ctx.mont_sim_exp(rng.randrange(n), rng.randrange(n), e0, e1)
            deltas.append(ctx.mul_count() - before)
        mean = sum(deltas) / len(deltas)
        assert 1.6 * k + 4 <= mean <= 1.9 * k + 4

    def test_zero_work_calls_leave_counter_alone(self):
        ctx = MontCtx(35)
        ctx.mont_exp(2, 0)
        ctx.mont_sim_exp(2, 3, 0, 0)
        assert ctx.mul_count() == 0

    def test_counts_aggregate_across_threads(self):
        ctx = MontCtx(0xFFFF_FFFB)
        per_thread = 500

        def hammer():
            for i in range(per_thread):
                ctx.mont_mul(i % 1000 + 1, 123456789)

        threads = [threading.Thread(target=hammer) for _ in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert ctx.mul_count() == 4 * per_thread
