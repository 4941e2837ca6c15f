#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <random>

#include "orbitnum/arith.hpp"

using namespace orbitnum::arith;

TEST_CASE("ext_gcd basics") {
    CHECK(ext_gcd(1, 0).g == 1);
    CHECK(ext_gcd(1, 0).x == 1);
    CHECK(ext_gcd(1, 0).y == 0);
    auto [g, x, y] = ext_gcd(3, 1);
    CHECK(g == 1);
    CHECK(3 * x + 1 * y == 1);
    CHECK(ext_gcd(0, 0).g == 0);
    CHECK(ext_gcd(0, 0).x == 0);
    CHECK(ext_gcd(0, 0).y == 0);
}

TEST_CASE("ext_gcd bezout identity on random inputs") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<i64> dist(-1000000, 1000000);
    for (int i = 0; i < 20000; ++i) {
        i64 a = dist(rng), b = dist(rng);
        auto [g, x, y] = ext_gcd(a, b);
        CHECK(g >= 0);
        CHECK(a * x + b * y == g);
        if (a != 0 || b != 0) {
            CHECK(g > 0);
            CHECK(a % g == 0);
            CHECK(b % g == 0);
        }
    }
}

TEST_CASE("is_prime against sieve") {
    const int N = 20000;
    std::vector<bool> composite(N + 1, false);
    for (int i = 2; i * i <= N; ++i)
        if (!composite[i])
            for (int j = i * i; j <= N; j += i) composite[j] = true;
    for (int n = 0; n <= N; ++n)
        CHECK(is_prime(n) == (n >= 2 && !composite[n]));
    CHECK(is_prime(2147483647));            // 2^31 - 1
    CHECK(is_prime(67280421310721LL));      // factor of 2^128 + 1
    CHECK_FALSE(is_prime(3215031751LL));    // strong pseudoprime to 2,3,5,7
    CHECK_FALSE(is_prime(341550071728321LL));
}

TEST_CASE("factor examples") {
    Factorization f = factor(45);
    CHECK(f.sign == 1);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == std::pair<i64, int>{3, 2});
    CHECK(f.factors[1] == std::pair<i64, int>{5, 1});

    f = factor(-8);
    CHECK(f.sign == -1);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0] == std::pair<i64, int>{2, 3});

    f = factor(1);
    CHECK(f.sign == 1);
    CHECK(f.factors.empty());

    CHECK_THROWS_AS(factor(0), std::domain_error);
}

TEST_CASE("factor round-trips on every |n| <= 10^6") {
    for (i64 n = 1; n <= 1000000; ++n) {
        Factorization f = factor(n);
        REQUIRE(reconstruct(f) == n);
        Factorization g = factor(-n);
        REQUIRE(reconstruct(g) == -n);
    }
}

TEST_CASE("factor round-trips on random 60-bit integers") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<i64> dist(1, (i64(1) << 60) - 1);
    for (int i = 0; i < 100; ++i) {
        i64 n = dist(rng);
        Factorization f = factor(n);
        REQUIRE(reconstruct(f) == n);
        for (size_t j = 0; j < f.factors.size(); ++j) {
            CHECK(is_prime(f.factors[j].first));
            CHECK(f.factors[j].second >= 1);
            if (j > 0) CHECK(f.factors[j].first > f.factors[j - 1].first);
        }
    }
}

TEST_CASE("legendre examples and exhaustive table") {
    CHECK(legendre(1, 5) == 1);
    CHECK(legendre(-4, 3) == -1);
    CHECK(legendre(5, 3) == -1);
    CHECK_THROWS_AS(legendre(1, 4), std::domain_error);
    CHECK_THROWS_AS(legendre(1, 2), std::domain_error);

    for (i64 p = 3; p < 100; p += 2) {
        if (!is_prime(p)) continue;
        std::vector<bool> sq(p, false);
        for (i64 x = 0; x < p; ++x) sq[x * x % p] = true;
        for (i64 a = -2 * p; a < 2 * p; ++a) {
            i64 r = mod_floor(a, p);
            int expect = r == 0 ? 0 : (sq[r] ? 1 : -1);
            CHECK(legendre(a, p) == expect);
        }
    }
}

TEST_CASE("discriminant domain") {
    CHECK_NOTHROW(Discriminant(0));
    CHECK_NOTHROW(Discriminant(1));
    CHECK_NOTHROW(Discriminant(-4));
    CHECK_NOTHROW(Discriminant(-3));
    CHECK_THROWS_AS(Discriminant(2), std::domain_error);
    CHECK_THROWS_AS(Discriminant(-2), std::domain_error);
    CHECK_THROWS_AS(Discriminant(7), std::domain_error);
}

TEST_CASE("kronecker_chi examples") {
    CHECK(kronecker_chi(Discriminant(17), 2) == 1);  // 17 = 1 mod 8
    CHECK(kronecker_chi(Discriminant(12), 3) == 0);  // 3 | 12
    CHECK(kronecker_chi(Discriminant(-4), 9) == 1);  // chi(3)^2
    CHECK(kronecker_chi(Discriminant(5), 1) == 1);
    CHECK(kronecker_chi(Discriminant(13), 2) == -1); // 13 = 5 mod 8
    CHECK_THROWS_AS(kronecker_chi(Discriminant(5), 0), std::domain_error);
    CHECK_THROWS_AS(kronecker_chi(Discriminant(5), -3), std::domain_error);
}

TEST_CASE("kronecker_chi is completely multiplicative") {
    for (i64 dv : {-20, -4, -3, 0, 5, 8, 12, 17, 45}) {
        Discriminant d(dv);
        for (i64 m = 1; m <= 200; ++m)
            for (i64 n = 1; n <= 200; ++n)
                REQUIRE(kronecker_chi(d, m * n) ==
                        kronecker_chi(d, m) * kronecker_chi(d, n));
    }
}

TEST_CASE("sqrt_roots_count_mod_pk examples") {
    CHECK(sqrt_roots_count_mod_pk(1, 3, 1) == 2);
    CHECK(sqrt_roots_count_mod_pk(0, 3, 2) == 3);
    CHECK(sqrt_roots_count_mod_pk(17, 2, 3) == 4);
    CHECK(sqrt_roots_count_mod_pk(5, 7, 0) == 1);
    CHECK_THROWS_AS(sqrt_roots_count_mod_pk(1, 6, 2), std::domain_error);
}

TEST_CASE("sqrt_roots_count_mod_pk against brute force") {
    // prime powers up to 512 here; the acceptance suite sweeps to 4096
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23}) {
        for (int k = 0;; ++k) {
            i64 pk = 1;
            bool fits = true;
            for (int i = 0; i < k; ++i) {
                pk *= p;
                if (pk > 512) { fits = false; break; }
            }
            if (!fits) break;
            for (i64 d = -200; d <= 200; ++d) {
                i64 brute = 0;
                for (i64 x = 0; x < pk; ++x)
                    if (mod_floor(x * x - d, pk) == 0) ++brute;
                REQUIRE(sqrt_roots_count_mod_pk(d, p, k) == brute);
            }
        }
    }
}

TEST_CASE("roots_count_mod examples") {
    CHECK(roots_count_mod(1, 12) == 4);
    CHECK(roots_count_mod(4, 16) == 4); // x in {2,6,10,14}
    CHECK(roots_count_mod(5, 1) == 1);
    CHECK_THROWS_AS(roots_count_mod(1, 0), std::domain_error);
    CHECK_THROWS_AS(roots_count_mod(1, -5), std::domain_error);
}

TEST_CASE("roots_count_mod against brute force") {
    for (i64 M = 1; M <= 300; ++M)
        for (i64 d = -60; d <= 60; ++d) {
            i64 brute = 0;
            for (i64 x = 0; x < M; ++x)
                if (mod_floor(x * x - d, M) == 0) ++brute;
            REQUIRE(roots_count_mod(d, M) == brute);
        }
}

TEST_CASE("roots_count_mod is multiplicative on coprime moduli") {
    for (i64 m1 = 1; m1 <= 3000; ++m1)
        for (i64 m2 = m1; m1 * m2 <= 3000; ++m2) {
            if (gcd(m1, m2) != 1) continue;
            for (i64 d : {-67, -4, 0, 1, 17, 44})
                REQUIRE(roots_count_mod(d, m1 * m2) ==
                        roots_count_mod(d, m1) * roots_count_mod(d, m2));
        }
}

TEST_CASE("checked arithmetic overflows loudly") {
    CHECK_THROWS_AS(checked_mul(INT64_MAX, 2), std::overflow_error);
    CHECK_THROWS_AS(checked_add(INT64_MAX, 1), std::overflow_error);
    CHECK_THROWS_AS(checked_pow(10, 40), std::overflow_error);
    CHECK(checked_pow(3, 4) == 81);
    CHECK(checked_pow(2, 62) == (i64(1) << 62));
}

TEST_CASE("isqrt exact") {
    for (i64 n = 0; n <= 100000; ++n) {
        i64 r = isqrt(n);
        CHECK(r * r <= n);
        CHECK((r + 1) * (r + 1) > n);
    }
    CHECK(isqrt_u128((u128(1) << 100)) == (u64(1) << 50));
    u128 big = (u128(INT64_MAX) * INT64_MAX);
    CHECK(isqrt_u128(big) == static_cast<u64>(INT64_MAX));
    CHECK(isqrt(INT64_MAX) == 3037000499LL);
    CHECK(isqrt(3037000499LL * 3037000499LL) == 3037000499LL);
}
