#include "orbitnum/arith.hpp"

#include <algorithm>
#include <stdexcept>

namespace orbitnum::arith {

// ---- checked helpers -------------------------------------------------

i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in addition");
    return r;
}

i64 checked_sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in subtraction");
    return r;
}

i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in multiplication");
    return r;
}

i64 checked_pow(i64 base, int exp) {
    if (exp < 0) throw std::domain_error("checked_pow: negative exponent");
    i64 r = 1;
    while (exp > 0) {
        if (exp & 1) r = checked_mul(r, base);
        exp >>= 1;
        if (exp > 0) base = checked_mul(base, base);
    }
    return r;
}

i64 isqrt(i64 n) {
    if (n < 0) throw std::domain_error("isqrt: negative argument");
    return static_cast<i64>(isqrt_u128(static_cast<u128>(n)));
}

u64 isqrt_u128(u128 n) {
    if (n == 0) return 0;
    // bitwise digit-by-digit square root, exact for the full 128-bit range
    u128 rem = 0, root = 0;
    int shift = 126;
    while (shift > 0 && (n >> shift) == 0) shift -= 2;
    for (; shift >= 0; shift -= 2) {
        rem = (rem << 2) | ((n >> shift) & 3);
        root <<= 1;
        u128 cand = (root << 1) | 1;
        if (cand <= rem) {
            rem -= cand;
            root |= 1;
        }
    }
    return static_cast<u64>(root);
}

bool is_square(i64 n) {
    if (n < 0) return false;
    i64 r = isqrt(n);
    return r * r == n;
}

// ---- gcd -------------------------------------------------------------

ExtGcd ext_gcd(i64 a, i64 b) {
    if (a == 0 && b == 0) return {0, 0, 0};
    i64 old_r = a, r = b;
    i64 old_s = 1, s = 0;
    i64 old_t = 0, t = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 tmp;
        tmp = old_r - q * r; old_r = r; r = tmp;
        tmp = old_s - q * s; old_s = s; s = tmp;
        tmp = old_t - q * t; old_t = t; t = tmp;
    }
    if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
    return {old_r, old_s, old_t};
}

i64 gcd(i64 a, i64 b) {
    while (b != 0) { i64 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
}

// ---- primality --------------------------------------------------------

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<u128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

namespace {

bool miller_rabin(u64 n, u64 a) {
    a %= n;
    if (a == 0) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// witness ladder sufficient for the stated ranges (Jaeschke et al.)
bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        if (n % p == 0) return n == p;
    }
    if (n < 17 * 17) return true;
    auto try_all = [n](std::initializer_list<u64> ws) {
        for (u64 a : ws)
            if (!miller_rabin(n, a)) return false;
        return true;
    };
    if (n < 1373653ull) return try_all({2, 3});
    if (n < 9080191ull) return try_all({31, 73});
    if (n < 4759123141ull) return try_all({2, 7, 61});
    if (n < 1122004669633ull) return try_all({2, 13, 23, 1662803});
    if (n < 3474749660383ull) return try_all({2, 3, 5, 7, 11, 13});
    if (n < 341550071728321ull) return try_all({2, 3, 5, 7, 11, 13, 17});
    return try_all({2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37});
}

} // namespace

bool is_prime(i64 n) {
    if (n < 2) return false;
    return is_prime_u64(static_cast<u64>(n));
}

// ---- factorization ------------------------------------------------------

namespace {

constexpr i64 kTrialBound = 1000000;

// Brent's variant of Pollard rho; n odd composite, no factor <= 10^6.
u64 pollard_brent(u64 n) {
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, q = 1, g = 1, ys = 0;
        u64 r = 1, m = 128;
        auto f = [n, c](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (g == 1) {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            while (k < r && g == 1) {
                ys = y;
                u64 lim = std::min(m, r - k);
                for (u64 i = 0; i < lim; ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::__gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = std::__gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
        // cycle collapsed; retry with the next increment
    }
}

void factor_into(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) { out.push_back(n); return; }
    u64 d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

Factorization factor(i64 n) {
    if (n == 0) throw std::domain_error("factor: argument must be nonzero");
    Factorization out;
    out.sign = n < 0 ? -1 : 1;
    u64 m = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
    for (i64 p : {2, 3, 5}) {
        int e = 0;
        while (m % static_cast<u64>(p) == 0) { m /= static_cast<u64>(p); ++e; }
        if (e > 0) out.factors.emplace_back(p, e);
    }
    for (i64 p = 7; p <= kTrialBound && static_cast<u128>(p) * p <= m; p += 2) {
        if (m % static_cast<u64>(p) == 0) {
            int e = 0;
            while (m % static_cast<u64>(p) == 0) { m /= static_cast<u64>(p); ++e; }
            out.factors.emplace_back(p, e);
        }
    }
    if (m > 1) {
        std::vector<u64> rest;
        factor_into(m, rest);
        std::sort(rest.begin(), rest.end());
        for (size_t i = 0; i < rest.size();) {
            size_t j = i;
            while (j < rest.size() && rest[j] == rest[i]) ++j;
            out.factors.emplace_back(static_cast<i64>(rest[i]),
                                     static_cast<int>(j - i));
            i = j;
        }
    }
    return out;
}

i64 reconstruct(const Factorization& f) {
    i64 n = f.sign;
    for (auto [p, e] : f.factors) n = checked_mul(n, checked_pow(p, e));
    return n;
}

int valuation(i64 n, i64 p) {
    if (n == 0) throw std::domain_error("valuation: n must be nonzero");
    int v = 0;
    while (n % p == 0) { n /= p; ++v; }
    return v;
}

// ---- quadratic symbols ---------------------------------------------------

int legendre(i64 a, i64 p) {
    if (p == 2 || !is_prime(p))
        throw std::domain_error("legendre: p must be an odd prime");
    u64 r = powmod(static_cast<u64>(mod_floor(a, p)),
                   static_cast<u64>((p - 1) / 2), static_cast<u64>(p));
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

Discriminant::Discriminant(i64 d) : value(d) {
    i64 r = mod_floor(d, 4);
    if (r != 0 && r != 1)
        throw std::domain_error("d must be 0 or 1 mod 4");
}

namespace {

// chi at a prime, d = 0 or 1 mod 4
int chi_at_prime(i64 d, i64 p) {
    if (d % p == 0) return 0;
    if (p == 2) {
        // reachable only for odd d, so d = 1 or 5 mod 8
        return mod_floor(d, 8) == 1 ? 1 : -1;
    }
    return legendre(d, p);
}

} // namespace

int kronecker_chi(Discriminant d, i64 n) {
    if (n <= 0) throw std::domain_error("kronecker_chi: n must be positive");
    if (n == 1) return 1;
    int chi = 1;
    for (auto [p, e] : factor(n).factors) {
        int c = chi_at_prime(d.value, p);
        if (c == 0) return 0;
        if (c == -1 && (e & 1)) chi = -chi;
    }
    return chi;
}

// ---- square roots modulo prime powers -------------------------------------

i64 sqrt_roots_count_mod_pk(i64 d, i64 p, int k) {
    if (!is_prime(p))
        throw std::domain_error("sqrt_roots_count_mod_pk: p must be prime");
    if (k < 0) throw std::domain_error("sqrt_roots_count_mod_pk: k must be >= 0");
    if (k == 0) return 1;
    i64 pk = checked_pow(p, k);
    if (mod_floor(d, pk) == 0) return checked_pow(p, k / 2); // x = 0 mod p^ceil(k/2)
    int v = 0;
    i64 u = d;
    while (u % p == 0) { u /= p; ++v; } // v < k since d != 0 mod p^k
    if (v & 1) return 0;
    i64 scale = checked_pow(p, v / 2);
    if (p == 2) {
        int m = k - v;
        i64 u8 = mod_floor(u, 8);
        if (m == 1) return scale;
        if (m == 2) return u8 % 4 == 1 ? 2 * scale : 0;
        return u8 == 1 ? 4 * scale : 0; // 2-adic squares are determined mod 8
    }
    return legendre(u, p) == 1 ? 2 * scale : 0;
}

i64 roots_count_mod(i64 d, i64 M) {
    if (M <= 0) throw std::domain_error("roots_count_mod: modulus must be positive");
    if (M == 1) return 1;
    i64 count = 1;
    for (auto [p, e] : factor(M).factors)
        count = checked_mul(count, sqrt_roots_count_mod_pk(d, p, e));
    return count;
}

} // namespace orbitnum::arith
