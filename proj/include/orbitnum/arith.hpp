// Exact integer arithmetic: gcd, primality, factorization, quadratic
// residue symbols, and counting square roots modulo prime powers and
// composite moduli.
//
// All values are signed 64-bit with 128-bit intermediates; operations that
// could leave the 64-bit range use checked arithmetic and throw
// std::overflow_error. Inputs with |d|, |m| <= 2^31 are always safe.

#ifndef ORBITNUM_ARITH_HPP
#define ORBITNUM_ARITH_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace orbitnum::arith {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// ---- checked helpers -------------------------------------------------

i64 checked_add(i64 a, i64 b);
i64 checked_sub(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);
i64 checked_pow(i64 base, int exp);

// floor(sqrt(n)), exact. n >= 0.
i64 isqrt(i64 n);
u64 isqrt_u128(u128 n);
bool is_square(i64 n);

// least nonnegative residue of a mod m, m > 0
inline i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

// ---- gcd -------------------------------------------------------------

struct ExtGcd {
    i64 g; // gcd(|a|,|b|) >= 0
    i64 x;
    i64 y; // a*x + b*y = g
};

ExtGcd ext_gcd(i64 a, i64 b);
i64 gcd(i64 a, i64 b);

// ---- primality and factorization --------------------------------------

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(i64 n);

struct Factorization {
    int sign = 1;                              // +1 or -1
    std::vector<std::pair<i64, int>> factors;  // (p, e), p strictly increasing
};

// n != 0. Trial division to 10^6, then Brent-cycle Pollard rho.
Factorization factor(i64 n);
i64 reconstruct(const Factorization& f);

// p-adic valuation of n != 0
int valuation(i64 n, i64 p);

// ---- quadratic symbols -------------------------------------------------

// Legendre symbol (a/p) for an odd prime p, via Euler's criterion.
int legendre(i64 a, i64 p);

// An integer congruent to 0 or 1 mod 4.
struct Discriminant {
    i64 value;
    explicit Discriminant(i64 d);
};

// Kronecker symbol (d/n) for n >= 1: the completely multiplicative map with
// chi(p) = 0 for p | d, chi(p) = (d/p) for odd p not dividing d, and
// chi(2) = +1 / -1 for d = 1 / 5 mod 8.
int kronecker_chi(Discriminant d, i64 n);

// ---- square roots modulo prime powers ----------------------------------

// #{x in Z/p^k : x^2 = d (mod p^k)}. Hensel lifting collapses to a case
// analysis on v = v_p(d): away from the stuck roots the count mod p (odd p)
// or mod 8 (p = 2) lifts unchanged; v odd kills all roots; v even scales the
// count by p^(v/2).
i64 sqrt_roots_count_mod_pk(i64 d, i64 p, int k);

// #{x in Z/M : x^2 = d (mod M)}, multiplicative over the prime powers of M.
i64 roots_count_mod(i64 d, i64 M);

// (a*b) mod m and a^e mod m on u64, overflow-free
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);

} // namespace orbitnum::arith

#endif
