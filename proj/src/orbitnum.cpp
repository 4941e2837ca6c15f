#include "orbitnum/orbitnum.hpp"

#include <cstdlib>
#include <stdexcept>

namespace orbitnum {

using arith::checked_mul;
using arith::checked_pow;
using arith::is_prime;
using arith::legendre;
using arith::mod_floor;

namespace {

void require_nonzero_m(i64 m) {
    if (m == 0) throw std::domain_error("m must be nonzero");
}

void require_prime(i64 p) {
    if (!is_prime(p)) throw std::domain_error("p must be prime");
}

// B(0,n) = (p^k - 1)/(p - 1) with k = floor(n/2) + 1
i64 b_zero(i64 p, int n) {
    int k = n / 2 + 1;
    return (checked_pow(p, k) - 1) / (p - 1);
}

} // namespace

PrimePowerCase prime_power_case(Discriminant d, i64 p) {
    require_prime(p);
    if (d.value == 0)
        throw std::domain_error("prime_power_case: d must be nonzero");
    int v = arith::valuation(d.value, p);
    i64 cof = d.value / checked_pow(p, v);
    bool sq;
    if (p == 2)
        sq = (v % 2 == 0) && mod_floor(cof, 8) == 1;
    else
        sq = (v % 2 == 0) && legendre(cof, p) == 1;
    return {p, v, cof, sq};
}

i64 p_primitive(Discriminant d, i64 m) {
    require_nonzero_m(m);
    i64 am = std::llabs(m);
    // roots of x^2 = d mod 4|m| pair up as x <-> x + 2|m|
    return arith::roots_count_mod(d.value, checked_mul(4, am)) / 2;
}

i64 k_sum(Discriminant d, i64 m) {
    require_nonzero_m(m);
    i64 am = std::llabs(m);
    if (am == 1) return 1;
    i64 total = 1;
    for (auto [p, e] : arith::factor(am).factors) {
        int chi = kronecker_chi(d, p);
        i64 term;
        if (chi == 0) term = 1;                    // only mu = 1 survives
        else if (chi == 1) term = e + 1;
        else term = (e % 2 == 0) ? 1 : 0;          // alternating sum
        total = checked_mul(total, term);
    }
    return total;
}

i64 b_closed(Discriminant d, i64 p, int n) {
    require_prime(p);
    if (n < 0) throw std::domain_error("b_closed: n must be >= 0");
    if (d.value == 0) return b_zero(p, n);
    if (d.value % p != 0) {
        // coprime case: C(d,p^n) = K(d,p^n) as a geometric sum
        int chi = (p == 2) ? (mod_floor(d.value, 8) == 1 ? 1 : -1)
                           : legendre(d.value, p);
        return chi == 1 ? n + 1 : (n % 2 == 0 ? 1 : 0);
    }
    if (n <= 1) return 1;
    PrimePowerCase pc = prime_power_case(d, p);
    if (p != 2) {
        int delta = pc.delta;
        if (n <= delta) return b_zero(p, n);
        int k = (n - delta + 1) / 2; // ceil((n - delta)/2)
        i64 base = b_zero(p, n - 2 * k);
        if (!pc.padic_square) return base;
        return base + checked_mul(2 * k, checked_pow(p, delta / 2));
    }
    // p = 2; v >= 2 since even d is 0 mod 4
    int v = pc.delta;
    i64 cof8 = mod_floor(pc.cofactor, 8);
    if (v % 2 == 1) {
        int delta = (v - 1) / 2; // d = 2^(2 delta + 1) D
        return n <= 2 * delta - 1 ? b_zero(2, n) : checked_pow(2, delta) - 1;
    }
    int delta = v / 2; // d = 2^(2 delta) D
    if (cof8 == 3 || cof8 == 7) {
        // D = 3 mod 4: the two clauses overlap at n = 2 delta - 2 and agree
        // there since B(0, 2 delta - 2) = 2^delta - 1
        return n <= 2 * delta - 3 ? b_zero(2, n) : checked_pow(2, delta) - 1;
    }
    if (n <= 2 * delta - 2) return b_zero(2, n);
    if (cof8 == 5)
        return n % 2 == 1 ? checked_pow(2, delta) - 1
                          : checked_pow(2, delta + 1) - 1;
    // D = 1 mod 8: d is a 2-adic square
    if (n % 2 == 1) {
        int k = (n - (2 * delta - 1)) / 2;
        return checked_mul(checked_pow(2, delta), 2 * k + 1) - 1;
    }
    int k = (n - 2 * delta) / 2;
    return checked_mul(checked_pow(2, delta + 1), k + 1) - 1;
}

i64 c_closed(Discriminant d, i64 m) {
    require_nonzero_m(m);
    i64 am = std::llabs(m);
    if (am == 1) return 1;
    i64 total = 1;
    for (auto [p, e] : arith::factor(am).factors)
        total = checked_mul(total, b_closed(d, p, e));
    return total;
}

i64 c_via_lemma(Discriminant d, i64 m) {
    require_nonzero_m(m);
    i64 am = std::llabs(m);
    i64 total = 0;
    for (i64 e = 1; e * e <= am; ++e)
        if (am % (e * e) == 0) total += p_primitive(d, am / (e * e));
    return total;
}

bool corollary1_predicate(Discriminant d) {
    i64 r16 = mod_floor(d.value, 16);
    if (r16 == 0 || r16 == 4) return false; // the even squares mod 16
    for (auto [p, e] : arith::factor(std::llabs(d.value)).factors)
        if (p != 2 && e >= 2) return false;
    return true;
}

bool is_padic_square(Discriminant d, i64 p) {
    require_prime(p);
    if (d.value == 0) return true;
    return prime_power_case(d, p).padic_square;
}

bool is_bounded(Discriminant d, i64 p) { return !is_padic_square(d, p); }

} // namespace orbitnum
