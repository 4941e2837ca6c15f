// The arithmetic core: the divisor sum K(d,m), the prime-power counts
// B(d,n), the closed-form orbit number C(d,m), the root-counting route to
// C(d,m), and the boundedness / coincidence predicates.
//
// C(d,m) counts SL(2,Z)-orbit classes of representations of m by the forms
// of discriminant d: C(d,m) = sum over a representative system S of
// |SO(f)\f^-1(m)|. It is multiplicative in m, and on prime powers p^n it is
// given by explicit closed formulas driven by the p-adic valuation of d.

#ifndef ORBITNUM_ORBITNUM_HPP
#define ORBITNUM_ORBITNUM_HPP

#include "orbitnum/arith.hpp"

namespace orbitnum {

using arith::Discriminant;
using arith::i64;

enum class Route { closed, lemma, forms };

struct OrbitNumberResult {
    Discriminant d;
    i64 m;
    i64 value;
    Route route;
};

// Prime-power shape of d at p: d = p^delta * cofactor with p not dividing
// cofactor. Defined only for d != 0. For p = 2, delta is the plain 2-adic
// valuation; the closed formulas derive their own parameterization from it.
struct PrimePowerCase {
    i64 p;
    int delta;
    i64 cofactor;
    bool padic_square;
};

PrimePowerCase prime_power_case(Discriminant d, i64 p);

// |T| = |{t in Z/2|m| : t^2 = d (mod 4|m|)}| = roots_count_mod(d, 4|m|)/2.
// m != 0.
i64 p_primitive(Discriminant d, i64 m);

// K(d,m) = sum of the Kronecker symbol (d/mu) over positive divisors mu of
// |m|, assembled as a product of geometric sums per prime. m != 0.
i64 k_sum(Discriminant d, i64 m);

// B(d,n) = C(d,p^n) in closed form. p prime, n >= 0. For p not dividing d
// this is the Kronecker divisor sum; for p | d it dispatches on the
// valuation cases.
i64 b_closed(Discriminant d, i64 p, int n);

// C(d,m) as the product of b_closed over the prime powers of |m|. m != 0.
i64 c_closed(Discriminant d, i64 m);

// C(d,m) as the square-divisor sum of p_primitive: sum over e^2 | |m| of
// |T(d, |m|/e^2)|. Agrees with c_closed everywhere. m != 0.
i64 c_via_lemma(Discriminant d, i64 m);

// true iff C(d,.) coincides with K(d,.): d has no odd square factor and
// d mod 16 is not in {0, 4}.
bool corollary1_predicate(Discriminant d);

// d is the square of a p-adic integer. d = 0 returns true.
bool is_padic_square(Discriminant d, i64 p);

// n -> C(d,p^n) is bounded iff d is not a p-adic square.
bool is_bounded(Discriminant d, i64 p);

} // namespace orbitnum

#endif
