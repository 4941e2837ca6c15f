#include "orbitnum/forms.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <set>
#include <stdexcept>

namespace orbitnum::forms {

using arith::checked_add;
using arith::checked_mul;
using arith::ext_gcd;
using arith::gcd;
using arith::i128;
using arith::isqrt;
using arith::mod_floor;
using arith::u128;

namespace {

i64 narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error("integer overflow in form arithmetic");
    return static_cast<i64>(v);
}

i64 floor_div(i64 a, i64 b) { // b > 0
    i64 q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

void require_nonzero_m(i64 m) {
    if (m == 0) throw std::domain_error("m must be nonzero");
}

// (v mod m) in [0, m), computed in 128 bits
i128 mod_floor_128(i128 v, i128 m) {
    i128 r = v % m;
    return r < 0 ? r + m : r;
}

} // namespace

i64 QuadraticForm::discriminant() const {
    return narrow(static_cast<i128>(b) * b - 4 * static_cast<i128>(a) * c);
}

std::ostream& operator<<(std::ostream& os, const QuadraticForm& f) {
    return os << "[" << f.a << "," << f.b << "," << f.c << "]";
}

UnimodularMatrix::UnimodularMatrix(i64 a11, i64 a12, i64 a21, i64 a22)
    : g11(a11), g12(a12), g21(a21), g22(a22) {
    i128 det = static_cast<i128>(g11) * g22 - static_cast<i128>(g12) * g21;
    if (det != 1) throw std::domain_error("matrix is not unimodular");
}

UnimodularMatrix UnimodularMatrix::operator*(const UnimodularMatrix& o) const {
    return {narrow(static_cast<i128>(g11) * o.g11 + static_cast<i128>(g12) * o.g21),
            narrow(static_cast<i128>(g11) * o.g12 + static_cast<i128>(g12) * o.g22),
            narrow(static_cast<i128>(g21) * o.g11 + static_cast<i128>(g22) * o.g21),
            narrow(static_cast<i128>(g21) * o.g12 + static_cast<i128>(g22) * o.g22)};
}

Vec2 UnimodularMatrix::apply(Vec2 z) const {
    return {narrow(static_cast<i128>(g11) * z.x + static_cast<i128>(g12) * z.y),
            narrow(static_cast<i128>(g21) * z.x + static_cast<i128>(g22) * z.y)};
}

std::ostream& operator<<(std::ostream& os, const UnimodularMatrix& g) {
    return os << "[[" << g.g11 << "," << g.g12 << "],[" << g.g21 << "," << g.g22
              << "]]";
}

i64 eval_form(const QuadraticForm& f, Vec2 z) {
    i128 v = static_cast<i128>(f.a) * z.x * z.x +
             static_cast<i128>(f.b) * z.x * z.y +
             static_cast<i128>(f.c) * z.y * z.y;
    return narrow(v);
}

QuadraticForm act(const QuadraticForm& f, const UnimodularMatrix& g) {
    // substitute (X,Y) -> g.(X,Y); columns of g carry (1,0) and (0,1)
    i128 a2 = static_cast<i128>(f.a) * g.g11 * g.g11 +
              static_cast<i128>(f.b) * g.g11 * g.g21 +
              static_cast<i128>(f.c) * g.g21 * g.g21;
    i128 c2 = static_cast<i128>(f.a) * g.g12 * g.g12 +
              static_cast<i128>(f.b) * g.g12 * g.g22 +
              static_cast<i128>(f.c) * g.g22 * g.g22;
    i128 b2 = 2 * static_cast<i128>(f.a) * g.g11 * g.g12 +
              static_cast<i128>(f.b) *
                  (static_cast<i128>(g.g11) * g.g22 + static_cast<i128>(g.g12) * g.g21) +
              2 * static_cast<i128>(f.c) * g.g21 * g.g22;
    return {narrow(a2), narrow(b2), narrow(c2)};
}

UnimodularMatrix complete_unimodular(Vec2 z) {
    if (gcd(z.x, z.y) != 1)
        throw std::domain_error("complete_unimodular: vector is not primitive");
    auto [g, s, t] = ext_gcd(z.x, z.y); // z.x * s + z.y * t = 1
    return {z.x, -t, z.y, s};
}

i64 gauss_phi(const QuadraticForm& f, Vec2 z, i64 m) {
    require_nonzero_m(m);
    if (eval_form(f, z) != m)
        throw std::domain_error("gauss_phi: f(z) != m");
    UnimodularMatrix g = complete_unimodular(z);
    QuadraticForm fg = act(f, g); // [m, n, l]
    return mod_floor(fg.b, 2 * std::llabs(m));
}

// ---- reduction, definite ---------------------------------------------

namespace {

const UnimodularMatrix kSwap{0, -1, 1, 0}; // (a,b,c) -> (c,-b,a)

UnimodularMatrix translation(i64 k) { return {1, k, 0, 1}; } // b -> b + 2ak

// positive definite input
ReducedWithTransform reduce_positive_definite(QuadraticForm f) {
    UnimodularMatrix g;
    for (;;) {
        if (f.b > f.a || f.b <= -f.a) {
            i64 k = floor_div(f.a - f.b, 2 * f.a); // lands b in (-a, a]
            UnimodularMatrix t = translation(k);
            f = act(f, t);
            g = g * t;
        }
        if (f.a > f.c) {
            f = act(f, kSwap);
            g = g * kSwap;
            continue;
        }
        break;
    }
    if (f.a == f.c && f.b < 0) { // boundary tie-break b >= 0
        f = act(f, kSwap);
        g = g * kSwap;
    }
    return {f, g};
}

// ---- reduction, indefinite ---------------------------------------------

bool is_reduced_indefinite(const QuadraticForm& f, i64 s) {
    // 0 < b < sqrt(d) and sqrt(d) - b < 2|a| < sqrt(d) + b, exact in integers
    // since d is not a square and s = isqrt(d)
    i64 a2 = 2 * std::llabs(f.a);
    return f.b >= 1 && f.b <= s && a2 + f.b >= s + 1 && a2 - f.b <= s;
}

// the unique b' = -b (mod 2|c|) in the window (sqrt(d) - 2|c|, sqrt(d))
i64 cycle_residue(i64 b, i64 c, i64 s) {
    i64 ac = std::llabs(c);
    return s - mod_floor(s + b, 2 * ac);
}

// one reduction/cycle step (a,b,c) -> (c, b', c') with transform
std::pair<QuadraticForm, UnimodularMatrix> rho_step(const QuadraticForm& f, i64 s) {
    i64 ac = std::llabs(f.c);
    i64 bp;
    if (ac > s) { // normalize: |b'| minimal
        i64 r = mod_floor(-f.b, 2 * ac);
        bp = r > ac ? r - 2 * ac : r;
    } else {
        bp = cycle_residue(f.b, f.c, s);
    }
    i64 step = (f.b + bp) / (2 * f.c); // exact by construction
    UnimodularMatrix g{0, -1, 1, step};
    return {act(f, g), g};
}

ReducedWithTransform reduce_indefinite(QuadraticForm f, i64 d) {
    i64 s = isqrt(d);
    UnimodularMatrix g;
    for (int guard = 0; guard < 100000; ++guard) {
        if (is_reduced_indefinite(f, s)) return {f, g};
        auto [next, step] = rho_step(f, s);
        f = next;
        g = g * step;
    }
    throw std::logic_error("indefinite reduction did not terminate");
}

} // namespace

ReducedWithTransform reduce_with_transform(const QuadraticForm& f) {
    i64 d = f.discriminant();
    if (d < 0) {
        if (f.a > 0) return reduce_positive_definite(f);
        ReducedWithTransform r = reduce_positive_definite(f.negate());
        return {r.form.negate(), r.g};
    }
    if (d == 0 || arith::is_square(d))
        throw std::domain_error("square discriminant not supported for reduction");
    return reduce_indefinite(f, d);
}

std::vector<QuadraticForm> reduction_cycle(const QuadraticForm& reduced) {
    i64 d = reduced.discriminant();
    if (d <= 0 || arith::is_square(d))
        throw std::domain_error("reduction_cycle: need positive nonsquare discriminant");
    i64 s = isqrt(d);
    if (!is_reduced_indefinite(reduced, s))
        throw std::domain_error("reduction_cycle: form is not reduced");
    std::vector<QuadraticForm> cycle;
    QuadraticForm cur = reduced;
    do {
        cycle.push_back(cur);
        cur = rho_step(cur, s).first;
        if (cycle.size() > 5000000)
            throw std::logic_error("reduction cycle did not close");
    } while (cur != reduced);
    return cycle;
}

// ---- class representatives ----------------------------------------------

std::vector<QuadraticForm> class_reps_definite(Discriminant disc) {
    i64 d = disc.value;
    if (d >= 0) throw std::domain_error("class_reps_definite: d must be negative");
    std::vector<QuadraticForm> reps;
    // |b| <= a <= c with b = d mod 2 forces 3a^2 <= |d|
    for (i64 a = 1; 3 * a * a <= -d; ++a) {
        for (i64 b = -a; b <= a; ++b) {
            if (mod_floor(b - d, 2) != 0) continue;
            i128 num = static_cast<i128>(b) * b - d;
            if (num % (4 * a) != 0) continue;
            i64 c = narrow(num / (4 * a));
            if (c < a) continue;
            if ((b < 0) && (a == c || b == -a)) continue; // tie-break b >= 0
            reps.push_back({a, b, c});
        }
    }
    size_t positives = reps.size();
    for (size_t i = 0; i < positives; ++i) reps.push_back(reps[i].negate());
    return reps;
}

std::vector<QuadraticForm> class_reps_indefinite(Discriminant disc) {
    i64 d = disc.value;
    if (d <= 0 || arith::is_square(d))
        throw std::domain_error(
            "class_reps_indefinite: d must be positive and nonsquare");
    i64 s = isqrt(d);
    // all reduced forms, in (b, a) order
    std::vector<QuadraticForm> reduced;
    for (i64 b = 1; b <= s; ++b) {
        if (mod_floor(b - d, 2) != 0) continue;
        i64 ac4 = narrow((static_cast<i128>(b) * b - d)); // negative
        if (ac4 % 4 != 0) continue;
        i64 ac = ac4 / 4;
        for (i64 a2 = s + 1 - b; a2 <= s + b; ++a2) { // a2 = 2|a|
            if (a2 <= 0 || a2 % 2 != 0) continue;
            i64 aa = a2 / 2;
            if (ac % aa != 0) continue;
            for (i64 a : {-aa, aa}) reduced.push_back({a, b, ac / a});
        }
    }
    std::sort(reduced.begin(), reduced.end(),
              [](const QuadraticForm& x, const QuadraticForm& y) {
                  return std::tie(x.b, x.a, x.c) < std::tie(y.b, y.a, y.c);
              });
    std::set<QuadraticForm> visited;
    std::vector<QuadraticForm> reps;
    auto key = [](const QuadraticForm& f) {
        return std::make_tuple(std::llabs(f.a), f.a < 0, f.b, f.c);
    };
    for (const auto& start : reduced) {
        if (visited.count(start)) continue;
        std::vector<QuadraticForm> cycle = reduction_cycle(start);
        QuadraticForm best = cycle.front();
        for (const auto& f : cycle) {
            visited.insert(f);
            if (key(f) < key(best)) best = f;
        }
        // translate b into (-|a|, |a|] for a tidy representative
        i64 aa = std::llabs(best.a);
        i64 r = mod_floor(best.b, 2 * aa);
        i64 bp = r > aa ? r - 2 * aa : r;
        i64 k = (bp - best.b) / (2 * best.a);
        reps.push_back(act(best, translation(k)));
    }
    return reps;
}

// ---- automorphisms -------------------------------------------------------

std::vector<UnimodularMatrix> proper_automorphisms_definite(const QuadraticForm& f) {
    i64 d = f.discriminant();
    if (d >= 0)
        throw std::domain_error("proper_automorphisms_definite: form is not definite");
    std::vector<Vec2> first = representations(f, f.a, 0);
    std::vector<Vec2> second = representations(f, f.c, 0);
    std::vector<UnimodularMatrix> auts;
    for (Vec2 col1 : first) {
        for (Vec2 col2 : second) {
            i128 det = static_cast<i128>(col1.x) * col2.y -
                       static_cast<i128>(col2.x) * col1.y;
            if (det != 1) continue;
            UnimodularMatrix g{col1.x, col2.x, col1.y, col2.y};
            if (act(f, g) == f) auts.push_back(g);
        }
    }
    std::sort(auts.begin(), auts.end());
    return auts;
}

std::pair<i64, i64> pell4_minimal(i64 d) {
    if (d <= 0 || arith::is_square(d) || mod_floor(d, 4) > 1)
        throw std::domain_error(
            "pell4_minimal: d must be a positive nonsquare discriminant");
    i64 s = isqrt(d);
    i64 b0 = (mod_floor(s - d, 2) == 0) ? s : s - 1; // b0 = d mod 2, maximal
    QuadraticForm principal{1, b0, narrow((static_cast<i128>(b0) * b0 - d) / 4)};
    // one full trip around the cycle is the fundamental automorph
    UnimodularMatrix M;
    QuadraticForm cur = principal;
    do {
        auto [next, step] = rho_step(cur, s);
        M = M * step;
        cur = next;
        if (std::llabs(M.g11) > (INT64_MAX >> 2))
            throw std::overflow_error("pell4_minimal: fundamental solution overflows");
    } while (cur != principal);
    i64 t = std::llabs(checked_add(M.g11, M.g22));
    i64 u = std::llabs(M.g21); // principal.a == 1
    if (static_cast<i128>(t) * t - static_cast<i128>(d) * u * u != 4)
        throw std::logic_error("pell4_minimal: cycle matrix is not an automorph");
    return {t, u};
}

UnimodularMatrix fundamental_automorph(const QuadraticForm& f) {
    i64 d = f.discriminant();
    auto [t, u] = pell4_minimal(d); // validates d
    UnimodularMatrix a{narrow((static_cast<i128>(t) - static_cast<i128>(f.b) * u) / 2),
                       narrow(-static_cast<i128>(f.c) * u),
                       narrow(static_cast<i128>(f.a) * u),
                       narrow((static_cast<i128>(t) + static_cast<i128>(f.b) * u) / 2)};
    if (act(f, a) != f)
        throw std::logic_error("fundamental_automorph: automorph check failed");
    return a;
}

// ---- representations ------------------------------------------------------

std::vector<Vec2> representations(const QuadraticForm& f, i64 m, i64 search_bound) {
    i64 d = f.discriminant();
    if (d == 0 || (d > 0 && arith::is_square(d)))
        throw std::domain_error("representations: square discriminant not supported");
    require_nonzero_m(m);
    // a != 0 since a = 0 would force d = b^2
    std::vector<Vec2> out;
    i64 y_from, y_to;
    if (d < 0) {
        // (2ax + by)^2 = 4am + d y^2 >= 0 bounds y
        i128 am4 = 4 * static_cast<i128>(f.a) * m;
        if (am4 < 0) return out;
        i64 bound = static_cast<i64>(arith::isqrt_u128(static_cast<u128>(am4 / (-d)))) + 1;
        y_from = -bound;
        y_to = bound;
    } else {
        if (search_bound < 0) search_bound = 0;
        y_from = -search_bound;
        y_to = search_bound;
    }
    for (i64 y = y_from; y <= y_to; ++y) {
        // a x^2 + (b y) x + (c y^2 - m) = 0
        i128 disc_x = static_cast<i128>(d) * y * y + 4 * static_cast<i128>(f.a) * m;
        if (disc_x < 0) continue;
        arith::u64 r = arith::isqrt_u128(static_cast<u128>(disc_x));
        if (static_cast<u128>(r) * r != static_cast<u128>(disc_x)) continue;
        for (int sign = 0; sign < (r == 0 ? 1 : 2); ++sign) {
            i128 num = -static_cast<i128>(f.b) * y + (sign == 0 ? static_cast<i128>(r)
                                                                : -static_cast<i128>(r));
            if (num % (2 * static_cast<i128>(f.a)) != 0) continue;
            out.push_back({narrow(num / (2 * static_cast<i128>(f.a))), y});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---- orbits ---------------------------------------------------------------

namespace {

std::tuple<i64, i64, i64> orbit_key(Vec2 z) {
    return {checked_add(std::llabs(z.x), std::llabs(z.y)), z.x, z.y};
}

// the |y| window that contains a representative of every SO(f)-orbit,
// including the imprimitive ones (an orbit of content e is e times an orbit
// of f^-1(m/e^2))
i64 orbit_window(i64 d, i64 m, i64 t, i64 u) {
    i64 am = std::llabs(m);
    u128 ratio = static_cast<u128>(am) * (t + 2) / d;
    i64 base = static_cast<i64>(arith::isqrt_u128(ratio)) + 1;
    i64 content = isqrt(am) + 1;
    return checked_add(checked_mul(u, base), checked_mul(u, content));
}

Vec2 canonical_in_orbit(Vec2 z, const UnimodularMatrix& a,
                        const UnimodularMatrix& ainv) {
    auto height = [](Vec2 v) {
        return checked_add(std::llabs(v.x), std::llabs(v.y));
    };
    Vec2 w = z;
    for (;;) { // heights are strictly convex along the orbit
        Vec2 fw = a.apply(w), bw = ainv.apply(w);
        if (height(fw) < height(w)) { w = fw; continue; }
        if (height(bw) < height(w)) { w = bw; continue; }
        break;
    }
    std::vector<Vec2> candidates{w};
    for (Vec2 n : {a.apply(w), ainv.apply(w)})
        if (height(n) == height(w)) candidates.push_back(n);
    Vec2 best = candidates.front();
    for (Vec2 c : candidates) {
        for (Vec2 v : {c, Vec2{-c.x, -c.y}})
            if (orbit_key(v) < orbit_key(best)) best = v;
    }
    return best;
}

} // namespace

Vec2 canonical_orbit_representative(const QuadraticForm& f, Vec2 z) {
    UnimodularMatrix a = fundamental_automorph(f); // validates the discriminant
    return canonical_in_orbit(z, a, a.inverse());
}

OrbitDecomposition orbit_decomposition(const QuadraticForm& f, i64 m,
                                       i64 search_bound) {
    require_nonzero_m(m);
    i64 d = f.discriminant();
    if (d == 0 || (d > 0 && arith::is_square(d)))
        throw std::domain_error("orbit_decomposition: square discriminant not supported");
    OrbitDecomposition out;
    out.form = f;
    out.m = m;
    if (d < 0) {
        std::vector<Vec2> sols = representations(f, m, 0);
        std::vector<UnimodularMatrix> auts = proper_automorphisms_definite(f);
        std::set<Vec2> seen;
        for (Vec2 z : sols) {
            if (seen.count(z)) continue;
            Vec2 best = z;
            for (const auto& g : auts) {
                Vec2 w = g.apply(z);
                seen.insert(w);
                if (orbit_key(w) < orbit_key(best)) best = w;
            }
            out.orbit_representatives.push_back(best);
        }
        out.complete = true;
    } else {
        UnimodularMatrix a = fundamental_automorph(f);
        UnimodularMatrix ainv = a.inverse();
        auto [t, u] = pell4_minimal(d);
        std::set<Vec2> canon;
        for (Vec2 z : representations(f, m, search_bound))
            canon.insert(canonical_in_orbit(z, a, ainv));
        out.orbit_representatives.assign(canon.begin(), canon.end());
        out.complete = search_bound >= orbit_window(d, m, t, u);
    }
    std::sort(out.orbit_representatives.begin(), out.orbit_representatives.end());
    for (Vec2 z : out.orbit_representatives)
        out.primitive_flags.push_back(gcd(z.x, z.y) == 1);
    return out;
}

i64 orbit_count_total(Discriminant d, i64 m) {
    require_nonzero_m(m);
    std::vector<QuadraticForm> reps;
    i64 bound = 0;
    if (d.value < 0) {
        reps = class_reps_definite(d);
    } else {
        reps = class_reps_indefinite(d); // validates nonsquare positive
        auto [t, u] = pell4_minimal(d.value);
        bound = orbit_window(d.value, m, t, u);
    }
    i64 total = 0;
    for (const auto& f : reps)
        total += static_cast<i64>(orbit_decomposition(f, m, bound)
                                      .orbit_representatives.size());
    return total;
}

// ---- psi and the bijection -------------------------------------------------

std::pair<QuadraticForm, Vec2> gauss_psi(Discriminant d, i64 m, i64 t,
                                         const std::vector<QuadraticForm>& S) {
    require_nonzero_m(m);
    i64 am = std::llabs(m);
    i64 n = mod_floor(t, 2 * am);
    if (mod_floor_128(static_cast<i128>(n) * n - d.value, 4 * static_cast<i128>(am)) != 0)
        throw std::domain_error("gauss_psi: t is not a square root of d mod 4m");
    QuadraticForm target{m, n, narrow((static_cast<i128>(n) * n - d.value) / (4 * m))};
    ReducedWithTransform red = reduce_with_transform(target);
    for (const auto& f : S) {
        if (f.discriminant() != d.value) continue;
        ReducedWithTransform fred = reduce_with_transform(f);
        UnimodularMatrix walk;
        bool found = false;
        if (d.value < 0) {
            found = fred.form == red.form;
        } else {
            i64 s = isqrt(d.value);
            QuadraticForm cur = fred.form;
            do {
                if (cur == red.form) { found = true; break; }
                auto [next, step] = rho_step(cur, s);
                walk = walk * step;
                cur = next;
            } while (cur != fred.form);
        }
        if (!found) continue;
        UnimodularMatrix g = fred.g * walk * red.g.inverse();
        Vec2 z = g.apply({1, 0});
        if (eval_form(f, z) != m)
            throw std::logic_error("gauss_psi: transform does not carry (1,0) to f^-1(m)");
        return {f, z};
    }
    throw std::domain_error("gauss_psi: no class in S matches [m,n,l]");
}

BijectionReport verify_bijection(Discriminant d, i64 m) {
    require_nonzero_m(m);
    BijectionReport report{d, m, {}, {}, {}, false};
    i64 bound = 0;
    if (d.value < 0) {
        report.class_reps = class_reps_definite(d);
    } else if (d.value > 0 && !arith::is_square(d.value)) {
        report.class_reps = class_reps_indefinite(d);
        auto [t, u] = pell4_minimal(d.value);
        bound = orbit_window(d.value, m, t, u);
    } else {
        throw std::domain_error("square discriminant not supported for enumeration");
    }
    i64 am = std::llabs(m);
    for (const auto& f : report.class_reps) {
        OrbitDecomposition od = orbit_decomposition(f, m, bound);
        for (size_t i = 0; i < od.orbit_representatives.size(); ++i) {
            if (!od.primitive_flags[i]) continue;
            Vec2 z = od.orbit_representatives[i];
            report.orbit_phi_values.push_back({f, z, gauss_phi(f, z, m)});
        }
    }
    for (i64 t = 0; t < 2 * am; ++t)
        if (mod_floor_128(static_cast<i128>(t) * t - d.value,
                          4 * static_cast<i128>(am)) == 0)
            report.t_set.push_back(t);
    std::vector<i64> phis;
    for (const auto& e : report.orbit_phi_values) phis.push_back(e.t);
    std::sort(phis.begin(), phis.end());
    bool distinct = std::adjacent_find(phis.begin(), phis.end()) == phis.end();
    report.verdict = distinct && phis == report.t_set;
    return report;
}

} // namespace orbitnum::forms
