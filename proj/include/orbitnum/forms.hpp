// Binary quadratic forms under SL(2,Z): evaluation, the group action,
// reduction, class representatives, automorphism groups, orbit enumeration
// of f^-1(m), and the residue maps phi / psi that match primitive orbits
// with the square roots of d mod 4m.

#ifndef ORBITNUM_FORMS_HPP
#define ORBITNUM_FORMS_HPP

#include <iosfwd>
#include <vector>

#include "orbitnum/arith.hpp"

namespace orbitnum::forms {

using arith::Discriminant;
using arith::i64;

struct Vec2 {
    i64 x = 0, y = 0;
    friend bool operator==(const Vec2&, const Vec2&) = default;
    friend auto operator<=>(const Vec2&, const Vec2&) = default;
};

// f = [a,b,c] = a X^2 + b XY + c Y^2
struct QuadraticForm {
    i64 a = 0, b = 0, c = 0;
    i64 discriminant() const; // b^2 - 4ac
    QuadraticForm negate() const { return {-a, -b, -c}; }
    friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
    friend auto operator<=>(const QuadraticForm&, const QuadraticForm&) = default;
};

std::ostream& operator<<(std::ostream&, const QuadraticForm&);

// element of G = SL(2,Z); the constructor rejects det != 1
struct UnimodularMatrix {
    i64 g11 = 1, g12 = 0, g21 = 0, g22 = 1;
    UnimodularMatrix() = default;
    UnimodularMatrix(i64 a11, i64 a12, i64 a21, i64 a22);
    static UnimodularMatrix identity() { return {}; }
    UnimodularMatrix inverse() const { return {g22, -g12, -g21, g11}; }
    UnimodularMatrix operator*(const UnimodularMatrix& o) const;
    Vec2 apply(Vec2 z) const; // matrix * column vector
    friend bool operator==(const UnimodularMatrix&, const UnimodularMatrix&) = default;
    friend auto operator<=>(const UnimodularMatrix&, const UnimodularMatrix&) = default;
};

std::ostream& operator<<(std::ostream&, const UnimodularMatrix&);

// f(z)
i64 eval_form(const QuadraticForm& f, Vec2 z);

// right action (f.g)(z) = f(g z); preserves the discriminant and satisfies
// (f.g).h = f.(gh). The first coefficient of f.g is f(g(1,0)).
QuadraticForm act(const QuadraticForm& f, const UnimodularMatrix& g);

// some g in G with g(1,0) = z; z must have coprime coordinates. The second
// column comes straight from the ext_gcd cofactors, so the result is
// deterministic.
UnimodularMatrix complete_unimodular(Vec2 z);

// phi_f(z) for z in f^-1(m)': write f.g = [m,n,l] for any g sending (1,0)
// to z and return n mod 2|m| (in [0, 2|m|)). Independent of the completion.
i64 gauss_phi(const QuadraticForm& f, Vec2 z, i64 m);

// All reduced positive definite forms of discriminant d < 0, followed by
// their negatives: one representative per SL(2,Z)-class.
std::vector<QuadraticForm> class_reps_definite(Discriminant d);

// One representative per class for d > 0 nonsquare, computed by enumerating
// the reduced forms and merging the reduction cycles.
std::vector<QuadraticForm> class_reps_indefinite(Discriminant d);

// the finite stabilizer SO(f) = {g : f.g = f} of a definite form
std::vector<UnimodularMatrix> proper_automorphisms_definite(const QuadraticForm& f);

// A = [[(t-bu)/2, -cu], [au, (t+bu)/2]] for the minimal (t,u), u > 0, with
// t^2 - d u^2 = 4; SO(f) = {+-A^k}. disc(f) > 0 nonsquare.
UnimodularMatrix fundamental_automorph(const QuadraticForm& f);

// minimal positive solution of t^2 - d u^2 = 4, from the reduction cycle
std::pair<i64, i64> pell4_minimal(i64 d);

// All z with f(z) = m: complete for definite f (search_bound is ignored);
// for indefinite f, all solutions with |y| <= search_bound.
std::vector<Vec2> representations(const QuadraticForm& f, i64 m, i64 search_bound);

struct OrbitDecomposition {
    QuadraticForm form;
    i64 m = 0;
    std::vector<Vec2> orbit_representatives;
    std::vector<bool> primitive_flags; // gcd(x,y) = 1
    bool complete = false;             // search window covered every orbit
};

// Representatives of SO(f)\f^-1(m). Definite forms: the finite solution
// list grouped by the finite stabilizer. Indefinite forms: each enumerated
// solution is canonicalized under {+-A^k} and deduplicated.
OrbitDecomposition orbit_decomposition(const QuadraticForm& f, i64 m, i64 search_bound);

// canonical representative of the orbit {+-A^k z} for indefinite f: the
// orbit element minimizing (|x|+|y|, x, y). Idempotent and constant on the
// orbit.
Vec2 canonical_orbit_representative(const QuadraticForm& f, Vec2 z);

// sum over the class representatives of the number of SO(f)-orbits on
// f^-1(m); the forms-enumeration route to C(d,m). d < 0 or d > 0 nonsquare.
i64 orbit_count_total(Discriminant d, i64 m);

// reduction with transform tracking: form.g = reduced
struct ReducedWithTransform {
    QuadraticForm form;
    UnimodularMatrix g;
};

ReducedWithTransform reduce_with_transform(const QuadraticForm& f);

// the rho-cycle of reduced forms through `reduced` (disc > 0 nonsquare)
std::vector<QuadraticForm> reduction_cycle(const QuadraticForm& reduced);

// the inverse map: given t with t^2 = d (mod 4|m|), lift to the form
// [m, n, l], reduce it to the unique equivalent f in S, and return f with
// the vector z = g(1,0) of the transform; gauss_phi(f, z, m) = t.
std::pair<QuadraticForm, Vec2> gauss_psi(Discriminant d, i64 m, i64 t,
                                         const std::vector<QuadraticForm>& S);

struct BijectionReport {
    Discriminant d;
    i64 m = 0;
    std::vector<QuadraticForm> class_reps;
    struct Entry {
        QuadraticForm form;
        Vec2 z;
        i64 t = 0;
    };
    std::vector<Entry> orbit_phi_values; // primitive orbits only
    std::vector<i64> t_set;              // {t in [0,2|m|) : t^2 = d mod 4|m|}
    bool verdict = false;
};

// checks that phi maps the primitive orbit classes bijectively onto the
// square roots of d mod 4|m|. d < 0 or d > 0 nonsquare; m != 0.
BijectionReport verify_bijection(Discriminant d, i64 m);

} // namespace orbitnum::forms

#endif
