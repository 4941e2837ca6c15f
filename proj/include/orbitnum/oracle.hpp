// Brute-force reference implementations of every counted quantity, used as
// ground truth by the test suites and the CLI `verify` subcommand.
//
// These are kept independent of the closed-form routes: loops, divisor
// scans, and residue tables only. They are allowed to be slow.

#ifndef ORBITNUM_ORACLE_HPP
#define ORBITNUM_ORACLE_HPP

#include <string>
#include <vector>

#include "orbitnum/arith.hpp"

namespace orbitnum::oracle {

using arith::Discriminant;
using arith::i64;

// |{t in [0, 2|m|) : t^2 = d (mod 4|m|)}| by exhaustive loop. Long ranges
// are split into chunks evaluated concurrently; the count is exact either
// way. m != 0.
i64 naive_t_count(i64 d, i64 m);

// sum of naive_t_count(d, |m|/e^2) over e >= 1 with e^2 | |m|. m != 0.
i64 naive_c(Discriminant d, i64 m);

// K(d,m) by divisor loop, with chi evaluated from scratch per divisor
// (local trial division, residue tables, and brute-force Legendre).
i64 naive_k(Discriminant d, i64 m);

// number of (x,y) in Z^2 with x^2 + y^2 = m, by scan. m >= 1.
i64 naive_r2(i64 m);

struct RouteSet {
    bool closed = true;
    bool lemma = true;
    bool naive = true;
    bool forms = false;
    bool k = false;
};

struct Mismatch {
    i64 d = 0;
    i64 m = 0;
    std::vector<std::pair<std::string, i64>> values; // (route, value)
};

struct VerificationReport {
    i64 d_min = 0, d_max = -1;
    i64 m_min = 0, m_max = -1;
    RouteSet routes;
    long long total_cases = 0;
    long long total_mismatches = 0;
    std::vector<Mismatch> mismatches; // capped at kMismatchCap, (d,m) order
    double elapsed_seconds = 0.0;
    bool success() const { return total_mismatches == 0; }
};

inline constexpr int kMismatchCap = 100;

// Evaluates the selected routes on every (d,m) in range with d = 0,1 mod 4
// and m != 0, and records every disagreement. Workers partition the d range;
// the merged report is deterministic. Empty ranges yield an empty success.
VerificationReport sweep_verify(i64 d_min, i64 d_max, i64 m_min, i64 m_max,
                                RouteSet routes, int threads = 1);

// thread-count default: ORBITNUM_THREADS if set, else hardware concurrency
int default_threads();

} // namespace orbitnum::oracle

#endif
