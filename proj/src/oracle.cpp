#include "orbitnum/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "orbitnum/forms.hpp"
#include "orbitnum/orbitnum.hpp"

namespace orbitnum::oracle {

using arith::i128;
using arith::u128;
using arith::u64;

namespace {

void require_nonzero_m(i64 m) {
    if (m == 0) throw std::domain_error("m must be nonzero");
}

// count of t in [t_begin, t_end) with t^2 = target (mod M), by running
// squares: (t+1)^2 - t^2 = 2t + 1
i64 t_count_range(u64 t_begin, u64 t_end, u64 M, u64 target) {
    u64 s = static_cast<u64>((static_cast<u128>(t_begin) * t_begin) % M);
    u64 inc = static_cast<u64>((2 * static_cast<u128>(t_begin) + 1) % M);
    i64 cnt = 0;
    for (u64 t = t_begin; t < t_end; ++t) {
        cnt += (s == target);
        s += inc;
        if (s >= M) s -= M;
        inc += 2;
        if (inc >= M) inc -= M;
    }
    return cnt;
}

// same range split into 4 interleaved chunks to break the dependency chain
i64 t_count_range_fast(u64 t_begin, u64 t_end, u64 M, u64 target) {
    u64 n = t_end - t_begin;
    if (n < 1u << 16) return t_count_range(t_begin, t_end, M, target);
    u64 len = n / 4;
    u64 s[4], inc[4];
    i64 c[4] = {0, 0, 0, 0};
    for (int j = 0; j < 4; ++j) {
        u128 t0 = t_begin + static_cast<u64>(j) * len;
        s[j] = static_cast<u64>((t0 * t0) % M);
        inc[j] = static_cast<u64>((2 * t0 + 1) % M);
    }
    for (u64 i = 0; i < len; ++i) {
        for (int j = 0; j < 4; ++j) {
            c[j] += (s[j] == target);
            s[j] += inc[j];
            if (s[j] >= M) s[j] -= M;
            inc[j] += 2;
            if (inc[j] >= M) inc[j] -= M;
        }
    }
    return c[0] + c[1] + c[2] + c[3] +
           t_count_range(t_begin + 4 * len, t_end, M, target);
}

} // namespace

int default_threads() {
    if (const char* env = std::getenv("ORBITNUM_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(std::min(v, 64L));
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 64u));
}

i64 naive_t_count(i64 d, i64 m) {
    require_nonzero_m(m);
    i64 am = std::llabs(m);
    u64 M = arith::checked_mul(4, am);
    u64 target = static_cast<u64>(arith::mod_floor(d, static_cast<i64>(M)));
    u64 half = 2 * static_cast<u64>(am);
    if (half < 1u << 24) return t_count_range_fast(0, half, M, target);
    int threads = default_threads();
    if (threads <= 1) return t_count_range_fast(0, half, M, target);
    // long loop: partition the t range; the total is the same either way
    std::vector<i64> part(threads, 0);
    std::vector<std::thread> pool;
    u64 chunk = half / threads + 1;
    for (int w = 0; w < threads; ++w) {
        u64 lo = std::min(half, w * chunk);
        u64 hi = std::min(half, lo + chunk);
        pool.emplace_back([&part, w, lo, hi, M, target] {
            part[w] = t_count_range_fast(lo, hi, M, target);
        });
    }
    for (auto& th : pool) th.join();
    i64 total = 0;
    for (i64 c : part) total += c;
    return total;
}

i64 naive_c(Discriminant d, i64 m) {
    require_nonzero_m(m);
    i64 am = std::llabs(m);
    i64 total = 0;
    for (i64 e = 1; e * e <= am; ++e)
        if (am % (e * e) == 0) total += naive_t_count(d.value, am / (e * e));
    return total;
}

namespace {

// Legendre symbol by exhaustive square table; oracle-local on purpose
int brute_legendre(i64 a, i64 p) {
    i64 r = arith::mod_floor(a, p);
    if (r == 0) return 0;
    for (i64 x = 1; x <= p / 2; ++x)
        if (static_cast<i64>(static_cast<u128>(x) * x % p) == r) return 1;
    return -1;
}

// chi(n) from the defining bullets, factoring n by trial division
int brute_chi(i64 d, i64 n) {
    int chi = 1;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        int c;
        if (d % p == 0) c = 0;
        else if (p == 2) c = arith::mod_floor(d, 8) == 1 ? 1 : -1;
        else c = brute_legendre(d, p);
        if (c == 0) return 0;
        if (c == -1 && e % 2 == 1) chi = -chi;
    }
    if (n > 1) { // n is prime now
        int c;
        if (d % n == 0) c = 0;
        else if (n == 2) c = arith::mod_floor(d, 8) == 1 ? 1 : -1;
        else c = brute_legendre(d, n);
        if (c == 0) return 0;
        chi *= c;
    }
    return chi;
}

} // namespace

i64 naive_k(Discriminant d, i64 m) {
    require_nonzero_m(m);
    i64 am = std::llabs(m);
    i64 total = 0;
    for (i64 mu = 1; mu <= am; ++mu)
        if (am % mu == 0) total += brute_chi(d.value, mu);
    return total;
}

i64 naive_r2(i64 m) {
    if (m <= 0) throw std::domain_error("naive_r2: m must be positive");
    i64 count = 0;
    i64 bound = arith::isqrt(m);
    for (i64 x = -bound; x <= bound; ++x) {
        i64 rest = m - x * x;
        i64 y = arith::isqrt(rest);
        if (y * y == rest) count += (y == 0) ? 1 : 2;
    }
    return count;
}

namespace {

struct SweepChunk {
    long long cases = 0;
    std::vector<Mismatch> mismatches; // uncapped within the chunk owner
};

void sweep_one_d(i64 d_val, i64 m_min, i64 m_max, const RouteSet& routes,
                 SweepChunk& out) {
    Discriminant d(d_val);
    bool forms_ok = routes.forms && (d_val < 0 || (d_val > 0 && !arith::is_square(d_val)));
    for (i64 m = m_min; m <= m_max; ++m) {
        if (m == 0) continue;
        ++out.cases;
        std::vector<std::pair<std::string, i64>> values;
        if (routes.closed) values.emplace_back("closed", c_closed(d, m));
        if (routes.lemma) values.emplace_back("lemma", c_via_lemma(d, m));
        if (routes.naive) values.emplace_back("naive", naive_c(d, m));
        if (forms_ok) values.emplace_back("forms", forms::orbit_count_total(d, m));
        if (routes.k) {
            values.emplace_back("k", k_sum(d, m));
            values.emplace_back("naive_k", naive_k(d, m));
        }
        bool mismatch = false;
        for (size_t i = 1; i < values.size(); ++i)
            if (values[i].second != values[0].second) mismatch = true;
        if (mismatch) out.mismatches.push_back({d_val, m, std::move(values)});
    }
}

} // namespace

VerificationReport sweep_verify(i64 d_min, i64 d_max, i64 m_min, i64 m_max,
                                RouteSet routes, int threads) {
    auto t0 = std::chrono::steady_clock::now();
    VerificationReport report;
    report.d_min = d_min;
    report.d_max = d_max;
    report.m_min = m_min;
    report.m_max = m_max;
    report.routes = routes;
    std::vector<i64> ds;
    for (i64 d = d_min; d <= d_max; ++d) {
        i64 r = arith::mod_floor(d, 4);
        if (r == 0 || r == 1) ds.push_back(d);
    }
    threads = std::max(1, std::min<int>(threads, 64));
    std::vector<SweepChunk> chunks(ds.size());
    if (threads == 1 || ds.size() <= 1) {
        for (size_t i = 0; i < ds.size(); ++i)
            sweep_one_d(ds[i], m_min, m_max, routes, chunks[i]);
    } else {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < ds.size();
                     i = next.fetch_add(1))
                    sweep_one_d(ds[i], m_min, m_max, routes, chunks[i]);
            });
        }
        for (auto& th : pool) th.join();
    }
    for (auto& chunk : chunks) {
        report.total_cases += chunk.cases;
        report.total_mismatches += static_cast<long long>(chunk.mismatches.size());
        for (auto& mm : chunk.mismatches)
            if (report.mismatches.size() < kMismatchCap)
                report.mismatches.push_back(std::move(mm));
    }
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

} // namespace orbitnum::oracle
