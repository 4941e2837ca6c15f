// Command-line front end: compute C(d,m) by any route, tabulate C and K over
// a range, cross-verify the routes against the brute-force oracles, and
// print the orbit <-> square-root correspondence for a given (d,m).
//
// Exit codes: 0 success, 1 usage/domain error, 2 verification mismatch,
// 3 arithmetic overflow. Standard output is byte-stable for identical
// arguments; timings go to stderr.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "orbitnum/forms.hpp"
#include "orbitnum/oracle.hpp"
#include "orbitnum/orbitnum.hpp"

using orbitnum::Discriminant;
using orbitnum::arith::i64;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;
constexpr int kExitOverflow = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

i64 parse_i64(const std::string& s) {
    size_t pos = 0;
    i64 v;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("not an integer: '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("not an integer: '" + s + "'");
    return v;
}

std::pair<i64, i64> parse_range(const std::string& s) {
    size_t dots = s.find("..", 1); // a leading '-' is part of the first number
    if (dots == std::string::npos)
        throw UsageError("expected a range MIN..MAX, got '" + s + "'");
    i64 lo = parse_i64(s.substr(0, dots));
    i64 hi = parse_i64(s.substr(dots + 2));
    if (lo > hi) throw UsageError("bad range: " + s);
    return {lo, hi};
}

struct Args {
    std::vector<std::string> tokens;
    size_t pos = 0;
    bool done() const { return pos >= tokens.size(); }
    const std::string& peek() const { return tokens[pos]; }
    std::string next() { return tokens[pos++]; }
    std::string value(const std::string& flag) {
        if (done()) throw UsageError("missing value for " + flag);
        return next();
    }
};

struct Output {
    std::ofstream file;
    std::ostream* out = &std::cout;
    void open(const std::string& path) {
        file.open(path);
        if (!file) throw UsageError("cannot open output file: " + path);
        out = &file;
    }
    template <class T> Output& operator<<(const T& v) {
        *out << v;
        return *this;
    }
};

const char* kUsage =
    "usage: orbitnum <command> [options]\n"
    "\n"
    "commands:\n"
    "  compute -d D -m M [--route closed|lemma|forms|all] [--with-k]\n"
    "      print C(d,m); with --route all, print every applicable route and\n"
    "      a match flag (exit 2 on disagreement)\n"
    "  table -d D --from A --to B [--format text|csv|json-lines]\n"
    "      one row per nonzero m in [A,B] with C(d,m) and K(d,m)\n"
    "  verify --d MIN..MAX --m MIN..MAX [--routes closed,lemma,naive,forms,k]\n"
    "      [--json] cross-check the routes over a rectangle; exit 2 on any\n"
    "      mismatch\n"
    "  bijection -d D -m M\n"
    "      list the primitive orbit classes, their residues, and the square\n"
    "      roots of d mod 4|m|\n"
    "\n"
    "common options:\n"
    "  --out PATH   write standard output to PATH instead\n"
    "\n"
    "ORBITNUM_THREADS caps the parallelism of verify.\n";

std::string route_name(orbitnum::Route r) {
    switch (r) {
        case orbitnum::Route::closed: return "closed";
        case orbitnum::Route::lemma: return "lemma";
        case orbitnum::Route::forms: return "forms";
    }
    return "?";
}

i64 compute_route(Discriminant d, i64 m, orbitnum::Route r) {
    switch (r) {
        case orbitnum::Route::closed: return orbitnum::c_closed(d, m);
        case orbitnum::Route::lemma: return orbitnum::c_via_lemma(d, m);
        case orbitnum::Route::forms: return orbitnum::forms::orbit_count_total(d, m);
    }
    throw std::logic_error("unreachable");
}

bool forms_route_applicable(i64 d) {
    return d < 0 || (d > 0 && !orbitnum::arith::is_square(d));
}

int cmd_compute(Args& args) {
    std::optional<i64> dv, mv;
    std::string route = "closed";
    bool with_k = false;
    Output out;
    while (!args.done()) {
        std::string flag = args.next();
        if (flag == "-d" || flag == "--d") dv = parse_i64(args.value(flag));
        else if (flag == "-m" || flag == "--m") mv = parse_i64(args.value(flag));
        else if (flag == "--route") route = args.value(flag);
        else if (flag == "--with-k") with_k = true;
        else if (flag == "--out") out.open(args.value(flag));
        else throw UsageError("unknown option: " + flag);
    }
    if (!dv || !mv) throw UsageError("compute requires -d and -m");
    auto t0 = std::chrono::steady_clock::now();
    Discriminant d(*dv);
    if (*mv == 0) throw std::domain_error("m must be nonzero");
    int status = kExitOk;
    if (route == "all") {
        std::vector<std::pair<std::string, i64>> values;
        values.emplace_back("closed", orbitnum::c_closed(d, *mv));
        values.emplace_back("lemma", orbitnum::c_via_lemma(d, *mv));
        if (forms_route_applicable(*dv))
            values.emplace_back("forms", orbitnum::forms::orbit_count_total(d, *mv));
        if (with_k) values.emplace_back("K", orbitnum::k_sum(d, *mv));
        bool match = true;
        for (auto& [name, v] : values)
            if (v != values[0].second) match = false;
        out << "d=" << *dv << " m=" << *mv;
        for (auto& [name, v] : values) out << " " << name << "=" << v;
        out << " match=" << (match ? "yes" : "no") << "\n";
        if (!match) status = kExitMismatch;
    } else {
        orbitnum::Route r;
        if (route == "closed") r = orbitnum::Route::closed;
        else if (route == "lemma") r = orbitnum::Route::lemma;
        else if (route == "forms") r = orbitnum::Route::forms;
        else throw UsageError("unknown route: " + route);
        orbitnum::OrbitNumberResult res{d, *mv, compute_route(d, *mv, r), r};
        out << "d=" << *dv << " m=" << *mv << " C=" << res.value
            << " route=" << route_name(res.route) << "\n";
    }
    double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "elapsed %.3fs\n", el);
    return status;
}

int cmd_table(Args& args) {
    std::optional<i64> dv, from, to;
    std::string format = "text";
    Output out;
    while (!args.done()) {
        std::string flag = args.next();
        if (flag == "-d" || flag == "--d") dv = parse_i64(args.value(flag));
        else if (flag == "--from") from = parse_i64(args.value(flag));
        else if (flag == "--to") to = parse_i64(args.value(flag));
        else if (flag == "--format") format = args.value(flag);
        else if (flag == "--out") out.open(args.value(flag));
        else throw UsageError("unknown option: " + flag);
    }
    if (!dv || !from || !to) throw UsageError("table requires -d, --from, --to");
    if (format != "text" && format != "csv" && format != "json-lines")
        throw UsageError("unknown format: " + format);
    if (*from > *to) throw UsageError("bad range: --from exceeds --to");
    auto t0 = std::chrono::steady_clock::now();
    Discriminant d(*dv);
    if (format == "csv") out << "d,m,C,K\n";
    for (i64 m = *from; m <= *to; ++m) {
        if (m == 0) continue;
        i64 c = orbitnum::c_closed(d, m);
        i64 k = orbitnum::k_sum(d, m);
        if (format == "text")
            out << "d=" << *dv << " m=" << m << " C=" << c << " K=" << k << "\n";
        else if (format == "csv")
            out << *dv << "," << m << "," << c << "," << k << "\n";
        else
            out << "{\"d\":" << *dv << ",\"m\":" << m << ",\"C\":" << c
                << ",\"K\":" << k << ",\"route\":\"closed\"}\n";
    }
    double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "elapsed %.3fs\n", el);
    return kExitOk;
}

orbitnum::oracle::RouteSet parse_routes(const std::string& s) {
    orbitnum::oracle::RouteSet routes;
    routes.closed = routes.lemma = routes.naive = false;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "closed") routes.closed = true;
        else if (item == "lemma") routes.lemma = true;
        else if (item == "naive") routes.naive = true;
        else if (item == "forms") routes.forms = true;
        else if (item == "k") routes.k = true;
        else throw UsageError("unknown route: " + item);
    }
    if (!routes.closed && !routes.lemma && !routes.naive && !routes.forms &&
        !routes.k)
        throw UsageError("empty route list");
    return routes;
}

std::string routes_string(const orbitnum::oracle::RouteSet& r) {
    std::string s;
    auto add = [&s](bool on, const char* name) {
        if (!on) return;
        if (!s.empty()) s += ",";
        s += name;
    };
    add(r.closed, "closed");
    add(r.lemma, "lemma");
    add(r.naive, "naive");
    add(r.forms, "forms");
    add(r.k, "k");
    return s;
}

int cmd_verify(Args& args) {
    std::optional<std::pair<i64, i64>> dr, mr;
    orbitnum::oracle::RouteSet routes;
    bool json = false;
    Output out;
    while (!args.done()) {
        std::string flag = args.next();
        if (flag == "-d" || flag == "--d") dr = parse_range(args.value(flag));
        else if (flag == "-m" || flag == "--m") mr = parse_range(args.value(flag));
        else if (flag == "--routes") routes = parse_routes(args.value(flag));
        else if (flag == "--json") json = true;
        else if (flag == "--out") out.open(args.value(flag));
        else throw UsageError("unknown option: " + flag);
    }
    if (!dr || !mr) throw UsageError("verify requires --d MIN..MAX and --m MIN..MAX");
    orbitnum::oracle::VerificationReport report = orbitnum::oracle::sweep_verify(
        dr->first, dr->second, mr->first, mr->second, routes,
        orbitnum::oracle::default_threads());
    if (json) {
        out << "{\"d_min\":" << report.d_min << ",\"d_max\":" << report.d_max
            << ",\"m_min\":" << report.m_min << ",\"m_max\":" << report.m_max
            << ",\"routes\":\"" << routes_string(routes) << "\""
            << ",\"cases\":" << report.total_cases
            << ",\"mismatches\":" << report.total_mismatches << ",\"items\":[";
        for (size_t i = 0; i < report.mismatches.size(); ++i) {
            const auto& mm = report.mismatches[i];
            if (i > 0) out << ",";
            out << "{\"d\":" << mm.d << ",\"m\":" << mm.m << ",\"values\":{";
            for (size_t j = 0; j < mm.values.size(); ++j) {
                if (j > 0) out << ",";
                out << "\"" << mm.values[j].first << "\":" << mm.values[j].second;
            }
            out << "}}";
        }
        out << "]}\n";
    } else {
        out << "verify d in [" << report.d_min << "," << report.d_max
            << "] m in [" << report.m_min << "," << report.m_max
            << "] routes=" << routes_string(routes) << "\n";
        out << "cases=" << report.total_cases
            << " mismatches=" << report.total_mismatches << "\n";
        for (const auto& mm : report.mismatches) {
            out << "mismatch d=" << mm.d << " m=" << mm.m;
            for (const auto& [name, v] : mm.values) out << " " << name << "=" << v;
            out << "\n";
        }
        if (report.total_mismatches >
            static_cast<long long>(report.mismatches.size()))
            out << "(first " << report.mismatches.size() << " shown)\n";
    }
    std::fprintf(stderr, "elapsed %.3fs\n", report.elapsed_seconds);
    return report.success() ? kExitOk : kExitMismatch;
}

int cmd_bijection(Args& args) {
    std::optional<i64> dv, mv;
    Output out;
    while (!args.done()) {
        std::string flag = args.next();
        if (flag == "-d" || flag == "--d") dv = parse_i64(args.value(flag));
        else if (flag == "-m" || flag == "--m") mv = parse_i64(args.value(flag));
        else if (flag == "--out") out.open(args.value(flag));
        else throw UsageError("unknown option: " + flag);
    }
    if (!dv || !mv) throw UsageError("bijection requires -d and -m");
    auto t0 = std::chrono::steady_clock::now();
    Discriminant d(*dv);
    orbitnum::forms::BijectionReport report = orbitnum::forms::verify_bijection(d, *mv);
    out << "d=" << *dv << " m=" << *mv << "\n";
    std::ostringstream rowbuf;
    for (const auto& e : report.orbit_phi_values) {
        rowbuf.str("");
        rowbuf << e.form;
        out << "class=" << rowbuf.str() << " z=(" << e.z.x << "," << e.z.y
            << ") t=" << e.t << "\n";
    }
    out << "T = {";
    for (size_t i = 0; i < report.t_set.size(); ++i) {
        if (i > 0) out << ",";
        out << report.t_set[i];
    }
    out << "} mod " << 2 * std::llabs(*mv) << "\n";
    out << "orbits=" << report.orbit_phi_values.size()
        << " residues=" << report.t_set.size()
        << " verdict=" << (report.verdict ? "OK" : "FAIL") << "\n";
    double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "elapsed %.3fs\n", el);
    return report.verdict ? kExitOk : kExitMismatch;
}

} // namespace

int main(int argc, char** argv) {
    Args args;
    for (int i = 2; i < argc; ++i) args.tokens.emplace_back(argv[i]);
    std::string cmd = argc >= 2 ? argv[1] : "";
    try {
        if (cmd == "compute") return cmd_compute(args);
        if (cmd == "table") return cmd_table(args);
        if (cmd == "verify") return cmd_verify(args);
        if (cmd == "bijection") return cmd_bijection(args);
        if (cmd == "--help" || cmd == "-h" || cmd == "help") {
            std::cout << kUsage;
            return kExitOk;
        }
        std::cerr << kUsage;
        return kExitUsage;
    } catch (const std::overflow_error& e) {
        std::cerr << "overflow: " << e.what() << "\n";
        return kExitOverflow;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitUsage;
    }
}
