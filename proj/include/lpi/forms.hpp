#pragma once

// Fourier coefficients at primes: Ramanujan's tau from the q-expansion of
// Delta, CSV coefficient tables, least-prime queries and Sato-Tate summaries.

#include "lpi/certify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace lpi {

inline constexpr std::uint64_t kMaxTauIndex = 100000;

namespace detail {

using i128 = __int128;

inline Integer to_integer(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    Integer hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u & ~std::uint64_t{0}));
    Integer z = (hi << 64) + lo;
    return neg ? Integer(-z) : z;
}

/// a * b truncated to `len` coefficients.
inline std::vector<i128> truncated_product(const std::vector<i128>& a, const std::vector<i128>& b, std::size_t len) {
    std::vector<i128> out(len, 0);
    for (std::size_t i = 0; i < std::min(a.size(), len); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
            if (b[j] == 0) continue;
            i128 prod, sum;
            if (__builtin_mul_overflow(a[i], b[j], &prod) || __builtin_add_overflow(out[i + j], prod, &sum))
                throw IntegrityError("q-series coefficient overflow");
            out[i + j] = sum;
        }
    }
    return out;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<bool> composite(n + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace detail

/// tau(n) for 0 <= n <= n_max (index 0 holds 0), from
/// Delta = q prod_{n>=1} (1 - q^n)^24. The product is the pentagonal series,
/// raised to the 24th power as E^16 * E^8 via repeated squaring.
inline std::vector<Integer> delta_tau(std::uint64_t n_max) {
    if (n_max < 1) throw std::domain_error("delta_tau: n_max must be >= 1");
    if (n_max > kMaxTauIndex)
        throw CapError("delta_tau: n_max " + std::to_string(n_max) + " exceeds cap " + std::to_string(kMaxTauIndex));
    const std::size_t len = n_max;  // coefficients of q^0 .. q^(n_max-1)
    std::vector<detail::i128> euler(len, 0);
    for (long k = 0;; ++k) {
        bool any = false;
        for (int sign : {1, -1}) {
            if (k == 0 && sign < 0) continue;
            const long s = sign * k;
            auto e = static_cast<std::size_t>(s * (3 * s - 1) / 2);
            if (e < len) {
                euler[e] += (k % 2 == 0) ? 1 : -1;
                any = true;
            }
        }
        if (!any) break;
    }
    auto e2 = detail::truncated_product(euler, euler, len);
    auto e4 = detail::truncated_product(e2, e2, len);
    auto e8 = detail::truncated_product(e4, e4, len);
    auto e16 = detail::truncated_product(e8, e8, len);
    auto e24 = detail::truncated_product(e16, e8, len);
    std::vector<Integer> tau(n_max + 1);
    tau[0] = 0;
    for (std::size_t n = 1; n <= n_max; ++n) tau[n] = detail::to_integer(e24[n - 1]);
    return tau;
}

/// a(p) = lambda(p) / p^((k-1)/2).
inline double normalize(const Integer& eigenvalue, std::uint64_t p, int weight) {
    if (weight < 2 || weight % 2) throw std::domain_error("normalize: weight must be a positive even integer");
    double a = eigenvalue.get_d() / std::pow(static_cast<double>(p), (weight - 1) / 2.0);
    if (std::abs(a) > 2.0 + 1e-9)
        throw IntegrityError("normalized coefficient at p=" + std::to_string(p) + " violates |a(p)| <= 2");
    return a;
}

enum class CoefficientMode { exact, floating };

struct CoefficientEntry {
    std::uint64_t p = 0;
    double a = 0.0;                   // normalized
    std::optional<Integer> eigenvalue;  // exact mode only
};

struct CoefficientTable {
    int weight = 2;
    std::uint64_t level = 1;
    CoefficientMode mode = CoefficientMode::floating;
    std::vector<CoefficientEntry> entries;  // increasing primes
    /// lambda(p^2) where known (exact tables built from a q-expansion).
    std::map<std::uint64_t, Integer> square_eigenvalues;

    std::uint64_t extent() const { return entries.empty() ? 0 : entries.back().p; }
};

/// Exact table for Delta (weight 12, level 1) at primes p <= n_max.
inline CoefficientTable delta_table(std::uint64_t n_max) {
    auto tau = delta_tau(n_max);
    CoefficientTable t;
    t.weight = 12;
    t.level = 1;
    t.mode = CoefficientMode::exact;
    for (auto p : detail::primes_up_to(n_max)) {
        t.entries.push_back({p, normalize(tau[p], p, 12), tau[p]});
        if (p * p <= n_max) t.square_eigenvalues[p] = tau[p * p];
    }
    return t;
}

/// CSV format:
///   # weight <k>
///   # level <N>            (default 1)
///   # mode exact|float     (default float)
///   p,value                (optional column header)
///   <p>,<value>            integer eigenvalue (exact) or normalized a(p) (float)
inline CoefficientTable read_coefficients(std::istream& in) {
    CoefficientTable t;
    bool have_weight = false;
    std::string line;
    std::size_t lineno = 0;
    std::map<std::uint64_t, std::size_t> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string key, value;
            ss >> key >> value;
            try {
                if (key == "weight") {
                    std::size_t used = 0;
                    t.weight = std::stoi(value, &used);
                    if (used != value.size() || t.weight < 2 || t.weight % 2) throw std::invalid_argument("weight");
                    have_weight = true;
                } else if (key == "level") {
                    std::size_t used = 0;
                    t.level = std::stoull(value, &used);
                    if (used != value.size() || t.level < 1) throw std::invalid_argument("level");
                } else if (key == "mode") {
                    if (value == "exact") t.mode = CoefficientMode::exact;
                    else if (value == "float") t.mode = CoefficientMode::floating;
                    else throw std::invalid_argument("mode");
                }
            } catch (const std::exception&) {
                throw ParseError("bad header '" + line + "'", lineno);
            }
            continue;
        }
        auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw ParseError("expected 'p,value'", lineno);
        std::string key = line.substr(0, comma), value = line.substr(comma + 1);
        if (key == "p" || key == "n") continue;
        if (!have_weight) throw ParseError("missing '# weight' header before data", lineno);

        std::uint64_t p = 0;
        auto [kp, kec] = std::from_chars(key.data(), key.data() + key.size(), p);
        if (kec != std::errc() || kp != key.data() + key.size()) throw ParseError("malformed prime '" + key + "'", lineno);
        if (!detail::is_prime(p)) throw ParseError("key " + key + " is not prime", lineno);
        if (seen.count(p)) throw ParseError("duplicate prime " + key, lineno);

        CoefficientEntry e;
        e.p = p;
        if (t.mode == CoefficientMode::exact) {
            Integer z;
            if (value.empty() || z.set_str(value, 10) != 0) throw ParseError("malformed integer '" + value + "'", lineno);
            try {
                e.a = normalize(z, p, t.weight);
            } catch (const IntegrityError& err) {
                throw ParseError(err.what(), lineno);
            }
            e.eigenvalue = z;
        } else {
            double a = 0;
            auto [vp, vec] = std::from_chars(value.data(), value.data() + value.size(), a);
            if (vec != std::errc() || vp != value.data() + value.size() || !std::isfinite(a))
                throw ParseError("malformed value '" + value + "'", lineno);
            if (std::abs(a) > 2.0 + 1e-9) throw ParseError("|a(" + key + ")| exceeds the Deligne bound 2", lineno);
            e.a = a;
        }
        seen[p] = lineno;
        t.entries.push_back(std::move(e));
    }
    if (!have_weight) throw ParseError("missing '# weight' header");
    std::sort(t.entries.begin(), t.entries.end(), [](auto& x, auto& y) { return x.p < y.p; });
    return t;
}

inline CoefficientTable load_coefficients(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    return read_coefficients(in);
}

/// Shortest decimal that round-trips to x.
inline std::string shortest_decimal(double x) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
}

inline void write_coefficients(const CoefficientTable& t, std::ostream& out) {
    out << "# weight " << t.weight << "\n# level " << t.level << "\n# mode "
        << (t.mode == CoefficientMode::exact ? "exact" : "float") << "\np,value\n";
    for (const auto& e : t.entries) {
        out << e.p << ',';
        if (t.mode == CoefficientMode::exact && e.eigenvalue) out << e.eigenvalue->get_str();
        else out << shortest_decimal(e.a);
        out << '\n';
    }
}

struct LeastPrime {
    std::optional<std::uint64_t> prime;
    std::uint64_t extent = 0;
};

/// Smallest stored p with alpha <= a(p) <= beta.
inline LeastPrime least_prime_in(const CoefficientTable& t, const IntervalI& interval) {
    if (t.entries.empty()) throw std::domain_error("least_prime_in: empty table");
    LeastPrime r;
    r.extent = t.extent();
    for (const auto& e : t.entries)
        if (interval.contains(Rational(e.a))) {
            r.prime = e.p;
            break;
        }
    return r;
}

/// Semicircle mass of {x : x/2 in [alpha/2, beta/2]}, via
/// (asin t + t sqrt(1 - t^2)) / pi.
inline double semicircle_measure(const IntervalI& interval) {
    auto cdf = [](double t) { return (std::asin(t) + t * std::sqrt(1.0 - t * t)) / std::numbers::pi; };
    return cdf(interval.beta.get_d() / 2) - cdf(interval.alpha.get_d() / 2);
}

struct SatoTateBin {
    double lo = 0, hi = 0;
    std::size_t count = 0;
    double fraction = 0, measure = 0, deviation = 0;
};

struct HeckeCheck {
    std::uint64_t p = 0;
    bool exact_ok = false;
    double normalized_residual = 0;
};

struct SatoTateReport {
    std::size_t primes = 0;
    std::vector<SatoTateBin> bins;
    double max_abs_deviation = 0;
    std::vector<HeckeCheck> hecke;

    bool hecke_ok() const {
        return std::all_of(hecke.begin(), hecke.end(),
                           [](const HeckeCheck& h) { return h.exact_ok && h.normalized_residual <= 1e-9; });
    }
};

inline SatoTateReport sato_tate_report(const CoefficientTable& t, std::size_t bins) {
    if (t.entries.empty()) throw std::domain_error("sato_tate_report: empty table");
    if (bins < 1) throw std::domain_error("sato_tate_report: bins must be >= 1");
    SatoTateReport r;
    r.primes = t.entries.size();
    r.bins.resize(bins);
    for (std::size_t i = 0; i < bins; ++i) {
        Rational lo = Rational(-2) + Rational(4 * static_cast<long>(i), static_cast<long>(bins));
        Rational hi = Rational(-2) + Rational(4 * static_cast<long>(i + 1), static_cast<long>(bins));
        lo.canonicalize();
        hi.canonicalize();
        r.bins[i].lo = lo.get_d();
        r.bins[i].hi = hi.get_d();
        r.bins[i].measure = semicircle_measure(IntervalI(lo, hi));
    }
    for (const auto& e : t.entries) {
        auto idx = static_cast<std::size_t>(std::floor((e.a + 2.0) / 4.0 * static_cast<double>(bins)));
        r.bins[std::min(idx, bins - 1)].count++;
    }
    for (auto& b : r.bins) {
        b.fraction = static_cast<double>(b.count) / static_cast<double>(r.primes);
        b.deviation = b.fraction - b.measure;
        r.max_abs_deviation = std::max(r.max_abs_deviation, std::abs(b.deviation));
    }
    for (const auto& e : t.entries) {
        auto sq = t.square_eigenvalues.find(e.p);
        if (!e.eigenvalue || sq == t.square_eigenvalues.end()) continue;
        Integer pk;
        mpz_ui_pow_ui(pk.get_mpz_t(), e.p, static_cast<unsigned long>(t.weight - 1));
        HeckeCheck h;
        h.p = e.p;
        h.exact_ok = sq->second == (*e.eigenvalue) * (*e.eigenvalue) - pk;
        double a_sq = sq->second.get_d() / std::pow(static_cast<double>(e.p), static_cast<double>(t.weight - 1));
        h.normalized_residual = std::abs(a_sq - (e.a * e.a - 1.0));
        r.hecke.push_back(h);
    }
    return r;
}

}  // namespace lpi
