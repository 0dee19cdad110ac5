#pragma once

// Exponent bounds for the least prime p with a(p) in I, in the level and
// weight aspects:
//
//   log p / log N <= 2 sum_l l b_l lambda_l / (1 + G(kappa - F; kappa))
//   log p / log k <= 2 sum_l (l + eps(l)) b_l lambda_l / (1 + G(kappa - F; kappa))
//
// reported as limit exponents (the asymptotic +epsilon is not added).

#include "lpi/certify.hpp"
#include "lpi/special.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <string>

namespace lpi {

enum class Aspect { level, weight };

inline std::string to_string(Aspect a) { return a == Aspect::level ? "level" : "weight"; }

inline Aspect parse_aspect(const std::string& s) {
    if (s == "level") return Aspect::level;
    if (s == "weight") return Aspect::weight;
    throw ParseError("unknown aspect '" + s + "' (expected level|weight)");
}

/// eps(l) = (1 - (-1)^l) / 2.
constexpr int parity(int l) { return l & 1; }

/// q(sym^l f) = N^l k^(l + eps(l)).
inline Integer conductor(int l, unsigned long level, unsigned long weight) {
    if (l < 1 || level < 1 || weight < 1) throw std::domain_error("conductor: l, N, k must be >= 1");
    Integer n, k;
    mpz_ui_pow_ui(n.get_mpz_t(), level, static_cast<unsigned long>(l));
    mpz_ui_pow_ui(k.get_mpz_t(), weight, static_cast<unsigned long>(l + parity(l)));
    return n * k;
}

/// q(sym^l f, t) = N^l (|t| + 2)^(l+1) k^(l + eps(l)).
inline double conductor(int l, unsigned long level, unsigned long weight, double t) {
    if (l < 1 || level < 1 || weight < 1) throw std::domain_error("conductor: l, N, k must be >= 1");
    return std::pow(static_cast<double>(level), l) * std::pow(std::abs(t) + 2.0, l + 1) *
           std::pow(static_cast<double>(weight), l + parity(l));
}

/// Per-degree central-value exponents lambda_l; unset degrees use 1/4.
struct ExponentParams {
    std::map<int, double> lambdas;
    Aspect aspect = Aspect::level;
    int l_max = 8;
    std::string preset = "convexity";

    double lambda(int l) const {
        auto it = lambdas.find(l);
        return it == lambdas.end() ? 0.25 : it->second;
    }

    static ExponentParams convexity(Aspect a = Aspect::level) {
        ExponentParams p;
        p.aspect = a;
        return p;
    }

    static ExponentParams jutila_motohashi(Aspect a = Aspect::level) {
        ExponentParams p;
        p.aspect = a;
        p.lambdas[1] = 1.0 / 6.0;
        p.preset = "jutila-motohashi";
        return p;
    }

    /// "convexity", "jutila-motohashi", or "custom:l=val,l=val,...".
    static ExponentParams parse(const std::string& spec, Aspect a = Aspect::level) {
        if (spec == "convexity") return convexity(a);
        if (spec == "jutila-motohashi") return jutila_motohashi(a);
        const std::string prefix = "custom:";
        if (spec.rfind(prefix, 0) != 0) throw ParseError("unknown lambda preset '" + spec + "'");
        ExponentParams p;
        p.aspect = a;
        p.preset = spec;
        std::string body = spec.substr(prefix.size());
        std::size_t pos = 0;
        while (pos <= body.size()) {
            std::size_t comma = body.find(',', pos);
            std::string item = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            auto eq = item.find('=');
            if (eq == std::string::npos) throw ParseError("custom lambda entry '" + item + "' lacks '='");
            int l = 0;
            try {
                std::size_t used = 0;
                l = std::stoi(item.substr(0, eq), &used);
                if (used != eq) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ParseError("bad degree in custom lambda entry '" + item + "'");
            }
            double v = parse_rational(item.substr(eq + 1)).get_d();
            if (l < 1) throw ParseError("lambda degree must be >= 1");
            if (!(v > 0.0 && v <= 0.25)) throw ParseError("lambda must lie in (0, 1/4]");
            p.lambdas[l] = v;
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return p;
    }
};

/// 2 sum_l l b_l lambda_l.
inline double numerator_level(const ChebCombo& b, const ExponentParams& p) {
    double s = 0;
    for (int l = 1; l <= b.degree(); ++l) s += 2.0 * l * b[l] * p.lambda(l);
    return s;
}

/// 2 sum_l (l + eps(l)) b_l lambda_l.
inline double numerator_weight(const ChebCombo& b, const ExponentParams& p) {
    double s = 0;
    for (int l = 1; l <= b.degree(); ++l) s += 2.0 * (l + parity(l)) * b[l] * p.lambda(l);
    return s;
}

inline double numerator(const ChebCombo& b, const ExponentParams& p) {
    return p.aspect == Aspect::level ? numerator_level(b, p) : numerator_weight(b, p);
}

/// G(kappa - F; kappa) from certified lower bounds, as doubles rounded down.
/// kappa - F = 0 cannot occur for a valid combo (P_b has mean zero under the
/// semicircle law) but maps to G = 1 for completeness.
inline double denominator_g(double kappa, double floor) {
    double y = kappa - floor;
    if (!(y > 0.0)) return 1.0;
    return g_value(y, kappa);
}

struct ExponentReport {
    ChebCombo combo;
    IntervalI interval;
    Rational kappa;
    Rational floor;
    bool feasible = false;
    Aspect aspect = Aspect::level;
    std::string preset;
    double g = 0.0;
    double numerator_level = 0.0;
    double numerator_weight = 0.0;
    std::optional<double> exponent_level;
    std::optional<double> exponent_weight;

    std::optional<double> exponent() const { return aspect == Aspect::level ? exponent_level : exponent_weight; }
};

inline ExponentReport exponent_bound(const ChebCombo& b, const CertifiedExtrema& ex, const ExponentParams& params) {
    ExponentReport r;
    r.combo = b;
    r.interval = ex.interval;
    r.kappa = ex.kappa_lo;
    r.floor = ex.floor_lo;
    r.feasible = ex.feasible;
    r.aspect = params.aspect;
    r.preset = params.preset;
    r.numerator_level = numerator_level(b, params);
    r.numerator_weight = numerator_weight(b, params);
    if (!r.feasible) return r;
    r.g = denominator_g(to_double_down(ex.kappa_lo), to_double_down(ex.floor_lo));
    r.exponent_level = r.numerator_level / (1.0 + r.g);
    r.exponent_weight = r.numerator_weight / (1.0 + r.g);
    return r;
}

inline ExponentReport exponent_bound(const ChebCombo& b, const IntervalI& interval, const ExponentParams& params) {
    return exponent_bound(b, kappa_of(b, interval), params);
}

}  // namespace lpi
