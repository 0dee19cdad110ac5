#pragma once

// JSON and CSV/SVG serialization.

#include "lpi/forms.hpp"
#include "lpi/optimizer.hpp"
#include "lpi/verify.hpp"

#include <json.hpp>

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace lpi {

using json = nlohmann::json;

inline json to_json(const ChebCombo& b) {
    json a = json::array();
    for (auto c : b.coefficients()) a.push_back(c);
    return a;
}

inline ChebCombo combo_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("combo must be a JSON array");
    std::vector<std::uint32_t> b;
    for (const auto& x : j) {
        if (!x.is_number_integer() || x.get<long long>() < 0 || x.get<long long>() > 0xffffffffLL)
            throw ParseError("combo entries must be non-negative integers");
        b.push_back(x.get<std::uint32_t>());
    }
    return ChebCombo(std::move(b));
}

/// "b1,b2,...,bL".
inline ChebCombo parse_combo(const std::string& s) {
    std::vector<std::uint32_t> b;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &used);
        } catch (const std::exception&) {
            throw ParseError("bad combo entry '" + item + "'");
        }
        if (used != item.size() || v < 0 || v > 0xffffffffLL) throw ParseError("bad combo entry '" + item + "'");
        b.push_back(static_cast<std::uint32_t>(v));
    }
    ChebCombo c(std::move(b));
    if (!c.valid()) throw ParseError("combo must have a positive entry");
    return c;
}

/// "a,b" with rational or decimal endpoints.
inline IntervalI parse_interval(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw ParseError("interval '" + s + "' must look like a,b");
    Rational a = parse_rational(s.substr(0, comma)), b = parse_rational(s.substr(comma + 1));
    if (a < -2 || b > 2 || a > b) throw ParseError("interval must satisfy -2 <= a <= b <= 2");
    return IntervalI(a, b);
}

inline json to_json(const RationalPoly& p) {
    json a = json::array();
    for (const auto& c : p.coeffs) a.push_back(c.get_num().get_str() + "/" + c.get_den().get_str());
    return a;
}

inline RationalPoly poly_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("polynomial must be a JSON array");
    std::vector<Rational> c;
    for (const auto& x : j) {
        if (!x.is_string()) throw ParseError("polynomial coefficients must be rational strings");
        c.push_back(parse_rational(x.get<std::string>()));
    }
    return RationalPoly(std::move(c));
}

inline json rational_json(const Rational& q) { return {{"exact", q.get_str()}, {"decimal", format_decimal(q)}}; }

inline json to_json(const IntervalI& i) { return json::array({i.alpha.get_str(), i.beta.get_str()}); }

inline json to_json(const CertifiedExtrema& e) {
    return {{"interval", to_json(e.interval)},
            {"kappa_lo", rational_json(e.kappa_lo)},
            {"kappa_hi", rational_json(e.kappa_hi)},
            {"floor_lo", rational_json(e.floor_lo)},
            {"floor_hi", rational_json(e.floor_hi)},
            {"width", rational_json(e.width())},
            {"feasible", e.feasible}};
}

inline json optional_number(const std::optional<double>& x) {
    return x ? json(format_decimal(*x)) : json(nullptr);
}

inline json to_json(const ExponentReport& r) {
    json j{{"combo", to_json(r.combo)},
           {"interval", to_json(r.interval)},
           {"kappa", rational_json(r.kappa)},
           {"floor", rational_json(r.floor)},
           {"feasible", r.feasible},
           {"aspect", to_string(r.aspect)},
           {"lambda_preset", r.preset},
           {"numerator_level", format_decimal(r.numerator_level)},
           {"numerator_weight", format_decimal(r.numerator_weight)},
           {"epsilon", "asymptotic slack, not included"}};
    if (r.feasible) {
        j["g"] = format_decimal(r.g);
        j["exponent"] = optional_number(r.exponent());
        j["exponent_level"] = optional_number(r.exponent_level);
        j["exponent_weight"] = optional_number(r.exponent_weight);
    } else {
        j["g"] = nullptr;
        j["exponent"] = nullptr;
        j["exponent_level"] = nullptr;
        j["exponent_weight"] = nullptr;
    }
    return j;
}

inline json to_json(const VerifyReport& r) {
    json items = json::array();
    for (const auto& i : r.items)
        items.push_back({{"name", i.name}, {"value", format_decimal(i.value)}, {"expected", i.expected}, {"pass", i.pass}});
    return {{"items", items}, {"all_pass", r.all_pass()}};
}

// Heatmap CSV ---------------------------------------------------------------

inline void write_heatmap_csv(const HeatmapGrid& grid, int l_max, std::ostream& out) {
    out << "alpha,beta,feasible,exponent_level,exponent_weight,kappa,floor,g";
    for (int l = 1; l <= l_max; ++l) out << ",b" << l;
    out << '\n';
    for (const auto& c : grid.cells) {
        out << c.alpha.get_str() << ',' << c.beta.get_str() << ',';
        if (c.best) {
            const auto& r = *c.best;
            out << "1," << format_decimal(*r.exponent_level) << ',' << format_decimal(*r.exponent_weight) << ','
                << format_decimal(r.kappa) << ',' << format_decimal(r.floor) << ',' << format_decimal(r.g);
            for (int l = 1; l <= l_max; ++l) out << ',' << r.combo[l];
        } else {
            out << "0,inf,inf,,,";
            for (int l = 1; l <= l_max; ++l) out << ',';
        }
        out << '\n';
    }
}

struct HeatmapRow {
    Rational alpha, beta;
    bool feasible = false;
    double exponent_level = INFINITY, exponent_weight = INFINITY;
    double kappa = NAN, floor = NAN, g = NAN;
    ChebCombo combo;
};

inline std::vector<HeatmapRow> read_heatmap_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line) || line.rfind("alpha,beta,feasible,", 0) != 0) throw ParseError("missing heatmap header", 1);
    std::vector<HeatmapRow> rows;
    auto num = [&](const std::string& s) {
        if (s == "inf") return static_cast<double>(INFINITY);
        return parse_rational(s).get_d();
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) f.push_back(item);
        if (!line.empty() && line.back() == ',') f.push_back("");
        if (f.size() < 8) throw ParseError("too few heatmap columns", lineno);
        try {
            HeatmapRow r;
            r.alpha = parse_rational(f[0]);
            r.beta = parse_rational(f[1]);
            r.feasible = f[2] == "1";
            r.exponent_level = num(f[3]);
            r.exponent_weight = num(f[4]);
            if (r.feasible) {
                r.kappa = num(f[5]);
                r.floor = num(f[6]);
                r.g = num(f[7]);
                std::vector<std::uint32_t> b;
                for (std::size_t i = 8; i < f.size(); ++i) b.push_back(static_cast<std::uint32_t>(std::stoul(f[i])));
                r.combo = ChebCombo(std::move(b));
            }
            rows.push_back(std::move(r));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno);
        } catch (const std::exception& e) {
            throw ParseError(std::string("bad heatmap row: ") + e.what(), lineno);
        }
    }
    return rows;
}

/// Grayscale rendering: darker cells carry larger exponents, infeasible
/// cells stay blank. Alpha runs left to right, beta bottom to top.
inline void write_heatmap_svg(const HeatmapGrid& grid, std::ostream& out) {
    const double cell = 8.0, margin = 40.0;
    auto as = grid.alpha.points(), bs = grid.beta.points();
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& c : grid.cells)
        if (c.best) {
            lo = std::min(lo, *c.best->exponent());
            hi = std::max(hi, *c.best->exponent());
        }
    const double w = margin * 2 + cell * static_cast<double>(as.size());
    const double h = margin * 2 + cell * static_cast<double>(bs.size());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& c : grid.cells) {
        if (!c.best) continue;
        auto ia = std::lower_bound(as.begin(), as.end(), c.alpha) - as.begin();
        auto ib = std::lower_bound(bs.begin(), bs.end(), c.beta) - bs.begin();
        double e = *c.best->exponent();
        double shade = hi > lo ? (e - lo) / (hi - lo) : 0.0;
        int gray = static_cast<int>(std::lround(230.0 * (1.0 - shade)));
        double x = margin + cell * static_cast<double>(ia);
        double y = h - margin - cell * static_cast<double>(ib + 1);
        out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell << "\" height=\"" << cell
            << "\" fill=\"rgb(" << gray << ',' << gray << ',' << gray << ")\"><title>alpha=" << c.alpha.get_str()
            << " beta=" << c.beta.get_str() << " exponent=" << format_decimal(e) << "</title></rect>\n";
    }
    out << "<text x=\"" << w / 2 << "\" y=\"" << h - 10 << "\" text-anchor=\"middle\" font-size=\"12\">alpha</text>\n";
    out << "<text x=\"12\" y=\"" << h / 2 << "\" font-size=\"12\">beta</text>\n";
    out << "</svg>\n";
}

// Tau table CSV -------------------------------------------------------------

inline void write_tau_csv(const std::vector<Integer>& tau, std::ostream& out) {
    out << "n,tau\n";
    for (std::size_t n = 1; n < tau.size(); ++n) out << n << ',' << tau[n].get_str() << '\n';
}

inline std::vector<Integer> read_tau_csv(std::istream& in) {
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(in, line) || line != "n,tau") throw ParseError("missing 'n,tau' header", 1);
    std::vector<Integer> tau{0};
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw ParseError("expected 'n,tau'", lineno);
        if (std::to_string(tau.size()) != line.substr(0, comma)) throw ParseError("indices must run 1,2,3,...", lineno);
        Integer z;
        if (z.set_str(line.substr(comma + 1), 10) != 0) throw ParseError("malformed integer", lineno);
        tau.push_back(z);
    }
    return tau;
}

}  // namespace lpi
