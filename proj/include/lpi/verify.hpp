#pragma once

// Recomputes the published constants: theta_1, theta_2 and its crossover, and
// the certificate for the combination (b_2, b_3, b_4, b_5) = (3, 5, 4, 1) on
// I = [0, 2].

#include "lpi/exponent.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace lpi {

struct VerifyItem {
    std::string name;
    double value = 0;
    std::string expected;
    bool pass = false;
};

struct VerifyReport {
    std::vector<VerifyItem> items;
    bool all_pass() const {
        for (const auto& i : items)
            if (!i.pass) return false;
        return !items.empty();
    }
};

inline ChebCombo nonnegativity_combo() { return ChebCombo::from_terms({{2, 3}, {3, 5}, {4, 4}, {5, 1}}); }

inline VerifyReport verify_theorems(const ExponentParams& params = ExponentParams::convexity()) {
    VerifyReport r;
    auto add = [&](std::string name, double value, std::string expected, bool pass) {
        r.items.push_back({std::move(name), value, std::move(expected), pass});
    };

    const double t1 = theta1(1.0);
    add("theta1(1)", t1, "0.3956 +- 5e-4", std::abs(t1 - 0.3956) < 5e-4);
    add("theta1(1) closed form", t1, "exp(1/3)-1 +- 1e-9", std::abs(t1 - std::expm1(1.0 / 3.0)) < 1e-9);
    {
        bool increasing = true;
        double prev = -1;
        for (int i = 1; i <= 100; ++i) {
            double v = theta1(0.02 * i);
            // strict where G is resolved: above the bisection tolerance, below the cap at 1
            if (v < prev || (v == prev && v > kBisectTol && v < 1.0)) increasing = false;
            prev = v;
        }
        add("theta1 increasing on (0,2]", prev, "increasing on 100-point grid", increasing);
    }
    {
        double v = theta1(1e-6);
        add("theta1(0+)", v, "< 1e-3 at delta=1e-6", v < 1e-3);
    }

    const double t2 = theta2(0.5);
    add("theta2(1/2)", t2, "0.9093 +- 5e-4", std::abs(t2 - 0.9093) < 5e-4);
    add("theta2(1)", theta2(1.0), "1 exactly", theta2(1.0) == 1.0);
    const double cross = theta2_crossover();
    add("theta2 crossover", cross, "0.5305 +- 5e-4", std::abs(cross - 0.5305) < 5e-4);
    {
        bool shape = true;
        double prev = -1;
        for (int i = 1; i <= 100; ++i) {
            double d = 0.01 * i;
            double v = theta2(d);
            if (d >= cross) shape = shape && v == 1.0;
            else shape = shape && v < 1.0 && (v > prev || (v == prev && v <= kBisectTol));
            prev = v;
        }
        add("theta2 increasing then 1", prev, "increasing below crossover, 1 above", shape);
    }

    const ChebCombo combo = nonnegativity_combo();
    const IntervalI half(0, 2);
    const auto ex = kappa_of(combo, half);
    add("kappa on [0,2]", to_double_down(ex.kappa_lo), ">= 1/3", ex.kappa_lo >= Rational(1, 3));
    add("floor on [-2,2]", to_double_down(ex.floor_lo), ">= -10", ex.floor_lo >= -10);
    const auto rep = exponent_bound(combo, ex, params);
    add("numerator level", rep.numerator_level, "21 exactly", rep.numerator_level == 21.0);
    add("numerator weight", rep.numerator_weight, "24 exactly", rep.numerator_weight == 24.0);
    add("exponent level", rep.exponent_level.value_or(INFINITY), "<= 21",
        rep.exponent_level && *rep.exponent_level <= 21.0);
    add("exponent weight", rep.exponent_weight.value_or(INFINITY), "<= 24",
        rep.exponent_weight && *rep.exponent_weight <= 24.0);
    return r;
}

}  // namespace lpi
