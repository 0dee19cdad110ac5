#pragma once

// F(x; kappa) = integral_0^{x/(1+x)} h^(kappa-1) / (1-h) dh and its
// monotone inverse G(y; kappa) = max{x in [0,1] : F(x; kappa) <= 1/y}.

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lpi {

inline constexpr double kSeriesTol = 1e-14;
inline constexpr double kBisectTol = 1e-12;

/// Series form: sum_{k>=0} t^(kappa+k) / (kappa+k) with t = x/(1+x) <= 1/2.
/// Stops once the geometric tail bound t^(kappa+K) / ((kappa+K)(1-t)) drops
/// below `tol`.
inline double f_value(double x, double kappa, double tol = kSeriesTol) {
    if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("f_value: x must lie in [0,1]");
    if (!(kappa > 0.0)) throw std::domain_error("f_value: kappa must be positive");
    if (!(tol > 0.0)) throw std::domain_error("f_value: tolerance must be positive");
    if (x == 0.0) return 0.0;
    const double t = x / (1.0 + x);
    double power = std::exp(kappa * std::log(t));
    double sum = 0.0;
    for (int k = 0;; ++k) {
        const double e = kappa + k;
        if (power / (e * (1.0 - t)) < tol) break;
        sum += power / e;
        power *= t;
    }
    return sum;
}

inline double g_value(double y, double kappa, double series_tol = kSeriesTol, double bisect_tol = kBisectTol) {
    if (!(kappa > 0.0)) throw std::domain_error("g_value: kappa must be positive");
    if (!(bisect_tol > 0.0)) throw std::domain_error("g_value: tolerance must be positive");
    if (std::isinf(y) && y > 0) return 0.0;
    if (!(y > 0.0)) throw std::domain_error("g_value: y must be positive or +inf");
    const double target = 1.0 / y;
    if (f_value(1.0, kappa, series_tol) <= target) return 1.0;
    // F(lo) <= target < F(hi)
    double lo = 0.0, hi = 1.0;
    while (hi - lo > bisect_tol) {
        double mid = 0.5 * (lo + hi);
        if (f_value(mid, kappa, series_tol) <= target) lo = mid; else hi = mid;
    }
    return lo;
}

/// theta_1(delta) = G(2 + delta; delta), delta in (0, 2].
inline double theta1(double delta) {
    if (!(delta > 0.0 && delta <= 2.0)) throw std::domain_error("theta1: delta must lie in (0,2]");
    return g_value(2.0 + delta, delta);
}

/// theta_2(delta) = G((1+delta)^2; 2 delta + delta^2), delta in (0, 1].
inline double theta2(double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("theta2: delta must lie in (0,1]");
    return g_value((1.0 + delta) * (1.0 + delta), 2.0 * delta + delta * delta);
}

/// The delta* in (0,1) with (1+delta)^2 = 1 / F(1; 2 delta + delta^2); theta_2
/// is identically 1 on [delta*, 1].
inline double theta2_crossover(double tol = 1e-10) {
    // (1+d)^2 F(1; 2d+d^2) decreases through 1 on (0,1).
    auto excess = [](double d) { return (1.0 + d) * (1.0 + d) * f_value(1.0, 2.0 * d + d * d) - 1.0; };
    double lo = 1e-6, hi = 1.0;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (excess(mid) > 0.0) lo = mid; else hi = mid;
    }
    return hi;
}

/// 1 - (kappa - F) F(theta; kappa).
inline double vinogradov_factor(double theta, double kappa, double floor) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw std::domain_error("vinogradov_factor: theta must lie in [0,1]");
    if (!(kappa > 0.0)) throw std::domain_error("vinogradov_factor: kappa must be positive");
    if (!(floor <= kappa)) throw std::domain_error("vinogradov_factor: require F <= kappa");
    return 1.0 - (kappa - floor) * f_value(theta, kappa);
}

}  // namespace lpi
