#pragma once

// Chebyshev polynomials of the second kind and non-negative integer
// combinations of U_l(x/2).

#include "lpi/rational.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace lpi {

inline constexpr int kMaxChebDegree = 64;

/// U_l in the monomial basis, exact integer coefficients in ascending degree.
struct ChebPoly {
    int degree = 0;
    std::vector<Integer> coeffs;
};

inline ChebPoly cheb_u(int degree) {
    if (degree < 0) throw std::domain_error("cheb_u: negative degree");
    if (degree > kMaxChebDegree)
        throw CapError("cheb_u: degree " + std::to_string(degree) + " exceeds cap " +
                       std::to_string(kMaxChebDegree));
    std::vector<Integer> prev{1};
    if (degree == 0) return {0, prev};
    std::vector<Integer> cur{0, 2};
    for (int l = 1; l < degree; ++l) {
        std::vector<Integer> next(cur.size() + 1);
        for (std::size_t k = 0; k < cur.size(); ++k) next[k + 1] += 2 * cur[k];
        for (std::size_t k = 0; k < prev.size(); ++k) next[k] -= prev[k];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return {degree, cur};
}

/// U_l(x) by the three-term recurrence.
inline double cheb_eval(int degree, double x) {
    if (degree < 0) throw std::domain_error("cheb_eval: negative degree");
    if (!(std::abs(x) <= 1.0)) throw std::domain_error("cheb_eval: |x| > 1");
    double prev = 1.0, cur = 2.0 * x;
    if (degree == 0) return prev;
    for (int l = 1; l < degree; ++l) prev = std::exchange(cur, 2.0 * x * cur - prev);
    return cur;
}

inline Rational cheb_eval(int degree, const Rational& x) {
    if (degree < 0) throw std::domain_error("cheb_eval: negative degree");
    if (abs(x) > 1) throw std::domain_error("cheb_eval: |x| > 1");
    Rational prev = 1, cur = 2 * x;
    if (degree == 0) return prev;
    for (int l = 1; l < degree; ++l) {
        Rational next = 2 * x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// Coefficient vector (b_1, ..., b_L) naming P_b(x) = sum_l b_l U_l(x/2).
/// Index 0 holds b_1; b_0 is always zero.
class ChebCombo {
public:
    ChebCombo() = default;
    explicit ChebCombo(std::vector<std::uint32_t> b) : b_(std::move(b)) {
        while (!b_.empty() && b_.back() == 0) b_.pop_back();
    }
    /// Builds from (l, b_l) pairs, e.g. {{2,3},{3,5},{4,4},{5,1}}.
    static ChebCombo from_terms(std::initializer_list<std::pair<int, std::uint32_t>> terms) {
        std::vector<std::uint32_t> b;
        for (auto [l, c] : terms) {
            if (l < 1) throw std::invalid_argument("ChebCombo: degree index must be >= 1");
            if (b.size() < static_cast<std::size_t>(l)) b.resize(l, 0);
            b[l - 1] = c;
        }
        return ChebCombo(std::move(b));
    }

    /// b_l for l >= 1 (zero beyond the stored length).
    std::uint32_t operator[](int l) const {
        return l >= 1 && static_cast<std::size_t>(l) <= b_.size() ? b_[l - 1] : 0;
    }
    const std::vector<std::uint32_t>& coefficients() const { return b_; }
    /// Largest l with b_l > 0 (0 for the zero combo).
    int degree() const { return static_cast<int>(b_.size()); }
    bool valid() const { return !b_.empty(); }

    std::uint64_t weighted_degree() const {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < b_.size(); ++i) s += (i + 1) * std::uint64_t{b_[i]};
        return s;
    }

    ChebCombo scaled(std::uint32_t c) const {
        auto b = b_;
        for (auto& x : b) x *= c;
        return ChebCombo(std::move(b));
    }

    friend bool operator==(const ChebCombo&, const ChebCombo&) = default;
    /// Lexicographic on (b_1, b_2, ...), zero-padded.
    friend std::strong_ordering operator<=>(const ChebCombo& x, const ChebCombo& y) {
        auto n = std::max(x.b_.size(), y.b_.size());
        for (std::size_t i = 1; i <= n; ++i)
            if (auto c = x[static_cast<int>(i)] <=> y[static_cast<int>(i)]; c != 0) return c;
        return std::strong_ordering::equal;
    }

private:
    std::vector<std::uint32_t> b_;
};

/// Exact polynomial in x, coefficients in ascending degree, no trailing zeros.
struct RationalPoly {
    std::vector<Rational> coeffs;

    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> c) : coeffs(std::move(c)) { trim(); }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }
    bool is_zero() const { return coeffs.empty(); }
    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
    double operator()(double x) const {
        double acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + it->get_d();
        return acc;
    }

    RationalPoly derivative() const {
        std::vector<Rational> d;
        for (std::size_t k = 1; k < coeffs.size(); ++k) d.push_back(coeffs[k] * static_cast<long>(k));
        return RationalPoly(std::move(d));
    }

    friend bool operator==(const RationalPoly&, const RationalPoly&) = default;
};

/// P_b(x) = sum_l b_l U_l(x/2) in the monomial basis.
inline RationalPoly combo_poly(const ChebCombo& b) {
    if (!b.valid()) throw std::invalid_argument("combo_poly: empty combo");
    std::vector<Rational> c(b.degree() + 1);
    for (int l = 1; l <= b.degree(); ++l) {
        if (b[l] == 0) continue;
        auto u = cheb_u(l);
        for (int k = 0; k <= l; ++k) {
            if (u.coeffs[k] == 0) continue;
            // coefficient of x^k in U_l(x/2) is c_k / 2^k
            c[k] += Rational(u.coeffs[k] * b[l]) * pow2(-k);
        }
    }
    return RationalPoly(std::move(c));
}

/// P_b(x) via the recurrence for U_l(x/2): u_{l+1} = x u_l - u_{l-1}.
inline double combo_eval(const ChebCombo& b, double x) {
    if (!(std::abs(x) <= 2.0)) throw std::domain_error("combo_eval: |x| > 2");
    double prev = 1.0, cur = x, sum = 0.0;
    for (int l = 1; l <= b.degree(); ++l) {
        sum += b[l] * cur;
        prev = std::exchange(cur, x * cur - prev);
    }
    return sum;
}

inline Rational combo_eval(const ChebCombo& b, const Rational& x) {
    if (abs(x) > 2) throw std::domain_error("combo_eval: |x| > 2");
    Rational prev = 1, cur = x, sum = 0;
    for (int l = 1; l <= b.degree(); ++l) {
        sum += b[l] * cur;
        Rational next = x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return sum;
}

}  // namespace lpi
