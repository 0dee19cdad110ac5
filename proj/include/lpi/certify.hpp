#pragma once

// Certified minima of polynomials with exact rational arithmetic.
//
// Critical points are isolated with a Sturm sequence of the square-free part
// of P', refined by sign bisection to width <= 2^-48. The value of P at a
// critical point r inside [a, b] is bounded below by
//     max(P(a), P(b)) - M2 (b - a)^2 / 2,
// where M2 bounds |P''| on the domain (Taylor at r, since P'(r) = 0).

#include "lpi/cheb.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

namespace lpi {

inline const Rational& isolation_width() {
    static const Rational w = pow2(-48);
    return w;
}

namespace detail {

using IntPoly = std::vector<Integer>;

/// Positive multiple of p with coprime integer coefficients.
inline IntPoly primitive_part(const RationalPoly& p) {
    Integer den = 1;
    for (const auto& c : p.coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    IntPoly out;
    out.reserve(p.coeffs.size());
    Integer content = 0;
    for (const auto& c : p.coeffs) {
        out.push_back(c.get_num() * (den / c.get_den()));
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out.back().get_mpz_t());
    }
    if (content > 1)
        for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
    return out;
}

/// Sign of p(x) via homogeneous Horner on x = num/den (den > 0).
inline int sign_at(const IntPoly& p, const Rational& x) {
    if (p.empty()) return 0;
    const Integer& num = x.get_num();
    const Integer& den = x.get_den();
    Integer h = p.back();
    Integer dpow = 1;
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        dpow *= den;
        h = h * num + p[i] * dpow;
    }
    return sgn(h);
}

inline RationalPoly poly_rem(RationalPoly a, const RationalPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    const int db = b.degree();
    const Rational& lead = b.coeffs.back();
    while (!a.is_zero() && a.degree() >= db) {
        Rational f = a.coeffs.back() / lead;
        int shift = a.degree() - db;
        for (int k = 0; k <= db; ++k) a.coeffs[shift + k] -= f * b.coeffs[k];
        a.coeffs.pop_back();
        a.trim();
    }
    return a;
}

inline RationalPoly poly_quot(RationalPoly a, const RationalPoly& b) {
    const int db = b.degree();
    if (a.degree() < db) return {};
    std::vector<Rational> q(a.degree() - db + 1);
    const Rational& lead = b.coeffs.back();
    while (!a.is_zero() && a.degree() >= db) {
        Rational f = a.coeffs.back() / lead;
        int shift = a.degree() - db;
        q[shift] = f;
        for (int k = 0; k <= db; ++k) a.coeffs[shift + k] -= f * b.coeffs[k];
        a.coeffs.pop_back();
        a.trim();
    }
    return RationalPoly(std::move(q));
}

inline RationalPoly poly_gcd(RationalPoly a, RationalPoly b) {
    while (!b.is_zero()) {
        RationalPoly r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Square-free polynomial with its Sturm chain, for counting and refining
/// distinct real roots.
class SturmChain {
public:
    explicit SturmChain(const RationalPoly& p) {
        RationalPoly g = poly_gcd(p, p.derivative());
        RationalPoly s = g.degree() > 0 ? poly_quot(p, g) : p;
        RationalPoly prev = s, cur = s.derivative();
        chain_.push_back(primitive_part(prev));
        while (!cur.is_zero()) {
            chain_.push_back(primitive_part(cur));
            RationalPoly r = poly_rem(prev, cur);
            for (auto& c : r.coeffs) c = -c;
            prev = std::move(cur);
            cur = std::move(r);
        }
    }

    const IntPoly& squarefree() const { return chain_.front(); }
    int sign(const Rational& x) const { return sign_at(chain_.front(), x); }

    /// Sign variations; number of distinct roots in (x, y] is V(x) - V(y).
    int variations(const Rational& x) const {
        int count = 0, last = 0;
        for (const auto& p : chain_) {
            int s = sign_at(p, x);
            if (s == 0) continue;
            if (last != 0 && s != last) ++count;
            last = s;
        }
        return count;
    }

private:
    std::vector<IntPoly> chain_;
};

/// Bound on |P''| over [-radius, radius].
inline Rational second_derivative_bound(const RationalPoly& p, const Rational& radius) {
    Rational bound = 0, rpow = 1;
    for (std::size_t i = 2; i < p.coeffs.size(); ++i) {
        bound += abs(p.coeffs[i]) * static_cast<long>(i * (i - 1)) * rpow;
        rpow *= radius;
    }
    return bound;
}

}  // namespace detail

/// Closed interval [lo, hi] holding exactly one root of P' (a point when lo == hi).
struct CriticalInterval {
    Rational lo, hi;
    /// Sign of the square-free part of P' just left of hi (at hi when lo < hi).
    int sign_hi = 0;
};

namespace detail {

inline void refine_root(const SturmChain& sc, Rational a, Rational b, std::vector<CriticalInterval>& out) {
    int sb = sc.sign(b);
    if (sb == 0) {
        out.push_back({b, b, 0});
        return;
    }
    while (b - a > isolation_width()) {
        Rational m = (a + b) / 2;
        int sm = sc.sign(m);
        if (sm == 0) {
            out.push_back({m, m, 0});
            return;
        }
        if (sm == sb) b = m; else a = m;
    }
    out.push_back({a, b, sb});
}

inline void isolate(const SturmChain& sc, const Rational& a, const Rational& b, int va, int vb,
                    std::vector<CriticalInterval>& out) {
    int count = va - vb;
    if (count <= 0) return;
    if (count == 1) {
        refine_root(sc, a, b, out);
        return;
    }
    Rational m = (a + b) / 2;
    int vm = sc.variations(m);
    isolate(sc, a, m, va, vm, out);
    isolate(sc, m, b, vm, vb, out);
}

}  // namespace detail

/// Disjoint intervals, in increasing order, each holding exactly one distinct
/// real root of P' in [lo, hi]. Widths are at most 2^-48.
inline std::vector<CriticalInterval> isolate_critical_points(const RationalPoly& p, const Rational& lo,
                                                             const Rational& hi) {
    if (p.is_zero()) throw std::invalid_argument("isolate_critical_points: zero polynomial");
    if (!(lo < hi)) throw std::domain_error("isolate_critical_points: require lo < hi");
    std::vector<CriticalInterval> out;
    RationalPoly d = p.derivative();
    if (d.degree() <= 0) return out;
    detail::SturmChain sc(d);
    if (sc.sign(lo) == 0) out.push_back({lo, lo, 0});
    detail::isolate(sc, lo, hi, sc.variations(lo), sc.variations(hi), out);
    return out;
}

/// Rational enclosure [lo, hi] of a minimum.
struct Enclosure {
    Rational lo, hi;
    Rational width() const { return hi - lo; }
};

/// Critical point with certified bounds on P there: lower <= P(r), and
/// `attained` is the smaller of P at the two isolation endpoints.
struct CriticalValue {
    CriticalInterval where;
    Rational lower;
    Rational attained;
};

namespace detail {

inline Rational relative_target(const Rational& v) { return isolation_width() * (1 + abs(v)) / 2; }

inline CriticalValue bound_critical(const RationalPoly& p, const SturmChain& sc, CriticalInterval ci,
                                    const Rational& m2) {
    for (;;) {
        if (ci.lo == ci.hi) {
            Rational v = p(ci.lo);
            return {ci, v, v};
        }
        Rational pa = p(ci.lo), pb = p(ci.hi);
        Rational w = ci.hi - ci.lo;
        Rational lower = std::max(pa, pb) - m2 * w * w / 2;
        Rational attained = std::min(pa, pb);
        if (attained - lower <= relative_target(attained)) return {ci, lower, attained};
        Rational m = (ci.lo + ci.hi) / 2;
        int sm = sc.sign(m);
        if (sm == 0) ci = {m, m, 0};
        else if (sm == ci.sign_hi) ci.hi = m;
        else ci.lo = m;
    }
}

inline std::vector<CriticalValue> critical_values(const RationalPoly& p, const Rational& lo, const Rational& hi) {
    std::vector<CriticalValue> out;
    if (p.degree() < 2) return out;
    auto crit = isolate_critical_points(p, lo, hi);
    if (crit.empty()) return out;
    detail::SturmChain sc(p.derivative());
    Rational radius = std::max(abs(lo), abs(hi));
    Rational m2 = second_derivative_bound(p, radius);
    out.reserve(crit.size());
    for (auto& ci : crit) out.push_back(bound_critical(p, sc, ci, m2));
    return out;
}

}  // namespace detail

/// Certified enclosure of min_{[lo, hi]} P.
inline Enclosure certified_min(const RationalPoly& p, const Rational& lo, const Rational& hi) {
    if (lo > hi) throw std::domain_error("certified_min: lo > hi");
    Rational plo = p(lo);
    if (lo == hi) return {plo, plo};
    Rational phi = p(hi);
    Enclosure e{std::min(plo, phi), std::min(plo, phi)};
    for (const auto& cv : detail::critical_values(p, lo, hi)) {
        if (cv.lower < e.lo) e.lo = cv.lower;
        if (cv.attained < e.hi) e.hi = cv.attained;
    }
    return e;
}

/// I = [alpha, beta] inside [-2, 2].
struct IntervalI {
    Rational alpha, beta;

    IntervalI() = default;
    IntervalI(Rational a, Rational b) : alpha(std::move(a)), beta(std::move(b)) {
        if (alpha < -2 || beta > 2 || alpha > beta)
            throw std::domain_error("interval must satisfy -2 <= alpha <= beta <= 2");
    }
    bool is_point() const { return alpha == beta; }
    bool is_full() const { return alpha == -2 && beta == 2; }
    bool contains(double x) const { return alpha.get_d() <= x && x <= beta.get_d(); }
    bool contains(const Rational& x) const { return alpha <= x && x <= beta; }
    friend bool operator==(const IntervalI&, const IntervalI&) = default;
};

/// Minimizer for one combination polynomial on [-2, 2]. Critical points are
/// isolated once; minima over sub-intervals reuse them, so every query with
/// the same endpoints yields the same certified bounds.
class ComboMinimizer {
public:
    explicit ComboMinimizer(const ChebCombo& b) : combo_(b), poly_(combo_poly(b)), sturm_(poly_.derivative()) {
        const Rational lo = -2, hi = 2;
        if (poly_.degree() >= 2) {
            Rational m2 = detail::second_derivative_bound(poly_, hi);
            for (auto& ci : isolate_critical_points(poly_, lo, hi))
                crit_.push_back(detail::bound_critical(poly_, sturm_, ci, m2));
        }
        Rational pl = poly_(lo), ph = poly_(hi);
        floor_ = {std::min(pl, ph), std::min(pl, ph)};
        for (const auto& cv : crit_) {
            if (cv.lower < floor_.lo) floor_.lo = cv.lower;
            if (cv.attained < floor_.hi) floor_.hi = cv.attained;
        }
    }

    const ChebCombo& combo() const { return combo_; }
    const RationalPoly& poly() const { return poly_; }
    const std::vector<CriticalValue>& critical() const { return crit_; }
    const Enclosure& floor() const { return floor_; }
    Rational value(const Rational& x) const { return poly_(x); }

    /// Position of critical root i relative to x: -1 below, 0 equal, +1 above.
    int root_vs(std::size_t i, const Rational& x) const {
        const auto& w = crit_[i].where;
        if (w.lo == w.hi) return w.lo < x ? -1 : (w.lo == x ? 0 : 1);
        if (w.hi <= x) return -1;
        if (w.lo >= x) return 1;
        int s = sturm_.sign(x);
        if (s == 0) return 0;
        return s == w.sign_hi ? -1 : 1;
    }

    /// Certified min over the closed interval [lo, hi] within [-2, 2].
    Enclosure min_on(const Rational& lo, const Rational& hi) const {
        if (lo > hi || lo < -2 || hi > 2) throw std::domain_error("min_on: bad interval");
        Rational plo = poly_(lo);
        Rational phi = lo == hi ? plo : poly_(hi);
        Enclosure e{std::min(plo, phi), std::min(plo, phi)};
        for (std::size_t i = 0; i < crit_.size(); ++i) {
            const auto& cv = crit_[i];
            if (root_vs(i, lo) < 0 || root_vs(i, hi) > 0) continue;
            if (cv.lower < e.lo) e.lo = cv.lower;
            if (cv.where.lo >= lo && cv.where.hi <= hi && cv.attained < e.hi) e.hi = cv.attained;
        }
        return e;
    }

private:
    ChebCombo combo_;
    RationalPoly poly_;
    detail::SturmChain sturm_;
    std::vector<CriticalValue> crit_;
    Enclosure floor_;
};

/// kappa: certified min of P_b on the closed complement [-2, alpha] u [beta, 2];
/// floor: certified min of P_b on [-2, 2].
struct CertifiedExtrema {
    IntervalI interval;
    Rational kappa_lo, kappa_hi;
    Rational floor_lo, floor_hi;
    bool feasible = false;

    Rational width() const { return std::max(kappa_hi - kappa_lo, floor_hi - floor_lo); }
};

inline Enclosure floor_of(const ChebCombo& b) {
    if (!b.valid()) throw std::invalid_argument("floor_of: empty combo");
    return ComboMinimizer(b).floor();
}

inline CertifiedExtrema kappa_of(const ComboMinimizer& m, const IntervalI& interval) {
    if (interval.is_full()) throw std::domain_error("kappa_of: interval [-2,2] leaves an empty complement");
    CertifiedExtrema out;
    out.interval = interval;
    out.floor_lo = m.floor().lo;
    out.floor_hi = m.floor().hi;
    if (interval.is_point()) {
        out.kappa_lo = out.floor_lo;
        out.kappa_hi = out.floor_hi;
    } else {
        std::optional<Enclosure> k;
        auto merge = [&](Enclosure e) {
            if (!k) { k = std::move(e); return; }
            if (e.lo < k->lo) k->lo = e.lo;
            if (e.hi < k->hi) k->hi = e.hi;
        };
        if (interval.alpha > -2) merge(m.min_on(-2, interval.alpha));
        if (interval.beta < 2) merge(m.min_on(interval.beta, 2));
        out.kappa_lo = k->lo;
        out.kappa_hi = k->hi;
    }
    out.feasible = out.kappa_lo > 0;
    return out;
}

inline CertifiedExtrema kappa_of(const ChebCombo& b, const IntervalI& interval) {
    if (!b.valid()) throw std::invalid_argument("kappa_of: empty combo");
    return kappa_of(ComboMinimizer(b), interval);
}

}  // namespace lpi
