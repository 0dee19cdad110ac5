#include "lpi/certify.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lpi;

namespace {

const ChebCombo kCertifiedCombo = ChebCombo::from_terms({{2, 3}, {3, 5}, {4, 4}, {5, 1}});

// Plain Sturm sequence on p itself (no square-free reduction); counts the
// distinct roots in (a, b] when p(a) != 0. Test-side oracle.
int oracle_sturm_count(const RationalPoly& p, const Rational& a, const Rational& b) {
    std::vector<RationalPoly> seq{p, p.derivative()};
    while (!seq.back().is_zero()) {
        RationalPoly r = seq[seq.size() - 2];
        const RationalPoly& d = seq.back();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            Rational f = r.coeffs.back() / d.coeffs.back();
            int s = r.degree() - d.degree();
            for (int k = 0; k <= d.degree(); ++k) r.coeffs[s + k] -= f * d.coeffs[k];
            r.trim();
        }
        for (auto& c : r.coeffs) c = -c;
        seq.push_back(r);
    }
    seq.pop_back();
    auto var = [&](const Rational& x) {
        int count = 0, last = 0;
        for (const auto& q : seq) {
            Rational v = q(x);
            int s = sgn(v);
            if (s == 0) continue;
            if (last && s != last) ++count;
            last = s;
        }
        return count;
    };
    return var(a) - var(b);
}

ChebCombo random_combo(std::mt19937_64& rng, unsigned budget, int l_max = 8) {
    for (;;) {
        std::vector<std::uint32_t> b(l_max, 0);
        unsigned left = budget;
        for (int tries = 0; tries < 6 && left > 0; ++tries) {
            int l = 1 + static_cast<int>(rng() % l_max);
            if (static_cast<unsigned>(l) > left) continue;
            unsigned c = 1 + rng() % (left / l);
            b[l - 1] += c;
            left -= c * l;
        }
        ChebCombo combo(b);
        if (combo.valid()) return combo;
    }
}

Rational random_point(std::mt19937_64& rng) {
    return make_rational(static_cast<long>(rng() % 801) - 400, 200);
}

Rational tolerance_for(const Rational& v) { return isolation_width() * (1 + abs(v)); }

}  // namespace

TEST(Isolate, Quadratic) {
    auto crit = isolate_critical_points(combo_poly(ChebCombo({0, 1})), -2, 2);
    ASSERT_EQ(crit.size(), 1u);
    EXPECT_LE(crit[0].lo, 0);
    EXPECT_GE(crit[0].hi, 0);
}

TEST(Isolate, LinearHasNone) {
    EXPECT_TRUE(isolate_critical_points(combo_poly(ChebCombo({1})), -2, 2).empty());
    EXPECT_TRUE(isolate_critical_points(RationalPoly({Rational(5)}), -2, 2).empty());
}

TEST(Isolate, Errors) {
    EXPECT_THROW(isolate_critical_points(RationalPoly(), -2, 2), std::invalid_argument);
    EXPECT_THROW(isolate_critical_points(combo_poly(ChebCombo({1})), 1, 1), std::domain_error);
}

TEST(Isolate, CertifiedComboMatchesSturmOracle) {
    auto p = combo_poly(kCertifiedCombo);
    auto d = p.derivative();
    ASSERT_NE(d(Rational(-2)), 0);
    int expected = oracle_sturm_count(d, -2, 2);
    EXPECT_EQ(expected, 3);  // the fourth root of P' lies near -2.451
    auto crit = isolate_critical_points(p, -2, 2);
    EXPECT_EQ(static_cast<int>(crit.size()), expected);
    for (const auto& c : crit) EXPECT_LE(c.hi - c.lo, isolation_width());
}

TEST(Isolate, RandomCombosMatchSturmOracleAndSeparate) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        auto combo = random_combo(rng, 20);
        auto p = combo_poly(combo);
        if (p.degree() < 2) continue;
        auto d = p.derivative();
        Rational lo = -2, hi = 2;
        int at_lo = d(lo) == 0 ? 1 : 0;
        Rational shifted = lo;  // oracle needs d(a) != 0
        if (at_lo) shifted = lo - Rational(1, 1 << 20);
        int expected = oracle_sturm_count(d, shifted, hi);
        auto crit = isolate_critical_points(p, lo, hi);
        ASSERT_EQ(static_cast<int>(crit.size()), expected) << trial;
        for (std::size_t i = 0; i < crit.size(); ++i) {
            EXPECT_LE(crit[i].hi - crit[i].lo, isolation_width());
            if (i) { EXPECT_LE(crit[i - 1].hi, crit[i].lo); }
            if (crit[i].lo < crit[i].hi) {
                EXPECT_EQ(oracle_sturm_count(d, crit[i].lo, crit[i].hi), 1);
            } else {
                EXPECT_EQ(d(crit[i].lo), 0);
            }
        }
    }
}

TEST(CertifiedMin, Examples) {
    auto e = certified_min(combo_poly(ChebCombo({0, 1})), -2, 2);
    EXPECT_LE(e.lo, -1);
    EXPECT_GE(e.hi, -1);
    EXPECT_LE(e.width(), tolerance_for(e.hi));

    e = certified_min(combo_poly(ChebCombo({1})), 1, 2);
    EXPECT_EQ(e.lo, 1);
    EXPECT_EQ(e.hi, 1);

    e = certified_min(combo_poly(kCertifiedCombo), -2, 2);
    EXPECT_GE(e.lo, -10);
    EXPECT_LE(e.width(), tolerance_for(e.hi));

    EXPECT_THROW(certified_min(combo_poly(ChebCombo({1})), 1, 0), std::domain_error);
}

TEST(CertifiedMin, PointDomain) {
    auto e = certified_min(combo_poly(ChebCombo({0, 1})), Rational(1, 2), Rational(1, 2));
    EXPECT_EQ(e.lo, Rational(-3, 4));
    EXPECT_EQ(e.hi, Rational(-3, 4));
}

TEST(KappaOf, Examples) {
    auto ex = kappa_of(ChebCombo({1}), IntervalI(-2, 1));
    EXPECT_EQ(ex.kappa_lo, 1);
    EXPECT_EQ(ex.kappa_hi, 1);
    EXPECT_TRUE(ex.feasible);

    ex = kappa_of(ChebCombo({0, 1}), IntervalI(-1, 1));
    EXPECT_LE(ex.kappa_lo, 0);
    EXPECT_GE(ex.kappa_hi, 0);
    EXPECT_FALSE(ex.feasible);

    ex = kappa_of(kCertifiedCombo, IntervalI(0, 2));
    EXPECT_GE(ex.kappa_lo, Rational(1, 3));
    EXPECT_TRUE(ex.feasible);
    EXPECT_GE(ex.floor_lo, -10);
}

TEST(KappaOf, EmptyComplementAndPointInterval) {
    EXPECT_THROW(kappa_of(ChebCombo({1}), IntervalI(-2, 2)), std::domain_error);
    auto ex = kappa_of(ChebCombo({0, 1}), IntervalI(Rational(1, 3), Rational(1, 3)));
    EXPECT_EQ(ex.kappa_lo, ex.floor_lo);
    EXPECT_EQ(ex.kappa_hi, ex.floor_hi);
    EXPECT_FALSE(ex.feasible);
}

TEST(KappaOf, IntervalValidation) {
    EXPECT_THROW(IntervalI(1, 0), std::domain_error);
    EXPECT_THROW(IntervalI(-3, 0), std::domain_error);
    EXPECT_THROW(IntervalI(0, Rational(5, 2)), std::domain_error);
}

TEST(FloorOf, Examples) {
    EXPECT_EQ(floor_of(ChebCombo({1})).lo, -2);
    auto f = floor_of(ChebCombo({0, 1}));
    EXPECT_LE(f.lo, -1);
    EXPECT_GE(f.hi, -1);
    EXPECT_GE(floor_of(kCertifiedCombo).lo, -10);
    EXPECT_THROW(floor_of(ChebCombo()), std::invalid_argument);
}

TEST(Certify, SoundAgainstDenseSampling) {
    std::mt19937_64 rng(99);
    const double slack = std::ldexp(1.0, -40);
    for (int trial = 0; trial < 25; ++trial) {
        auto combo = random_combo(rng, 12);
        Rational a = random_point(rng), b = random_point(rng);
        if (a > b) std::swap(a, b);
        if (a == -2 && b == 2) continue;
        auto ex = kappa_of(combo, IntervalI(a, b));
        const double klo = ex.kappa_lo.get_d(), flo = ex.floor_lo.get_d();
        const int n = 10000;
        for (int i = 0; i <= n; ++i) {
            Rational x = Rational(-2) + Rational(4 * i, n);
            double v = combo_eval(combo, x.get_d());
            EXPECT_GE(v, flo - slack);
            bool in_complement = (a > -2 && x <= a) || (b < 2 && x >= b);
            if (a < b && in_complement) { EXPECT_GE(v, klo - slack) << trial << " x=" << x.get_d(); }
        }
        EXPECT_LE(ex.floor_lo, ex.kappa_lo);
        EXPECT_LE(ex.kappa_lo, ex.kappa_hi);
        EXPECT_LE(ex.floor_hi - ex.floor_lo, tolerance_for(ex.floor_hi));
        EXPECT_LE(ex.kappa_hi - ex.kappa_lo, tolerance_for(ex.kappa_hi));
    }
}

TEST(Certify, MonotoneInInterval) {
    std::mt19937_64 rng(5);
    const Rational slack = pow2(-40);
    for (int trial = 0; trial < 40; ++trial) {
        auto combo = random_combo(rng, 16);
        Rational a = random_point(rng), b = random_point(rng);
        if (a > b) std::swap(a, b);
        Rational a2 = std::max<Rational>(Rational(-2), a - Rational(static_cast<long>(rng() % 50), 100));
        Rational b2 = std::min<Rational>(Rational(2), b + Rational(static_cast<long>(rng() % 50), 100));
        if (a2 == -2 && b2 == 2) continue;
        auto inner = kappa_of(combo, IntervalI(a, b));
        auto outer = kappa_of(combo, IntervalI(a2, b2));
        if (IntervalI(a, b).is_point()) continue;
        EXPECT_GE(outer.kappa_lo, inner.kappa_lo - slack);
        if (inner.feasible) { EXPECT_TRUE(outer.feasible); }
    }
}

TEST(Certify, FloorScalesWithMultiplier) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto combo = random_combo(rng, 10);
        auto f1 = floor_of(combo);
        for (std::uint32_t c : {2u, 3u, 7u}) {
            auto fc = floor_of(combo.scaled(c));
            Rational slack = c * f1.width() + fc.width();
            EXPECT_LE(abs(fc.lo - c * f1.lo), slack);
            EXPECT_LE(abs(fc.hi - c * f1.hi), slack);
        }
    }
}

TEST(Certify, ExactZeroAtEndpointIsInfeasible) {
    // x^2 - 1 vanishes exactly at +-1; sign decisions are exact.
    auto ex = kappa_of(ChebCombo({0, 1}), IntervalI(-1, 1));
    EXPECT_EQ(ex.kappa_lo, 0);
    EXPECT_FALSE(ex.feasible);
    ex = kappa_of(ChebCombo({0, 1}), IntervalI(Rational(-1000001, 1000000), Rational(1000001, 1000000)));
    EXPECT_TRUE(ex.feasible);
}

TEST(ComboMinimizer, SubintervalMinimaAgreeWithDirectMinimization) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        auto combo = random_combo(rng, 18);
        ComboMinimizer m(combo);
        Rational a = random_point(rng), b = random_point(rng);
        if (a > b) std::swap(a, b);
        auto direct = certified_min(m.poly(), a, b);
        auto shared = m.min_on(a, b);
        // both enclose the same minimum
        EXPECT_LE(shared.lo, direct.hi);
        EXPECT_LE(direct.lo, shared.hi);
        EXPECT_LE(shared.width(), tolerance_for(shared.hi));
    }
}
