#include "lpi/forms.hpp"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "oracles.hpp"

#include <numeric>
#include <sstream>

using namespace lpi;
using ::testing::HasSubstr;

namespace {

const std::vector<Integer>& tau_10k() {
    static const auto tau = delta_tau(10000);
    return tau;
}

Integer power(unsigned long p, unsigned long e) {
    Integer z;
    mpz_ui_pow_ui(z.get_mpz_t(), p, e);
    return z;
}

std::string parse_error_of(const std::string& csv) {
    std::istringstream in(csv);
    try {
        read_coefficients(in);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(DeltaTau, KnownValues) {
    const auto& tau = tau_10k();
    ASSERT_EQ(tau.size(), 10001u);
    EXPECT_EQ(tau[0], 0);
    EXPECT_EQ(tau[1], 1);
    EXPECT_EQ(tau[2], -24);
    EXPECT_EQ(tau[3], 252);
    EXPECT_EQ(tau[4], -1472);
    EXPECT_EQ(tau[5], 4830);
    EXPECT_EQ(tau[11], 534612);
}

TEST(DeltaTau, MatchesDirectProductExpansion) {
    auto expected = oracle::tau_by_product(300);
    auto tau = delta_tau(300);
    for (int n = 1; n <= 300; ++n) EXPECT_EQ(tau[n], expected[n]) << n;
}

TEST(DeltaTau, Multiplicative) {
    const auto& tau = tau_10k();
    for (unsigned m = 2; m <= 300; ++m)
        for (unsigned n = m + 1; n <= 300 && m * n <= 10000; ++n)
            if (std::gcd(m, n) == 1) { EXPECT_EQ(tau[m * n], tau[m] * tau[n]) << m << "*" << n; }
}

TEST(DeltaTau, HeckeRecurrenceAtPrimePowers) {
    const auto& tau = tau_10k();
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul}) {
        const Integer p11 = power(p, 11);
        for (unsigned long q = p; q * p <= 10000; q *= p) {
            Integer prev = q == p ? Integer(1) : tau[q / p];
            EXPECT_EQ(tau[q * p], tau[p] * tau[q] - p11 * prev) << p << "^k=" << q;
        }
    }
}

TEST(DeltaTau, Limits) {
    EXPECT_THROW(delta_tau(0), std::domain_error);
    EXPECT_THROW(delta_tau(kMaxTauIndex + 1), CapError);
}

TEST(Normalize, Examples) {
    EXPECT_NEAR(normalize(Integer(-24), 2, 12), -0.5303301, 1e-7);
    EXPECT_NEAR(normalize(Integer(534612), 11, 12), 1.0009, 1e-4);
    EXPECT_NEAR(normalize(Integer(2), 2, 2), std::sqrt(2.0), 1e-15);
    EXPECT_THROW(normalize(Integer(3), 2, 2), IntegrityError);
    EXPECT_THROW(normalize(Integer(1), 2, 3), std::domain_error);
}

TEST(DeltaTable, DeligneBoundHolds) {
    auto t = delta_table(10000);
    EXPECT_EQ(t.weight, 12);
    EXPECT_EQ(t.entries.size(), 1229u);
    EXPECT_EQ(t.extent(), 9973u);
    for (const auto& e : t.entries) EXPECT_LE(std::abs(e.a), 2.0) << e.p;
}

TEST(CoefficientCsv, ReadsHeadersAndModes) {
    std::istringstream exact("# weight 12\n# mode exact\np,value\n2,-24\n3,252\n");
    auto t = read_coefficients(exact);
    EXPECT_EQ(t.level, 1u);
    ASSERT_EQ(t.entries.size(), 2u);
    EXPECT_EQ(*t.entries[0].eigenvalue, -24);
    EXPECT_NEAR(t.entries[0].a, -0.5303301, 1e-7);

    std::istringstream floating("# weight 2\n# level 11\n3,-0.577\n2,-1.414\n");
    t = read_coefficients(floating);
    EXPECT_EQ(t.level, 11u);
    EXPECT_EQ(t.mode, CoefficientMode::floating);
    ASSERT_EQ(t.entries.size(), 2u);
    EXPECT_EQ(t.entries[0].p, 2u);  // sorted
    EXPECT_FALSE(t.entries[0].eigenvalue);
}

TEST(CoefficientCsv, ErrorsCarryLineNumbers) {
    EXPECT_THAT(parse_error_of("# weight 12\n# mode exact\n2,-24\n4,-1472\n"), HasSubstr("line 4"));
    EXPECT_THAT(parse_error_of("# weight 12\n# mode exact\n4,-1472\n"), HasSubstr("not prime"));
    EXPECT_THAT(parse_error_of("# weight 2\n2,1.0\n3,2.5\n"), HasSubstr("line 3"));
    EXPECT_THAT(parse_error_of("# weight 2\n2,1.0\n3,2.5\n"), HasSubstr("Deligne"));
    EXPECT_THAT(parse_error_of("# weight 2\n2,abc\n"), HasSubstr("line 2"));
    EXPECT_THAT(parse_error_of("# weight 2\n2,1,3\n"), HasSubstr("line 2"));
    EXPECT_THAT(parse_error_of("# weight 2\n2,1\n2,1\n"), HasSubstr("duplicate"));
    EXPECT_THAT(parse_error_of("# weight 12\n# mode exact\n2,1000000\n"), HasSubstr("line 3"));
    EXPECT_THAT(parse_error_of("2,1\n"), HasSubstr("weight"));
    EXPECT_THAT(parse_error_of("# weight 3\n"), HasSubstr("line 1"));
    EXPECT_THAT(parse_error_of("# weight 2\n# mode fuzzy\n"), HasSubstr("line 2"));
    EXPECT_THROW(load_coefficients("/nonexistent/coeffs.csv"), ParseError);
}

TEST(CoefficientCsv, RoundTrip) {
    auto t = delta_table(2000);
    std::stringstream ss;
    write_coefficients(t, ss);
    auto back = read_coefficients(ss);
    ASSERT_EQ(back.entries.size(), t.entries.size());
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        EXPECT_EQ(back.entries[i].p, t.entries[i].p);
        EXPECT_EQ(*back.entries[i].eigenvalue, *t.entries[i].eigenvalue);
        EXPECT_EQ(back.entries[i].a, t.entries[i].a);
    }

    CoefficientTable f;
    f.weight = 2;
    f.entries = {{2, -1.4142135623730951, std::nullopt}, {3, 0.1, std::nullopt}};
    std::stringstream fs;
    write_coefficients(f, fs);
    auto fb = read_coefficients(fs);
    EXPECT_EQ(fb.entries[0].a, f.entries[0].a);
    EXPECT_EQ(fb.entries[1].a, f.entries[1].a);
}

TEST(LeastPrime, DeltaExamples) {
    auto t = delta_table(10000);
    EXPECT_EQ(least_prime_in(t, IntervalI(-2, 0)).prime, 2u);
    EXPECT_EQ(least_prime_in(t, IntervalI(1, 2)).prime, 11u);
    auto none = least_prime_in(t, IntervalI(2, 2));
    EXPECT_FALSE(none.prime);
    EXPECT_EQ(none.extent, 9973u);
}

TEST(LeastPrime, AgreesWithLinearScan) {
    auto t = delta_table(3000);
    for (int i = 0; i < 16; ++i)
        for (int j = i; j <= 16; ++j) {
            Rational a = Rational(-2) + Rational(i, 4), b = Rational(-2) + Rational(j, 4);
            std::optional<std::uint64_t> expected;
            for (const auto& e : t.entries)
                if (a.get_d() <= e.a && e.a <= b.get_d()) {
                    expected = e.p;
                    break;
                }
            EXPECT_EQ(least_prime_in(t, IntervalI(a, b)).prime, expected) << a << "," << b;
        }
    EXPECT_THROW(least_prime_in(CoefficientTable{}, IntervalI(0, 1)), std::domain_error);
}

TEST(Semicircle, Measures) {
    EXPECT_EQ(semicircle_measure(IntervalI(-2, 2)), 1.0);
    EXPECT_EQ(semicircle_measure(IntervalI(0, 2)), 0.5);
    EXPECT_NEAR(semicircle_measure(IntervalI(-1, 1)), 1.0 / 3.0 + std::sqrt(3.0) / (2 * std::numbers::pi), 1e-14);
    EXPECT_EQ(semicircle_measure(IntervalI(1, 1)), 0.0);
}

TEST(Semicircle, MatchesNumericalIntegral) {
    auto density = [](double x) { return std::sqrt(4 - x * x) / (2 * std::numbers::pi); };
    for (auto [a, b] : std::vector<std::pair<int, int>>{{-2, -1}, {-1, 0}, {0, 1}, {-2, 1}}) {
        double s = oracle::integrate(density, a, b, 1e-13);
        EXPECT_NEAR(semicircle_measure(IntervalI(a, b)), s, 1e-9);
    }
}

TEST(SatoTate, SingleBinHoldsEverything) {
    auto r = sato_tate_report(delta_table(1000), 1);
    ASSERT_EQ(r.bins.size(), 1u);
    EXPECT_EQ(r.bins[0].count, r.primes);
    EXPECT_EQ(r.bins[0].fraction, 1.0);
    EXPECT_NEAR(r.bins[0].deviation, 0.0, 1e-15);
}

TEST(SatoTate, DeltaFollowsSemicircle) {
    auto r = sato_tate_report(delta_table(10000), 8);
    EXPECT_EQ(r.primes, 1229u);
    std::size_t total = 0;
    double mass = 0;
    for (const auto& b : r.bins) {
        total += b.count;
        mass += b.measure;
    }
    EXPECT_EQ(total, r.primes);
    EXPECT_NEAR(mass, 1.0, 1e-12);
    EXPECT_LT(r.max_abs_deviation, 0.05);
    EXPECT_TRUE(r.hecke_ok());
    ASSERT_FALSE(r.hecke.empty());
    EXPECT_EQ(r.hecke[0].p, 2u);  // tau(4) = tau(2)^2 - 2^11
    EXPECT_TRUE(r.hecke[0].exact_ok);
    EXPECT_EQ(r.hecke.size(), 25u);  // primes up to 100
    EXPECT_THROW(sato_tate_report(delta_table(100), 0), std::domain_error);
}
