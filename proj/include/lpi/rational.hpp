#pragma once

#include "lpi/errors.hpp"

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lpi {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "p/q", an integer, or a plain decimal ("-0.35", "1.5e-2") into an
/// exact rational.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
    s = s.substr(start);
    if (s.empty()) throw ParseError("empty number");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        Integer num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
            throw ParseError("malformed fraction '" + s + "'");
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false, any_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any_digit = true;
            if (seen_point) ++frac_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw ParseError("malformed number '" + s + "'");
    long exponent = 0;
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') throw ParseError("malformed number '" + s + "'");
        std::size_t used = 0;
        try {
            exponent = std::stol(s.substr(i + 1), &used);
        } catch (const std::exception&) {
            throw ParseError("malformed exponent in '" + s + "'");
        }
        if (i + 1 + used != s.size()) throw ParseError("malformed exponent in '" + s + "'");
        if (exponent > 4000 || exponent < -4000) throw ParseError("exponent out of range in '" + s + "'");
    }
    Integer num(digits, 10);
    long shift = exponent - frac_digits;
    Integer ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    Rational q = shift >= 0 ? Rational(num * ten_pow) : Rational(num, ten_pow);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

/// Exact text form: "p/q", or "p" for integers.
inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

/// Largest double not above q.
inline double to_double_down(const Rational& q) {
    double d = q.get_d();
    if (Rational(d) > q) d = std::nextafter(d, -HUGE_VAL);
    return d;
}

/// Smallest double not below q.
inline double to_double_up(const Rational& q) {
    double d = q.get_d();
    if (Rational(d) < q) d = std::nextafter(d, HUGE_VAL);
    return d;
}

/// Decimal rendering with 15 significant digits.
inline std::string format_decimal(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

inline std::string format_decimal(const Rational& q) {
    // Nearest double first; 15 digits sit well inside its precision.
    double d = q.get_d();
    Rational err = abs(Rational(d) - q);
    for (double c : {std::nextafter(d, HUGE_VAL), std::nextafter(d, -HUGE_VAL)}) {
        Rational e = abs(Rational(c) - q);
        if (e < err) {
            err = e;
            d = c;
        }
    }
    return format_decimal(d);
}

inline Rational pow2(long e) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? Rational(p) : Rational(Integer(1), p);
}

}  // namespace lpi
