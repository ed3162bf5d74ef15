#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <string>

#include "dirwalk/errors.hpp"

namespace dirwalk {

// Exact rational arithmetic used by every coefficient pipeline. cpp_rational
// keeps values in lowest terms with a positive denominator, which is exactly
// the invariant the exact laws rely on.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Exact conversion: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("rational_from_double: non-finite input");
    return Rational(x);
}

// "num/den", or plain "num" when the value is an integer.
inline std::string to_fraction_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += '/';
        s += denominator(r).str();
    }
    return s;
}

// Parses "num/den", integer, or decimal strings ("3.7" -> 37/10) exactly.
inline Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw DomainError("rational_from_string: empty string");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw DomainError("rational_from_string: zero denominator");
        return Rational(num, den);
    }
    auto dot = s.find('.');
    std::string digits = dot == std::string::npos
                             ? s
                             : s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = dot == std::string::npos ? 0 : s.size() - dot - 1;
    bool negative = false;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
        negative = digits[0] == '-';
        digits.erase(0, 1);
    }
    // strip leading zeros so cpp_int does not read the string as octal
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError("rational_from_string: bad decimal");
    Integer den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    Integer num(digits);
    if (negative) num = -num;
    return Rational(num, den);
}

inline Rational rational_pow(const Rational& base, unsigned exp) {
    using boost::multiprecision::pow;
    if (exp == 0) return Rational(1);
    return Rational(pow(numerator(base), exp), pow(denominator(base), exp));
}

inline Integer binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Integer out = 1;
    for (unsigned i = 0; i < k; ++i) {
        out *= (n - i);
        out /= (i + 1);  // divides exactly: out is always a binomial prefix
    }
    return out;
}

inline Integer factorial(unsigned n) {
    Integer out = 1;
    for (unsigned i = 2; i <= n; ++i) out *= i;
    return out;
}

}  // namespace dirwalk
