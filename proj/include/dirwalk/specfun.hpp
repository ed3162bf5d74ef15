#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "dirwalk/errors.hpp"
#include "dirwalk/rational.hpp"

namespace dirwalk::specfun {

// Truncation control for every infinite series in the library.
struct SeriesPolicy {
    double rel_tol = 1e-14;
    double abs_tol = 1e-300;
    std::uint64_t max_terms = 1'000'000;

    void validate() const {
        if (!(rel_tol > 0) || !(abs_tol > 0) || max_terms < 1)
            throw DomainError("SeriesPolicy: tolerances must be positive, max_terms >= 1");
    }
};

// Hypergeometric arguments are capped strictly inside the unit disc; the
// series slows to uselessness beyond this and all callers keep ||y|| < 1.
inline constexpr double kSeriesArgCap = 1.0 - 1e-6;

namespace detail {
inline bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}
}  // namespace detail

// Rising factorial a(a+1)...(a+k-1); exact overload for rational inputs.
inline Rational pochhammer(const Rational& a, unsigned k) {
    Rational out(1);
    for (unsigned i = 0; i < k; ++i) out *= a + Rational(i);
    return out;
}

inline double pochhammer(double a, unsigned k) {
    if (k == 0) return 1.0;
    if (a > 0.0 && k > 64) {
        // log-gamma form avoids overflow for long products
        return std::exp(std::lgamma(a + k) - std::lgamma(a));
    }
    double out = 1.0;
    for (unsigned i = 0; i < k; ++i) out *= a + i;
    return out;
}

// Gauss series sum_k (a)_k (b)_k / ((c)_k k!) z^k. Terminates exactly when a
// or b is a nonpositive integer (the term hits zero).
inline double gauss_2f1(double a, double b, double c, double z,
                        const SeriesPolicy& policy = {}) {
    policy.validate();
    if (detail::is_nonpositive_integer(c))
        throw DomainError("gauss_2f1: c must not be zero or a negative integer");
    if (!(std::fabs(z) <= kSeriesArgCap))
        throw DomainError("gauss_2f1: |z| must be <= 1 - 1e-6");

    double sum = 1.0;
    double term = 1.0;
    for (std::uint64_t k = 0; k < policy.max_terms; ++k) {
        term *= (a + static_cast<double>(k)) * (b + static_cast<double>(k)) /
                ((c + static_cast<double>(k)) * static_cast<double>(k + 1)) * z;
        if (term == 0.0) return sum;  // polynomial case
        sum += term;
        if (std::fabs(term) <= policy.rel_tol * std::fabs(sum) + policy.abs_tol) {
            // require one confirming term: the series may alternate
            double next = term * (a + static_cast<double>(k + 1)) *
                          (b + static_cast<double>(k + 1)) /
                          ((c + static_cast<double>(k + 1)) * static_cast<double>(k + 2)) * z;
            if (std::fabs(next) <= policy.rel_tol * std::fabs(sum) + policy.abs_tol)
                return sum + next;
            sum += next;
            term = next;
            ++k;
        }
    }
    throw ConvergenceError("gauss_2f1: series did not converge within max_terms");
}

// G(z) = 2/(1 + sqrt(1-z)), finite on (-inf, 1], G(0) = 1, G(1) = 2.
inline double g_func(double z) {
    if (z > 1.0) throw DomainError("g_func: z must be <= 1");
    return 2.0 / (1.0 + std::sqrt(1.0 - z));
}

namespace detail {

// Direct summation of L_d(z) = (1/2) sum_k (1/2)_k/(d/2)_k z^k / k.
inline double l_series(unsigned d, double z, const SeriesPolicy& policy) {
    double sum = 0.0;
    double ratio = 1.0;  // (1/2)_k / (d/2)_k * z^k
    const double half_d = 0.5 * d;
    for (std::uint64_t k = 1; k <= policy.max_terms; ++k) {
        ratio *= (static_cast<double>(k) - 0.5) / (half_d + static_cast<double>(k) - 1.0) * z;
        double term = 0.5 * ratio / static_cast<double>(k);
        sum += term;
        if (std::fabs(term) <= policy.rel_tol * std::fabs(sum) + policy.abs_tol) return sum;
    }
    throw ConvergenceError("l_exponent: series did not converge within max_terms");
}

}  // namespace detail

// Limit exponent L_d(z). Closed forms for d <= 3, truncated series above.
inline double l_exponent(unsigned d, double z, const SeriesPolicy& policy = {}) {
    if (d < 1) throw DomainError("l_exponent: d must be >= 1");
    if (!(z >= 0.0 && z <= kSeriesArgCap))
        throw DomainError("l_exponent: z must lie in [0, 1 - 1e-6]");
    if (z == 0.0) return 0.0;
    switch (d) {
        case 1:
            return -0.5 * std::log1p(-z);
        case 2:
            return std::log(g_func(z));
        case 3: {
            const double t = std::sqrt(z);
            // cancellation kills the closed form near t = 0
            if (t < 1e-4) return detail::l_series(3, z, policy);
            return 1.0 + (1.0 - t) / (2.0 * t) * std::log1p(-t) -
                   (1.0 + t) / (2.0 * t) * std::log1p(t);
        }
        default:
            return detail::l_series(d, z, policy);
    }
}

// f_Q(t) = (1/2) Integral_{-1}^{1} (1+ut)^{-Q} du, the transform kernel of the
// d = 3 limit law.
inline double f_q_closed(double q, double t) {
    if (!(q > 0.0)) throw DomainError("f_q_closed: Q must be positive");
    if (!(std::fabs(t) < 1.0)) throw DomainError("f_q_closed: |t| must be < 1");
    if (std::fabs(t) < 1e-4) {
        // 4-term even Taylor expansion, exact enough at this scale
        const double t2 = t * t;
        double sum = 1.0;
        double poch = 1.0;   // (Q)_{2j}
        double fact = 1.0;   // (2j)!
        for (unsigned j = 1; j <= 3; ++j) {
            poch *= (q + 2.0 * j - 2.0) * (q + 2.0 * j - 1.0);
            fact *= (2.0 * j - 1.0) * (2.0 * j);
            sum += poch / fact * std::pow(t2, j) / (2.0 * j + 1.0);
        }
        return sum;
    }
    if (q == 1.0) return std::log((1.0 + t) / (1.0 - t)) / (2.0 * t);
    return (std::pow(1.0 + t, 1.0 - q) - std::pow(1.0 - t, 1.0 - q)) /
           (2.0 * t * (1.0 - q));
}

namespace detail {

// Continued fraction for the regularized incomplete beta (Lentz's method).
inline double beta_cf(double p, double q, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    const double qab = p + q, qap = p + 1.0, qam = p - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const int m2 = 2 * m;
        double aa = m * (q - m) * x / ((qam + m2) * (p + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(p + m) * (qab + m) * x / ((p + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    throw ConvergenceError("reg_inc_beta: continued fraction did not converge");
}

}  // namespace detail

// Regularized incomplete beta I_x(p, q).
inline double reg_inc_beta(double p, double q, double x) {
    if (!(p > 0.0 && q > 0.0)) throw DomainError("reg_inc_beta: p, q must be positive");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("reg_inc_beta: x must lie in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double front = std::exp(std::lgamma(p + q) - std::lgamma(p) - std::lgamma(q) +
                                  p * std::log(x) + q * std::log1p(-x));
    if (x < (p + 1.0) / (p + q + 2.0)) return front * detail::beta_cf(p, q, x) / p;
    return 1.0 - front * detail::beta_cf(q, p, 1.0 - x) / q;
}

}  // namespace dirwalk::specfun
