#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "dirwalk/errors.hpp"
#include "dirwalk/laws.hpp"
#include "dirwalk/ratpoly.hpp"
#include "dirwalk/sampler.hpp"
#include "dirwalk/specfun.hpp"

namespace dirwalk::transform {

// T_p of a single uniform direction: 2F1(p/2, (p+1)/2; d/2; ||y||^2).
inline double t_single(double p, int d, double y_norm,
                       const specfun::SeriesPolicy& policy = {}) {
    if (!(p > 0.0)) throw DomainError("t_single: p must be positive");
    if (d < 1) throw DomainError("t_single: d must be >= 1");
    if (!(y_norm >= 0.0 && y_norm < 1.0)) throw DomainError("t_single: need 0 <= ||y|| < 1");
    return specfun::gauss_2f1(0.5 * p, 0.5 * (p + 1.0), 0.5 * d, y_norm * y_norm, policy);
}

// T_Q of the walk: product of per-step factors; repeated weights share one
// series evaluation.
inline double t_walk_analytic(const WalkConfig& config, double y_norm,
                              const specfun::SeriesPolicy& policy = {}) {
    config.validate();
    if (!(y_norm >= 0.0 && y_norm < 1.0))
        throw DomainError("t_walk_analytic: need 0 <= ||y|| < 1");
    std::map<double, int> multiplicity;
    for (double q : config.qs) ++multiplicity[q];
    double out = 1.0;
    for (const auto& [q, count] : multiplicity)
        out *= std::pow(t_single(q, config.d, y_norm, policy), count);
    return out;
}

// T_Q of the infinite stick-breaking walk: exp(Q * L_d(||y||^2)).
inline double t_limit(double total_mass, int d, double y_norm,
                      const specfun::SeriesPolicy& policy = {}) {
    if (!(total_mass > 0.0)) throw DomainError("t_limit: Q must be positive");
    if (!(y_norm >= 0.0 && y_norm < 1.0)) throw DomainError("t_limit: need 0 <= ||y|| < 1");
    return std::exp(total_mass * specfun::l_exponent(d, y_norm * y_norm, policy));
}

// Sample estimate of T_p at a directional query point, with its standard error.
inline std::pair<double, double> t_empirical(const SampleBatch& batch, double p,
                                             std::span<const double> y) {
    if (batch.count() == 0) throw DomainError("t_empirical: empty batch");
    if (!(p > 0.0)) throw DomainError("t_empirical: p must be positive");
    if (y.size() != static_cast<std::size_t>(batch.dim()))
        throw DimensionMismatch("t_empirical: query dimension mismatch");
    double norm2 = 0.0;
    for (double c : y) norm2 += c * c;
    if (!(norm2 < 1.0)) throw DomainError("t_empirical: need ||y|| < 1");

    const std::size_t n = batch.count();
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto pt = batch.point(i);
        double dot = 0.0;
        for (std::size_t c = 0; c < y.size(); ++c) dot += y[c] * pt[c];
        const double g = std::pow(1.0 + dot, -p);
        sum += g;
        sum_sq += g * g;
    }
    const double mean = sum / static_cast<double>(n);
    double se = 0.0;
    if (n > 1) {
        const double var =
            std::max(0.0, (sum_sq - sum * mean) / static_cast<double>(n - 1));
        se = std::sqrt(var / static_cast<double>(n));
    }
    return {mean, se};
}

// The three solvable shapes of T_a(R Theta) and the even moments of R they
// force: T = (1-z)^{-b}, T = G(z)^b, and T = G(z)^{b-1}/sqrt(1-z).
enum class TransformForm { inverse_power, g_power, g_power_over_sqrt };

inline double moments_from_transform(TransformForm form, double a, double b, int d,
                                     unsigned k) {
    if (!(a > 0.0 && b > 0.0)) throw DomainError("moments_from_transform: a, b must be > 0");
    if (d < 1) throw DomainError("moments_from_transform: d must be >= 1");
    using specfun::pochhammer;
    const double half_d = 0.5 * d;
    switch (form) {
        case TransformForm::inverse_power:
            return pochhammer(b, k) * pochhammer(half_d, k) /
                   (pochhammer(0.5 * a, k) * pochhammer(0.5 * (a + 1.0), k));
        case TransformForm::g_power:
            return pochhammer(b, 2 * k) * pochhammer(half_d, k) /
                   (pochhammer(a, 2 * k) * pochhammer(b + 1.0, k));
        case TransformForm::g_power_over_sqrt:
            return pochhammer(b, 2 * k) * pochhammer(half_d, k) /
                   (pochhammer(a, 2 * k) * pochhammer(b, k));
    }
    throw DomainError("moments_from_transform: unknown form");
}

// Exact Taylor coefficients (in z = ||y||^2) of the analytic walk transform.
inline std::vector<Rational> walk_taylor_coeffs(const WalkConfig& config, unsigned order) {
    config.validate();
    const Rational half_d(config.d, 2);
    std::vector<Rational> out(order + 1);
    out[0] = 1;
    for (double qd : config.qs) {
        const Rational q = rational_from_double(qd);
        out = series_product(out, hyp2f1_taylor(q / 2, (q + 1) / 2, half_d, order));
    }
    return out;
}

// Coefficients of T_a rebuilt from the even radial moments:
// coeff_k = (a)_{2k}/(2k)! * (1/2)_k/(d/2)_k * E(R^{2k}).
inline std::vector<Rational> moment_series_coeffs(const Rational& a, int d,
                                                  const std::vector<Rational>& moments) {
    std::vector<Rational> out(moments.size());
    for (unsigned k = 0; k < moments.size(); ++k) {
        const Rational num = specfun::pochhammer(a, 2 * k) *
                             specfun::pochhammer(Rational(1, 2), k);
        const Rational den = Rational(factorial(2 * k)) *
                             specfun::pochhammer(Rational(d, 2), k);
        out[k] = num / den * moments[k];
    }
    return out;
}

}  // namespace dirwalk::transform
