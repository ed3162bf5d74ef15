#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "dirwalk/errors.hpp"
#include "dirwalk/exactlaw.hpp"
#include "dirwalk/laws.hpp"
#include "dirwalk/sampler.hpp"
#include "dirwalk/specfun.hpp"
#include "dirwalk/transform.hpp"

namespace dirwalk::verify {

// ---------------------------------------------------------------------------
// Kolmogorov asymptotic distribution.

inline double kolmogorov_cdf(double x) {
    constexpr double pi = std::numbers::pi_v<double>;
    if (x <= 0.0) return 0.0;
    if (x < 1.18) {
        // theta-series form, fast for small arguments
        const double t = std::exp(-pi * pi / (8.0 * x * x));
        const double sum = t + std::pow(t, 9) + std::pow(t, 25) + std::pow(t, 49);
        return std::sqrt(2.0 * pi) / x * sum;
    }
    double sum = 0.0;
    for (int k = 1; k <= 50; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-18) break;
    }
    return 1.0 - 2.0 * sum;
}

inline double kolmogorov_quantile(double prob) {
    if (!(prob > 0.0 && prob < 1.0)) throw DomainError("kolmogorov_quantile: p in (0,1)");
    double lo = 1e-3, hi = 4.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (kolmogorov_cdf(mid) < prob ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// Two-sided KS statistic against a reference CDF; cdf_left supplies the left
// limit and tied sample values are treated as one empirical jump, so laws
// with atoms are handled correctly.
template <typename Cdf, typename CdfLeft>
double ks_statistic(std::vector<double> values, Cdf cdf, CdfLeft cdf_left) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    std::size_t i = 0;
    while (i < values.size()) {
        std::size_t j = i;
        while (j < values.size() && values[j] == values[i]) ++j;
        d = std::max(d, std::fabs(static_cast<double>(j) / n - cdf(values[i])));
        d = std::max(d, std::fabs(cdf_left(values[i]) - static_cast<double>(i) / n));
        i = j;
    }
    return d;
}

template <typename Cdf>
double ks_statistic(std::vector<double> values, Cdf cdf) {
    return ks_statistic(std::move(values), cdf, cdf);
}

// ---------------------------------------------------------------------------
// Reports.

struct GofReport {
    std::string name;
    std::size_t sample_count = 0;
    double statistic = 0.0;
    double critical = 0.0;
    bool pass = false;
    std::string config;
};

struct MomentRow {
    unsigned k = 0;
    double empirical = 0.0;
    double exact = 0.0;
    double std_error = 0.0;
    double z_score = 0.0;
};

struct MomentReport {
    std::vector<MomentRow> rows;
    std::string config;
};

struct SuiteEntry {
    std::string name;
    double statistic = 0.0;
    double critical = 0.0;
    bool pass = false;
};

// KS goodness of fit of a batch against an exact radial law at level 0.01.
inline GofReport ks_radial(const SampleBatch& batch, const RadialLaw& law,
                           std::string name = "ks", double level = 0.01) {
    if (std::holds_alternative<EmpiricalLaw>(law) ||
        std::holds_alternative<GammaRatioMellinLaw>(law))
        throw UnsupportedLaw("ks_radial: law has no computable CDF");
    const bool signed_values = std::holds_alternative<MixedSignedLaw>(law);
    if (signed_values && batch.dim() != 1)
        throw DimensionMismatch("ks_radial: mixed signed laws are d = 1 only");
    std::vector<double> values = signed_values ? batch.law_values() : batch.sq_radii();
    if (signed_values) {
        // all-equal sign draws land on the endpoint atoms up to rounding
        for (double& v : values) {
            if (std::fabs(v - 1.0) < 1e-9) v = 1.0;
            if (std::fabs(v + 1.0) < 1e-9) v = -1.0;
        }
    }
    GofReport report;
    report.name = std::move(name);
    report.sample_count = values.size();
    report.statistic = ks_statistic(
        std::move(values), [&law](double v) { return law_cdf(law, v); },
        [&law](double v) { return law_cdf_left(law, v); });
    report.critical = kolmogorov_quantile(1.0 - level) /
                      std::sqrt(static_cast<double>(report.sample_count));
    report.pass = report.statistic < report.critical;
    report.config = batch.meta().config;
    return report;
}

// Empirical vs exact moments with z-scores. Mixed signed laws compare the even
// moments of the signed variable; radial laws the moments of ||W||^2.
inline MomentReport moment_panel(const SampleBatch& batch, const RadialLaw& law,
                                 unsigned k_max) {
    if (k_max < 1) throw DomainError("moment_panel: k_max must be >= 1");
    const bool signed_values = std::holds_alternative<MixedSignedLaw>(law);
    const std::vector<double> values = signed_values ? batch.law_values() : batch.sq_radii();
    const double n = static_cast<double>(values.size());
    MomentReport report;
    report.config = batch.meta().config;
    for (unsigned k = 0; k <= k_max; ++k) {
        double sum = 0.0, sum_sq = 0.0;
        for (double v : values) {
            const double g = signed_values ? std::pow(v * v, k) : std::pow(v, k);
            sum += g;
            sum_sq += g * g;
        }
        MomentRow row;
        row.k = k;
        row.empirical = sum / n;
        row.exact = to_double(law_moment(law, k));
        if (k > 0 && values.size() > 1) {
            const double var = std::max(0.0, (sum_sq - sum * row.empirical) / (n - 1.0));
            row.std_error = std::sqrt(var / n);
        }
        row.z_score = row.std_error > 0.0 ? (row.empirical - row.exact) / row.std_error : 0.0;
        report.rows.push_back(row);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Deterministic identity residual suite.

namespace detail {

inline std::vector<double> grid(double lo, double hi, int steps) {
    std::vector<double> out;
    for (int i = 0; i <= steps; ++i)
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / steps);
    return out;
}

// direct summation of sum_{m>=1} (1/2)_m/(d/2)_m z^m/(2m), independent of
// l_exponent's own code path
inline double l_series_direct(int d, double z) {
    double sum = 0.0, ratio = 1.0;
    for (int m = 1; m <= 400000; ++m) {
        ratio *= (m - 0.5) / (0.5 * d + m - 1.0) * z;
        const double term = 0.5 * ratio / m;
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum) + 1e-300) break;
    }
    return sum;
}

inline double max_coeff_gap(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    double gap = 0.0;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
        gap = std::max(gap, std::fabs(to_double(a[i] - b[i])));
    return gap;
}

}  // namespace detail

// Runs every closed-form residual check at the given policy; all entries are
// deterministic. Pass threshold is 1e-10 throughout.
inline std::vector<SuiteEntry> identity_suite(const specfun::SeriesPolicy& policy = {}) {
    using specfun::g_func;
    using specfun::gauss_2f1;
    std::vector<SuiteEntry> out;
    const auto push = [&out](std::string name, double residual, double tol = 1e-10) {
        out.push_back(SuiteEntry{std::move(name), residual, tol, residual < tol});
    };

    {  // quadratic transformation 2F1(2a,2b;a+b+1/2;u) = 2F1(a,b;a+b+1/2;4u-4u^2)
        double r = 0.0;
        for (double a : {0.3, 0.7, 1.0, 1.6, 2.5})
            for (double b : {0.4, 0.9, 1.3, 2.0, 3.1})
                for (double u : detail::grid(0.025, 0.45, 9)) {
                    const double c = a + b + 0.5;
                    r = std::max(r, std::fabs(gauss_2f1(2 * a, 2 * b, c, u, policy) -
                                              gauss_2f1(a, b, c, 4 * u - 4 * u * u, policy)));
                }
        push("quadratic_transformation", r);
    }
    {  // 2F1(c/2,(c+1)/2;c+1;z) = G(z)^c
        double r = 0.0;
        for (double c : {0.5, 1.0, 2.0, 3.7})
            for (double z : detail::grid(0.0, 0.9, 18))
                r = std::max(r, std::fabs(gauss_2f1(0.5 * c, 0.5 * (c + 1), c + 1, z, policy) -
                                          std::pow(g_func(z), c)));
        push("g_power_closed_form", r);
    }
    {  // 2F1(c/2,(c+1)/2;c;z) = G(z)^{c-1}/sqrt(1-z)
        double r = 0.0;
        for (double c : {1.5, 2.0, 4.0})
            for (double z : detail::grid(0.0, 0.9, 18))
                r = std::max(r, std::fabs(gauss_2f1(0.5 * c, 0.5 * (c + 1), c, z, policy) -
                                          std::pow(g_func(z), c - 1) / std::sqrt(1.0 - z)));
        push("g_power_sqrt_closed_form", r);
    }
    {  // sum (1/2)_m z^m/(m! 2m) = log G(z)
        double r = 0.0;
        for (double z : detail::grid(0.05, 0.9, 17)) {
            double sum = 0.0, term = 1.0;
            for (int m = 1; m <= 200000; ++m) {
                term *= (m - 0.5) / m * z;
                sum += term / (2.0 * m);
                if (term < 1e-17) break;
            }
            r = std::max(r, std::fabs(sum - std::log(g_func(z))));
        }
        push("log_g_series", r);
    }
    {  // Euler identity
        double r = 0.0;
        for (double p : {0.5, 1.2})
            for (double q : {0.8, 2.3})
                for (double rr : {2.1, 3.0})
                    for (double z : detail::grid(0.0, 0.9, 9))
                        r = std::max(r, std::fabs(gauss_2f1(p, q, rr, z, policy) -
                                                  std::pow(1.0 - z, rr - p - q) *
                                                      gauss_2f1(rr - p, rr - q, rr, z, policy)));
        push("euler_identity", r);
    }
    {  // l_exponent closed forms vs direct series
        double r = 0.0;
        for (int d : {1, 2, 3})
            for (double z : detail::grid(0.0, 0.9, 18))
                r = std::max(r, std::fabs(specfun::l_exponent(d, z, policy) -
                                          detail::l_series_direct(d, z)));
        push("limit_exponent_closed_forms", r, 1e-12);
    }
    {  // f_Q kernel vs its hypergeometric form
        double r = 0.0;
        for (double q : {0.5, 1.0, 2.0, 3.5})
            for (double t : detail::grid(0.0, 0.9, 9))
                r = std::max(r, std::fabs(specfun::f_q_closed(q, t) -
                                          gauss_2f1(0.5 * q, 0.5 * (q + 1), 1.5, t * t, policy)));
        push("f_q_closed_form", r);
    }
    {  // incomplete beta symmetry
        double r = 0.0;
        for (double p : {0.5, 1.0, 2.5, 7.0})
            for (double q : {0.5, 1.3, 4.0})
                for (double x : detail::grid(0.0, 1.0, 20))
                    r = std::max(r, std::fabs(specfun::reg_inc_beta(p, q, x) +
                                              specfun::reg_inc_beta(q, p, 1.0 - x) - 1.0));
        push("incomplete_beta_symmetry", r, 1e-12);
    }
    {  // hyperuniform families: exact coefficient match at order 8
        struct Case {
            int d, n;
            double q, k;
        };
        const Case cases[] = {{2, 3, 1.0, 4}, {3, 2, 2.0, 5},   {4, 3, 3.0, 10},
                              {3, 3, 0.5, 5}, {5, 4, 1.5, 14},  {4, 2, 1.0, 6},
                              {6, 2, 2.0, 10}};
        double r = 0.0;
        for (const auto& c : cases) {
            WalkConfig cfg{c.d, std::vector<double>(static_cast<std::size_t>(c.n), c.q)};
            const auto lhs = transform::walk_taylor_coeffs(cfg, 8);
            const Rational q_total = rational_from_double(c.q) * c.n;
            const auto rhs = hyp2f1_taylor(q_total / 2, (q_total + 1) / 2,
                                           rational_from_double(c.k) / 2, 8);
            r = std::max(r, detail::max_coeff_gap(lhs, rhs));
        }
        push("hyperuniform_families_order8", r, 1e-30);
    }
    {  // transform identity for hyperuniform walks; the transform reaches 1e4
       // near z = 0.9 for the larger masses, so the residual is normalized by
       // max(1, |T|)
        struct Case {
            int d, n;
            double q, k;
        };
        const Case cases[] = {{2, 3, 1.0, 4}, {3, 2, 2.0, 5}, {4, 3, 3.0, 10}};
        double r = 0.0;
        for (const auto& c : cases) {
            WalkConfig cfg{c.d, std::vector<double>(static_cast<std::size_t>(c.n), c.q)};
            const double q_total = c.q * c.n;
            for (double z : detail::grid(0.0, 0.9, 9)) {
                const double y = std::sqrt(z);
                const double rhs = gauss_2f1(0.5 * q_total, 0.5 * (q_total + 1),
                                             0.5 * c.k, z, policy);
                r = std::max(r, std::fabs(transform::t_walk_analytic(cfg, y, policy) - rhs) /
                                    std::max(1.0, std::fabs(rhs)));
            }
        }
        push("hyperuniform_transform_identity", r);
    }
    {  // moment bridge: transform Taylor coefficients vs radial moments
        const std::vector<WalkConfig> cfgs = {
            {3, {2, 2}},       {2, {1, 1, 1}}, {3, {0.5, 0.5, 0.5}},
            {2, {2, 2}},       {6, {1, 1}},    {3, {2, 3}},
        };
        double r = 0.0;
        for (const auto& cfg : cfgs) {
            const RadialLaw law = exactlaw::radial_law(cfg);
            std::vector<Rational> moments;
            for (unsigned k = 0; k <= 6; ++k) moments.push_back(law_moment(law, k));
            Rational q_total(0);
            for (double q : cfg.qs) q_total += rational_from_double(q);
            const auto lhs = transform::walk_taylor_coeffs(cfg, 6);
            const auto rhs = transform::moment_series_coeffs(q_total, cfg.d, moments);
            r = std::max(r, detail::max_coeff_gap(lhs, rhs));
        }
        push("moment_coefficient_bridge", r, 1e-30);
    }
    return out;
}

// Exact agreement of the two independent routes to the d = 6, two-step,
// unit-weight density, plus a KS check of actual samples against it.
inline bool crosscheck_kolesnik(std::uint64_t seed = 20240901, std::size_t count = 100000) {
    const PolyDensity a = exactlaw::thm13_density(2, 3);
    const RadialLaw b = exactlaw::cor15_density(6);
    const auto* bp = std::get_if<PolyDensity>(&b);
    if (bp == nullptr || a.terms != bp->terms) return false;
    const PolyDensity expected{{{Rational(8), Rational(2)}, {Rational(-20, 3), Rational(3)}}};
    if (a.terms != expected.terms) return false;
    if (law_mass(RadialLaw{a}) != 1) return false;
    RngStream rng(seed, 0);
    const SampleBatch batch = sampler::sample_walk(WalkConfig{6, {1, 1}}, count, rng);
    return ks_radial(batch, RadialLaw{a}).pass;
}

// ---------------------------------------------------------------------------
// JSON report emission.

// Honors SOURCE_DATE_EPOCH so reruns can be byte-identical.
inline std::string report_timestamp() {
    std::time_t t;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
        t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    else
        t = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline nlohmann::json suite_to_json(const std::string& suite,
                                    const std::vector<SuiteEntry>& entries,
                                    std::uint64_t seed) {
    nlohmann::json j;
    j["suite"] = suite;
    j["entries"] = nlohmann::json::array();
    for (const auto& e : entries)
        j["entries"].push_back({{"name", e.name},
                                {"statistic", e.statistic},
                                {"critical", e.critical},
                                {"pass", e.pass}});
    j["seed"] = seed;
    j["timestamp"] = report_timestamp();
    return j;
}

inline nlohmann::json to_json(const GofReport& r) {
    return {{"name", r.name},         {"samples", r.sample_count},
            {"statistic", r.statistic}, {"critical", r.critical},
            {"pass", r.pass},         {"config", r.config}};
}

inline nlohmann::json to_json(const MomentReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"k", row.k},
                        {"empirical", row.empirical},
                        {"exact", row.exact},
                        {"std_error", row.std_error},
                        {"z", row.z_score}});
    return {{"config", r.config}, {"rows", rows}};
}

}  // namespace dirwalk::verify
