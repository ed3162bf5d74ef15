// Acceptance suite: one check per release criterion, each printing a single
// PASS/FAIL line. Run with no arguments for the full panel or with one key
// (1..5, 6, 6i, 7, 8, 9a, 9b, 9bs, 9c, 10) for a single criterion.
//
// Two checks (6 and 9b) pin published reference constants that are
// inconsistent with the defining identities verified elsewhere in this suite;
// they are kept literal and are expected to stay red, with identity-consistent
// companions (6i, 9bs) that pass. Details are printed with each line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dirwalk/exactlaw.hpp"
#include "dirwalk/laws.hpp"
#include "dirwalk/sampler.hpp"
#include "dirwalk/specfun.hpp"
#include "dirwalk/transform.hpp"
#include "dirwalk/verify.hpp"

using namespace dirwalk;

namespace {

constexpr std::uint64_t kSeed = 0x5EEDD130ULL;
constexpr int kWorkers = 4;

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Check {
    bool ok = true;
    std::ostringstream notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes << (notes.tellp() > 0 ? "; " : "") << what;
        }
    }
    void note(const std::string& what) {
        notes << (notes.tellp() > 0 ? "; " : "") << what;
    }
    Outcome done(double elapsed_s, double budget_s) {
        require(elapsed_s < budget_s, "runtime budget exceeded");
        std::ostringstream out;
        out << notes.str() << (notes.tellp() > 0 ? "; " : "");
        out.precision(3);
        out << elapsed_s << "s";
        return Outcome{ok, out.str()};
    }
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

std::vector<double> lin_grid(double lo, double hi, int steps) {
    std::vector<double> out;
    for (int i = 0; i <= steps; ++i)
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / steps);
    return out;
}

// --------------------------------------------------------------------------
// 1. quadratic transformation identity on a 250-point grid

Outcome criterion1() {
    const double t0 = now_seconds();
    Check c;
    double residual = 0.0;
    int points = 0;
    for (double a : {0.3, 0.7, 1.0, 1.6, 2.5})
        for (double b : {0.4, 0.9, 1.3, 2.0, 3.1})
            for (double u : lin_grid(0.025, 0.45, 9)) {
                const double cc = a + b + 0.5;
                residual = std::max(
                    residual, std::fabs(specfun::gauss_2f1(2 * a, 2 * b, cc, u) -
                                        specfun::gauss_2f1(a, b, cc, 4 * u - 4 * u * u)));
                ++points;
            }
    c.require(points >= 200, "grid too small");
    c.require(residual < 1e-10, "residual " + std::to_string(residual));
    std::ostringstream note;
    note << points << " points, max residual " << residual;
    c.note(note.str());
    return c.done(now_seconds() - t0, 5.0);
}

// --------------------------------------------------------------------------
// 2. G-function closed forms and the Euler identity

Outcome criterion2() {
    const double t0 = now_seconds();
    Check c;
    using specfun::g_func;
    using specfun::gauss_2f1;
    double residual = 0.0;
    for (double cc : {0.5, 1.0, 2.0, 3.7})
        for (double z : lin_grid(0.0, 0.9, 18))
            residual = std::max(residual,
                                std::fabs(gauss_2f1(0.5 * cc, 0.5 * (cc + 1), cc + 1, z) -
                                          std::pow(g_func(z), cc)));
    for (double cc : {1.5, 2.0, 4.0})
        for (double z : lin_grid(0.0, 0.9, 18))
            residual = std::max(residual,
                                std::fabs(gauss_2f1(0.5 * cc, 0.5 * (cc + 1), cc, z) -
                                          std::pow(g_func(z), cc - 1) / std::sqrt(1 - z)));
    for (double z : lin_grid(0.05, 0.9, 17)) {
        double sum = 0.0, term = 1.0;
        for (int m = 1; m <= 400000; ++m) {
            term *= (m - 0.5) / m * z;
            sum += term / (2.0 * m);
            if (term < 1e-17) break;
        }
        residual = std::max(residual, std::fabs(sum - std::log(g_func(z))));
    }
    for (double p : {0.5, 1.2})
        for (double q : {0.8, 2.3})
            for (double r : {2.1, 3.0})
                for (double z : lin_grid(0.0, 0.9, 9))
                    residual = std::max(
                        residual, std::fabs(gauss_2f1(p, q, r, z) -
                                            std::pow(1 - z, r - p - q) *
                                                gauss_2f1(r - p, r - q, r, z)));
    c.require(residual < 1e-10, "residual " + std::to_string(residual));
    std::ostringstream note;
    note << "max residual " << residual;
    c.note(note.str());
    return c.done(now_seconds() - t0, 5.0);
}

// --------------------------------------------------------------------------
// 3. the four uniform walks: exact law beta(d/2, 1) and KS in 99+/100 seeds

Outcome criterion3() {
    const double t0 = now_seconds();
    Check c;
    struct Case {
        int d, n;
        double q;
    };
    const Case cases[] = {{2, 3, 1.0}, {3, 2, 2.0}, {3, 3, 0.5}, {4, 2, 1.0}};
    for (const auto& uc : cases) {
        const WalkConfig cfg{uc.d, std::vector<double>(static_cast<std::size_t>(uc.n), uc.q)};
        const RadialLaw law = exactlaw::radial_law(cfg);
        const auto* beta = std::get_if<BetaLaw>(&law);
        c.require(beta != nullptr && beta->p == Rational(uc.d, 2) && beta->q == 1,
                  cfg.describe() + ": law is not beta(d/2, 1)");
        int passes = 0;
        for (std::uint64_t s = 0; s < 100; ++s) {
            const SampleBatch batch =
                sampler::sample_walk(cfg, 100000, kSeed + 101 * s, kWorkers);
            if (verify::ks_radial(batch, law).pass) ++passes;
        }
        std::ostringstream note;
        note << cfg.describe() << " KS " << passes << "/100";
        c.note(note.str());
        c.require(passes >= 99, cfg.describe() + ": KS failed too often");
    }
    return c.done(now_seconds() - t0, 60.0);
}

// --------------------------------------------------------------------------
// 4. equal-weight classifier and order-6 confirmation / rejection

Outcome criterion4() {
    const double t0 = now_seconds();
    Check c;
    for (int d = 2; d <= 10; ++d) {
        std::set<double> expect{static_cast<double>(d - 1)};
        if (d >= 3) expect.insert(d / 2.0 - 1.0);
        c.require(exactlaw::classify_q(d) == expect,
                  "classify_q(" + std::to_string(d) + ") mismatch");
        for (int n = 2; n <= 4; ++n) {
            const auto confirm = [&](double q, double k) {
                WalkConfig cfg{d, std::vector<double>(static_cast<std::size_t>(n), q)};
                return exactlaw::hyperuniform_check(cfg, k, 6).is_hyperuniform;
            };
            c.require(confirm(d - 1.0, n * (d - 1.0) + 1.0),
                      "confirmation failed at q = d-1");
            if (d >= 3)
                c.require(confirm(d / 2.0 - 1.0, n * (d - 2.0) + 2.0),
                          "confirmation failed at q = d/2-1");
            for (double dq : {-0.1, 0.1}) {
                const double q = d - 1.0 + dq;
                // the only type compatible with the first-order coefficient
                const double k = d * (n * q + 1.0) / (q + 1.0);
                WalkConfig cfg{d, std::vector<double>(static_cast<std::size_t>(n), q)};
                c.require(!exactlaw::hyperuniform_check(cfg, k, 6).is_hyperuniform,
                          "perturbed weight not rejected");
            }
        }
    }
    c.note("d = 2..10 classified, confirmed at n = 2..4, d-1 +/- 0.1 rejected");
    return c.done(now_seconds() - t0, 30.0);
}

// --------------------------------------------------------------------------
// 5. equal-weight (d,...,d) laws: exact structure plus KS

Outcome criterion5() {
    const double t0 = now_seconds();
    Check c;
    for (int N = 1; N <= 5; ++N)
        for (int d = 2; d <= 8; ++d) {
            const RadialLaw even = exactlaw::thm11_law(2 * N, d);
            const auto& mix = std::get<BetaMixture>(even);
            Rational sum(0);
            for (const auto& w : mix.weights) {
                c.require(w > 0, "nonpositive mixture weight");
                sum += w;
            }
            c.require(sum == 1, "mixture weights do not sum to 1");
            c.require(law_mass(even) == 1, "even-case law mass is not 1");

            const RadialLaw odd = exactlaw::thm11_law(2 * N + 1, d);
            const auto& poly = std::get<PolyDensity>(odd);
            for (std::size_t k = 0; k < poly.terms.size(); ++k)
                c.require(k % 2 == 0 ? poly.terms[k].first > 0 : poly.terms[k].first < 0,
                          "odd-case coefficient signs do not alternate");
            c.require(law_mass(odd) == 1, "odd-case density mass is not 1");
        }
    struct Case {
        int n, d;
    };
    for (const Case& sc : {Case{2, 2}, Case{2, 3}, Case{3, 2}, Case{4, 3}}) {
        const WalkConfig cfg{sc.d,
                             std::vector<double>(static_cast<std::size_t>(sc.n),
                                                 static_cast<double>(sc.d))};
        const SampleBatch batch = sampler::sample_walk(cfg, 100000, kSeed + 17, kWorkers);
        const auto rep = verify::ks_radial(batch, exactlaw::thm11_law(sc.n, sc.d));
        std::ostringstream note;
        note << cfg.describe() << " KS stat " << rep.statistic;
        c.note(note.str());
        c.require(rep.pass, cfg.describe() + ": KS rejected");
    }
    return c.done(now_seconds() - t0, 120.0);
}

// --------------------------------------------------------------------------
// 6. expansion constants against the published table (literal), plus the
//    identity-consistent companion

Outcome criterion6() {
    const double t0 = now_seconds();
    Check c;
    c.require(exactlaw::prop12_b_coeffs(2) == std::vector<Rational>{Rational(1)},
              "D=2 mismatch");
    c.require(exactlaw::prop12_b_coeffs(3) ==
                  std::vector<Rational>{Rational(4, 3), Rational(-1, 3)},
              "D=3 mismatch");
    const std::vector<Rational> printed{Rational(3, 5), Rational(-6, 5), Rational(8, 5)};
    const std::vector<Rational> derived = exactlaw::prop12_b_coeffs(4);
    if (derived != printed) {
        c.require(false,
                  "D=4: recursion yields (8/5, -7/10, 1/10); the published table prints "
                  "(3/5, -6/5, 8/5), which fails the defining expansion "
                  "sum_k B_k G(z)^k = 2F1(1/2,1;4;z) (lhs 2.0 vs rhs 1.1015625 at "
                  "z = 0.64); see criterion 6i for the identity-based check");
    }
    return c.done(now_seconds() - t0, 5.0);
}

Outcome criterion6_identity() {
    const double t0 = now_seconds();
    Check c;
    // same pipeline, judged by the expansion it is defined by
    for (int D = 2; D <= 6; ++D) {
        const auto b = exactlaw::prop12_b_coeffs(D);
        Rational sum(0);
        for (const auto& coeff : b) sum += coeff;
        c.require(sum == 1, "coefficients do not sum to 1");
        for (double z : {0.2, 0.64, 0.9}) {
            double lhs = 0.0;
            for (int k = 1; k <= D - 1; ++k)
                lhs += to_double(b[k - 1]) * std::pow(specfun::g_func(z), k);
            c.require(std::fabs(lhs - specfun::gauss_2f1(0.5, 1.0, D, z)) < 1e-12,
                      "expansion mismatch at D = " + std::to_string(D));
        }
    }
    c.note("D = 2..6 reproduce 2F1(1/2,1;D;z) exactly");
    return c.done(now_seconds() - t0, 5.0);
}

// --------------------------------------------------------------------------
// 7. the two routes to the d = 6 density agree exactly; transform remainder
//    vanishes across the grid; samples match

Outcome criterion7() {
    const double t0 = now_seconds();
    Check c;
    const PolyDensity a = exactlaw::thm13_density(2, 3);
    const RadialLaw b = exactlaw::cor15_density(6);
    const auto* bp = std::get_if<PolyDensity>(&b);
    const PolyDensity expected{{{Rational(8), Rational(2)}, {Rational(-20, 3), Rational(3)}}};
    c.require(bp != nullptr && a.terms == bp->terms, "pipelines disagree");
    c.require(a.terms == expected.terms, "coefficients are not 8v^2 - (20/3)v^3");
    for (int n = 2; n <= 4; ++n)
        for (int D = 2; D <= 5; ++D) {
            try {
                const PolyDensity f = exactlaw::thm13_density(n, D);
                c.require(law_mass(RadialLaw{f}) == 1, "density mass is not 1");
            } catch (const InternalError& e) {
                c.require(false, std::string("internal invariant failed: ") + e.what());
            }
        }
    const SampleBatch batch =
        sampler::sample_walk(WalkConfig{6, {1, 1}}, 100000, kSeed + 23, kWorkers);
    const auto rep = verify::ks_radial(batch, RadialLaw{a});
    std::ostringstream note;
    note << "KS stat " << rep.statistic << " (critical " << rep.critical << ")";
    c.note(note.str());
    c.require(rep.pass, "KS rejected the exact density");
    return c.done(now_seconds() - t0, 60.0);
}

// --------------------------------------------------------------------------
// 8. d = 1 signed law with the normalization-consistent constant

Outcome criterion8() {
    const double t0 = now_seconds();
    Check c;
    for (double q : {0.5, 1.0, 2.0, 3.0})
        for (int n : {2, 3, 4, 5})
            for (double p : {0.25, 0.5, 0.75})
                c.require(law_mass(RadialLaw{exactlaw::prop10_law(q, n, p)}) == 1,
                          "total mass is not exactly 1");

    const MixedSignedLaw law = exactlaw::prop10_law(1.0, 2, 0.5);
    c.require(law.atom_minus == Rational(1, 4) && law.atom_plus == Rational(1, 4),
              "atoms are not 1/4");
    c.require(law.pieces.size() == 1 &&
                  std::fabs(law.pieces[0].coefficient - 0.25) < 1e-14,
              "continuous density is not 1/4");

    // independent direct construction: Y = eps1 U + eps2 (1 - U)
    RngStream rng(kSeed + 31, 0);
    const std::size_t count = 1000000;
    const int bins = 8;
    std::vector<std::size_t> hist(bins, 0);
    std::size_t n_minus = 0, n_plus = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const double u = rng.next_double();
        const double e1 = (rng.next_u64() & 1) ? 1.0 : -1.0;
        const double e2 = (rng.next_u64() & 1) ? 1.0 : -1.0;
        const double y = e1 * u + e2 * (1.0 - u);
        if (std::fabs(y - 1.0) < 1e-9) {
            ++n_plus;
        } else if (std::fabs(y + 1.0) < 1e-9) {
            ++n_minus;
        } else {
            const int bin = std::min(bins - 1,
                                     static_cast<int>((y + 1.0) / 2.0 * bins));
            ++hist[static_cast<std::size_t>(bin)];
        }
    }
    const RadialLaw rl{law};
    const auto check_cell = [&](double observed_count, double expected_prob,
                                const std::string& name) {
        const double obs = observed_count / static_cast<double>(count);
        const double se =
            std::sqrt(expected_prob * (1.0 - expected_prob) / static_cast<double>(count));
        c.require(std::fabs(obs - expected_prob) < 4.0 * se, name + " off by > 4 se");
    };
    check_cell(static_cast<double>(n_minus), to_double(law.atom_minus), "atom -1");
    check_cell(static_cast<double>(n_plus), to_double(law.atom_plus), "atom +1");
    for (int b = 0; b < bins; ++b) {
        const double lo = -1.0 + 2.0 * b / bins;
        const double hi = lo + 2.0 / bins;
        const double expected = law_cdf_left(rl, hi) - law_cdf(rl, lo);
        check_cell(static_cast<double>(hist[static_cast<std::size_t>(b)]), expected,
                   "bin " + std::to_string(b));
    }
    c.note("mass grid exact; 10^6-sample histogram within 4 se per cell");
    return c.done(now_seconds() - t0, 60.0);
}

// --------------------------------------------------------------------------
// 9a. analytic convergence of the walk transform to the limit transform

Outcome criterion9a() {
    const double t0 = now_seconds();
    Check c;
    for (int d : {1, 2, 3}) {
        std::vector<double> gaps;
        for (int n : {8, 64, 512}) {
            const WalkConfig cfg{d, std::vector<double>(static_cast<std::size_t>(n), 1.0 / n)};
            double gap = 0.0;
            for (double z : lin_grid(0.1, 0.8, 7)) {
                const double y = std::sqrt(z);
                gap = std::max(gap, std::fabs(transform::t_walk_analytic(cfg, y) -
                                              transform::t_limit(1.0, d, y)));
            }
            gaps.push_back(gap);
        }
        std::ostringstream note;
        note << "d=" << d << " gaps " << gaps[0] << " / " << gaps[1] << " / " << gaps[2];
        c.note(note.str());
        c.require(gaps[0] > gaps[1] && gaps[1] > gaps[2], "gap is not decreasing");
        // 1/n decay: per-doubling ratio (the n grid steps by 8 = 2^3)
        for (int i = 0; i + 1 < 3; ++i) {
            const double per_doubling = std::cbrt(gaps[static_cast<std::size_t>(i)] /
                                                  gaps[static_cast<std::size_t>(i) + 1]);
            c.require(per_doubling > 1.5 && per_doubling < 2.7,
                      "decay rate is not O(1/n)");
        }
    }
    return c.done(now_seconds() - t0, 60.0);
}

// 9b. stick-breaking radial laws (literal targets)

Outcome criterion9b() {
    const double t0 = now_seconds();
    Check c;
    struct Case {
        double q;
        int d;
        BetaLaw target;
    };
    // stated targets: beta(1/2, Q/2) for d = 1 and beta(1/2, Q) for d = 2
    const std::vector<Case> cases = {
        {1.0, 1, BetaLaw{Rational(1, 2), Rational(1, 2)}},
        {2.0, 1, BetaLaw{Rational(1, 2), Rational(1)}},
        {1.0, 2, BetaLaw{Rational(1, 2), Rational(1)}},
        {3.0, 2, BetaLaw{Rational(1, 2), Rational(3)}},
    };
    for (const auto& sc : cases) {
        const SampleBatch batch = sampler::sample_stick_breaking(
            StickConfig{sc.q, sc.d, 1e-12}, 100000, kSeed + 41, kWorkers);
        const auto rep = verify::ks_radial(batch, sc.target);
        std::ostringstream note;
        note << "Q=" << sc.q << " d=" << sc.d << " KS stat " << rep.statistic;
        c.note(note.str());
        c.require(rep.pass, "KS rejected the stated target at Q=" + std::to_string(sc.q) +
                                " d=" + std::to_string(sc.d));
    }
    if (!c.ok)
        c.note("the d=2 stated target beta(1/2,Q) contradicts the G^Q semigroup law "
               "beta(1,Q) that criteria 9c/10 and the transform identities force; "
               "see criterion 9bs");
    return c.done(now_seconds() - t0, 120.0);
}

// 9bs. stick-breaking radial laws, d = 2 target taken from the semigroup form

Outcome criterion9b_semigroup() {
    const double t0 = now_seconds();
    Check c;
    struct Case {
        double q;
        int d;
        BetaLaw target;
    };
    const std::vector<Case> cases = {
        {1.0, 1, BetaLaw{Rational(1, 2), Rational(1, 2)}},
        {2.0, 1, BetaLaw{Rational(1, 2), Rational(1)}},
        {1.0, 2, BetaLaw{Rational(1), Rational(1)}},
        {3.0, 2, BetaLaw{Rational(1), Rational(3)}},
    };
    for (const auto& sc : cases) {
        const SampleBatch batch = sampler::sample_stick_breaking(
            StickConfig{sc.q, sc.d, 1e-12}, 100000, kSeed + 41, kWorkers);
        const auto rep = verify::ks_radial(batch, sc.target);
        std::ostringstream note;
        note << "Q=" << sc.q << " d=" << sc.d << " KS stat " << rep.statistic;
        c.note(note.str());
        c.require(rep.pass, "KS rejected at Q=" + std::to_string(sc.q));
    }
    return c.done(now_seconds() - t0, 120.0);
}

// 9c. d = 3 limit transform against a large stick-breaking sample

Outcome criterion9c() {
    const double t0 = now_seconds();
    Check c;
    const SampleBatch batch = sampler::sample_stick_breaking(StickConfig{1.0, 3, 1e-12},
                                                             1000000, kSeed + 43, kWorkers);
    for (double y : {0.3, 0.5, 0.7}) {
        const std::vector<double> query{y, 0.0, 0.0};
        const auto [est, se] = transform::t_empirical(batch, 1.0, query);
        const double target = transform::t_limit(1.0, 3, y);
        std::ostringstream note;
        note << "y=" << y << " est " << est << " target " << target << " se " << se;
        c.note(note.str());
        c.require(std::fabs(est - target) < 4.0 * se, "estimate off by > 4 se");
    }
    return c.done(now_seconds() - t0, 300.0);
}

// --------------------------------------------------------------------------
// 10. semigroup composition lands on the summed index

Outcome criterion10() {
    const double t0 = now_seconds();
    Check c;
    int passes = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        RngStream rng(kSeed + 47 + 13 * s, 0);
        const std::size_t count = 100000;
        // members of the d = 2 family: squared radius beta(1, q)
        SampleBatch w1(2, count, BatchMeta{rng.master_seed(), 0, "family q=1"});
        SampleBatch w2(2, count, BatchMeta{rng.master_seed(), 0, "family q=2"});
        std::vector<double> theta(2);
        for (std::size_t i = 0; i < count; ++i) {
            double r = std::sqrt(1.0 - rng.next_open_double());  // beta(1,1)
            sampler::sample_sphere(2, rng, theta);
            w1.point(i)[0] = r * theta[0];
            w1.point(i)[1] = r * theta[1];
            r = std::sqrt(1.0 - std::sqrt(rng.next_open_double()));  // beta(1,2)
            sampler::sample_sphere(2, rng, theta);
            w2.point(i)[0] = r * theta[0];
            w2.point(i)[1] = r * theta[1];
        }
        const SampleBatch composed = sampler::compose_semigroup(w1, w2, 1.0, 2.0, rng);
        if (verify::ks_radial(composed, BetaLaw{Rational(1), Rational(3)}).pass) ++passes;
    }
    std::ostringstream note;
    note << "KS vs beta(1,3): " << passes << "/100 seeds";
    c.note(note.str());
    c.require(passes >= 99, "semigroup composition KS failed too often");
    return c.done(now_seconds() - t0, 180.0);
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> table = {
        {"1", criterion1},
        {"2", criterion2},
        {"3", criterion3},
        {"4", criterion4},
        {"5", criterion5},
        {"6", criterion6},
        {"6i", criterion6_identity},
        {"7", criterion7},
        {"8", criterion8},
        {"9a", criterion9a},
        {"9b", criterion9b},
        {"9bs", criterion9b_semigroup},
        {"9c", criterion9c},
        {"10", criterion10},
    };
    const std::map<std::string, std::string> labels = {
        {"1", "quadratic transformation identity"},
        {"2", "G-function closed forms and Euler identity"},
        {"3", "uniform walks: exact law and seeded KS gate"},
        {"4", "equal-weight hyperuniformity classifier"},
        {"5", "weights (d,...,d): exact mixtures/densities and KS"},
        {"6", "expansion constants vs published table (literal)"},
        {"6i", "expansion constants vs defining identity"},
        {"7", "d=6 density cross-check and transform remainder"},
        {"8", "d=1 signed law: exact mass and histogram"},
        {"9a", "limit transform: O(1/n) analytic convergence"},
        {"9b", "stick-breaking radial laws (literal targets)"},
        {"9bs", "stick-breaking radial laws (semigroup-consistent)"},
        {"9c", "d=3 limit transform vs empirical estimate"},
        {"10", "Dirichlet semigroup composition"},
    };

    int failures = 0;
    bool matched = false;
    for (const auto& [key, fn] : table) {
        if (argc > 1 && key != argv[1]) continue;
        matched = true;
        const Outcome outcome = fn();
        std::printf("[%s] criterion %-3s %s (%s)\n", outcome.pass ? "PASS" : "FAIL",
                    key.c_str(), labels.at(key).c_str(), outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass) ++failures;
    }
    if (argc > 1 && !matched) {
        std::fprintf(stderr, "unknown criterion key '%s'\n", argv[1]);
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
