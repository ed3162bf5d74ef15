#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dirwalk/errors.hpp"
#include "dirwalk/rational.hpp"
#include "dirwalk/specfun.hpp"

namespace dirwalk {

// One Dirichlet random walk W = X_1 Theta_1 + ... + X_n Theta_n: the ambient
// dimension and the Dirichlet weights. Q = sum(qs) is always derived.
struct WalkConfig {
    int d = 1;
    std::vector<double> qs;

    std::size_t n() const { return qs.size(); }
    double total_mass() const {
        double q = 0.0;
        for (double x : qs) q += x;
        return q;
    }
    void validate() const {
        if (d < 1) throw DomainError("WalkConfig: d must be >= 1");
        if (qs.empty()) throw DomainError("WalkConfig: need at least one weight");
        for (double q : qs)
            if (!(q > 0.0)) throw DomainError("WalkConfig: weights must be positive");
    }
    std::string describe() const {
        std::ostringstream os;
        os << "walk d=" << d << " q=";
        for (std::size_t i = 0; i < qs.size(); ++i) os << (i ? "," : "") << qs[i];
        return os.str();
    }
};

// ||W||^2 ~ beta(p, q); parameters exact since every solvable case is rational.
struct BetaLaw {
    Rational p, q;
};

struct BetaMixture {
    std::vector<Rational> weights;
    std::vector<std::pair<Rational, Rational>> components;  // (p, q)
};

// f(v) = sum c_j v^{e_j} on (0,1); exponents may be half-integers.
struct PolyDensity {
    std::vector<std::pair<Rational, Rational>> terms;  // (coefficient, exponent)
};

// One continuous component of a d=1 signed law: mixing mass `weight` on
// (1+y)/2 ~ beta(bp, bq), flattened to coefficient*(1+y)^(bp-1)*(1-y)^(bq-1).
struct MixedSignedPiece {
    Rational weight;
    Rational bp, bq;
    double coefficient = 0.0;

    double exponent_plus() const { return to_double(bp) - 1.0; }
    double exponent_minus() const { return to_double(bq) - 1.0; }
};

// Law on [-1, 1] with atoms at the endpoints (d = 1 walks).
struct MixedSignedLaw {
    Rational atom_minus, atom_plus;
    std::vector<MixedSignedPiece> pieces;
};

struct PochFactor {
    Rational shift;
    unsigned length = 0;
    bool in_numerator = true;
};

// Mellin transform as constant * prod Gamma(alpha_i+s) / prod Gamma(beta_j+s)
// times Pochhammer polynomial factors, normalized so that M(0) = 1.
struct GammaRatioMellin {
    std::vector<Rational> gamma_num;
    std::vector<Rational> gamma_den;
    std::vector<PochFactor> poch;

    double operator()(double s) const {
        double lg = 0.0;
        for (const auto& a : gamma_num)
            lg += std::lgamma(to_double(a) + s) - std::lgamma(to_double(a));
        for (const auto& b : gamma_den)
            lg -= std::lgamma(to_double(b) + s) - std::lgamma(to_double(b));
        double val = std::exp(lg);
        for (const auto& f : poch) {
            double r = 1.0;
            for (unsigned j = 0; j < f.length; ++j)
                r *= (to_double(f.shift) + s + j) / (to_double(f.shift) + j);
            val *= f.in_numerator ? r : 1.0 / r;
        }
        return val;
    }

    // M(k) at integer k is a ratio of Pochhammer symbols, hence exact.
    Rational moment(unsigned k) const {
        Rational out(1);
        for (const auto& a : gamma_num) out *= specfun::pochhammer(a, k);
        for (const auto& b : gamma_den) out /= specfun::pochhammer(b, k);
        for (const auto& f : poch) {
            Rational r = specfun::pochhammer(f.shift + Rational(k), f.length) /
                         specfun::pochhammer(f.shift, f.length);
            out *= f.in_numerator ? r : 1 / r;
        }
        return out;
    }
};

// Radial law backed only by its Mellin transform. transforms_complement means
// the transform describes H = 1 - V rather than the squared radius V itself.
struct GammaRatioMellinLaw {
    GammaRatioMellin mellin;
    bool transforms_complement = true;
};

struct EmpiricalLaw {
    std::vector<double> sorted_sq_radii;
};

using RadialLaw = std::variant<BetaLaw, BetaMixture, PolyDensity, MixedSignedLaw,
                               GammaRatioMellinLaw, EmpiricalLaw>;

struct HyperuniformVerdict {
    bool is_hyperuniform = false;
    std::optional<double> type_k;
    int order_checked = 0;
};

// ---------------------------------------------------------------------------
// Exact moments E(V^k) (V the squared radius; for d=1 laws the signed variable
// squared, so odd symmetric pieces enter through even powers).

inline Rational law_moment(const BetaLaw& law, unsigned k) {
    return specfun::pochhammer(law.p, k) / specfun::pochhammer(law.p + law.q, k);
}

inline Rational law_moment(const BetaMixture& law, unsigned k) {
    Rational out(0);
    for (std::size_t i = 0; i < law.weights.size(); ++i) {
        const auto& [p, q] = law.components[i];
        out += law.weights[i] * specfun::pochhammer(p, k) / specfun::pochhammer(p + q, k);
    }
    return out;
}

inline Rational law_moment(const PolyDensity& law, unsigned k) {
    Rational out(0);
    for (const auto& [c, e] : law.terms) out += c / (e + Rational(k) + 1);
    return out;
}

inline Rational law_moment(const MixedSignedLaw& law, unsigned k) {
    // E(Y^{2k}); atoms at +-1 contribute their mass.
    Rational out = law.atom_minus + law.atom_plus;
    for (const auto& piece : law.pieces) {
        // E((2B-1)^{2k}) with B ~ beta(bp, bq)
        Rational m(0);
        for (unsigned j = 0; j <= 2 * k; ++j) {
            Rational bmom = specfun::pochhammer(piece.bp, j) /
                            specfun::pochhammer(piece.bp + piece.bq, j);
            Rational sign = ((2 * k - j) % 2 == 0) ? Rational(1) : Rational(-1);
            m += sign * Rational(binomial(2 * k, j)) * rational_pow(Rational(2), j) * bmom;
        }
        out += piece.weight * m;
    }
    return out;
}

inline Rational law_moment(const GammaRatioMellinLaw& law, unsigned k) {
    if (!law.transforms_complement) return law.mellin.moment(k);
    // E(V^k) = E((1-H)^k) expanded through the transform of H
    Rational out(0);
    for (unsigned j = 0; j <= k; ++j) {
        Rational sign = (j % 2 == 0) ? Rational(1) : Rational(-1);
        out += sign * Rational(binomial(k, j)) * law.mellin.moment(j);
    }
    return out;
}

inline Rational law_moment(const EmpiricalLaw&, unsigned) {
    throw UnsupportedLaw("law_moment: empirical laws carry no exact moments");
}

inline Rational law_moment(const RadialLaw& law, unsigned k) {
    return std::visit([k](const auto& l) { return law_moment(l, k); }, law);
}

// Total mass, exact; 1 for every well-formed law.
inline Rational law_mass(const RadialLaw& law) {
    return law_moment(law, 0);
}

// ---------------------------------------------------------------------------
// Densities and CDFs (doubles appear only here, at the evaluation boundary).

inline double law_density(const BetaLaw& law, double v) {
    if (v <= 0.0 || v >= 1.0) return 0.0;
    const double p = to_double(law.p), q = to_double(law.q);
    return std::exp(std::lgamma(p + q) - std::lgamma(p) - std::lgamma(q) +
                    (p - 1.0) * std::log(v) + (q - 1.0) * std::log1p(-v));
}

inline double law_density(const BetaMixture& law, double v) {
    double out = 0.0;
    for (std::size_t i = 0; i < law.weights.size(); ++i)
        out += to_double(law.weights[i]) *
               law_density(BetaLaw{law.components[i].first, law.components[i].second}, v);
    return out;
}

inline double law_density(const PolyDensity& law, double v) {
    if (v <= 0.0 || v >= 1.0) return 0.0;
    double out = 0.0;
    for (const auto& [c, e] : law.terms) out += to_double(c) * std::pow(v, to_double(e));
    return out;
}

inline double law_density(const MixedSignedLaw& law, double y) {
    if (y <= -1.0 || y >= 1.0) return 0.0;  // continuous part only
    double out = 0.0;
    for (const auto& piece : law.pieces)
        out += piece.coefficient * std::pow(1.0 + y, piece.exponent_plus()) *
               std::pow(1.0 - y, piece.exponent_minus());
    return out;
}

inline double law_density(const RadialLaw& law, double v) {
    return std::visit(
        [v](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, GammaRatioMellinLaw> ||
                          std::is_same_v<T, EmpiricalLaw>) {
                throw UnsupportedLaw("law_density: no density for this representation");
            } else {
                return law_density(l, v);
            }
        },
        law);
}

inline double law_cdf(const BetaLaw& law, double v) {
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;
    return specfun::reg_inc_beta(to_double(law.p), to_double(law.q), v);
}

inline double law_cdf(const BetaMixture& law, double v) {
    double out = 0.0;
    for (std::size_t i = 0; i < law.weights.size(); ++i)
        out += to_double(law.weights[i]) *
               law_cdf(BetaLaw{law.components[i].first, law.components[i].second}, v);
    return out;
}

inline double law_cdf(const PolyDensity& law, double v) {
    if (v <= 0.0) return 0.0;
    if (v >= 1.0) return 1.0;
    double out = 0.0;
    for (const auto& [c, e] : law.terms) {
        const double ed = to_double(e);
        out += to_double(c) / (ed + 1.0) * std::pow(v, ed + 1.0);
    }
    return out;
}

// CDF of the signed variable; right-continuous, with jumps at the atoms.
inline double law_cdf(const MixedSignedLaw& law, double y) {
    if (y < -1.0) return 0.0;
    if (y >= 1.0) return 1.0;
    double out = to_double(law.atom_minus);
    const double b = 0.5 * (1.0 + y);
    for (const auto& piece : law.pieces)
        out += to_double(piece.weight) *
               specfun::reg_inc_beta(to_double(piece.bp), to_double(piece.bq), b);
    return out;
}

inline double law_cdf(const RadialLaw& law, double v) {
    return std::visit(
        [v](const auto& l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, GammaRatioMellinLaw> ||
                          std::is_same_v<T, EmpiricalLaw>) {
                throw UnsupportedLaw("law_cdf: no computable CDF for this representation");
            } else {
                return law_cdf(l, v);
            }
        },
        law);
}

// Left limit of the CDF; differs from law_cdf only at atoms.
inline double law_cdf_left(const RadialLaw& law, double v) {
    if (const auto* m = std::get_if<MixedSignedLaw>(&law)) {
        if (v <= -1.0) return 0.0;
        if (v > 1.0) return 1.0;
        if (v == 1.0) return 1.0 - to_double(m->atom_plus);
        return law_cdf(*m, v);
    }
    return law_cdf(law, v);
}

// ---------------------------------------------------------------------------
// JSON serialization: rationals as "num/den" strings, reals as decimal strings.

namespace detail {
inline std::string real_string(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}
}  // namespace detail

inline nlohmann::json to_json(const RadialLaw& law) {
    using nlohmann::json;
    return std::visit(
        [](const auto& l) -> json {
            using T = std::decay_t<decltype(l)>;
            json j;
            if constexpr (std::is_same_v<T, BetaLaw>) {
                j["kind"] = "beta";
                j["p"] = to_fraction_string(l.p);
                j["q"] = to_fraction_string(l.q);
            } else if constexpr (std::is_same_v<T, BetaMixture>) {
                j["kind"] = "beta_mixture";
                for (const auto& w : l.weights) j["weights"].push_back(to_fraction_string(w));
                for (const auto& [p, q] : l.components)
                    j["components"].push_back(
                        {{"p", to_fraction_string(p)}, {"q", to_fraction_string(q)}});
            } else if constexpr (std::is_same_v<T, PolyDensity>) {
                j["kind"] = "poly_density";
                for (const auto& [c, e] : l.terms)
                    j["terms"].push_back({{"coeff", to_fraction_string(c)},
                                          {"exp", to_fraction_string(e)}});
            } else if constexpr (std::is_same_v<T, MixedSignedLaw>) {
                j["kind"] = "mixed_signed";
                j["atom_minus"] = to_fraction_string(l.atom_minus);
                j["atom_plus"] = to_fraction_string(l.atom_plus);
                j["pieces"] = json::array();
                for (const auto& piece : l.pieces)
                    j["pieces"].push_back(
                        {{"weight", to_fraction_string(piece.weight)},
                         {"coeff", detail::real_string(piece.coefficient)},
                         {"exp_plus", detail::real_string(piece.exponent_plus())},
                         {"exp_minus", detail::real_string(piece.exponent_minus())}});
            } else if constexpr (std::is_same_v<T, GammaRatioMellinLaw>) {
                j["kind"] = "gamma_ratio_mellin";
                j["of_complement"] = l.transforms_complement;
                j["gamma_num"] = json::array();
                j["gamma_den"] = json::array();
                for (const auto& a : l.mellin.gamma_num)
                    j["gamma_num"].push_back(to_fraction_string(a));
                for (const auto& b : l.mellin.gamma_den)
                    j["gamma_den"].push_back(to_fraction_string(b));
                j["poch_factors"] = json::array();
                for (const auto& f : l.mellin.poch)
                    j["poch_factors"].push_back({{"shift", to_fraction_string(f.shift)},
                                                 {"length", f.length},
                                                 {"numerator", f.in_numerator}});
            } else {
                j["kind"] = "empirical";
                j["values"] = l.sorted_sq_radii;
            }
            return j;
        },
        law);
}

}  // namespace dirwalk
