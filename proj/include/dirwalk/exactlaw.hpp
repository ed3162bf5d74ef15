#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <set>
#include <vector>

#include "dirwalk/errors.hpp"
#include "dirwalk/laws.hpp"
#include "dirwalk/ratpoly.hpp"
#include "dirwalk/rational.hpp"
#include "dirwalk/specfun.hpp"

namespace dirwalk::exactlaw {

// beta(d/2, (n-1)(d-1)/2) for weights (d-1,...,d-1) (variant 1, one weight may
// be d instead), beta(d/2, (n-1)(d/2-1)) for weights (d/2-1,...) (variant 2).
inline BetaLaw prop5_beta(int variant, int n, int d) {
    if (n < 2) throw DomainError("prop5_beta: n must be >= 2");
    if (variant == 1) {
        if (d < 2) throw DomainError("prop5_beta: variant 1 needs d >= 2");
        return BetaLaw{Rational(d, 2), Rational((n - 1) * (d - 1), 2)};
    }
    if (variant == 2) {
        if (d < 3) throw DomainError("prop5_beta: variant 2 needs d >= 3");
        return BetaLaw{Rational(d, 2), Rational((n - 1) * (d - 2), 2)};
    }
    throw DomainError("prop5_beta: variant must be 1 or 2");
}

// Law of ||W||^2 for weights (d,...,d): a beta mixture for even n, a
// polynomial density recovered by exact partial fractions for odd n.
inline RadialLaw thm11_law(int n, int d) {
    if (n < 2) throw DomainError("thm11_law: n must be >= 2");
    if (d < 2) throw DomainError("thm11_law: d must be >= 2");
    const Rational half_d(d, 2);
    if (n % 2 == 0) {
        const int N = n / 2;
        const Rational A(static_cast<long>(d) * (2 * N - 1), 2);  // d(N - 1/2)
        const Rational norm = specfun::pochhammer(Rational(N * d), N);
        BetaMixture mix;
        Rational total(0);
        for (int k = 0; k <= N; ++k) {
            Rational r = specfun::pochhammer(half_d, k) *
                         specfun::pochhammer(A, N - k) * Rational(binomial(N, k)) / norm;
            mix.weights.push_back(r);
            mix.components.emplace_back(half_d + Rational(k),
                                        Rational(N * d) - Rational(d - 1, 2) - Rational(k));
            total += r;
        }
        if (total != 1) throw InternalError("thm11_law: mixture weights do not sum to 1");
        return mix;
    }
    const int N = (n - 1) / 2;
    const int num_poles = N * d;
    // M(s) = C (s + Nd + (d+1)/2)_N / ((d/2 + s)_{Nd}), simple poles at -(d/2+k)
    const Rational top_shift = Rational(N * d) + Rational(d + 1, 2);
    const Rational C = specfun::pochhammer(half_d, num_poles) /
                       specfun::pochhammer(top_shift, N);
    RatPoly num = C * pochhammer_poly(top_shift, N);
    std::vector<Rational> poles;
    poles.reserve(num_poles);
    for (int k = 0; k < num_poles; ++k) poles.push_back(-(half_d + Rational(k)));
    const std::vector<Rational> residues = partial_fractions(num, poles);
    PolyDensity out;
    Rational mass(0);
    for (int k = 0; k < num_poles; ++k) {
        out.terms.emplace_back(residues[k], half_d + Rational(k) - 1);
        mass += residues[k] / (half_d + Rational(k));
    }
    if (mass != 1) throw InternalError("thm11_law: density does not integrate to 1");
    return out;
}

// Coefficients B_1..B_{D-1} of 2F1(1/2,1;D;z) = sum_k B_k G(z)^k, obtained by
// running the polynomial recursion A_D' = 4(1-2u) A_{D-1}, A_D(0) = 0,
// A_2 = 4u exactly and re-expanding (D-1)! B_D(u)/4^{D-1} in powers of (1-u).
inline std::vector<Rational> prop12_b_coeffs(int D) {
    if (D < 2) throw DomainError("prop12_b_coeffs: D must be >= 2");
    RatPoly a = RatPoly::monomial(Rational(4), 1);  // A_2
    const RatPoly kernel(std::vector<Rational>{Rational(4), Rational(-8)});  // 4(1-2u)
    for (int j = 3; j <= D; ++j) a = (kernel * a).integral();
    // A_D(u) = u^{D-1} B_D(u); the low-order coefficients vanish identically
    std::vector<Rational> shifted;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        if (i < static_cast<std::size_t>(D - 1)) {
            if (a.coeffs()[i] != 0)
                throw InternalError("prop12_b_coeffs: valency below D - 1");
        } else {
            shifted.push_back(a.coeffs()[i]);
        }
    }
    const Rational scale = Rational(factorial(D - 1)) /
                           rational_pow(Rational(4), static_cast<unsigned>(D - 1));
    RatPoly p = scale * RatPoly(std::move(shifted));
    RatPoly in_w = p.compose_shift_minus(Rational(1));  // powers of w = 1 - u
    std::vector<Rational> b(D - 1);
    for (int k = 1; k <= D - 1; ++k) b[k - 1] = in_w.coeff(D - 1 - k);
    return b;
}

// p_i from (sum_k B_k z^k)^n = sum_i p_i z^i, i = n .. n(D-1).
inline std::map<unsigned, Rational> thm13_p_coeffs(int n, int D) {
    if (n < 1) throw DomainError("thm13_p_coeffs: n must be >= 1");
    const std::vector<Rational> b = prop12_b_coeffs(D);
    std::vector<Rational> coeffs(D);
    for (int k = 1; k <= D - 1; ++k) coeffs[k] = b[k - 1];
    const RatPoly powered = RatPoly(std::move(coeffs)).pow(static_cast<unsigned>(n));
    std::map<unsigned, Rational> out;
    for (unsigned i = n; i <= static_cast<unsigned>(n) * (D - 1); ++i)
        out[i] = powered.coeff(i);
    return out;
}

// E(R^{2k}) = (D)_k/(n)_{2k} sum_i p_i (i)_{2k}/(i+1)_k, exact.
inline Rational thm13_moment(int n, int D, unsigned k) {
    const auto p = thm13_p_coeffs(n, D);
    Rational sum(0);
    for (const auto& [i, pi] : p)
        sum += pi * specfun::pochhammer(Rational(i), 2 * k) /
               specfun::pochhammer(Rational(i + 1), k);
    return specfun::pochhammer(Rational(D), k) /
           specfun::pochhammer(Rational(n), 2 * k) * sum;
}

// Density of ||W||^2 for weights (1,...,1) in even dimension d = 2D: sums the
// rational Mellin transform over a common denominator, checks that the
// polynomial part vanishes identically, and partial-fractions the remainder.
inline PolyDensity thm13_density(int n, int D) {
    if (n < 2) throw DomainError("thm13_density: n must be >= 2");
    if (D < 2) throw DomainError("thm13_density: D must be >= 2");
    const auto p = thm13_p_coeffs(n, D);
    const int i_max = n * (D - 1);
    // common denominator (s+D)(s+D+1)...(s+i_max)
    const RatPoly common = pochhammer_poly(Rational(D), i_max - D + 1);
    RatPoly numer;
    for (const auto& [i_u, pi] : p) {
        const int i = static_cast<int>(i_u);
        if (pi == 0) continue;
        // (2s)_i/(2s)_n = (2s+n)_{i-n}
        RatPoly term{Rational(i) * pi};
        for (int j = 0; j < i - n; ++j)
            term = term * RatPoly(std::vector<Rational>{Rational(n + j), Rational(2)});
        if (i + 1 < D) {
            // (s)_D/(s)_{i+1} = (s+i+1)_{D-1-i}: no poles, multiply by the full
            // common denominator
            term = term * pochhammer_poly(Rational(i + 1), D - 1 - i) * common;
        } else {
            // (s)_D/(s)_{i+1} = 1/(s+D)_{i+1-D}: cancel against the common part
            term = term * pochhammer_poly(Rational(i + 1), i_max - i);
        }
        numer += term;
    }
    const auto [quot, rem] = numer.divmod_monic(common);
    if (!quot.is_zero())
        throw InternalError("thm13_density: polynomial part of the transform is nonzero");
    std::vector<Rational> poles;
    for (int j = D; j <= i_max; ++j) poles.push_back(Rational(-j));
    const std::vector<Rational> residues = partial_fractions(rem, poles);
    const Rational prefactor = Rational(factorial(n - 1)) / Rational(factorial(D - 1));
    PolyDensity out;
    Rational mass(0);
    for (int j = D; j <= i_max; ++j) {
        const Rational a = prefactor * residues[j - D];
        if (a == 0) continue;
        out.terms.emplace_back(a, Rational(j - 1));
        mass += a / Rational(j);
    }
    if (mass != 1) throw InternalError("thm13_density: density does not integrate to 1");
    return out;
}

// Mellin transform of H = 1 - ||W||^2 for the two-step walk with weights
// (q1, q2).
inline GammaRatioMellin prop14_mellin(double q1, double q2, int d) {
    if (!(q1 > 0.0 && q2 > 0.0)) throw DomainError("prop14_mellin: weights must be positive");
    if (d < 2) throw DomainError("prop14_mellin: d must be >= 2");
    const Rational r1 = rational_from_double(q1), r2 = rational_from_double(q2);
    GammaRatioMellin m;
    m.gamma_num = {r1, r2, Rational(d - 1, 2)};
    m.gamma_den = {(r1 + r2) / 2, (r1 + r2 + 1) / 2, Rational(d - 1)};
    return m;
}

// Law of ||W||^2 for the two-step walk with uniform X: polynomial density for
// even d (via partial fractions and v = 1 - h), transform object for odd d.
inline RadialLaw cor15_density(int d) {
    if (d < 2) throw DomainError("cor15_density: d must be >= 2");
    if (d == 2) return BetaLaw{Rational(1), Rational(1, 2)};
    if (d % 2 == 0) {
        const int D = d / 2;
        // E(H^s) = (2D-2)!/(3/2)_{D-2} * (s+3/2)_{D-2} / (s+1)_{2D-2}
        const Rational K = Rational(factorial(2 * D - 2)) /
                           specfun::pochhammer(Rational(3, 2), D - 2);
        const RatPoly num = K * pochhammer_poly(Rational(3, 2), D - 2);
        std::vector<Rational> poles;
        for (int j = 1; j <= 2 * D - 2; ++j) poles.push_back(Rational(-j));
        const std::vector<Rational> residues = partial_fractions(num, poles);
        // density of H as a polynomial, then substitute h = 1 - v
        std::vector<Rational> h_coeffs(2 * D - 2);
        for (int j = 1; j <= 2 * D - 2; ++j) h_coeffs[j - 1] = residues[j - 1];
        const RatPoly in_v = RatPoly(std::move(h_coeffs)).compose_shift_minus(Rational(1));
        PolyDensity out;
        Rational mass(0);
        for (std::size_t e = 0; e < in_v.coeffs().size(); ++e) {
            if (in_v.coeffs()[e] == 0) continue;
            out.terms.emplace_back(in_v.coeffs()[e], Rational(e));
            mass += in_v.coeffs()[e] / Rational(e + 1);
        }
        if (mass != 1) throw InternalError("cor15_density: density does not integrate to 1");
        return out;
    }
    const int D = (d - 1) / 2;
    GammaRatioMellin m;
    m.gamma_num = {Rational(1)};
    m.gamma_den = {Rational(3, 2)};
    m.poch.push_back(PochFactor{Rational(D), static_cast<unsigned>(D), false});
    return GammaRatioMellinLaw{m, true};
}

// d = 1 law of sum X_i eps_i with equal weights q and sign bias p: endpoint
// atoms plus beta-type pieces in (1+y)/2. The flattening constant is
// 2^{1-nq} Gamma(nq)/(Gamma(kq) Gamma((n-k)q)) per piece.
inline MixedSignedLaw prop10_law(double q, int n, double p) {
    if (!(q > 0.0)) throw DomainError("prop10_law: q must be positive");
    if (n < 1) throw DomainError("prop10_law: n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("prop10_law: p must lie in [0, 1]");
    const Rational pr = rational_from_double(p);
    const Rational qr = rational_from_double(q);
    MixedSignedLaw out;
    out.atom_minus = rational_pow(1 - pr, n);
    out.atom_plus = rational_pow(pr, n);
    const double nq = n * q;
    for (int k = 1; k <= n - 1; ++k) {
        MixedSignedPiece piece;
        piece.weight = Rational(binomial(n, k)) * rational_pow(pr, k) *
                       rational_pow(1 - pr, n - k);
        if (piece.weight == 0) continue;  // p at an endpoint
        piece.bp = Rational(k) * qr;
        piece.bq = Rational(n - k) * qr;
        piece.coefficient =
            to_double(piece.weight) *
            std::exp(std::lgamma(nq) - std::lgamma(k * q) - std::lgamma((n - k) * q) +
                     (1.0 - nq) * std::numbers::ln2_v<double>);
        out.pieces.push_back(piece);
    }
    return out;
}

// Exact Taylor test of prod_i 2F1(q_i/2,(q_i+1)/2;d/2;z) against
// 2F1(Q/2,(Q+1)/2;k/2;z) through the given order.
inline HyperuniformVerdict hyperuniform_check(const WalkConfig& config, double k,
                                              int order = 6) {
    config.validate();
    if (order < 2) throw DomainError("hyperuniform_check: order must be >= 2");
    if (!(k > config.d)) throw DomainError("hyperuniform_check: type must exceed d");
    const Rational half_d(config.d, 2);
    std::vector<Rational> lhs(order + 1);
    lhs[0] = 1;
    for (double qd : config.qs) {
        const Rational q = rational_from_double(qd);
        lhs = series_product(lhs, hyp2f1_taylor(q / 2, (q + 1) / 2, half_d, order));
    }
    Rational total(0);
    for (double qd : config.qs) total += rational_from_double(qd);
    const Rational kr = rational_from_double(k);
    const std::vector<Rational> rhs =
        hyp2f1_taylor(total / 2, (total + 1) / 2, kr / 2, order);
    HyperuniformVerdict verdict;
    verdict.order_checked = order;
    verdict.is_hyperuniform = (lhs == rhs);
    if (verdict.is_hyperuniform) verdict.type_k = k;
    return verdict;
}

// The only equal-weight hyperuniform parameters: q = d-1 (type n(d-1)+1) and,
// for d >= 3, q = d/2-1 (type n(d-2)+2). Each candidate is re-verified through
// the coefficient test before being returned.
inline std::set<double> classify_q(int d) {
    if (d < 2) throw DomainError("classify_q: d must be >= 2");
    std::set<double> out;
    const auto verify = [d](double q, auto type_for_n) {
        for (int n = 2; n <= 4; ++n) {
            WalkConfig cfg{d, std::vector<double>(static_cast<std::size_t>(n), q)};
            if (!hyperuniform_check(cfg, type_for_n(n), 6).is_hyperuniform)
                throw InternalError("classify_q: predicted type failed verification");
        }
    };
    verify(d - 1.0, [d](int n) { return static_cast<double>(n * (d - 1) + 1); });
    out.insert(d - 1.0);
    if (d >= 3) {
        const double q = d / 2.0 - 1.0;
        verify(q, [d](int n) { return static_cast<double>(n * (d - 2) + 2); });
        out.insert(q);
    }
    return out;
}

// Dispatcher over every solvable configuration, in fixed priority order.
// Pattern matching uses exact floating-point equality on the weights.
inline RadialLaw radial_law(const WalkConfig& config) {
    config.validate();
    const int d = config.d;
    const int n = static_cast<int>(config.n());
    const auto count_eq = [&](double v) {
        int c = 0;
        for (double q : config.qs)
            if (q == v) ++c;
        return c;
    };
    const bool all_equal = count_eq(config.qs[0]) == n;

    if (d == 1) {
        if (all_equal) return prop10_law(config.qs[0], n, 0.5);
        throw NotClosedForm("radial_law: d = 1 with unequal weights");
    }
    if (n == 1) throw NotClosedForm("radial_law: single step is a point mass on the sphere");

    const double dm1 = d - 1.0;
    if (count_eq(dm1) == n || (count_eq(dm1) == n - 1 && count_eq(d) == 1))
        return prop5_beta(1, n, d);
    if (d >= 3) {
        const double half = d / 2.0 - 1.0;
        if (count_eq(half) == n || (count_eq(half) == n - 1 && count_eq(d / 2.0) == 1))
            return prop5_beta(2, n, d);
    }
    if (all_equal && config.qs[0] == static_cast<double>(d)) return thm11_law(n, d);
    if (all_equal && config.qs[0] == 1.0 && d >= 4 && d % 2 == 0)
        return thm13_density(n, d / 2);
    if (n == 2)
        return GammaRatioMellinLaw{prop14_mellin(config.qs[0], config.qs[1], d), true};
    throw NotClosedForm("radial_law: no exact law implemented for this configuration");
}

}  // namespace dirwalk::exactlaw
