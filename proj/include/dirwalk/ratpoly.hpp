#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "dirwalk/errors.hpp"
#include "dirwalk/rational.hpp"

namespace dirwalk {

// Dense polynomial with exact rational coefficients, ascending powers.
// Kept deliberately small: the exact pipelines only need ring operations,
// evaluation, division by a monic divisor and antiderivatives.
class RatPoly {
  public:
    RatPoly() = default;
    explicit RatPoly(Rational c) : coeffs_{std::move(c)} { trim(); }
    explicit RatPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static RatPoly monomial(const Rational& c, std::size_t degree) {
        std::vector<Rational> v(degree + 1);
        v[degree] = c;
        return RatPoly(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }
    // degree of the zero polynomial is reported as 0
    std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Rational coeff(std::size_t k) const {
        return k < coeffs_.size() ? coeffs_[k] : Rational(0);
    }

    Rational operator()(const Rational& x) const {
        Rational acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    RatPoly& operator+=(const RatPoly& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }

    RatPoly& operator-=(const RatPoly& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }

    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }

    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        if (a.is_zero() || b.is_zero()) return RatPoly();
        std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return RatPoly(std::move(out));
    }

    friend RatPoly operator*(const Rational& c, RatPoly p) {
        for (auto& x : p.coeffs_) x *= c;
        p.trim();
        return p;
    }

    friend bool operator==(const RatPoly& a, const RatPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }

    RatPoly pow(unsigned n) const {
        RatPoly out{Rational(1)};
        RatPoly base = *this;
        while (n) {
            if (n & 1) out = out * base;
            base = base * base;
            n >>= 1;
        }
        return out;
    }

    // Antiderivative with zero constant term.
    RatPoly integral() const {
        std::vector<Rational> out(coeffs_.size() + 1);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            out[i + 1] = coeffs_[i] / Rational(i + 1);
        return RatPoly(std::move(out));
    }

    // Rewrites p(x) as q(y) with x = shift - y, i.e. q = p(shift - y).
    RatPoly compose_shift_minus(const Rational& shift) const {
        RatPoly out;
        RatPoly base{Rational(1)};
        RatPoly lin(std::vector<Rational>{shift, Rational(-1)});
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            out += coeffs_[i] * base;
            if (i + 1 < coeffs_.size()) base = base * lin;
        }
        return out;
    }

    // Quotient/remainder against a monic divisor.
    std::pair<RatPoly, RatPoly> divmod_monic(const RatPoly& div) const {
        if (div.is_zero() || div.coeffs_.back() != 1)
            throw InternalError("divmod_monic: divisor must be monic");
        std::vector<Rational> rem = coeffs_;
        std::vector<Rational> quot;
        const std::size_t dd = div.degree();
        while (rem.size() > dd) {
            Rational lead = rem.back();
            quot.push_back(lead);
            const std::size_t off = rem.size() - 1 - dd;
            for (std::size_t i = 0; i <= dd; ++i) rem[off + i] -= lead * div.coeffs_[i];
            rem.pop_back();
        }
        std::reverse(quot.begin(), quot.end());
        return {RatPoly(std::move(quot)), RatPoly(std::move(rem))};
    }

  private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;
};

// (x + shift)(x + shift + 1)...(x + shift + len - 1)
inline RatPoly pochhammer_poly(const Rational& shift, unsigned len) {
    RatPoly out{Rational(1)};
    for (unsigned j = 0; j < len; ++j)
        out = out * RatPoly(std::vector<Rational>{shift + Rational(j), Rational(1)});
    return out;
}

// Residues of num(s) / prod_j (s - poles[j]) at each (distinct) pole.
inline std::vector<Rational> partial_fractions(const RatPoly& num,
                                               const std::vector<Rational>& poles) {
    std::vector<Rational> residues(poles.size());
    for (std::size_t j = 0; j < poles.size(); ++j) {
        Rational denom(1);
        for (std::size_t m = 0; m < poles.size(); ++m) {
            if (m == j) continue;
            Rational diff = poles[j] - poles[m];
            if (diff == 0) throw InternalError("partial_fractions: repeated pole");
            denom *= diff;
        }
        residues[j] = num(poles[j]) / denom;
    }
    return residues;
}

// Exact Taylor coefficients of 2F1(a,b;c;z) through z^order.
inline std::vector<Rational> hyp2f1_taylor(const Rational& a, const Rational& b,
                                           const Rational& c, unsigned order) {
    std::vector<Rational> out(order + 1);
    out[0] = 1;
    Rational term(1);
    for (unsigned k = 0; k < order; ++k) {
        Rational ck = c + Rational(k);
        if (ck == 0) throw DomainError("hyp2f1_taylor: c is a nonpositive integer");
        term *= (a + Rational(k)) * (b + Rational(k)) / (ck * Rational(k + 1));
        out[k + 1] = term;
    }
    return out;
}

// Truncated product of power series (same length in == out).
inline std::vector<Rational> series_product(const std::vector<Rational>& a,
                                            const std::vector<Rational>& b) {
    std::vector<Rational> out(std::min(a.size(), b.size()));
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) out[i] += a[j] * b[i - j];
    return out;
}

}  // namespace dirwalk
