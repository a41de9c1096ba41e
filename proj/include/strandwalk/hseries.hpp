#pragma once

#include "strandwalk/numbers.hpp"
#include "strandwalk/ratfun.hpp"

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace strandwalk {

/// Truncated power series in h = 1 - t with exact rational coefficients.
/// Index k holds the coefficient of h^k; all arithmetic is mod h^K where K is
/// the (fixed) length.
class HSeries {
public:
    explicit HSeries(std::size_t order) : c_(order) {
        if (order == 0) throw std::invalid_argument("series truncation order must be positive");
    }
    static HSeries constant(Rational value, std::size_t order) {
        HSeries s(order);
        s.c_[0] = std::move(value);
        return s;
    }
    static HSeries from_coeffs(std::vector<Rational> coeffs) {
        if (coeffs.empty()) throw std::invalid_argument("series truncation order must be positive");
        HSeries s(coeffs.size());
        s.c_ = std::move(coeffs);
        return s;
    }

    std::size_t order() const { return c_.size(); }
    const Rational& coeff(std::size_t k) const { return c_.at(k); }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (c != 0) return false;
        return true;
    }

    /// Index of the lowest nonzero coefficient, or order() if none.
    std::size_t valuation() const {
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (c_[k] != 0) return k;
        return c_.size();
    }

    HSeries operator-() const {
        HSeries r(order());
        for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = -c_[k];
        return r;
    }
    HSeries& operator+=(const HSeries& o) {
        check(o);
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    HSeries& operator-=(const HSeries& o) {
        check(o);
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
        return *this;
    }
    friend HSeries operator+(HSeries a, const HSeries& b) { return a += b; }
    friend HSeries operator-(HSeries a, const HSeries& b) { return a -= b; }

    friend HSeries operator*(const HSeries& a, const HSeries& b) {
        a.check(b);
        HSeries r(a.order());
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; i + j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }
    HSeries& operator*=(const HSeries& o) { return *this = *this * o; }

    friend bool operator==(const HSeries& a, const HSeries& b) { return a.c_ == b.c_; }
    friend bool operator!=(const HSeries& a, const HSeries& b) { return !(a == b); }

    Rational eval(const Rational& h) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * h + *it;
        return acc;
    }

    std::string to_string(const std::string& var = "h") const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            Rational a = c_[k];
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            if (k == 0) {
                os << rational_to_string(a);
            } else {
                if (a != 1) os << rational_to_string(a) << "*";
                os << var;
                if (k != 1) os << "^" << k;
            }
            first = false;
        }
        return first ? "0" : os.str();
    }

private:
    void check(const HSeries& o) const {
        if (o.c_.size() != c_.size()) throw std::logic_error("mixed series truncation orders");
    }

    std::vector<Rational> c_;
};

/// Taylor expansion of f in h = 1 - t, truncated to `order` terms
/// (h^0 .. h^{order-1}). Requires f regular at t = 1.
inline HSeries expand_h(const RatFun& f, std::size_t order) {
    if (order == 0) throw std::invalid_argument("series truncation order must be positive");
    if (!f.regular_at_one()) throw std::domain_error("pole at t = 1; no expansion in 1 - t exists");
    if (f.is_zero()) return HSeries(order);

    // Write f = N(t) / D(t) with ordinary polynomials: negative powers of t in
    // the numerator move into the denominator.
    LaurentPoly n = f.num(), d = f.den();
    int a = n.min_exp();
    if (a < 0) {
        n = n.shifted(-a);
        d = d.shifted(-a);
    }

    // Compose with t = 1 - h, truncating to `order` terms: Horner in (1 - h).
    auto compose = [order](const LaurentPoly& p) {
        std::vector<Rational> acc(order);
        for (int e = p.max_exp(); e >= 0; --e) {
            // acc = acc * (1 - h) + coeff(e)
            for (std::size_t k = order; k-- > 1;) acc[k] = acc[k] - acc[k - 1];
            acc[0] += Rational(p.coeff(e));
        }
        return acc;
    };
    std::vector<Rational> num_h = compose(n);
    std::vector<Rational> den_h = compose(d);
    if (den_h[0] == 0) throw std::domain_error("pole at t = 1; no expansion in 1 - t exists");

    // Power series division.
    std::vector<Rational> out(order);
    for (std::size_t k = 0; k < order; ++k) {
        Rational s = num_h[k];
        for (std::size_t j = 1; j <= k; ++j) s -= den_h[j] * out[k - j];
        out[k] = s / den_h[0];
    }
    return HSeries::from_coeffs(std::move(out));
}

}  // namespace strandwalk
