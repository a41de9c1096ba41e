#pragma once

#include "strandwalk/numbers.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace strandwalk {

/// Laurent polynomial in one variable t with arbitrary-precision integer
/// coefficients. Zero coefficients are never stored; the zero polynomial has
/// an empty coefficient map.
class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(Int constant) {
        if (constant != 0) coeffs_.emplace(0, std::move(constant));
    }
    explicit LaurentPoly(long constant) : LaurentPoly(Int(constant)) {}

    static LaurentPoly monomial(Int c, int exp) {
        LaurentPoly p;
        if (c != 0) p.coeffs_.emplace(exp, std::move(c));
        return p;
    }
    static LaurentPoly one() { return LaurentPoly(Int(1)); }
    static LaurentPoly t() { return monomial(Int(1), 1); }
    static LaurentPoly tbar() { return monomial(Int(1), -1); }
    static LaurentPoly t_pow(int e) { return monomial(Int(1), e); }

    bool is_zero() const { return coeffs_.empty(); }
    bool is_one() const { return coeffs_.size() == 1 && coeffs_.begin()->first == 0 && coeffs_.begin()->second == 1; }

    int min_exp() const {
        if (is_zero()) throw std::logic_error("min_exp of zero polynomial");
        return coeffs_.begin()->first;
    }
    int max_exp() const {
        if (is_zero()) throw std::logic_error("max_exp of zero polynomial");
        return coeffs_.rbegin()->first;
    }

    Int coeff(int exp) const {
        auto it = coeffs_.find(exp);
        return it == coeffs_.end() ? Int(0) : it->second;
    }

    const std::map<int, Int>& coeffs() const { return coeffs_; }

    /// gcd of all coefficients, nonnegative; 0 for the zero polynomial.
    Int content() const {
        Int g = 0;
        for (const auto& [e, c] : coeffs_) g = strandwalk::gcd(g, c);
        return g < 0 ? Int(-g) : g;
    }

    LaurentPoly shifted(int exp) const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e + exp, c);
        return r;
    }

    /// Substitute t -> t^{-1}.
    LaurentPoly reversed() const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(-e, c);
        return r;
    }

    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e, -c);
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.coeffs_) add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.coeffs_) add_term(e, -c);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.coeffs_)
            for (const auto& [eb, cb] : b.coeffs_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /// Exact evaluation; t0 must be nonzero when negative exponents are present.
    Rational eval(const Rational& t0) const {
        if (is_zero()) return Rational(0);
        int lo = min_exp();
        if (lo < 0 && t0 == 0) throw std::domain_error("evaluation at a pole (t = 0)");
        // Horner on the ordinary part, then scale by t0^lo.
        Rational acc = 0;
        int prev = max_exp();
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            for (int k = prev; k > it->first; --k) acc *= t0;
            acc += Rational(it->second);
            prev = it->first;
        }
        Rational scale = 1;
        int e = lo < 0 ? -lo : lo;
        Rational base = t0;
        for (int k = 0; k < e; ++k) scale *= base;
        return lo < 0 ? Rational(acc / scale) : Rational(acc * scale);
    }

    std::string to_string(const std::string& var = "t") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : coeffs_) {
            Int a = c;
            if (first) {
                if (a < 0) { os << "-"; a = -a; }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            if (e == 0) {
                os << a.str();
            } else {
                if (a != 1) os << a.str() << "*";
                os << var;
                if (e != 1) os << "^" << e;
            }
            first = false;
        }
        return os.str();
    }

private:
    void add_term(int e, Int c) {
        if (c == 0) return;
        auto [it, inserted] = coeffs_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coeffs_.erase(it);
        }
    }

    std::map<int, Int> coeffs_;
};

/// Quotient of Laurent polynomials known to divide exactly; throws otherwise.
inline LaurentPoly divexact(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return LaurentPoly();
    int sa = a.min_exp(), sb = b.min_exp();
    LaurentPoly num = a.shifted(-sa), den = b.shifted(-sb);
    // Ordinary long division, highest degree first.
    LaurentPoly q;
    Int lead_den = den.coeff(den.max_exp());
    int deg_den = den.max_exp();
    while (!num.is_zero() && num.max_exp() >= deg_den) {
        Int lead = num.coeff(num.max_exp());
        if (lead % lead_den != 0) throw std::domain_error("inexact polynomial division");
        LaurentPoly term = LaurentPoly::monomial(lead / lead_den, num.max_exp() - deg_den);
        q += term;
        num -= term * den;
    }
    if (!num.is_zero()) throw std::domain_error("inexact polynomial division");
    return q.shifted(sa - sb);
}

namespace detail {

inline LaurentPoly primitive_part(const LaurentPoly& p) {
    Int c = p.content();
    if (c == 0 || c == 1) return p;
    return divexact(p, LaurentPoly(c));
}

/// Pseudo-remainder of ordinary polynomials (min_exp >= 0), deg a >= deg b.
inline LaurentPoly pseudo_rem(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    Int lead_b = b.coeff(b.max_exp());
    int deg_b = b.max_exp();
    while (!r.is_zero() && r.max_exp() >= deg_b) {
        LaurentPoly scaled = r * LaurentPoly(lead_b);
        LaurentPoly term = LaurentPoly::monomial(r.coeff(r.max_exp()), r.max_exp() - deg_b);
        r = scaled - term * b;
    }
    return r;
}

}  // namespace detail

/// gcd over Z[t] (inputs shifted to ordinary form first), including integer
/// content, normalized to positive leading coefficient. gcd(0,0) = 0.
inline LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() && b.is_zero()) return LaurentPoly();
    if (a.is_zero()) return b.coeff(b.max_exp()) < 0 ? (-b).shifted(-(-b).min_exp()) : b.shifted(-b.min_exp());
    if (b.is_zero()) return poly_gcd(b, a);
    Int content = gcd(a.content(), b.content());
    LaurentPoly x = detail::primitive_part(a.shifted(-a.min_exp()));
    LaurentPoly y = detail::primitive_part(b.shifted(-b.min_exp()));
    if (x.max_exp() < y.max_exp()) std::swap(x, y);
    while (!y.is_zero()) {
        LaurentPoly r = detail::pseudo_rem(x, y);
        x = y;
        y = detail::primitive_part(r);
    }
    if (x.coeff(x.max_exp()) < 0) x = -x;
    return x * LaurentPoly(content);
}

}  // namespace strandwalk
