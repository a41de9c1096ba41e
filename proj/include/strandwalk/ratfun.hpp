#pragma once

#include "strandwalk/laurent.hpp"
#include "strandwalk/numbers.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace strandwalk {

/// Exact rational function of t over arbitrary-precision integers.
///
/// Canonical form: the denominator is an ordinary polynomial with nonzero,
/// positive constant term; numerator and denominator are jointly reduced by
/// their integer-content gcd and their polynomial gcd; any t^{-1} powers are
/// carried by the numerator. Structural equality then coincides with
/// mathematical equality.
class RatFun {
public:
    RatFun() : num_(), den_(LaurentPoly::one()) {}
    explicit RatFun(Int constant) : num_(std::move(constant)), den_(LaurentPoly::one()) {}
    explicit RatFun(long constant) : RatFun(Int(constant)) {}
    explicit RatFun(LaurentPoly p) : num_(std::move(p)), den_(LaurentPoly::one()) {}
    RatFun(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        normalize();
    }

    static RatFun zero() { return RatFun(); }
    static RatFun one() { return RatFun(Int(1)); }
    static RatFun t() { return RatFun(LaurentPoly::t()); }
    static RatFun tbar() { return RatFun(LaurentPoly::tbar()); }
    /// t^e for e of either sign.
    static RatFun t_pow(int e) { return RatFun(LaurentPoly::t_pow(e)); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    RatFun operator-() const {
        RatFun r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator*(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero()) throw std::domain_error("division by zero rational function");
        return RatFun(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
    RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

    friend bool operator==(const RatFun& a, const RatFun& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFun& a, const RatFun& b) { return !(a == b); }

    /// Substitute t -> t^{-1}.
    RatFun subst_tbar() const { return RatFun(num_.reversed(), den_.reversed()); }

    bool regular_at(const Rational& t0) const {
        if (is_zero()) return true;
        if (t0 == 0 && num_.min_exp() < 0) return false;
        return den_.eval(t0) != 0;
    }
    bool regular_at_one() const { return den_.eval(Rational(1)) != 0; }

    /// Exact evaluation; throws on a pole.
    Rational eval(const Rational& t0) const {
        if (is_zero()) return Rational(0);
        if (t0 == 0 && num_.min_exp() < 0) throw std::domain_error("evaluation at a pole (t = 0)");
        Rational d = den_.eval(t0);
        if (d == 0) throw std::domain_error("evaluation at a pole of the rational function");
        return num_.eval(t0) / d;
    }

    double eval_double(double t0) const {
        auto horner = [t0](const LaurentPoly& p) {
            if (p.is_zero()) return 0.0;
            double acc = 0.0;
            int prev = p.max_exp();
            for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
                for (int k = prev; k > it->first; --k) acc *= t0;
                acc += it->second.convert_to<double>();
                prev = it->first;
            }
            int lo = p.min_exp();
            double scale = 1.0;
            for (int k = 0; k < (lo < 0 ? -lo : lo); ++k) scale *= t0;
            return lo < 0 ? acc / scale : acc * scale;
        };
        double d = horner(den_);
        if (d == 0.0) throw std::domain_error("evaluation at a pole of the rational function");
        return horner(num_) / d;
    }

    std::string to_string() const {
        if (den_.is_one()) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = LaurentPoly::one();
            return;
        }
        // Clear t^{-1} powers out of the denominator.
        int shift = den_.min_exp();
        den_ = den_.shifted(-shift);
        num_ = num_.shifted(-shift);
        int num_shift = num_.min_exp();
        LaurentPoly num0 = num_.shifted(-num_shift);
        LaurentPoly g = poly_gcd(num0, den_);
        if (!g.is_one()) {
            num0 = divexact(num0, g);
            den_ = divexact(den_, g);
        }
        if (den_.coeff(den_.min_exp()) < 0) {
            num0 = -num0;
            den_ = -den_;
        }
        num_ = num0.shifted(num_shift);
    }

    LaurentPoly num_;
    LaurentPoly den_;
};

/// Closed form of the geometric series sum_{k>=0} r^k = 1/(1-r).
/// Requires r(1) = 0 so that the series converges near t = 1.
inline RatFun kleene_star(const RatFun& r) {
    if (!r.regular_at_one() || r.eval(Rational(1)) != 0)
        throw std::domain_error("kleene_star requires a loop weight vanishing at t = 1; "
                                "the geometric series does not converge otherwise");
    return RatFun::one() / (RatFun::one() - r);
}

}  // namespace strandwalk
