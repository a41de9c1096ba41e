#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace strandwalk {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

/// Parse "p/q", an integer, or a plain decimal ("0.75") as an exact rational.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            Int p(text.substr(0, slash));
            Int q(text.substr(slash + 1));
            if (q == 0) throw std::invalid_argument("zero denominator");
            return Rational(p, q);
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(Int(text));
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        bool neg = !digits.empty() && digits[0] == '-';
        Int p(digits);
        Int q = 1;
        for (std::size_t i = dot + 1; i < text.size(); ++i) q *= 10;
        (void)neg;
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational literal: " + text);
    }
}

inline std::string rational_to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// SplitMix64 finalizer; the documented per-stream seed derivation for Monte Carlo runs.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

}  // namespace strandwalk
