#pragma once

#include "strandwalk/diagram.hpp"
#include "strandwalk/engine.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace strandwalk {

/// Resolves every double point: +1 keeps the stored roles and sign, -1 swaps
/// the Over/Under roles and flips the sign. The choice map must cover the
/// double-point set exactly.
inline StringLinkDiagram resolve(const SingularStringLink& s, const std::map<int, int>& choice) {
    for (const auto& [id, c] : choice) {
        if (!s.double_points.count(id))
            throw std::domain_error("resolution names crossing c" + std::to_string(id + 1) +
                                    " which is not a double point");
        if (c != 1 && c != -1) throw std::domain_error("resolution choices must be +1 or -1");
    }
    for (int id : s.double_points)
        if (!choice.count(id))
            throw std::domain_error("resolution misses double point c" + std::to_string(id + 1));

    std::vector<Strand> strands = s.base.strands();
    std::vector<Crossing> crossings = s.base.crossings();
    for (int id : s.double_points) {
        if (choice.at(id) == 1) continue;
        crossings[id].sign = -crossings[id].sign;
        for (auto& st : strands)
            for (auto& e : st.encounters)
                if (e.crossing == id) e.role = e.role == Role::Over ? Role::Under : Role::Over;
    }
    return StringLinkDiagram::create(s.base.n(), std::move(strands), std::move(crossings));
}

/// Canonical extension of the Burau matrix to singular string links.
struct VassilievValue {
    std::optional<Matrix<RatFun>> exact;
    std::optional<Matrix<HSeries>> series;
    int double_point_count = 0;
};

namespace detail {

template <typename MatrixT, typename Eval>
MatrixT alternating_resolution_sum(const SingularStringLink& s, Eval&& evaluate) {
    std::vector<int> ids(s.double_points.begin(), s.double_points.end());
    const std::size_t count = ids.size();
    std::optional<MatrixT> acc;  // mask 0 (all-positive, even parity) comes first
    for (std::size_t mask = 0; mask < (std::size_t{1} << count); ++mask) {
        std::map<int, int> choice;
        int negatives = 0;
        for (std::size_t b = 0; b < count; ++b) {
            bool neg = (mask >> b) & 1;
            choice[ids[b]] = neg ? -1 : +1;
            negatives += neg;
        }
        MatrixT term = evaluate(resolve(s, choice));
        if (!acc)
            acc = std::move(term);
        else if (negatives % 2)
            *acc = *acc - term;
        else
            *acc = *acc + term;
    }
    return *acc;
}

}  // namespace detail

/// Alternating sum of Burau matrices over all 2^|D| resolutions, exact.
inline VassilievValue vassiliev_value(const SingularStringLink& s) {
    VassilievValue v;
    v.double_point_count = s.double_point_count();
    v.exact = detail::alternating_resolution_sum<Matrix<RatFun>>(
        s, [](const StringLinkDiagram& d) { return burau_matrix(d); });
    return v;
}

/// Series-mode alternating sum modulo h^{order+1}. The lowest nonvanishing
/// order is at least the number of double points; this is checked.
inline VassilievValue vassiliev_value_series(const SingularStringLink& s, int order) {
    VassilievValue v;
    v.double_point_count = s.double_point_count();
    v.series = detail::alternating_resolution_sum<Matrix<HSeries>>(
        s, [order](const StringLinkDiagram& d) { return series_burau(d, order); });
    std::size_t floor = std::min<std::size_t>(v.double_point_count, static_cast<std::size_t>(order) + 1);
    for (std::size_t i = 0; i < v.series->rows(); ++i)
        for (std::size_t j = 0; j < v.series->cols(); ++j)
            if (v.series->at(i, j).valuation() < floor)
                throw std::logic_error("singular value has a coefficient below the double-point count");
    return v;
}

/// Coefficient of h^k of the Burau matrix, an n x n rational matrix.
inline Matrix<Rational> bk_coefficient(const StringLinkDiagram& d, int k) {
    if (k < 0) throw std::domain_error("series coefficient order must be nonnegative");
    TruncatedSeriesMatrix m = series_burau(d, std::max(k, 1));
    return m.map([k](const HSeries& s) { return s.coeff(static_cast<std::size_t>(k)); });
}

/// Coefficient of h^k of the singular-extended Burau matrix.
inline Matrix<Rational> bk_coefficient(const SingularStringLink& s, int k) {
    if (k < 0) throw std::domain_error("series coefficient order must be nonnegative");
    if (s.double_points.empty()) return bk_coefficient(s.base, k);
    VassilievValue v = vassiliev_value_series(s, std::max(k, 1));
    return v.series->map([k](const HSeries& e) { return e.coeff(static_cast<std::size_t>(k)); });
}

}  // namespace strandwalk
