#pragma once

#include "strandwalk/engine.hpp"
#include "strandwalk/markov.hpp"
#include "strandwalk/matrix.hpp"
#include "strandwalk/numbers.hpp"

#include <json.hpp>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace strandwalk {

/// Fixed float format for all numeric reports: 12 significant digits.
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace detail {

inline std::string grid(const std::vector<std::vector<std::string>>& cells) {
    if (cells.empty()) return "";
    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto& row : cells)
        for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());
    std::ostringstream os;
    for (const auto& row : cells) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) os << "  ";
            os << std::string(width[j] - row[j].size(), ' ') << row[j];
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace detail

inline std::string matrix_to_text(const Matrix<RatFun>& m) {
    std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) cells[i][j] = m.at(i, j).to_string();
    return detail::grid(cells);
}

inline std::string matrix_to_text(const Matrix<HSeries>& m) {
    std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) cells[i][j] = m.at(i, j).to_string();
    return detail::grid(cells);
}

inline std::string matrix_to_text(const Matrix<Rational>& m) {
    std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) cells[i][j] = rational_to_string(m.at(i, j));
    return detail::grid(cells);
}

inline std::string matrix_to_text(const Matrix<double>& m) {
    std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) cells[i][j] = format_double(m.at(i, j));
    return detail::grid(cells);
}

inline nlohmann::json laurent_to_json(const LaurentPoly& p) {
    nlohmann::json coeffs = nlohmann::json::array();
    int min_exp = p.is_zero() ? 0 : p.min_exp();
    if (!p.is_zero())
        for (int e = min_exp; e <= p.max_exp(); ++e) coeffs.push_back(p.coeff(e).str());
    return {{"min_exp", min_exp}, {"coeffs", coeffs}};
}

inline nlohmann::json ratfun_to_json(const RatFun& f) {
    return {{"num", laurent_to_json(f.num())}, {"den", laurent_to_json(f.den())}};
}

inline nlohmann::json matrix_to_json(const Matrix<RatFun>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(ratfun_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"n", m.rows()}, {"entries", rows}};
}

inline nlohmann::json matrix_to_json(const Matrix<HSeries>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            nlohmann::json coeffs = nlohmann::json::array();
            for (const auto& c : m.at(i, j).coeffs()) coeffs.push_back(rational_to_string(c));
            row.push_back(std::move(coeffs));
        }
        rows.push_back(std::move(row));
    }
    return {{"n", m.rows()}, {"order", m.at(0, 0).order() - 1}, {"entries", rows}};
}

inline nlohmann::json matrix_to_json(const Matrix<Rational>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return {{"n", m.rows()}, {"entries", rows}};
}

inline nlohmann::json matrix_to_json(const Matrix<double>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace strandwalk
