#pragma once

#include "strandwalk/diagram.hpp"
#include "strandwalk/engine.hpp"
#include "strandwalk/matrix.hpp"
#include "strandwalk/numbers.hpp"

#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace strandwalk {

/// Burau matrix of a positive string link evaluated at t0 in (0,1]: a
/// stochastic transition matrix. Nonnegativity and unit row sums are checked
/// in exact rational arithmetic before the float conversion.
struct StochasticMatrix {
    Matrix<double> p;
    Rational t_value;
    std::uint64_t diagram_hash = 0;

    StochasticMatrix(Matrix<double> m, Rational t, std::uint64_t hash)
        : p(std::move(m)), t_value(std::move(t)), diagram_hash(hash) {}
};

inline void require_positive_diagram(const StringLinkDiagram& d) {
    if (!d.all_positive()) throw std::domain_error("Markov layer requires positive string links");
}

inline StochasticMatrix evaluate_stochastic(const StringLinkDiagram& d, const Rational& t0) {
    require_positive_diagram(d);
    if (t0 <= 0 || t0 > 1) throw std::domain_error("Markov evaluation needs t in (0, 1]");
    BurauMatrix b = burau_matrix(d);
    Matrix<double> p(b.rows(), b.cols(), 0.0);
    for (std::size_t i = 0; i < b.rows(); ++i) {
        Rational row_sum = 0;
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Rational v = b.at(i, j).eval(t0);
            if (v < 0) throw std::logic_error("negative transition weight on a positive string link");
            row_sum += v;
            p.at(i, j) = to_double(v);
        }
        if (row_sum != 1) throw std::logic_error("transition row does not sum to 1");
    }
    return StochasticMatrix(std::move(p), t0, d.content_hash());
}

/// Monte Carlo transition counts: `trials` walks per source.
struct WalkEstimate {
    Matrix<std::uint64_t> counts;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    Rational t_value;

    WalkEstimate(Matrix<std::uint64_t> c, std::uint64_t tr, std::uint64_t sd, Rational t)
        : counts(std::move(c)), trials(tr), seed(sd), t_value(std::move(t)) {}

    double frequency(std::size_t i, std::size_t j) const {
        return static_cast<double>(counts.at(i, j)) / static_cast<double>(trials);
    }
};

/// Seeded walk simulation. Each source owns an independent RNG stream,
/// mt19937_64 seeded with splitmix64(seed + (source_index+1) * golden), so
/// results are reproducible across platforms and independent of scheduling.
/// Sources run concurrently.
inline WalkEstimate simulate_walks(const StringLinkDiagram& d, const Rational& t0, std::uint64_t trials,
                                   std::uint64_t seed) {
    require_positive_diagram(d);
    if (t0 <= 0 || t0 >= 1) throw std::domain_error("walk simulation needs t strictly inside (0, 1)");
    if (trials < 1) throw std::domain_error("walk simulation needs at least one trial");
    const double jump_prob = 1.0 - to_double(t0);
    const int n = d.n();

    auto run_source = [&d, n, trials, seed, jump_prob](int src) {
        std::vector<std::uint64_t> row(n, 0);
        std::mt19937_64 rng(splitmix64(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(src + 1)));
        auto uniform = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
        for (std::uint64_t trial = 0; trial < trials; ++trial) {
            int si = src, pos = 0;
            for (;;) {
                const auto& enc = d.strands()[si].encounters;
                while (pos < static_cast<int>(enc.size()) && enc[pos].role == Role::Under) ++pos;
                if (pos == static_cast<int>(enc.size())) {
                    ++row[d.strands()[si].sink - 1];
                    break;
                }
                if (uniform() < jump_prob) {
                    EncounterLoc under = d.under_loc(enc[pos].crossing);
                    si = under.strand;
                    pos = under.pos + 1;
                } else {
                    ++pos;
                }
            }
        }
        return row;
    };

    std::vector<std::future<std::vector<std::uint64_t>>> jobs;
    for (int src = 0; src < n; ++src) jobs.push_back(std::async(std::launch::async, run_source, src));
    Matrix<std::uint64_t> counts(n, n, 0);
    for (int src = 0; src < n; ++src) {
        std::vector<std::uint64_t> row = jobs[src].get();
        for (int j = 0; j < n; ++j) counts.at(src, j) = row[j];
    }
    return WalkEstimate(std::move(counts), trials, seed, t0);
}

/// Smallest N such that every source reaches every sink on the N-th power of
/// the diagram; absent when the reachability pattern is reducible or
/// periodic. On such an N every entry of B(d^N) is positive on (0,1).
inline std::optional<int> persistence_exponent(const StringLinkDiagram& d) {
    return primitivity_index(reachability(d));
}

struct StationaryDistribution {
    std::vector<double> u;
    int iterations = 0;
    double residual = 0.0;
};

/// Power iteration for the stationary row vector of a stochastic matrix.
inline StationaryDistribution stationary_of_matrix(const Matrix<double>& p, double tol,
                                                   int max_iterations = 1000000) {
    const std::size_t n = p.rows();
    std::vector<double> u(n, 1.0 / static_cast<double>(n));
    double residual = 0.0;
    for (int it = 1; it <= max_iterations; ++it) {
        std::vector<double> next(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) next[j] += u[i] * p.at(i, j);
        double mass = 0.0;
        for (double v : next) mass += v;
        for (double& v : next) v /= mass;
        residual = 0.0;
        for (std::size_t j = 0; j < n; ++j) residual = std::max(residual, std::abs(next[j] - u[j]));
        u = std::move(next);
        if (residual <= tol) return {u, it, residual};
    }
    throw std::domain_error("power iteration did not converge; the chain may not be regular");
}

/// Stationary distribution of the walk process at t0; requires a regular
/// chain (finite persistence exponent). Also cross-checks that the rows of
/// P^m settle onto the same vector.
inline StationaryDistribution stationary(const StringLinkDiagram& d, const Rational& t0, double tol) {
    require_positive_diagram(d);
    if (t0 <= 0 || t0 >= 1) throw std::domain_error("stationary analysis needs t strictly inside (0, 1)");
    if (!persistence_exponent(d))
        throw std::domain_error("the walk process is not regular: no power of the diagram "
                                "connects every source to every sink");
    StochasticMatrix sm = evaluate_stochastic(d, t0);
    StationaryDistribution dist = stationary_of_matrix(sm.p, tol);

    // Row-limit verification: rows of P^(2^k) must approach u. Rows are
    // renormalized after each squaring; their sums are exactly 1, so this
    // only cancels float drift, which otherwise doubles per squaring.
    Matrix<double> q = sm.p;
    double row_tol = std::max(tol, 1e-9);
    for (int squarings = 0; squarings < 60; ++squarings) {
        double worst = 0.0;
        for (std::size_t i = 0; i < q.rows(); ++i)
            for (std::size_t j = 0; j < q.cols(); ++j) worst = std::max(worst, std::abs(q.at(i, j) - dist.u[j]));
        if (worst <= row_tol) return dist;
        q = matmul(q, q, 0.0);
        for (std::size_t i = 0; i < q.rows(); ++i) {
            double sum = 0.0;
            for (std::size_t j = 0; j < q.cols(); ++j) sum += q.at(i, j);
            for (std::size_t j = 0; j < q.cols(); ++j) q.at(i, j) /= sum;
        }
    }
    throw std::logic_error("rows of matrix powers failed to converge to the stationary vector");
}

/// Entropy rate of the stationary walk process, in bits:
/// H = -sum_i u_i sum_j p_ij log2 p_ij with 0 log 0 = 0. A chain whose rows
/// are all deterministic (a permutation matrix, e.g. any chain at t = 1) has
/// rate 0 for every stationary vector, so no regularity is needed there.
inline double entropy_rate(const StringLinkDiagram& d, const Rational& t0) {
    require_positive_diagram(d);
    if (t0 <= 0 || t0 > 1) throw std::domain_error("entropy needs t in (0, 1]");
    StochasticMatrix sm = evaluate_stochastic(d, t0);
    std::vector<double> row_entropy(sm.p.rows(), 0.0);
    bool deterministic = true;
    for (std::size_t i = 0; i < sm.p.rows(); ++i) {
        for (std::size_t j = 0; j < sm.p.cols(); ++j) {
            double p = sm.p.at(i, j);
            if (p > 0.0) row_entropy[i] -= p * std::log2(p);
        }
        if (row_entropy[i] != 0.0) deterministic = false;
    }
    if (deterministic) return 0.0;
    StationaryDistribution dist = stationary(d, t0, 1e-12);
    double h = 0.0;
    for (std::size_t i = 0; i < sm.p.rows(); ++i) h += dist.u[i] * row_entropy[i];
    return h;
}

/// Persistence diagnostics: partial sums of matrix powers, the near-limit
/// power, per-entry growth slopes, and the stationary vector when the chain
/// is regular. For a regular chain the limit of p_ij^(m) is u_j > 0 and the
/// partial sums grow linearly with slope u_j.
struct PersistenceReport {
    std::optional<int> exponent;
    bool regular = false;
    std::vector<double> u;            // empty when not regular
    std::optional<double> entropy_bits;
    Matrix<double> partial_sums;      // sum_{m=1..n_max} P^m
    Matrix<double> limit;             // P^{n_max}
    Matrix<double> slopes;            // (S(n_max) - S(n_max/2)) / (n_max - n_max/2)
    int n_max = 0;
    Rational t_value;

    PersistenceReport(Matrix<double> s, Matrix<double> l, Matrix<double> sl)
        : partial_sums(std::move(s)), limit(std::move(l)), slopes(std::move(sl)) {}
};

inline PersistenceReport persistence_check(const StringLinkDiagram& d, const Rational& t0, int n_max) {
    require_positive_diagram(d);
    if (t0 <= 0 || t0 >= 1) throw std::domain_error("persistence analysis needs t strictly inside (0, 1)");
    if (n_max < 2) throw std::domain_error("persistence analysis needs n_max >= 2");
    StochasticMatrix sm = evaluate_stochastic(d, t0);
    const std::size_t n = sm.p.rows();

    Matrix<double> power = sm.p;
    Matrix<double> sums = sm.p;
    Matrix<double> half(n, n, 0.0);
    int half_at = n_max / 2;
    if (half_at == 1) half = sums;
    for (int m = 2; m <= n_max; ++m) {
        power = matmul(power, sm.p, 0.0);
        sums = sums + power;
        if (m == half_at) half = sums;
    }
    Matrix<double> slopes(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            slopes.at(i, j) = (sums.at(i, j) - half.at(i, j)) / static_cast<double>(n_max - half_at);

    PersistenceReport report(std::move(sums), std::move(power), std::move(slopes));
    report.n_max = n_max;
    report.t_value = t0;
    report.exponent = persistence_exponent(d);
    report.regular = report.exponent.has_value();
    if (report.regular) {
        report.u = stationary(d, t0, 1e-12).u;
        report.entropy_bits = entropy_rate(d, t0);
    }
    return report;
}

}  // namespace strandwalk
