#pragma once

#include "strandwalk/diagram.hpp"
#include "strandwalk/hseries.hpp"
#include "strandwalk/laurent.hpp"
#include "strandwalk/matrix.hpp"
#include "strandwalk/ratfun.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace strandwalk {

/// One Over-role encounter: the place where a walker chooses stay vs jump.
struct DecisionPoint {
    int strand = 0;    // 0-based strand index
    int ordinal = 0;   // 1-based rank among the Over encounters of that strand
    int crossing = 0;
    int sign = +1;

    friend bool operator==(const DecisionPoint&, const DecisionPoint&) = default;
};

/// Either another decision point (by variable index) or a sink position.
struct Successor {
    bool to_sink = false;
    int index = 0;  // variable index, or 1-based sink position when to_sink

    friend bool operator==(const Successor&, const Successor&) = default;
};

/// The walk linear system: one variable per Over encounter, one relation per
/// variable. The relation at v with sign e reads
///   A_v = t^e * A_stay(v) + (1 - t^e) * A_jump(v),
/// where a successor that is a sink contributes the corresponding unit vector.
struct LinearSystem {
    int n = 0;
    std::vector<DecisionPoint> vars;
    std::vector<Successor> stay;
    std::vector<Successor> jump;
    std::vector<int> first_var;    // per strand: first variable index, -1 if none
    std::vector<int> strand_sink;  // per strand: 1-based sink position
};

inline LinearSystem build_system(const StringLinkDiagram& d) {
    LinearSystem sys;
    sys.n = d.n();
    sys.first_var.assign(d.n(), -1);
    sys.strand_sink.resize(d.n());

    // var_at[strand][pos] = variable index of the Over encounter there.
    std::vector<std::vector<int>> var_at(d.n());
    for (int si = 0; si < d.n(); ++si) {
        const Strand& s = d.strands()[si];
        sys.strand_sink[si] = s.sink;
        var_at[si].assign(s.encounters.size(), -1);
        int ordinal = 0;
        for (int p = 0; p < static_cast<int>(s.encounters.size()); ++p) {
            const Encounter& e = s.encounters[p];
            if (e.role != Role::Over) continue;
            var_at[si][p] = static_cast<int>(sys.vars.size());
            sys.vars.push_back({si, ++ordinal, e.crossing, d.crossings()[e.crossing].sign});
            if (sys.first_var[si] < 0) sys.first_var[si] = var_at[si][p];
        }
    }

    auto next_decision = [&](int si, int pos) -> Successor {
        const auto& enc = d.strands()[si].encounters;
        for (int p = pos; p < static_cast<int>(enc.size()); ++p)
            if (enc[p].role == Role::Over) return {false, var_at[si][p]};
        return {true, sys.strand_sink[si]};
    };

    for (std::size_t v = 0; v < sys.vars.size(); ++v) {
        const DecisionPoint& dp = sys.vars[v];
        EncounterLoc over = d.over_loc(dp.crossing);
        sys.stay.push_back(next_decision(over.strand, over.pos + 1));
        EncounterLoc under = d.under_loc(dp.crossing);
        sys.jump.push_back(next_decision(under.strand, under.pos + 1));
    }
    return sys;
}

/// Unique solution of the walk system over the rational-function field:
/// fraction-free (Bareiss) forward elimination over Laurent polynomials with
/// symbolic-nonzero pivoting, then back substitution. Row v of the result is
/// the vector A_v indexed by sink position.
inline std::vector<std::vector<RatFun>> solve_exact(const LinearSystem& sys) {
    const int v = static_cast<int>(sys.vars.size());
    const int n = sys.n;
    if (v == 0) return {};

    std::vector<std::vector<LaurentPoly>> a(v, std::vector<LaurentPoly>(v));
    std::vector<std::vector<LaurentPoly>> c(v, std::vector<LaurentPoly>(n));
    for (int i = 0; i < v; ++i) {
        LaurentPoly stay_w = LaurentPoly::t_pow(sys.vars[i].sign);
        LaurentPoly jump_w = LaurentPoly::one() - stay_w;
        a[i][i] += LaurentPoly::one();
        if (sys.stay[i].to_sink)
            c[i][sys.stay[i].index - 1] += stay_w;
        else
            a[i][sys.stay[i].index] -= stay_w;
        if (sys.jump[i].to_sink)
            c[i][sys.jump[i].index - 1] += jump_w;
        else
            a[i][sys.jump[i].index] -= jump_w;
    }

    LaurentPoly prev = LaurentPoly::one();
    for (int k = 0; k < v; ++k) {
        int pivot = -1;
        for (int r = k; r < v; ++r)
            if (!a[r][k].is_zero()) { pivot = r; break; }
        if (pivot < 0)
            throw std::logic_error("walk linear system is structurally singular; "
                                   "this indicates a diagram validation bug");
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            std::swap(c[pivot], c[k]);
        }
        for (int i = k + 1; i < v; ++i) {
            for (int j = k + 1; j < v; ++j)
                a[i][j] = divexact(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
            for (int j = 0; j < n; ++j)
                c[i][j] = divexact(a[k][k] * c[i][j] - a[i][k] * c[k][j], prev);
            a[i][k] = LaurentPoly();
        }
        prev = a[k][k];
    }

    std::vector<std::vector<RatFun>> x(v, std::vector<RatFun>(n));
    for (int i = v - 1; i >= 0; --i) {
        for (int col = 0; col < n; ++col) {
            RatFun rhs{c[i][col], LaurentPoly::one()};
            for (int j = i + 1; j < v; ++j)
                if (!a[i][j].is_zero()) rhs -= RatFun(a[i][j]) * x[j][col];
            x[i][col] = rhs / RatFun(a[i][i]);
        }
    }
    return x;
}

using BurauMatrix = Matrix<RatFun>;

namespace detail {

inline void assert_burau_invariants(const BurauMatrix& b, const StringLinkDiagram& d) {
    std::vector<int> pi = d.permutation();
    for (std::size_t i = 0; i < b.rows(); ++i) {
        RatFun sum;
        for (std::size_t j = 0; j < b.cols(); ++j) {
            const RatFun& e = b.at(i, j);
            if (!e.regular_at_one()) throw std::logic_error("Burau entry with a pole at t = 1");
            sum += e;
            Rational at_one = e.eval(Rational(1));
            Rational expect = (static_cast<int>(j) + 1 == pi[i]) ? 1 : 0;
            if (at_one != expect) throw std::logic_error("Burau matrix at t = 1 is not the induced permutation");
        }
        if (!sum.is_one()) throw std::logic_error("Burau row sum differs from 1");
    }
}

}  // namespace detail

/// Burau matrix of a string link: row i is the solved walk vector at the
/// first decision point of the strand with source position i, or the unit
/// vector at its sink when the strand has no Over encounters.
inline BurauMatrix burau_matrix(const StringLinkDiagram& d) {
    LinearSystem sys = build_system(d);
    std::vector<std::vector<RatFun>> x = solve_exact(sys);
    BurauMatrix b(d.n(), d.n(), RatFun::zero());
    for (int i = 0; i < d.n(); ++i) {
        if (sys.first_var[i] >= 0)
            for (int j = 0; j < d.n(); ++j) b.at(i, j) = x[sys.first_var[i]][j];
        else
            b.at(i, sys.strand_sink[i] - 1) = RatFun::one();
    }
    detail::assert_burau_invariants(b, d);
    return b;
}

namespace detail {

inline std::vector<std::pair<int, bool>> braid_tokens(const std::string& word, int n) {
    // Delegate validation to parse_braid's grammar by re-implementing the
    // token scan; kept independent of diagram construction.
    std::vector<std::pair<int, bool>> out;
    std::istringstream in(word);
    std::string tok;
    while (in >> tok) {
        bool inverse = false;
        std::string core = tok;
        if (core.size() > 3 && core.substr(core.size() - 3) == "^-1") {
            inverse = true;
            core = core.substr(0, core.size() - 3);
        }
        if (core.size() < 2 || core[0] != 's' ||
            !std::all_of(core.begin() + 1, core.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
            throw std::invalid_argument("malformed braid token '" + tok + "'");
        int i = std::stoi(core.substr(1));
        if (i < 1 || i > n - 1)
            throw std::invalid_argument("generator index out of range in '" + tok + "' (need 1 <= i <= " +
                                        std::to_string(n - 1) + ")");
        out.emplace_back(i, inverse);
    }
    return out;
}

}  // namespace detail

/// Classical Burau matrix of a braid word: direct product of the generator
/// block matrices, independent of the walk engine.
inline BurauMatrix classical_burau(const std::string& word, int n) {
    if (n < 1) throw std::domain_error("a braid needs at least one strand");
    BurauMatrix result = BurauMatrix::identity(n, RatFun::one(), RatFun::zero());
    for (auto [i, inverse] : detail::braid_tokens(word, n)) {
        BurauMatrix g = BurauMatrix::identity(n, RatFun::one(), RatFun::zero());
        if (!inverse) {
            g.at(i - 1, i - 1) = RatFun::one() - RatFun::t();
            g.at(i - 1, i) = RatFun::t();
            g.at(i, i - 1) = RatFun::one();
            g.at(i, i) = RatFun::zero();
        } else {
            g.at(i - 1, i - 1) = RatFun::zero();
            g.at(i - 1, i) = RatFun::one();
            g.at(i, i - 1) = RatFun::tbar();
            g.at(i, i) = RatFun::one() - RatFun::tbar();
        }
        result = matmul(result, g, RatFun::zero());
    }
    return result;
}

/// One enumerated walk: its endpoints, jump count, weight as a truncated
/// series in h = 1 - t, and the decision trace (decision point, jumped?).
struct PathRecord {
    int source = 0;  // 1-based
    int sink = 0;    // 1-based
    int jump_count = 0;
    HSeries weight;
    std::vector<std::pair<DecisionPoint, bool>> trace;
};

/// Exhaustive enumeration of walks from a source with at most `max_jumps`
/// jump-downs. Every jump state is divisible by h and every loop contains a
/// jump, so this is finite and complete modulo h^{max_jumps+1}; weights are
/// series of length max_jumps + 1. Walks the encounter lists directly and is
/// independent of the linear-system solver.
inline std::vector<PathRecord> enumerate_paths_mod_h(const StringLinkDiagram& d, int source, int max_jumps) {
    if (source < 1 || source > d.n()) throw std::domain_error("source position out of range");
    if (max_jumps < 1) throw std::domain_error("enumeration order must be at least 1");
    const std::size_t order = static_cast<std::size_t>(max_jumps) + 1;

    // States as series mod h^order:  t = 1 - h,  tbar = 1 + h + h^2 + ...,
    // 1 - t = h,  1 - tbar = -(h + h^2 + ...).
    HSeries stay_pos(order), stay_neg(order), jump_pos(order), jump_neg(order);
    {
        std::vector<Rational> sp(order), sn(order), jp(order), jn(order);
        sp[0] = 1;
        if (order > 1) sp[1] = -1;
        for (std::size_t k = 0; k < order; ++k) sn[k] = 1;
        if (order > 1) jp[1] = 1;
        for (std::size_t k = 1; k < order; ++k) jn[k] = -1;
        stay_pos = HSeries::from_coeffs(sp);
        stay_neg = HSeries::from_coeffs(sn);
        jump_pos = HSeries::from_coeffs(jp);
        jump_neg = HSeries::from_coeffs(jn);
    }

    // Per-strand ordinals of Over encounters, for the trace records.
    std::vector<std::vector<int>> ordinal(d.n());
    for (int si = 0; si < d.n(); ++si) {
        const auto& enc = d.strands()[si].encounters;
        ordinal[si].assign(enc.size(), 0);
        int k = 0;
        for (std::size_t p = 0; p < enc.size(); ++p)
            if (enc[p].role == Role::Over) ordinal[si][p] = ++k;
    }

    std::vector<PathRecord> out;
    std::vector<std::pair<DecisionPoint, bool>> trace;

    auto walk = [&](auto&& self, int si, int pos, HSeries weight, int jumps) -> void {
        const auto& enc = d.strands()[si].encounters;
        while (pos < static_cast<int>(enc.size()) && enc[pos].role == Role::Under) ++pos;
        if (pos == static_cast<int>(enc.size())) {
            out.push_back({source, d.strands()[si].sink, jumps, weight, trace});
            return;
        }
        int crossing = enc[pos].crossing;
        int sign = d.crossings()[crossing].sign;
        DecisionPoint dp{si, ordinal[si][pos], crossing, sign};
        trace.emplace_back(dp, false);
        self(self, si, pos + 1, weight * (sign > 0 ? stay_pos : stay_neg), jumps);
        trace.pop_back();
        if (jumps < max_jumps) {
            EncounterLoc under = d.under_loc(crossing);
            trace.emplace_back(dp, true);
            self(self, under.strand, under.pos + 1, weight * (sign > 0 ? jump_pos : jump_neg), jumps + 1);
            trace.pop_back();
        }
    };
    walk(walk, source - 1, 0, HSeries::constant(Rational(1), order), 0);
    return out;
}

using TruncatedSeriesMatrix = Matrix<HSeries>;

/// Path-sum Burau matrix modulo h^{order+1}: entry (i,j) accumulates the
/// weights of all enumerated walks from source i to sink j. This is the
/// independent series oracle for burau_matrix.
inline TruncatedSeriesMatrix series_burau(const StringLinkDiagram& d, int order) {
    if (order < 1) throw std::domain_error("series order must be at least 1");
    TruncatedSeriesMatrix m(d.n(), d.n(), HSeries(static_cast<std::size_t>(order) + 1));
    for (int src = 1; src <= d.n(); ++src)
        for (const PathRecord& p : enumerate_paths_mod_h(d, src, order)) m.at(src - 1, p.sink - 1) += p.weight;
    return m;
}

/// Square boolean matrix with the and/or product.
class BoolMatrix {
public:
    explicit BoolMatrix(int n) : n_(n), bits_(static_cast<std::size_t>(n) * n, 0) {}
    static BoolMatrix identity(int n) {
        BoolMatrix m(n);
        for (int i = 0; i < n; ++i) m.at(i, i) = true;
        return m;
    }

    int n() const { return n_; }
    char& at(int i, int j) { return bits_[static_cast<std::size_t>(i) * n_ + j]; }
    bool at(int i, int j) const { return bits_[static_cast<std::size_t>(i) * n_ + j] != 0; }

    bool all_true() const {
        for (char b : bits_)
            if (!b) return false;
        return true;
    }

    friend BoolMatrix operator*(const BoolMatrix& a, const BoolMatrix& b) {
        BoolMatrix r(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int k = 0; k < a.n_; ++k)
                if (a.at(i, k))
                    for (int j = 0; j < a.n_; ++j)
                        if (b.at(k, j)) r.at(i, j) = 1;
        return r;
    }

    friend bool operator==(const BoolMatrix& a, const BoolMatrix& b) { return a.n_ == b.n_ && a.bits_ == b.bits_; }

private:
    int n_;
    std::vector<char> bits_;
};

/// Entry (i,j) is true iff some walk runs from source i to sink j.
inline BoolMatrix reachability(const StringLinkDiagram& d) {
    LinearSystem sys = build_system(d);
    BoolMatrix r(d.n());
    for (int i = 0; i < d.n(); ++i) {
        std::vector<char> seen(sys.vars.size(), 0);
        std::vector<int> stack;
        auto visit = [&](const Successor& s) {
            if (s.to_sink)
                r.at(i, s.index - 1) = 1;
            else if (!seen[s.index]) {
                seen[s.index] = 1;
                stack.push_back(s.index);
            }
        };
        if (sys.first_var[i] < 0) {
            r.at(i, sys.strand_sink[i] - 1) = 1;
            continue;
        }
        visit({false, sys.first_var[i]});
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            visit(sys.stay[v]);
            visit(sys.jump[v]);
        }
    }
    return r;
}

/// Smallest N with R^N all-true, searched up to the Wielandt bound
/// (n-1)^2 + 1; absent means no such N exists at all.
inline std::optional<int> primitivity_index(const BoolMatrix& r) {
    int bound = (r.n() - 1) * (r.n() - 1) + 1;
    BoolMatrix acc = r;
    for (int k = 1; k <= bound; ++k) {
        if (acc.all_true()) return k;
        acc = acc * r;
    }
    return std::nullopt;
}

}  // namespace strandwalk
