#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace strandwalk {

enum class Role : std::uint8_t { Over, Under };

/// One visit of a strand to a crossing.
struct Encounter {
    int crossing = 0;  // canonical index into the crossing table
    Role role = Role::Over;

    friend bool operator==(const Encounter&, const Encounter&) = default;
};

struct Crossing {
    int sign = +1;  // +1 or -1

    friend bool operator==(const Crossing&, const Crossing&) = default;
};

struct Strand {
    int source = 0;  // bottom position, 1-based
    int sink = 0;    // top position, 1-based
    std::vector<Encounter> encounters;  // in orientation order, source to sink

    friend bool operator==(const Strand&, const Strand&) = default;
};

/// Position of one encounter inside a diagram.
struct EncounterLoc {
    int strand = 0;  // 0-based strand index
    int pos = 0;     // 0-based index into the strand's encounter list

    friend bool operator==(const EncounterLoc&, const EncounterLoc&) = default;
};

/// Combinatorial string link: n strands from bottom sources to top sinks plus
/// a crossing table. Held in canonical form: strands sorted by source
/// position, crossings relabeled in order of first appearance along strand
/// 1, 2, ..., so structural equality is meaningful. Planarity is not modeled.
class StringLinkDiagram {
public:
    /// Validates invariants, canonicalizes, and constructs. Crossing ids in
    /// `strands` refer to indices of `crossings` (pre-relabeling).
    static StringLinkDiagram create(int n, std::vector<Strand> strands, std::vector<Crossing> crossings) {
        StringLinkDiagram d;
        d.n_ = n;
        d.strands_ = std::move(strands);
        d.crossings_ = std::move(crossings);
        d.validate();
        d.canonicalize();
        return d;
    }

    static StringLinkDiagram trivial(int n) {
        std::vector<Strand> s;
        for (int i = 1; i <= n; ++i) s.push_back({i, i, {}});
        return create(n, std::move(s), {});
    }

    int n() const { return n_; }
    const std::vector<Strand>& strands() const { return strands_; }
    const std::vector<Crossing>& crossings() const { return crossings_; }
    int crossing_count() const { return static_cast<int>(crossings_.size()); }

    /// Induced permutation: pi[i-1] is the sink position of the strand with
    /// source position i.
    std::vector<int> permutation() const {
        std::vector<int> pi(n_);
        for (int i = 0; i < n_; ++i) pi[i] = strands_[i].sink;
        return pi;
    }

    /// Locations of the Over and Under encounters of a crossing.
    EncounterLoc over_loc(int crossing) const { return locate(crossing, Role::Over); }
    EncounterLoc under_loc(int crossing) const { return locate(crossing, Role::Under); }

    bool all_positive() const {
        return std::all_of(crossings_.begin(), crossings_.end(), [](const Crossing& c) { return c.sign > 0; });
    }

    friend bool operator==(const StringLinkDiagram&, const StringLinkDiagram&) = default;

    /// FNV-1a over the canonical structure; used as content provenance.
    std::uint64_t content_hash() const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        auto mix = [&h](std::uint64_t v) {
            for (int b = 0; b < 8; ++b) {
                h ^= (v >> (8 * b)) & 0xff;
                h *= 0x100000001b3ULL;
            }
        };
        mix(static_cast<std::uint64_t>(n_));
        for (const auto& c : crossings_) mix(static_cast<std::uint64_t>(c.sign + 2));
        for (const auto& s : strands_) {
            mix(static_cast<std::uint64_t>(s.source));
            mix(static_cast<std::uint64_t>(s.sink));
            for (const auto& e : s.encounters)
                mix((static_cast<std::uint64_t>(e.crossing) << 1) | (e.role == Role::Over ? 1 : 0));
        }
        return h;
    }

private:
    EncounterLoc locate(int crossing, Role role) const {
        for (int si = 0; si < n_; ++si) {
            const auto& enc = strands_[si].encounters;
            for (int p = 0; p < static_cast<int>(enc.size()); ++p)
                if (enc[p].crossing == crossing && enc[p].role == role) return {si, p};
        }
        throw std::logic_error("crossing not found in diagram");
    }

    void validate() const {
        if (n_ < 1) throw std::domain_error("a string link needs at least one strand");
        if (static_cast<int>(strands_.size()) != n_)
            throw std::domain_error("strand count does not match n");
        std::vector<int> src_seen(n_, 0), snk_seen(n_, 0);
        for (const auto& s : strands_) {
            if (s.source < 1 || s.source > n_ || s.sink < 1 || s.sink > n_)
                throw std::domain_error("strand endpoint position out of range");
            ++src_seen[s.source - 1];
            ++snk_seen[s.sink - 1];
        }
        for (int i = 0; i < n_; ++i) {
            if (src_seen[i] != 1) throw std::domain_error("source positions are not a permutation of 1..n");
            if (snk_seen[i] != 1) throw std::domain_error("sink positions are not a permutation of 1..n");
        }
        std::vector<int> over(crossings_.size(), 0), under(crossings_.size(), 0);
        for (const auto& s : strands_)
            for (const auto& e : s.encounters) {
                if (e.crossing < 0 || e.crossing >= static_cast<int>(crossings_.size()))
                    throw std::domain_error("encounter references an unknown crossing");
                (e.role == Role::Over ? over : under)[e.crossing]++;
            }
        for (std::size_t c = 0; c < crossings_.size(); ++c) {
            int total = over[c] + under[c];
            if (total != 2)
                throw std::domain_error("crossing c" + std::to_string(c + 1) + " has " + std::to_string(total) +
                                        " encounter" + (total == 1 ? "" : "s"));
            if (over[c] != 1)
                throw std::domain_error("crossing c" + std::to_string(c + 1) + " must appear once as Over and once as Under");
            if (crossings_[c].sign != 1 && crossings_[c].sign != -1)
                throw std::domain_error("crossing sign must be +1 or -1");
        }
    }

    void canonicalize() {
        std::sort(strands_.begin(), strands_.end(),
                  [](const Strand& a, const Strand& b) { return a.source < b.source; });
        std::vector<int> relabel(crossings_.size(), -1);
        int next = 0;
        for (const auto& s : strands_)
            for (const auto& e : s.encounters)
                if (relabel[e.crossing] < 0) relabel[e.crossing] = next++;
        std::vector<Crossing> table(crossings_.size());
        for (std::size_t c = 0; c < crossings_.size(); ++c) table[relabel[c]] = crossings_[c];
        crossings_ = std::move(table);
        for (auto& s : strands_)
            for (auto& e : s.encounters) e.crossing = relabel[e.crossing];
    }

    int n_ = 0;
    std::vector<Strand> strands_;
    std::vector<Crossing> crossings_;
};

/// String link with a subset of crossings marked as transverse double points.
/// Each double point keeps the sign and roles it had when marked.
struct SingularStringLink {
    StringLinkDiagram base;
    std::set<int> double_points;  // canonical crossing indices

    int double_point_count() const { return static_cast<int>(double_points.size()); }

    friend bool operator==(const SingularStringLink&, const SingularStringLink&) = default;
};

/// Braid word parser: whitespace-separated `s<i>` / `s<i>^-1` tokens,
/// 1 <= i <= n-1. For a positive generator the strand entering at position i
/// crosses over and exits at position i+1. The empty word gives n parallel
/// strands.
inline StringLinkDiagram parse_braid(const std::string& word, int n) {
    if (n < 1) throw std::domain_error("a string link needs at least one strand");
    std::vector<Strand> strands;
    for (int i = 1; i <= n; ++i) strands.push_back({i, 0, {}});
    std::vector<Crossing> crossings;
    // wire[p] = strand currently occupying position p+1
    std::vector<int> wire(n);
    for (int i = 0; i < n; ++i) wire[i] = i;

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
            !std::all_of(core.begin() + 1, core.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw std::invalid_argument("malformed braid token '" + tok + "'");
        int i = 0;
        try {
            i = std::stoi(core.substr(1));
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed braid token '" + tok + "'");
        }
        if (i < 1 || i > n - 1)
            throw std::invalid_argument("generator index out of range in '" + tok + "' (need 1 <= i <= " +
                                        std::to_string(n - 1) + ")");
        int id = static_cast<int>(crossings.size());
        crossings.push_back({inverse ? -1 : +1});
        int lo = wire[i - 1], hi = wire[i];
        // Over strand: position i for s<i>, position i+1 for s<i>^-1.
        int over = inverse ? hi : lo;
        int under = inverse ? lo : hi;
        strands[over].encounters.push_back({id, Role::Over});
        strands[under].encounters.push_back({id, Role::Under});
        std::swap(wire[i - 1], wire[i]);
    }
    for (int p = 0; p < n; ++p) strands[wire[p]].sink = p + 1;
    return StringLinkDiagram::create(n, std::move(strands), std::move(crossings));
}

/// Stacks b on top of a: sink position j of a meets source position j of b.
inline StringLinkDiagram compose(const StringLinkDiagram& a, const StringLinkDiagram& b) {
    if (a.n() != b.n()) throw std::domain_error("strand count mismatch in composition");
    int offset = a.crossing_count();
    std::vector<Crossing> crossings = a.crossings();
    crossings.insert(crossings.end(), b.crossings().begin(), b.crossings().end());
    std::vector<Strand> strands;
    for (const auto& sa : a.strands()) {
        const Strand& sb = b.strands()[sa.sink - 1];  // strand of b with source = sa.sink
        Strand s{sa.source, sb.sink, sa.encounters};
        for (const auto& e : sb.encounters) s.encounters.push_back({e.crossing + offset, e.role});
        strands.push_back(std::move(s));
    }
    return StringLinkDiagram::create(a.n(), std::move(strands), std::move(crossings));
}

/// N-fold self-composition, N >= 1.
inline StringLinkDiagram power(const StringLinkDiagram& d, int exponent) {
    if (exponent < 1) throw std::domain_error("power requires a positive exponent");
    StringLinkDiagram r = d;
    for (int k = 1; k < exponent; ++k) r = compose(r, d);
    return r;
}

/// Left-right reflection: positions relabeled i -> n+1-i on both ends, all
/// crossing signs flipped; roles and encounter orders are unchanged.
inline StringLinkDiagram mirror_vertical(const StringLinkDiagram& d) {
    std::vector<Strand> strands = d.strands();
    for (auto& s : strands) {
        s.source = d.n() + 1 - s.source;
        s.sink = d.n() + 1 - s.sink;
    }
    std::vector<Crossing> crossings = d.crossings();
    for (auto& c : crossings) c.sign = -c.sign;
    return StringLinkDiagram::create(d.n(), std::move(strands), std::move(crossings));
}

/// Marks the listed crossings as double points.
inline SingularStringLink make_singular(const StringLinkDiagram& d, const std::set<int>& crossing_ids) {
    for (int id : crossing_ids)
        if (id < 0 || id >= d.crossing_count())
            throw std::domain_error("unknown crossing c" + std::to_string(id + 1));
    return SingularStringLink{d, crossing_ids};
}

}  // namespace strandwalk
