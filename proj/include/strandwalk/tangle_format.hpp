#pragma once

#include "strandwalk/diagram.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace strandwalk {

/// Error in the textual tangle format; message carries line/column.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct Token {
    std::string text;
    int line;
    int col;
};

inline std::vector<std::vector<Token>> tokenize_lines(const std::string& text) {
    std::vector<std::vector<Token>> lines;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::vector<Token> toks;
        std::size_t i = 0;
        while (i < raw.size()) {
            if (std::isspace(static_cast<unsigned char>(raw[i]))) { ++i; continue; }
            if (raw[i] == '#') break;
            std::size_t start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
            std::string t = raw.substr(start, i - start);
            // A ':' glued to the preceding token separates the strand header
            // from its encounter list.
            if (t.size() > 1 && t.back() == ':') {
                toks.push_back({t.substr(0, t.size() - 1), lineno, static_cast<int>(start) + 1});
                toks.push_back({":", lineno, static_cast<int>(start + t.size())});
            } else {
                toks.push_back({t, lineno, static_cast<int>(start) + 1});
            }
        }
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    return lines;
}

[[noreturn]] inline void fail_at(const Token& t, const std::string& msg) {
    throw parse_error("line " + std::to_string(t.line) + ", column " + std::to_string(t.col) + ": " + msg);
}

inline int parse_int(const Token& t, const std::string& what) {
    try {
        std::size_t used = 0;
        int v = std::stoi(t.text, &used);
        if (used != t.text.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        fail_at(t, "expected " + what + ", got '" + t.text + "'");
    }
}

}  // namespace detail

/// Parses the line-oriented tangle format, `double` flags allowed:
///
///   strands <n>
///   crossing <id> <+|-> [double]
///   strand <k> from <i> to <j>: O<id> U<id> ...
///
/// Comments start with '#'. Returns the diagram plus its double-point set.
inline SingularStringLink parse_singular_tangle(const std::string& text) {
    using detail::Token;
    auto lines = detail::tokenize_lines(text);
    if (lines.empty()) throw parse_error("empty tangle file");

    const auto& header = lines[0];
    if (header[0].text != "strands") detail::fail_at(header[0], "expected 'strands <n>' header");
    if (header.size() != 2) detail::fail_at(header[0], "expected 'strands <n>' header");
    int n = detail::parse_int(header[1], "a strand count");
    if (n < 1) detail::fail_at(header[1], "strand count must be at least 1");

    std::map<std::string, int> crossing_index;   // original id -> table index
    std::vector<std::string> crossing_names;
    std::vector<Crossing> crossings;
    std::set<int> doubles;

    struct RawStrand {
        int label, source, sink;
        std::vector<std::pair<std::string, Role>> encounters;  // original ids
        Token at;
    };
    std::vector<RawStrand> raw_strands;

    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& toks = lines[li];
        if (toks[0].text == "crossing") {
            if (toks.size() < 3) detail::fail_at(toks[0], "expected 'crossing <id> <+|->'");
            const std::string& id = toks[1].text;
            if (crossing_index.count(id)) detail::fail_at(toks[1], "crossing " + id + " declared twice");
            if (toks[2].text != "+" && toks[2].text != "-")
                detail::fail_at(toks[2], "expected crossing sign '+' or '-'");
            bool dbl = false;
            if (toks.size() == 4) {
                if (toks[3].text != "double") detail::fail_at(toks[3], "unexpected token '" + toks[3].text + "'");
                dbl = true;
            } else if (toks.size() > 4) {
                detail::fail_at(toks[4], "unexpected token '" + toks[4].text + "'");
            }
            crossing_index[id] = static_cast<int>(crossings.size());
            crossing_names.push_back(id);
            crossings.push_back({toks[2].text == "+" ? +1 : -1});
            if (dbl) doubles.insert(crossing_index[id]);
        } else if (toks[0].text == "strand") {
            if (toks.size() < 7 || toks[2].text != "from" || toks[4].text != "to" || toks[6].text != ":")
                detail::fail_at(toks[0], "expected 'strand <k> from <i> to <j>: ...'");
            RawStrand s;
            s.at = toks[0];
            s.label = detail::parse_int(toks[1], "a strand label");
            s.source = detail::parse_int(toks[3], "a source position");
            s.sink = detail::parse_int(toks[5], "a sink position");
            for (std::size_t k = 7; k < toks.size(); ++k) {
                const std::string& t = toks[k].text;
                if (t.size() < 2 || (t[0] != 'O' && t[0] != 'U'))
                    detail::fail_at(toks[k], "expected encounter 'O<id>' or 'U<id>', got '" + t + "'");
                std::string id = t.substr(1);
                if (!crossing_index.count(id))
                    detail::fail_at(toks[k], "encounter references undeclared crossing " + id);
                s.encounters.emplace_back(id, t[0] == 'O' ? Role::Over : Role::Under);
            }
            raw_strands.push_back(std::move(s));
        } else {
            detail::fail_at(toks[0], "expected 'crossing' or 'strand', got '" + toks[0].text + "'");
        }
    }

    if (static_cast<int>(raw_strands.size()) != n)
        throw parse_error("expected " + std::to_string(n) + " strand lines, found " +
                          std::to_string(raw_strands.size()));
    std::vector<int> label_seen(n, 0);
    for (const auto& s : raw_strands) {
        if (s.label < 1 || s.label > n) detail::fail_at(s.at, "strand label out of range");
        if (label_seen[s.label - 1]++) detail::fail_at(s.at, "strand " + std::to_string(s.label) + " declared twice");
    }

    // Validate with the file's own names before canonical relabeling.
    {
        std::vector<int> over(crossings.size(), 0), under(crossings.size(), 0);
        std::vector<int> src(n, 0), snk(n, 0);
        for (const auto& s : raw_strands) {
            if (s.source < 1 || s.source > n) detail::fail_at(s.at, "source position out of range");
            if (s.sink < 1 || s.sink > n) detail::fail_at(s.at, "sink position out of range");
            ++src[s.source - 1];
            ++snk[s.sink - 1];
            for (const auto& [id, role] : s.encounters)
                (role == Role::Over ? over : under)[crossing_index[id]]++;
        }
        for (int i = 0; i < n; ++i) {
            if (src[i] != 1) throw parse_error("source positions are not a permutation of 1.." + std::to_string(n));
            if (snk[i] != 1) throw parse_error("sink positions are not a permutation of 1.." + std::to_string(n));
        }
        for (std::size_t c = 0; c < crossings.size(); ++c) {
            int total = over[c] + under[c];
            if (total != 2)
                throw parse_error("crossing " + crossing_names[c] + " has " + std::to_string(total) +
                                  " encounter" + (total == 1 ? "" : "s"));
            if (over[c] == 2) throw parse_error("crossing " + crossing_names[c] + " has two Over encounters");
            if (under[c] == 2) throw parse_error("crossing " + crossing_names[c] + " has two Under encounters");
        }
    }

    std::vector<Strand> strands;
    for (const auto& s : raw_strands) {
        Strand out{s.source, s.sink, {}};
        for (const auto& [id, role] : s.encounters) out.encounters.push_back({crossing_index[id], role});
        strands.push_back(std::move(out));
    }
    // Track the double-point set through the canonical relabeling by marking
    // before and reading back after.
    StringLinkDiagram base = StringLinkDiagram::create(n, strands, crossings);
    std::set<int> canonical_doubles;
    if (!doubles.empty()) {
        // Recover the relabeling by matching encounter sequences: crossings
        // keep their (strand-order) first-appearance identity.
        std::map<int, int> relabel;  // file index -> canonical index
        {
            int next = 0;
            std::vector<Strand> sorted = strands;
            std::sort(sorted.begin(), sorted.end(),
                      [](const Strand& a, const Strand& b) { return a.source < b.source; });
            for (const auto& s : sorted)
                for (const auto& e : s.encounters)
                    if (!relabel.count(e.crossing)) relabel[e.crossing] = next++;
        }
        for (int idx : doubles) canonical_doubles.insert(relabel.at(idx));
    }
    return SingularStringLink{std::move(base), std::move(canonical_doubles)};
}

/// Parses a plain (non-singular) tangle file.
inline StringLinkDiagram parse_tangle(const std::string& text) {
    SingularStringLink s = parse_singular_tangle(text);
    if (!s.double_points.empty())
        throw parse_error("file marks " + std::to_string(s.double_points.size()) +
                          " crossing(s) as double points; a plain string link was expected");
    return std::move(s.base);
}

inline std::string render_tangle(const SingularStringLink& s) {
    const StringLinkDiagram& d = s.base;
    std::ostringstream os;
    os << "strands " << d.n() << "\n";
    for (int c = 0; c < d.crossing_count(); ++c) {
        os << "crossing c" << (c + 1) << " " << (d.crossings()[c].sign > 0 ? "+" : "-");
        if (s.double_points.count(c)) os << " double";
        os << "\n";
    }
    for (int i = 0; i < d.n(); ++i) {
        const Strand& st = d.strands()[i];
        os << "strand " << (i + 1) << " from " << st.source << " to " << st.sink << ":";
        for (const auto& e : st.encounters)
            os << " " << (e.role == Role::Over ? "O" : "U") << "c" << (e.crossing + 1);
        os << "\n";
    }
    return os.str();
}

inline std::string render_tangle(const StringLinkDiagram& d) {
    return render_tangle(SingularStringLink{d, {}});
}

}  // namespace strandwalk
