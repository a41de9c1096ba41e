#pragma once

#include "strandwalk/diagram.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace strandwalk {

/// Kink insertion on one strand: a fresh crossing met twice in a row. For the
/// over-first order the walk either stays past the kink or jumps past it; for
/// the under-first order the jump re-enters the kink as a loop. Both orders
/// and both signs are invariant.
struct R1Insert {
    int strand = 0;      // 0-based
    int pos = 0;         // insertion index into the encounter list, 0..len
    int sign = +1;
    bool over_first = true;
};

/// Kink deletion: `pos` indexes the first of two consecutive encounters of
/// the same crossing.
struct R1Delete {
    int strand = 0;
    int pos = 0;
};

/// Cancelling pair insertion: fresh crossings of opposite sign, met Over-Over
/// on one segment and Under-Under on the other. `antiparallel` reverses the
/// under-side order (the oriented variant with the two arcs running in
/// opposite directions).
struct R2Insert {
    int over_strand = 0;
    int over_pos = 0;
    int under_strand = 0;
    int under_pos = 0;
    int first_sign = +1;
    bool antiparallel = false;
};

/// Cancelling pair deletion: `pos` indexes the first of the two consecutive
/// Over encounters.
struct R2Delete {
    int strand = 0;
    int pos = 0;
};

/// Triangle slide: `pos` indexes the first of the two consecutive Over
/// encounters on the top segment. The matched pattern's three adjacent
/// encounter pairs are each swapped in place.
struct R3Slide {
    int strand = 0;
    int pos = 0;
};

using MoveSpec = std::variant<R1Insert, R1Delete, R2Insert, R2Delete, R3Slide>;

namespace detail {

struct R3Match {
    // Three adjacent index pairs to swap: (strand, first index of the pair).
    int top_strand, top_pos;
    int mid_strand, mid_pos;
    int bot_strand, bot_pos;
};

/// Matches the triangle pattern with top pair [O x, O y] at (strand, pos):
/// one of x,y is the top/middle crossing p, the other the top/bottom
/// crossing q; the middle segment holds U p adjacent to O r, the bottom
/// segment U q adjacent to U r. Legal sign combinations: sign(q) = sign(r)
/// when the top pair order and the middle pair order agree in chirality,
/// sign(q) = -sign(r) when they disagree; other combinations do not preserve
/// the walk weights (they correspond to non-planar slides).
inline std::optional<R3Match> match_r3(const StringLinkDiagram& d, int strand, int pos) {
    const auto& strands = d.strands();
    if (strand < 0 || strand >= d.n()) return std::nullopt;
    const auto& enc = strands[strand].encounters;
    if (pos < 0 || pos + 1 >= static_cast<int>(enc.size())) return std::nullopt;
    if (enc[pos].role != Role::Over || enc[pos + 1].role != Role::Over) return std::nullopt;
    int x = enc[pos].crossing, y = enc[pos + 1].crossing;
    if (x == y) return std::nullopt;

    for (bool p_is_x : {true, false}) {
        int p = p_is_x ? x : y;
        int q = p_is_x ? y : x;
        EncounterLoc up = d.under_loc(p);
        const auto& mid = strands[up.strand].encounters;
        for (int delta : {+1, -1}) {
            int rpos = up.pos + delta;
            if (rpos < 0 || rpos >= static_cast<int>(mid.size())) continue;
            if (mid[rpos].role != Role::Over) continue;
            int r = mid[rpos].crossing;
            if (r == x || r == y) continue;
            EncounterLoc uq = d.under_loc(q);
            EncounterLoc ur = d.under_loc(r);
            if (ur.strand != uq.strand) continue;
            if (ur.pos != uq.pos + 1 && ur.pos != uq.pos - 1) continue;
            bool p_first = p_is_x;
            bool up_first = delta == +1;
            int sq = d.crossings()[q].sign, sr = d.crossings()[r].sign;
            if ((p_first == up_first) ? (sq != sr) : (sq != -sr)) continue;
            return R3Match{strand, pos,
                           up.strand, std::min(up.pos, rpos),
                           uq.strand, std::min(uq.pos, ur.pos)};
        }
    }
    return std::nullopt;
}

inline void erase_crossing(std::vector<Strand>& strands, std::vector<Crossing>& crossings, int id) {
    crossings.erase(crossings.begin() + id);
    for (auto& s : strands)
        for (auto& e : s.encounters)
            if (e.crossing > id) --e.crossing;
}

}  // namespace detail

/// All kink-deletion sites of the diagram.
inline std::vector<R1Delete> r1_delete_sites(const StringLinkDiagram& d) {
    std::vector<R1Delete> sites;
    for (int si = 0; si < d.n(); ++si) {
        const auto& enc = d.strands()[si].encounters;
        for (int p = 0; p + 1 < static_cast<int>(enc.size()); ++p)
            if (enc[p].crossing == enc[p + 1].crossing) sites.push_back({si, p});
    }
    return sites;
}

/// All cancelling-pair deletion sites.
inline std::vector<R2Delete> r2_delete_sites(const StringLinkDiagram& d) {
    std::vector<R2Delete> sites;
    for (int si = 0; si < d.n(); ++si) {
        const auto& enc = d.strands()[si].encounters;
        for (int p = 0; p + 1 < static_cast<int>(enc.size()); ++p) {
            if (enc[p].role != Role::Over || enc[p + 1].role != Role::Over) continue;
            int c1 = enc[p].crossing, c2 = enc[p + 1].crossing;
            if (c1 == c2) continue;
            if (d.crossings()[c1].sign != -d.crossings()[c2].sign) continue;
            EncounterLoc u1 = d.under_loc(c1), u2 = d.under_loc(c2);
            if (u1.strand != u2.strand) continue;
            if (u2.pos != u1.pos + 1 && u2.pos != u1.pos - 1) continue;
            sites.push_back({si, p});
        }
    }
    return sites;
}

/// All triangle-slide sites.
inline std::vector<R3Slide> r3_sites(const StringLinkDiagram& d) {
    std::vector<R3Slide> sites;
    for (int si = 0; si < d.n(); ++si) {
        const auto& enc = d.strands()[si].encounters;
        for (int p = 0; p + 1 < static_cast<int>(enc.size()); ++p)
            if (detail::match_r3(d, si, p)) sites.push_back({si, p});
    }
    return sites;
}

inline StringLinkDiagram apply_move(const StringLinkDiagram& d, const MoveSpec& move) {
    std::vector<Strand> strands = d.strands();
    std::vector<Crossing> crossings = d.crossings();

    auto check_strand = [&](int si) {
        if (si < 0 || si >= d.n()) throw std::domain_error("move designates a strand that does not exist");
    };
    auto check_insert_pos = [&](int si, int pos) {
        if (pos < 0 || pos > static_cast<int>(strands[si].encounters.size()))
            throw std::domain_error("move designates a position outside the strand");
    };

    if (const auto* m = std::get_if<R1Insert>(&move)) {
        check_strand(m->strand);
        check_insert_pos(m->strand, m->pos);
        if (m->sign != 1 && m->sign != -1) throw std::domain_error("kink sign must be +1 or -1");
        int id = static_cast<int>(crossings.size());
        crossings.push_back({m->sign});
        auto& enc = strands[m->strand].encounters;
        Encounter first{id, m->over_first ? Role::Over : Role::Under};
        Encounter second{id, m->over_first ? Role::Under : Role::Over};
        enc.insert(enc.begin() + m->pos, {first, second});
    } else if (const auto* m = std::get_if<R1Delete>(&move)) {
        check_strand(m->strand);
        auto& enc = strands[m->strand].encounters;
        if (m->pos < 0 || m->pos + 1 >= static_cast<int>(enc.size()) ||
            enc[m->pos].crossing != enc[m->pos + 1].crossing)
            throw std::domain_error("no kink pattern at the designated site");
        int id = enc[m->pos].crossing;
        enc.erase(enc.begin() + m->pos, enc.begin() + m->pos + 2);
        detail::erase_crossing(strands, crossings, id);
    } else if (const auto* m = std::get_if<R2Insert>(&move)) {
        check_strand(m->over_strand);
        check_strand(m->under_strand);
        check_insert_pos(m->over_strand, m->over_pos);
        check_insert_pos(m->under_strand, m->under_pos);
        if (m->first_sign != 1 && m->first_sign != -1) throw std::domain_error("crossing sign must be +1 or -1");
        if (m->over_strand == m->under_strand && m->over_pos == m->under_pos)
            throw std::domain_error("cancelling pair needs two distinct strand segments");
        int c1 = static_cast<int>(crossings.size());
        int c2 = c1 + 1;
        crossings.push_back({m->first_sign});
        crossings.push_back({-m->first_sign});
        std::vector<Encounter> over_pair{{c1, Role::Over}, {c2, Role::Over}};
        std::vector<Encounter> under_pair{{c1, Role::Under}, {c2, Role::Under}};
        if (m->antiparallel) std::swap(under_pair[0], under_pair[1]);
        // Insert at the later position first so the earlier index stays valid.
        if (m->over_strand == m->under_strand && m->under_pos < m->over_pos) {
            auto& enc = strands[m->over_strand].encounters;
            enc.insert(enc.begin() + m->over_pos, over_pair.begin(), over_pair.end());
            enc.insert(enc.begin() + m->under_pos, under_pair.begin(), under_pair.end());
        } else {
            auto& uenc = strands[m->under_strand].encounters;
            uenc.insert(uenc.begin() + m->under_pos, under_pair.begin(), under_pair.end());
            auto& oenc = strands[m->over_strand].encounters;
            oenc.insert(oenc.begin() + m->over_pos, over_pair.begin(), over_pair.end());
        }
    } else if (const auto* m = std::get_if<R2Delete>(&move)) {
        check_strand(m->strand);
        const auto& enc0 = d.strands()[m->strand].encounters;
        bool ok = m->pos >= 0 && m->pos + 1 < static_cast<int>(enc0.size()) &&
                  enc0[m->pos].role == Role::Over && enc0[m->pos + 1].role == Role::Over;
        int c1 = 0, c2 = 0;
        EncounterLoc u1, u2;
        if (ok) {
            c1 = enc0[m->pos].crossing;
            c2 = enc0[m->pos + 1].crossing;
            ok = c1 != c2 && d.crossings()[c1].sign == -d.crossings()[c2].sign;
        }
        if (ok) {
            u1 = d.under_loc(c1);
            u2 = d.under_loc(c2);
            ok = u1.strand == u2.strand && (u2.pos == u1.pos + 1 || u2.pos == u1.pos - 1);
        }
        if (!ok) throw std::domain_error("no cancelling pair at the designated site");
        // Delete the four encounters, higher indices first per strand.
        std::vector<std::pair<int, int>> kill{{m->strand, m->pos}, {m->strand, m->pos + 1},
                                              {u1.strand, u1.pos}, {u2.strand, u2.pos}};
        std::sort(kill.begin(), kill.end(), [](auto a, auto b) {
            return a.first != b.first ? a.first < b.first : a.second > b.second;
        });
        for (auto [si, pos] : kill) strands[si].encounters.erase(strands[si].encounters.begin() + pos);
        detail::erase_crossing(strands, crossings, std::max(c1, c2));
        detail::erase_crossing(strands, crossings, std::min(c1, c2));
    } else if (const auto* m = std::get_if<R3Slide>(&move)) {
        check_strand(m->strand);
        auto match = detail::match_r3(d, m->strand, m->pos);
        if (!match) throw std::domain_error("no triangle-slide pattern at the designated site");
        auto swap_pair = [&strands](int si, int pos) {
            std::swap(strands[si].encounters[pos], strands[si].encounters[pos + 1]);
        };
        swap_pair(match->top_strand, match->top_pos);
        swap_pair(match->mid_strand, match->mid_pos);
        swap_pair(match->bot_strand, match->bot_pos);
    }

    int n = d.n();
    return StringLinkDiagram::create(n, std::move(strands), std::move(crossings));
}

}  // namespace strandwalk
