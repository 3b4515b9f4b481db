#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "swapmatch/bitvec.hpp"
#include "swapmatch/model.hpp"

namespace swapmatch {

/// Symbols of each column of the degenerate pattern: {P_{i-1}, P_i, P_{i+1}}
/// clipped to the pattern and deduplicated in that order.
inline std::vector<std::string> degenerate_columns(const Pattern& p) {
    const std::size_t m = p.size();
    std::vector<std::string> cols(m);
    for (std::size_t i = 1; i <= m; ++i) {
        std::string& col = cols[i - 1];
        auto add = [&col](Symbol s) {
            if (col.find(static_cast<char>(s)) == std::string::npos) col.push_back(static_cast<char>(s));
        };
        if (i >= 2) add(p[i - 1]);
        add(p[i]);
        if (i + 1 <= m) add(p[i + 1]);
    }
    return cols;
}

inline std::string render_columns(const std::vector<std::string>& cols) {
    std::string s;
    for (const auto& c : cols) s += "[" + c + "]";
    return s;
}

/// Printable rendering of a symbol for dumps and reports.
inline std::string render_symbol(Symbol s) {
    if (s >= 0x21 && s <= 0x7e && s != '\\') return std::string(1, static_cast<char>(s));
    char buf[8];
    std::snprintf(buf, sizeof buf, "\\x%02x", static_cast<unsigned>(s));
    return buf;
}

inline std::string render_bytes(std::string_view bytes) {
    std::string out;
    for (char c : bytes) out += render_symbol(static_cast<Symbol>(c));
    return out;
}

/// One D-mask per byte value: bit i is set iff the symbol is in degenerate
/// column i. Absent symbols carry the zero vector.
class DMaskTable {
public:
    explicit DMaskTable(std::size_t width) : masks_(256, BitVec(width)) {}

    [[nodiscard]] std::size_t width() const noexcept { return masks_.front().width(); }
    [[nodiscard]] const BitVec& operator[](Symbol c) const noexcept { return masks_[c]; }
    BitVec& mutable_mask(Symbol c) noexcept { return masks_[c]; }

    /// Symbols whose mask is non-zero, ascending.
    [[nodiscard]] std::vector<Symbol> symbols() const {
        std::vector<Symbol> out;
        for (unsigned c = 0; c < 256; ++c) {
            if (masks_[c].any()) out.push_back(static_cast<Symbol>(c));
        }
        return out;
    }

private:
    std::vector<BitVec> masks_;
};

inline DMaskTable build_dmasks(const Pattern& p) {
    DMaskTable d(p.size());
    const auto cols = degenerate_columns(p);
    for (std::size_t i = 1; i <= cols.size(); ++i) {
        for (char c : cols[i - 1]) d.mutable_mask(static_cast<Symbol>(c)).set(i);
    }
    return d;
}

/// Associative mask table keyed by a tuple of symbols. Absent keys resolve to
/// the table's default vector.
template <std::size_t Arity>
class MaskTable {
public:
    using key_type = std::array<Symbol, Arity>;

    explicit MaskTable(BitVec fallback) : default_(std::move(fallback)) {}

    [[nodiscard]] std::size_t width() const noexcept { return default_.width(); }
    [[nodiscard]] const BitVec& default_mask() const noexcept { return default_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] bool contains(const key_type& k) const { return entries_.contains(pack(k)); }

    [[nodiscard]] const BitVec& lookup(const key_type& k) const {
        auto it = entries_.find(pack(k));
        return it == entries_.end() ? default_ : it->second;
    }

    /// Creates the entry from the default vector if needed.
    BitVec& entry(const key_type& k) {
        return entries_.try_emplace(pack(k), default_).first->second;
    }

    [[nodiscard]] std::vector<key_type> keys() const {
        std::vector<key_type> out;
        out.reserve(entries_.size());
        for (const auto& [packed, mask] : entries_) out.push_back(unpack(packed));
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const MaskTable& a, const MaskTable& b) {
        return a.default_ == b.default_ && a.entries_ == b.entries_;
    }

private:
    static std::uint32_t pack(const key_type& k) noexcept {
        std::uint32_t v = 0;
        for (Symbol s : k) v = (v << 8) | s;
        return v;
    }
    static key_type unpack(std::uint32_t v) noexcept {
        key_type k{};
        for (std::size_t i = Arity; i-- > 0;) {
            k[i] = static_cast<Symbol>(v & 0xffU);
            v >>= 8;
        }
        return k;
    }

    BitVec default_;
    std::unordered_map<std::uint32_t, BitVec> entries_;
};

using TripleMaskTable = MaskTable<3>;
using PairMaskTable = MaskTable<2>;

namespace detail {

inline BitVec first_bit_only(std::size_t width) {
    BitVec v(width);
    v.set(1);
    return v;
}

/// Calls fn(first_edge, second_edge) for every two-edge path in the graph.
template <class Fn>
void for_each_two_edge_path(const PGraph& g, Fn&& fn) {
    const std::vector<Edge> es = g.edges();
    for (const Edge& a : es) {
        for (const Edge& b : es) {
            if (a.to == b.from) fn(a, b);
        }
    }
}

inline TripleMaskTable::key_type triple_key(const PGraph& g, const Edge& a, const Edge& b) {
    return {*g.label(a.from), *g.label(a.to), *g.label(b.to)};
}

inline PairMaskTable::key_type pair_key(const PGraph& g, const Edge& e) {
    return {*g.label(e.from), *g.label(e.to)};
}

}  // namespace detail

/// Triple P-masks: for each two-edge path u0 -> u1 -> u2, the mask keyed by the
/// three labels has bit col(u1) set. Bit 1 is set in every mask and in the
/// default, so that a match can begin at any text position.
inline TripleMaskTable build_triple_pmasks(const Pattern& p) {
    TripleMaskTable table(detail::first_bit_only(p.size()));
    const PGraph g(p);
    detail::for_each_two_edge_path(g, [&](const Edge& a, const Edge& b) {
        table.entry(detail::triple_key(g, a, b)).set(a.to.col);
    });
    return table;
}

/// Triple masks split by the shape of the path's first edge. The row class of
/// the middle vertex follows from that shape: middle and up land on a settled
/// vertex (row 0 or -1), down lands on a pending one (row +1). The three
/// tables carry no bit-1 convention and default to zero.
struct TripleShapeMasks {
    TripleMaskTable middle;
    TripleMaskTable down;
    TripleMaskTable up;

    [[nodiscard]] TripleMaskTable& by_shape(EdgeShape s) noexcept {
        return s == EdgeShape::middle ? middle : (s == EdgeShape::down ? down : up);
    }
    [[nodiscard]] const TripleMaskTable& by_shape(EdgeShape s) const noexcept {
        return s == EdgeShape::middle ? middle : (s == EdgeShape::down ? down : up);
    }
};

inline TripleShapeMasks build_triple_shape_masks(const Pattern& p) {
    const BitVec zero(p.size());
    TripleShapeMasks t{TripleMaskTable(zero), TripleMaskTable(zero), TripleMaskTable(zero)};
    const PGraph g(p);
    detail::for_each_two_edge_path(g, [&](const Edge& a, const Edge& b) {
        t.by_shape(shape_of(a)).entry(detail::triple_key(g, a, b)).set(a.to.col);
    });
    return t;
}

/// Pair P-masks: each edge (u, v) sets bit col(v) in the mask keyed by its two
/// labels. Bit 1 is set everywhere, including the default.
inline PairMaskTable build_pair_pmasks(const Pattern& p) {
    PairMaskTable table(detail::first_bit_only(p.size()));
    const PGraph g(p);
    for (const Edge& e : g.edges()) table.entry(detail::pair_key(g, e)).set(e.to.col);
    return table;
}

/// Up, down and middle masks keyed by edge labels, bit = column of the edge's
/// target. Two boundary conventions sit on top of the graph edges: a match
/// that starts on M[+1,1] is itself a downward change, so down(x, P_2) carries
/// bit 1 for every x; and an upward change into M[-1,m] has nothing after it
/// to pair with, so middle(P_m, P_{m-1}) carries bit m as well. table() gives
/// the masks without either convention.
///
/// Edges into or out of M[+1,i] with P_i = P_{i+1} are left out: exchanging
/// equal symbols spells nothing that row 0 does not already spell.
class LevelMaskTables {
public:
    explicit LevelMaskTables(const Pattern& p)
        : up_(BitVec(p.size())), down_(BitVec(p.size())), middle_(BitVec(p.size())) {
        const std::size_t m = p.size();
        if (m >= 2 && p[1] != p[2]) entry_symbol_ = p[2];
        if (m >= 2 && p[m - 1] != p[m]) exit_key_ = PairMaskTable::key_type{p[m], p[m - 1]};
        const PGraph g(p);
        for (const Edge& e : g.edges()) {
            const Vertex* first_half = e.to.row == 1 ? &e.to : (e.from.row == 1 ? &e.from : nullptr);
            if (first_half && p[first_half->col] == p[first_half->col + 1]) continue;
            shape_table(shape_of(e)).entry(detail::pair_key(g, e)).set(e.to.col);
        }
    }

    [[nodiscard]] std::size_t width() const noexcept { return up_.width(); }

    [[nodiscard]] BitVec up(Symbol a, Symbol b) const { return up_.lookup({a, b}); }
    [[nodiscard]] BitVec middle(Symbol a, Symbol b) const {
        BitVec v = middle_.lookup({a, b});
        if (exit_key_ && PairMaskTable::key_type{a, b} == *exit_key_) v.set(v.width());
        return v;
    }
    [[nodiscard]] BitVec down(Symbol a, Symbol b) const {
        BitVec v = down_.lookup({a, b});
        if (entry_symbol_ && b == *entry_symbol_) v.set(1);
        return v;
    }

    [[nodiscard]] BitVec lookup(EdgeShape s, Symbol a, Symbol b) const {
        switch (s) {
            case EdgeShape::up: return up(a, b);
            case EdgeShape::down: return down(a, b);
            case EdgeShape::middle: break;
        }
        return middle(a, b);
    }

    /// Symbol whose arrival can open a match on row +1 (P_2), if m >= 2.
    [[nodiscard]] std::optional<Symbol> entry_symbol() const noexcept { return entry_symbol_; }

    /// Labels (P_m, P_{m-1}) of the upward change into the last column, if any.
    [[nodiscard]] std::optional<PairMaskTable::key_type> exit_key() const noexcept { return exit_key_; }

    /// Edge-shape tables without the boundary bits.
    [[nodiscard]] const PairMaskTable& table(EdgeShape s) const noexcept {
        return s == EdgeShape::up ? up_ : (s == EdgeShape::down ? down_ : middle_);
    }

    /// Label pairs of all graph edges, sorted.
    [[nodiscard]] std::vector<PairMaskTable::key_type> keys() const {
        std::vector<PairMaskTable::key_type> out;
        for (const auto* t : {&up_, &down_, &middle_}) {
            const auto ks = t->keys();
            out.insert(out.end(), ks.begin(), ks.end());
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

private:
    PairMaskTable& shape_table(EdgeShape s) noexcept {
        return s == EdgeShape::up ? up_ : (s == EdgeShape::down ? down_ : middle_);
    }

    PairMaskTable up_;
    PairMaskTable down_;
    PairMaskTable middle_;
    std::optional<Symbol> entry_symbol_;
    std::optional<PairMaskTable::key_type> exit_key_;
};

inline LevelMaskTables build_level_masks(const Pattern& p) { return LevelMaskTables(p); }

// ---------------------------------------------------------------------------
// Dump format: one "KEY bits" line per key, keys in lexicographic order, bits
// position-1-first. Defaults are listed last under the key "(default)".
// ---------------------------------------------------------------------------

template <std::size_t Arity>
std::string render_key(const std::array<Symbol, Arity>& k) {
    std::string s;
    for (Symbol c : k) s += render_symbol(c);
    return s;
}

inline std::string dump_dmasks(const DMaskTable& d) {
    std::string out;
    for (Symbol c : d.symbols()) out += render_symbol(c) + " " + d[c].to_string() + "\n";
    out += "(default) " + BitVec(d.width()).to_string() + "\n";
    return out;
}

template <std::size_t Arity>
std::string dump_mask_table(const MaskTable<Arity>& t) {
    std::string out;
    for (const auto& k : t.keys()) out += render_key(k) + " " + t.lookup(k).to_string() + "\n";
    out += "(default) " + t.default_mask().to_string() + "\n";
    return out;
}

inline std::string dump_level_masks(const LevelMaskTables& l, EdgeShape s) {
    std::string out;
    for (const auto& k : l.keys()) out += render_key(k) + " " + l.lookup(s, k[0], k[1]).to_string() + "\n";
    return out;
}

}  // namespace swapmatch
