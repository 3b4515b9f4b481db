#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace swapmatch {

using Symbol = unsigned char;

/// Sorted, duplicate-free list of 1-based end positions.
using MatchSet = std::vector<std::size_t>;

/// Texts are raw byte sequences; any length including zero.
using Text = std::string_view;

inline Symbol symbol_at(std::string_view s, std::size_t pos1) {
    return static_cast<Symbol>(s[pos1 - 1]);
}

/// A non-empty byte sequence.
class Pattern {
public:
    explicit Pattern(std::string symbols) : symbols_(std::move(symbols)) {
        if (symbols_.empty()) throw std::invalid_argument("Pattern: length must be at least 1");
    }
    explicit Pattern(const char* symbols) : Pattern(std::string(symbols)) {}

    [[nodiscard]] std::size_t size() const noexcept { return symbols_.size(); }
    [[nodiscard]] std::string_view view() const noexcept { return symbols_; }
    [[nodiscard]] const std::string& str() const noexcept { return symbols_; }

    /// 1-based access.
    [[nodiscard]] Symbol operator[](std::size_t pos1) const { return symbol_at(symbols_, pos1); }

    friend bool operator==(const Pattern&, const Pattern&) = default;

private:
    std::string symbols_;
};

/// A set of swap indices i, each exchanging pattern positions i and i+1.
/// No two indices are consecutive, so the swaps are disjoint.
class SwapSet {
public:
    SwapSet() = default;

    explicit SwapSet(std::vector<std::size_t> indices) : indices_(std::move(indices)) {
        std::sort(indices_.begin(), indices_.end());
        for (std::size_t k = 0; k < indices_.size(); ++k) {
            if (indices_[k] == 0) throw std::invalid_argument("SwapSet: indices are 1-based");
            if (k > 0 && indices_[k] <= indices_[k - 1] + 1) {
                throw std::invalid_argument("SwapSet: indices must be distinct and non-consecutive");
            }
        }
    }

    [[nodiscard]] const std::vector<std::size_t>& indices() const noexcept { return indices_; }
    [[nodiscard]] std::size_t size() const noexcept { return indices_.size(); }
    [[nodiscard]] bool empty() const noexcept { return indices_.empty(); }

    /// True when every swap lies inside `p` and exchanges two distinct symbols.
    [[nodiscard]] bool valid_for(const Pattern& p) const {
        return std::all_of(indices_.begin(), indices_.end(), [&](std::size_t i) {
            return i + 1 <= p.size() && p[i] != p[i + 1];
        });
    }

    friend bool operator==(const SwapSet&, const SwapSet&) = default;

private:
    std::vector<std::size_t> indices_;
};

/// All subsets of [1..m-1] with no two consecutive elements, in lexicographic
/// order of their sorted index lists. There are Fib(m+1) of them.
inline std::vector<SwapSet> enumerate_swap_sets(std::size_t m) {
    if (m == 0) throw std::invalid_argument("enumerate_swap_sets: m must be at least 1");
    std::vector<SwapSet> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t next) -> void {
        out.emplace_back(cur);
        for (std::size_t i = next; i + 1 <= m; ++i) {
            cur.push_back(i);
            self(self, i + 2);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

inline Pattern apply_swaps(const Pattern& p, const SwapSet& s) {
    if (!s.valid_for(p)) {
        throw std::invalid_argument("apply_swaps: swap set is not valid for this pattern");
    }
    std::string out = p.str();
    for (std::size_t i : s.indices()) std::swap(out[i - 1], out[i]);
    return Pattern(std::move(out));
}

/// Every distinct swapped version of `p`, sorted.
inline std::vector<std::string> enumerate_swap_versions(const Pattern& p) {
    const std::size_t m = p.size();
    std::unordered_set<std::string> seen;
    for (const SwapSet& s : enumerate_swap_sets(m)) {
        std::vector<std::size_t> kept;
        for (std::size_t i : s.indices()) {
            if (p[i] != p[i + 1]) kept.push_back(i);
        }
        seen.insert(apply_swaps(p, SwapSet(std::move(kept))).str());
    }
    std::vector<std::string> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

/// Patterns up to this length are checked by version enumeration.
inline constexpr std::size_t kEnumerationLimit = 24;

/// Swap matching by definition: a window matches iff it equals a swapped version.
inline MatchSet oracle_search_enumeration(const Pattern& p, Text t) {
    MatchSet out;
    const std::size_t m = p.size();
    if (m > t.size()) return out;
    const std::vector<std::string> versions = enumerate_swap_versions(p);
    const std::unordered_set<std::string_view> lookup(versions.begin(), versions.end());
    for (std::size_t e = m; e <= t.size(); ++e) {
        if (lookup.contains(t.substr(e - m, m))) out.push_back(e);
    }
    return out;
}

/// Per-alignment dynamic programming. ok[k] holds when the first k window
/// symbols form a swapped version of P[1..k]; the last step is either a plain
/// match or the second half of a swap.
inline MatchSet oracle_search_dp(const Pattern& p, Text t) {
    MatchSet out;
    const std::size_t m = p.size();
    if (m > t.size()) return out;
    std::vector<char> ok(m + 1);
    for (std::size_t e = m; e <= t.size(); ++e) {
        const std::string_view w = t.substr(e - m, m);
        ok[0] = 1;
        bool alive = true;
        for (std::size_t k = 1; k <= m && alive; ++k) {
            const bool plain = ok[k - 1] && symbol_at(w, k) == p[k];
            const bool swapped = k >= 2 && ok[k - 2] && p[k - 1] != p[k] &&
                                 symbol_at(w, k - 1) == p[k] && symbol_at(w, k) == p[k - 1];
            ok[k] = plain || swapped;
            alive = ok[k] || ok[k - 1];
        }
        if (alive && ok[m]) out.push_back(e);
    }
    return out;
}

/// Oracle of record: enumeration up to kEnumerationLimit, DP beyond.
inline MatchSet oracle_search(const Pattern& p, Text t) {
    return p.size() <= kEnumerationLimit ? oracle_search_enumeration(p, t) : oracle_search_dp(p, t);
}

// ---------------------------------------------------------------------------
// Graph model
// ---------------------------------------------------------------------------

/// A cell of the 3 x m matrix: row in {-1, 0, +1}, column in [1..m].
struct Vertex {
    int row;
    std::size_t col;

    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

struct Edge {
    Vertex from;
    Vertex to;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Edge families are named by the row of the source vertex.
enum class EdgeFamily { minus_one, zero, plus_one };

/// Level-change shape of an edge: up is +1 -> -1, down enters row +1, and
/// middle is everything that enters row 0.
enum class EdgeShape { middle, down, up };

inline EdgeShape shape_of(const Edge& e) noexcept {
    if (e.from.row == 1) return EdgeShape::up;
    if (e.to.row == 1) return EdgeShape::down;
    return EdgeShape::middle;
}

/// Graph of all swap states of a pattern.
///
/// Row 0 holds P_i at column i, row -1 holds P_{i-1} at columns 2..m (the
/// second half of a swap) and row +1 holds P_{i+1} at columns 1..m-1 (the
/// first half). Every path from {M[0,1], M[+1,1]} to {M[-1,m], M[0,m]}
/// spells one swapped version of the pattern.
class PGraph {
public:
    explicit PGraph(const Pattern& p) : pattern_(p) {
        const std::size_t m = p.size();
        for (std::size_t i = 1; i + 1 <= m; ++i) {
            zero_.push_back({{0, i}, {0, i + 1}});
            if (i + 2 <= m) zero_.push_back({{0, i}, {1, i + 1}});
            plus_.push_back({{1, i}, {-1, i + 1}});
            if (i >= 2) {
                // -1 -> 0 runs through column m-1 so that a swap may end one
                // position before the pattern does; -1 -> +1 stops at m-2.
                minus_.push_back({{-1, i}, {0, i + 1}});
                if (i + 2 <= m) minus_.push_back({{-1, i}, {1, i + 1}});
            }
        }
    }

    [[nodiscard]] std::size_t pattern_length() const noexcept { return pattern_.size(); }
    [[nodiscard]] const Pattern& pattern() const noexcept { return pattern_; }

    [[nodiscard]] bool has_vertex(Vertex v) const noexcept {
        const std::size_t m = pattern_.size();
        if (v.col < 1 || v.col > m) return false;
        switch (v.row) {
            case -1: return v.col >= 2;
            case 0: return true;
            case 1: return v.col + 1 <= m;
            default: return false;
        }
    }

    [[nodiscard]] std::optional<Symbol> label(Vertex v) const {
        if (!has_vertex(v)) return std::nullopt;
        return pattern_[static_cast<std::size_t>(static_cast<long>(v.col) + v.row)];
    }

    [[nodiscard]] std::vector<Vertex> vertices() const {
        std::vector<Vertex> out;
        for (int row : {-1, 0, 1}) {
            for (std::size_t c = 1; c <= pattern_.size(); ++c) {
                if (has_vertex({row, c})) out.push_back({row, c});
            }
        }
        return out;
    }

    [[nodiscard]] std::size_t vertex_count() const noexcept {
        const std::size_t m = pattern_.size();
        return 3 * m - 2;
    }

    [[nodiscard]] const std::vector<Edge>& edges(EdgeFamily f) const noexcept {
        switch (f) {
            case EdgeFamily::minus_one: return minus_;
            case EdgeFamily::zero: return zero_;
            case EdgeFamily::plus_one: break;
        }
        return plus_;
    }

    [[nodiscard]] std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count());
        for (auto f : {EdgeFamily::minus_one, EdgeFamily::zero, EdgeFamily::plus_one}) {
            const auto& es = edges(f);
            out.insert(out.end(), es.begin(), es.end());
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    [[nodiscard]] std::size_t edge_count() const noexcept {
        return minus_.size() + zero_.size() + plus_.size();
    }

    [[nodiscard]] bool is_start(Vertex v) const noexcept {
        return v.col == 1 && (v.row == 0 || v.row == 1) && has_vertex(v);
    }

    [[nodiscard]] bool is_end(Vertex v) const noexcept {
        return v.col == pattern_.size() && (v.row == 0 || v.row == -1) && has_vertex(v);
    }

private:
    Pattern pattern_;
    std::vector<Edge> minus_;
    std::vector<Edge> zero_;
    std::vector<Edge> plus_;
};

inline PGraph build_pgraph(const Pattern& p) { return PGraph(p); }

/// Reachability DP over the graph, one column per text symbol.
///
/// live[v] holds when some path from a start vertex to v spells the last
/// col(v) text symbols. Columns are updated right to left so each column
/// reads its predecessors' values from the previous text position.
inline MatchSet pgraph_search(const PGraph& g, Text t) {
    const std::size_t m = g.pattern_length();
    MatchSet out;
    auto index = [m](Vertex v) { return static_cast<std::size_t>(v.row + 1) * m + (v.col - 1); };

    std::vector<std::vector<std::size_t>> preds(3 * m);
    std::vector<int> label(3 * m, -1);
    for (const Vertex& v : g.vertices()) label[index(v)] = *g.label(v);
    for (const Edge& e : g.edges()) preds[index(e.to)].push_back(index(e.from));

    std::vector<char> live(3 * m, 0);
    for (std::size_t j = 1; j <= t.size(); ++j) {
        const int c = symbol_at(t, j);
        for (std::size_t col = m; col >= 1; --col) {
            for (int row : {-1, 0, 1}) {
                const Vertex v{row, col};
                const std::size_t iv = index(v);
                if (label[iv] < 0) continue;
                bool reach = false;
                if (label[iv] == c) {
                    if (g.is_start(v)) {
                        reach = true;
                    } else {
                        for (std::size_t u : preds[iv]) reach = reach || live[u];
                    }
                }
                live[iv] = reach;
            }
        }
        const bool hit = live[index({0, m})] || (m >= 2 && live[index({-1, m})]);
        if (hit) out.push_back(j);
    }
    return out;
}

/// The text as a labeled path: vertex i carries T_i, edges join i and i+1.
class TGraph {
public:
    explicit TGraph(Text t) : labels_(t) {}

    [[nodiscard]] std::size_t vertex_count() const noexcept { return labels_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept {
        return labels_.empty() ? 0 : labels_.size() - 1;
    }
    [[nodiscard]] Symbol label(std::size_t i) const { return symbol_at(labels_, i); }
    [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> edges() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 1; i < labels_.size(); ++i) out.emplace_back(i, i + 1);
        return out;
    }

private:
    std::string labels_;
};

inline TGraph build_tgraph(Text t) { return TGraph(t); }

}  // namespace swapmatch
