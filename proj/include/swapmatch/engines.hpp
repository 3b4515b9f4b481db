#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "swapmatch/bitvec.hpp"
#include "swapmatch/masks.hpp"
#include "swapmatch/model.hpp"

namespace swapmatch {

namespace detail {

using word = std::uint64_t;

template <std::size_t W>
using reg_t = std::conditional_t<W == 0, std::vector<word>, std::array<word, W>>;

template <std::size_t W>
reg_t<W> make_reg(std::size_t nw) {
    if constexpr (W == 0) {
        return std::vector<word>(nw, 0);
    } else {
        return reg_t<W>{};
    }
}

inline std::size_t words_for(std::size_t m) { return (m + 63) / 64; }

inline bool test_bit(const word* r, std::size_t pos1) {
    return (r[(pos1 - 1) / 64] >> ((pos1 - 1) % 64)) & 1U;
}

/// Runs f.template operator()<W>() with W the static word count, or 0 when
/// the pattern needs more than four words.
template <class F>
decltype(auto) dispatch_words(std::size_t nw, F&& f) {
    switch (nw) {
        case 1: return f.template operator()<1>();
        case 2: return f.template operator()<2>();
        case 3: return f.template operator()<3>();
        case 4: return f.template operator()<4>();
        default: return f.template operator()<0>();
    }
}

/// Flat per-symbol masks, 256 rows of `nw` words.
class SymbolMasks {
public:
    SymbolMasks() = default;
    explicit SymbolMasks(std::size_t nw) : nw_(nw), data_(256 * nw, 0) {}

    void assign(Symbol c, const BitVec& v) {
        const auto ws = v.words();
        std::copy(ws.begin(), ws.end(), data_.begin() + static_cast<std::ptrdiff_t>(c * nw_));
    }
    [[nodiscard]] const word* operator[](Symbol c) const noexcept { return data_.data() + c * nw_; }

private:
    std::size_t nw_ = 0;
    std::vector<word> data_;
};

/// Rank of each byte within the pattern's alphabet; 0 means absent.
class SymbolRanks {
public:
    explicit SymbolRanks(const Pattern& p) {
        for (std::size_t i = 1; i <= p.size(); ++i) {
            if (rank_[p[i]] == 0) rank_[p[i]] = static_cast<std::uint16_t>(++count_);
        }
    }
    [[nodiscard]] std::uint32_t operator()(Symbol c) const noexcept { return rank_[c]; }
    [[nodiscard]] std::uint32_t count() const noexcept { return count_; }

private:
    std::array<std::uint16_t, 256> rank_{};
    std::uint32_t count_ = 0;
};

/// Maps a symbol triple to an entry slot. Entry 0 is the default. The index is
/// dense over alphabet ranks when that stays small and hashed otherwise.
class TripleIndex {
public:
    static constexpr std::size_t kDenseLimit = std::size_t{1} << 22;

    TripleIndex(const SymbolRanks& ranks, bool force_hashed = false)
        : ranks_(ranks), side_(ranks.count() + 1) {
        dense_ = !force_hashed && side_ * side_ * side_ <= kDenseLimit;
        if (dense_) table_.assign(side_ * side_ * side_, 0);
    }

    void insert(Symbol a, Symbol b, Symbol c, std::uint32_t slot) {
        if (dense_) {
            table_[cell(ranks_(a), ranks_(b), ranks_(c))] = slot;
        } else {
            hashed_[pack(a, b, c)] = slot;
        }
    }

    /// `a` may be -1 for "no predecessor".
    [[nodiscard]] std::uint32_t find(int a, Symbol b, Symbol c) const {
        if (a < 0) return 0;
        const Symbol sa = static_cast<Symbol>(a);
        if (dense_) return table_[cell(ranks_(sa), ranks_(b), ranks_(c))];
        if (ranks_(sa) == 0 || ranks_(b) == 0 || ranks_(c) == 0) return 0;
        auto it = hashed_.find(pack(sa, b, c));
        return it == hashed_.end() ? 0 : it->second;
    }

    [[nodiscard]] bool dense() const noexcept { return dense_; }

private:
    [[nodiscard]] std::size_t cell(std::uint32_t ra, std::uint32_t rb, std::uint32_t rc) const noexcept {
        return (static_cast<std::size_t>(ra) * side_ + rb) * side_ + rc;
    }
    static std::uint32_t pack(Symbol a, Symbol b, Symbol c) noexcept {
        return (std::uint32_t{a} << 16) | (std::uint32_t{b} << 8) | c;
    }

    SymbolRanks ranks_;
    std::size_t side_;
    bool dense_ = true;
    std::vector<std::uint32_t> table_;
    std::unordered_map<std::uint32_t, std::uint32_t> hashed_;
};

/// Shift-and over per-symbol masks: R = (R << 1 | 1) & mask[T_j], match when
/// bit m is set.
template <std::size_t W, std::input_iterator It, class Sink>
void shift_and_scan(const SymbolMasks& masks, std::size_t m, It first, It last, Sink& sink) {
    const std::size_t nw = W ? W : words_for(m);
    auto r = make_reg<W>(nw);
    std::size_t j = 0;
    for (; first != last; ++first) {
        ++j;
        const word* d = masks[static_cast<Symbol>(*first)];
        for (std::size_t k = nw; k-- > 0;) {
            const word carry = k > 0 ? r[k - 1] >> 63 : 1;
            r[k] = ((r[k] << 1) | carry) & d[k];
        }
        if (test_bit(r.data(), m)) sink(j);
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Shift-and baselines
// ---------------------------------------------------------------------------

/// Exact occurrences of p in t by end position.
inline MatchSet shift_and_search(const Pattern& p, Text t) {
    const std::size_t nw = detail::words_for(p.size());
    detail::SymbolMasks masks(nw);
    BitVec d(p.size());
    for (unsigned c = 0; c < 256; ++c) {
        BitVec v(p.size());
        bool any = false;
        for (std::size_t i = 1; i <= p.size(); ++i) {
            if (p[i] == c) {
                v.set(i);
                any = true;
            }
        }
        if (any) masks.assign(static_cast<Symbol>(c), v);
    }
    MatchSet out;
    auto sink = [&out](std::size_t e) { out.push_back(e); };
    detail::dispatch_words(nw, [&]<std::size_t W>() {
        detail::shift_and_scan<W>(masks, p.size(), t.begin(), t.end(), sink);
    });
    return out;
}

/// Degenerate matching against the column sets {P_{i-1}, P_i, P_{i+1}}. This
/// ignores how neighbouring columns must agree, so it over-approximates swap
/// matching.
inline MatchSet degenerate_shift_and_search(const Pattern& p, Text t) {
    const std::size_t nw = detail::words_for(p.size());
    const DMaskTable d = build_dmasks(p);
    detail::SymbolMasks masks(nw);
    for (Symbol c : d.symbols()) masks.assign(c, d[c]);
    MatchSet out;
    auto sink = [&out](std::size_t e) { out.push_back(e); };
    detail::dispatch_words(nw, [&]<std::size_t W>() {
        detail::shift_and_scan<W>(masks, p.size(), t.begin(), t.end(), sink);
    });
    return out;
}

// ---------------------------------------------------------------------------
// SMALGO-I
// ---------------------------------------------------------------------------

/// Swap matcher driven by triple P-masks with one symbol of lookahead.
///
/// Each step first applies the candidate recurrence
///     R' = (R << 1 | 1) & D[T_j] & (D[T_{j+1}] >> 1) & P3(T_{j-1}, T_j, T_{j+1})
/// and then splits R' by the row class of the vertex a live prefix ends on:
/// `settled` (row 0 or -1, free to continue either way) and `pending` (row
/// +1, must complete its swap next). A settled bit survives only through a
/// middle- or down-shaped triple, a pending bit only through an up-shaped one.
/// The union register alone cannot tell two same-labelled vertices of one
/// column apart and admits false matches.
///
/// Bit m-1 after step j, checked with the lookahead symbol T_{j+1} already in
/// column m, reports a match ending at j+1. Patterns of length 1 and 2 have no
/// two-edge paths and are matched directly.
class Smalgo1Engine {
public:
    explicit Smalgo1Engine(const Pattern& p)
        : pattern_(p),
          m_(p.size()),
          nw_(detail::words_for(p.size())),
          dmasks_(build_dmasks(p)),
          pmasks_(build_triple_pmasks(p)),
          shaped_(build_triple_shape_masks(p)),
          ranks_(p),
          index_(ranks_) {
        compile();
    }

    [[nodiscard]] const Pattern& pattern() const noexcept { return pattern_; }
    [[nodiscard]] std::size_t pattern_length() const noexcept { return m_; }
    [[nodiscard]] const DMaskTable& dmasks() const noexcept { return dmasks_; }
    [[nodiscard]] const TripleMaskTable& pmasks() const noexcept { return pmasks_; }
    [[nodiscard]] const TripleShapeMasks& shape_masks() const noexcept { return shaped_; }

    /// True when the pattern is too short for triple masks.
    [[nodiscard]] bool uses_fallback() const noexcept { return m_ < 3; }

    /// Single pass over [first, last); each symbol is read exactly once.
    template <std::input_iterator It, class Sink>
    void scan(It first, It last, Sink&& sink) const {
        if (m_ < 3) {
            scan_short(first, last, sink);
            return;
        }
        detail::dispatch_words(nw_, [&]<std::size_t W>() { scan_words<W>(first, last, sink); });
    }

    [[nodiscard]] MatchSet search(Text t) const {
        MatchSet out;
        scan(t.begin(), t.end(), [&out](std::size_t e) { out.push_back(e); });
        return out;
    }

private:
    enum Field : std::size_t { kUnion, kMiddle, kUp, kDown, kFields };

    void compile() {
        back_dmasks_ = detail::SymbolMasks(nw_);
        plain_dmasks_ = detail::SymbolMasks(nw_);
        for (Symbol c : dmasks_.symbols()) {
            plain_dmasks_.assign(c, dmasks_[c]);
            back_dmasks_.assign(c, dmasks_[c].shifted_back());
        }
        const std::size_t stride = kFields * nw_;
        entries_.assign(stride, 0);
        entries_[kUnion * nw_] = 1;  // default: bit 1 only
        for (const auto& key : pmasks_.keys()) {
            const std::size_t slot = entries_.size() / stride;
            entries_.resize(entries_.size() + stride, 0);
            auto put = [&](Field f, const BitVec& v) {
                const auto ws = v.words();
                std::copy(ws.begin(), ws.end(), entries_.begin() + static_cast<std::ptrdiff_t>(slot * stride + f * nw_));
            };
            put(kUnion, pmasks_.lookup(key));
            put(kMiddle, shaped_.middle.lookup(key));
            put(kUp, shaped_.up.lookup(key));
            put(kDown, shaped_.down.lookup(key));
            index_.insert(key[0], key[1], key[2], static_cast<std::uint32_t>(slot));
        }
    }

    template <std::input_iterator It, class Sink>
    void scan_short(It first, It last, Sink& sink) const {
        const Symbol p1 = pattern_[1];
        const bool two = m_ == 2;
        const Symbol p2 = two ? pattern_[2] : p1;
        int prev = -1;
        std::size_t j = 0;
        for (; first != last; ++first) {
            const Symbol cur = static_cast<Symbol>(*first);
            ++j;
            if (!two) {
                if (cur == p1) sink(j);
            } else if (prev >= 0) {
                const Symbol a = static_cast<Symbol>(prev);
                if ((a == p1 && cur == p2) || (p1 != p2 && a == p2 && cur == p1)) sink(j);
            }
            prev = cur;
        }
    }

    template <std::size_t W, std::input_iterator It, class Sink>
    void scan_words(It first, It last, Sink& sink) const {
        using detail::word;
        const std::size_t nw = W ? W : nw_;
        const std::size_t stride = kFields * nw;
        const Symbol p1 = pattern_[1];
        const Symbol p2 = pattern_[2];
        auto settled = detail::make_reg<W>(nw);
        auto pending = detail::make_reg<W>(nw);

        if (first == last) return;
        Symbol cur = static_cast<Symbol>(*first);
        ++first;
        int prev = -1;
        std::size_t j = 1;
        for (; first != last; ++first, ++j) {
            const Symbol next = static_cast<Symbol>(*first);
            const word* e = entries_.data() + index_.find(prev, cur, next) * stride;
            const word* pu = e + kUnion * nw;
            const word* pm = e + kMiddle * nw;
            const word* pp = e + kUp * nw;
            const word* pd = e + kDown * nw;
            const word* d_cur = plain_dmasks_[cur];
            const word* d_next = back_dmasks_[next];
            const word start_settled = cur == p1 ? 1 : 0;
            const word start_pending = cur == p2 ? 1 : 0;
            for (std::size_t k = nw; k-- > 0;) {
                const word s_adv = (settled[k] << 1) | (k > 0 ? settled[k - 1] >> 63 : 0);
                const word p_adv = (pending[k] << 1) | (k > 0 ? pending[k - 1] >> 63 : 0);
                const word start = k == 0 ? 1 : 0;
                const word cand = (s_adv | p_adv | start) & d_cur[k] & d_next[k] & pu[k];
                word s_new = cand & ((s_adv & pm[k]) | (p_adv & pp[k]));
                word p_new = cand & (s_adv & pd[k]);
                if (k == 0) {
                    s_new |= cand & start_settled;
                    p_new |= cand & start_pending;
                }
                settled[k] = s_new;
                pending[k] = p_new;
            }
            if (detail::test_bit(settled.data(), m_ - 1) || detail::test_bit(pending.data(), m_ - 1)) {
                sink(j + 1);
            }
            prev = cur;
            cur = next;
        }
    }

    Pattern pattern_;
    std::size_t m_;
    std::size_t nw_;
    DMaskTable dmasks_;
    TripleMaskTable pmasks_;
    TripleShapeMasks shaped_;
    detail::SymbolRanks ranks_;
    detail::TripleIndex index_;
    detail::SymbolMasks plain_dmasks_;
    detail::SymbolMasks back_dmasks_;
    std::vector<detail::word> entries_;
};

inline Smalgo1Engine smalgo1_preprocess(const Pattern& p) { return Smalgo1Engine(p); }
inline MatchSet smalgo1_search(const Smalgo1Engine& e, Text t) { return e.search(t); }

// ---------------------------------------------------------------------------
// SMALGO-II
// ---------------------------------------------------------------------------

/// Swap matcher driven by pair P-masks and the up/down/middle level masks.
///
/// The candidate step is R' = (R << 1 | 1) & P2(T_{j-1}, T_j) & D[T_j]. Two
/// carry registers then veto what the pair masks cannot see: `pending` holds
/// prefixes sitting on row +1 after a downward change, which must be followed
/// by an upward change; `settled` holds the rest, which after an upward change
/// must be followed by a downward or middle change. Pair masks alone accept
/// e.g. "acbbb" for "acbab"; the veto rejects it.
class Smalgo2Engine {
public:
    explicit Smalgo2Engine(const Pattern& p)
        : pattern_(p),
          m_(p.size()),
          nw_(detail::words_for(p.size())),
          dmasks_(build_dmasks(p)),
          pmasks_(build_pair_pmasks(p)),
          levels_(build_level_masks(p)),
          ranks_(p),
          side_(ranks_.count() + 1) {
        compile();
    }

    [[nodiscard]] const Pattern& pattern() const noexcept { return pattern_; }
    [[nodiscard]] std::size_t pattern_length() const noexcept { return m_; }
    [[nodiscard]] const DMaskTable& dmasks() const noexcept { return dmasks_; }
    [[nodiscard]] const PairMaskTable& pmasks() const noexcept { return pmasks_; }
    [[nodiscard]] const LevelMaskTables& level_masks() const noexcept { return levels_; }

    template <std::input_iterator It, class Sink>
    void scan(It first, It last, Sink&& sink) const {
        if (m_ == 1) {
            detail::shift_and_scan<1>(plain_dmasks_, 1, first, last, sink);
            return;
        }
        detail::dispatch_words(nw_, [&]<std::size_t W>() { scan_words<W>(first, last, sink); });
    }

    [[nodiscard]] MatchSet search(Text t) const {
        MatchSet out;
        scan(t.begin(), t.end(), [&out](std::size_t e) { out.push_back(e); });
        return out;
    }

private:
    enum Field : std::size_t { kPair, kMiddle, kUp, kDown, kFields };

    void compile() {
        plain_dmasks_ = detail::SymbolMasks(nw_);
        for (Symbol c : dmasks_.symbols()) plain_dmasks_.assign(c, dmasks_[c]);

        const std::size_t stride = kFields * nw_;
        // Slot 0: unknown pair. Slot 1: unknown pair whose second symbol can
        // open a match on row +1.
        entries_.assign(2 * stride, 0);
        entries_[kPair * nw_] = 1;
        entries_[stride + kPair * nw_] = 1;
        entries_[stride + kDown * nw_] = 1;
        index_.assign(side_ * side_, 0);
        if (const auto entry = levels_.entry_symbol()) {
            for (std::size_t a = 0; a < side_; ++a) index_[a * side_ + ranks_(*entry)] = 1;
        }
        for (const auto& key : pmasks_.keys()) {
            const std::size_t slot = entries_.size() / stride;
            entries_.resize(entries_.size() + stride, 0);
            auto put = [&](Field f, const BitVec& v) {
                const auto ws = v.words();
                std::copy(ws.begin(), ws.end(), entries_.begin() + static_cast<std::ptrdiff_t>(slot * stride + f * nw_));
            };
            put(kPair, pmasks_.lookup(key));
            put(kMiddle, levels_.table(EdgeShape::middle).lookup(key));
            put(kUp, levels_.up(key[0], key[1]));
            put(kDown, levels_.down(key[0], key[1]));
            index_[ranks_(key[0]) * side_ + ranks_(key[1])] = static_cast<std::uint32_t>(slot);
        }
    }

    template <std::size_t W, std::input_iterator It, class Sink>
    void scan_words(It first, It last, Sink& sink) const {
        using detail::word;
        const std::size_t nw = W ? W : nw_;
        const std::size_t stride = kFields * nw;
        const Symbol p1 = pattern_[1];
        auto settled = detail::make_reg<W>(nw);
        auto pending = detail::make_reg<W>(nw);
        std::uint32_t prev_rank = 0;
        std::size_t j = 0;
        for (; first != last; ++first) {
            const Symbol cur = static_cast<Symbol>(*first);
            ++j;
            const std::uint32_t cur_rank = ranks_(cur);
            const word* e = entries_.data() + index_[prev_rank * side_ + cur_rank] * stride;
            const word* pk = e + kPair * nw;
            const word* pm = e + kMiddle * nw;
            const word* pp = e + kUp * nw;
            const word* pd = e + kDown * nw;
            const word* d_cur = plain_dmasks_[cur];
            const word start_settled = cur == p1 ? 1 : 0;
            for (std::size_t k = nw; k-- > 0;) {
                const word s_adv = (settled[k] << 1) | (k > 0 ? settled[k - 1] >> 63 : 0);
                const word p_adv = (pending[k] << 1) | (k > 0 ? pending[k - 1] >> 63 : 0);
                const word start = k == 0 ? 1 : 0;
                const word cand = (s_adv | p_adv | start) & pk[k] & d_cur[k];
                word s_new = cand & ((s_adv & pm[k]) | (p_adv & pp[k]));
                const word p_new = cand & ((s_adv | start) & pd[k]);
                if (k == 0) s_new |= cand & start_settled;
                settled[k] = s_new;
                pending[k] = p_new;
            }
            if (detail::test_bit(settled.data(), m_) || detail::test_bit(pending.data(), m_)) sink(j);
            prev_rank = cur_rank;
        }
    }

    Pattern pattern_;
    std::size_t m_;
    std::size_t nw_;
    DMaskTable dmasks_;
    PairMaskTable pmasks_;
    LevelMaskTables levels_;
    detail::SymbolRanks ranks_;
    std::size_t side_;
    detail::SymbolMasks plain_dmasks_;
    std::vector<std::uint32_t> index_;
    std::vector<detail::word> entries_;
};

inline Smalgo2Engine smalgo2_preprocess(const Pattern& p) { return Smalgo2Engine(p); }
inline MatchSet smalgo2_search(const Smalgo2Engine& e, Text t) { return e.search(t); }

// ---------------------------------------------------------------------------
// Single-register recurrences, kept to demonstrate what the split registers fix.
// ---------------------------------------------------------------------------

namespace literal {

/// R' = (R << 1 | 1) & D[T_j] & (D[T_{j+1}] >> 1) & P3(T_{j-1}, T_j, T_{j+1}) on
/// one register, reporting bit m-1 as a match ending at j+1. Admits false
/// positives, e.g. "aabab" in "abbabaaaaba" at 11. Requires m >= 3.
inline MatchSet smalgo1_search(const Pattern& p, Text t) {
    const std::size_t m = p.size();
    if (m < 3) throw std::invalid_argument("literal::smalgo1_search: needs m >= 3");
    const DMaskTable d = build_dmasks(p);
    const TripleMaskTable pm = build_triple_pmasks(p);
    MatchSet out;
    BitVec r(m);
    for (std::size_t j = 1; j < t.size(); ++j) {
        const Symbol cur = symbol_at(t, j);
        const Symbol next = symbol_at(t, j + 1);
        const BitVec& tri = j == 1 ? pm.default_mask() : pm.lookup({symbol_at(t, j - 1), cur, next});
        r.shift_forward().set(1);
        r &= d[cur];
        r &= d[next].shifted_back();
        r &= tri;
        if (r.test(m - 1)) out.push_back(j + 1);
    }
    return out;
}

/// R' = (R << 1 | 1) & P2(T_{j-1}, T_j) & D[T_j] without the level-change veto.
inline MatchSet smalgo2_unvetoed_search(const Pattern& p, Text t) {
    const std::size_t m = p.size();
    const DMaskTable d = build_dmasks(p);
    const PairMaskTable pm = build_pair_pmasks(p);
    MatchSet out;
    BitVec r(m);
    for (std::size_t j = 1; j <= t.size(); ++j) {
        const Symbol cur = symbol_at(t, j);
        const BitVec& pair = j == 1 ? pm.default_mask() : pm.lookup({symbol_at(t, j - 1), cur});
        r.shift_forward().set(1);
        r &= pair;
        r &= d[cur];
        if (r.test(m)) out.push_back(j);
    }
    return out;
}

}  // namespace literal

}  // namespace swapmatch
