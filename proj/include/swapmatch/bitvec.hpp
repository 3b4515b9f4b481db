#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace swapmatch {

/// Fixed-width bit vector indexed by pattern position.
///
/// Positions are 1-based: position 1 is the least significant bit of the
/// first storage word, matching pattern position 1. Bits past `width()` are
/// kept at zero by every operation. The width never changes after
/// construction, and binary operations require equal widths.
class BitVec {
public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    explicit BitVec(std::size_t width)
        : width_(width), words_((width + word_bits - 1) / word_bits, 0) {
        if (width == 0) {
            throw std::invalid_argument("BitVec: width must be at least 1");
        }
    }

    /// Parses a position-1-first rendering such as "10011".
    static BitVec from_string(std::string_view bits) {
        BitVec v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1') {
                v.set(i + 1);
            } else if (bits[i] != '0') {
                throw std::invalid_argument("BitVec: expected only '0' and '1'");
            }
        }
        return v;
    }

    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] std::size_t word_count() const noexcept { return words_.size(); }
    [[nodiscard]] std::span<const word_type> words() const noexcept { return words_; }

    [[nodiscard]] bool test(std::size_t pos) const {
        check_pos(pos);
        return (words_[(pos - 1) / word_bits] >> ((pos - 1) % word_bits)) & 1U;
    }

    BitVec& set(std::size_t pos, bool value = true) {
        check_pos(pos);
        const word_type bit = word_type{1} << ((pos - 1) % word_bits);
        word_type& w = words_[(pos - 1) / word_bits];
        w = value ? (w | bit) : (w & ~bit);
        return *this;
    }

    BitVec& reset(std::size_t pos) { return set(pos, false); }

    /// Moves bit i to bit i+1; bit 1 becomes zero and bit `width` falls off.
    BitVec& shift_forward() noexcept {
        for (std::size_t k = words_.size(); k-- > 0;) {
            const word_type carry = k > 0 ? words_[k - 1] >> (word_bits - 1) : 0;
            words_[k] = (words_[k] << 1) | carry;
        }
        trim();
        return *this;
    }

    /// Moves bit i+1 to bit i; bit `width` becomes zero and bit 1 falls off.
    BitVec& shift_back() noexcept {
        const std::size_t n = words_.size();
        for (std::size_t k = 0; k < n; ++k) {
            const word_type carry = k + 1 < n ? words_[k + 1] << (word_bits - 1) : 0;
            words_[k] = (words_[k] >> 1) | carry;
        }
        return *this;
    }

    [[nodiscard]] BitVec shifted_forward() const {
        BitVec r(*this);
        r.shift_forward();
        return r;
    }

    [[nodiscard]] BitVec shifted_back() const {
        BitVec r(*this);
        r.shift_back();
        return r;
    }

    BitVec& operator&=(const BitVec& o) {
        check_width(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }

    BitVec& operator|=(const BitVec& o) {
        check_width(o);
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }

    BitVec& flip() noexcept {
        for (auto& w : words_) w = ~w;
        trim();
        return *this;
    }

    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
    friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }
    friend BitVec operator~(BitVec a) { return a.flip(); }

    friend bool operator==(const BitVec& a, const BitVec& b) noexcept {
        return a.width_ == b.width_ && a.words_ == b.words_;
    }

    [[nodiscard]] std::size_t popcount() const noexcept {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    [[nodiscard]] bool any() const noexcept {
        return std::any_of(words_.begin(), words_.end(), [](word_type w) { return w != 0; });
    }

    [[nodiscard]] bool none() const noexcept { return !any(); }

    /// Renders position 1 first, e.g. "10011".
    [[nodiscard]] std::string to_string() const {
        std::string s(width_, '0');
        for (std::size_t i = 1; i <= width_; ++i) {
            if (test(i)) s[i - 1] = '1';
        }
        return s;
    }

    /// Mask of the valid bits in the last storage word.
    [[nodiscard]] static word_type top_mask(std::size_t width) noexcept {
        const std::size_t rem = width % word_bits;
        return rem == 0 ? ~word_type{0} : (word_type{1} << rem) - 1;
    }

private:
    void trim() noexcept { words_.back() &= top_mask(width_); }

    void check_pos(std::size_t pos) const {
        if (pos < 1 || pos > width_) {
            throw std::out_of_range("BitVec: position " + std::to_string(pos) +
                                    " outside [1.." + std::to_string(width_) + "]");
        }
    }

    void check_width(const BitVec& o) const {
        if (o.width_ != width_) {
            throw std::invalid_argument("BitVec: width mismatch (" + std::to_string(width_) +
                                        " vs " + std::to_string(o.width_) + ")");
        }
    }

    std::size_t width_;
    std::vector<word_type> words_;
};

}  // namespace swapmatch
