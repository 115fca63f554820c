#ifndef FINEGRAIN_BITVEC_HPP
#define FINEGRAIN_BITVEC_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace fgr {

/// Fixed-length Boolean vector packed into 64-bit words. Bits past `size()`
/// in the last word are kept zero so word-wise comparisons are exact.
class BitVec {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitVec() = default;
    explicit BitVec(std::size_t n, bool value = false)
        : size_(n), words_((n + kWordBits - 1) / kWordBits, value ? ~Word{0} : Word{0}) {
        trim();
    }

    /// Parses a string of '0'/'1' characters; position 0 is bit 0.
    static std::optional<BitVec> from_string(std::string_view s) {
        BitVec v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1')
                v.set(i);
            else if (s[i] != '0')
                return std::nullopt;
        }
        return v;
    }

    /// `width` bits of `value`, most significant first.
    static BitVec from_uint(std::uint64_t value, std::size_t width) {
        BitVec v(width);
        for (std::size_t j = 0; j < width; ++j)
            if ((value >> (width - 1 - j)) & 1U) v.set(j);
        return v;
    }

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool get(std::size_t i) const noexcept { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    bool operator[](std::size_t i) const noexcept { return get(i); }

    void set(std::size_t i, bool value = true) noexcept {
        const Word mask = Word{1} << (i % kWordBits);
        if (value)
            words_[i / kWordBits] |= mask;
        else
            words_[i / kWordBits] &= ~mask;
    }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool none() const noexcept {
        for (Word w : words_)
            if (w) return false;
        return true;
    }

    bool all() const noexcept { return count() == size_; }

    BitVec complement() const {
        BitVec r = *this;
        for (Word& w : r.words_) w = ~w;
        r.trim();
        return r;
    }

    BitVec& operator&=(const BitVec& o) {
        check_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    BitVec& operator|=(const BitVec& o) {
        check_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
    friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }

    /// True when some coordinate is 1 in both vectors.
    bool intersects(const BitVec& o) const {
        check_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    /// Coordinatewise `*this >= o`.
    bool dominates(const BitVec& o) const {
        check_same(o);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (o.words_[i] & ~words_[i]) return false;
        return true;
    }

    /// `*this` followed by `tail`.
    BitVec concat(const BitVec& tail) const {
        BitVec r(size_ + tail.size_);
        for (std::size_t i = 0; i < size_; ++i)
            if (get(i)) r.set(i);
        for (std::size_t i = 0; i < tail.size_; ++i)
            if (tail.get(i)) r.set(size_ + i);
        return r;
    }

    BitVec slice(std::size_t from, std::size_t len) const {
        BitVec r(len);
        for (std::size_t i = 0; i < len; ++i)
            if (get(from + i)) r.set(i);
        return r;
    }

    void push_back(bool bit) {
        if (size_ % kWordBits == 0) words_.push_back(0);
        ++size_;
        set(size_ - 1, bit);
    }

    std::string to_string() const {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    const std::vector<Word>& words() const noexcept { return words_; }

    friend bool operator==(const BitVec&, const BitVec&) = default;
    friend auto operator<=>(const BitVec& a, const BitVec& b) {
        if (auto c = a.size_ <=> b.size_; c != 0) return c;
        return a.to_string() <=> b.to_string();
    }

private:
    void trim() noexcept {
        if (const std::size_t r = size_ % kWordBits; r && !words_.empty())
            words_.back() &= (Word{1} << r) - 1;
    }

    void check_same(const BitVec& o) const {
        if (o.size_ != size_)
            throw ShapeError("bit vector length " + std::to_string(o.size_) + " does not match " +
                             std::to_string(size_));
    }

    std::size_t size_ = 0;
    std::vector<Word> words_;
};

} // namespace fgr

#endif
