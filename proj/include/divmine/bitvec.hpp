#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace divmine {

// Packed bit vector. XOR+popcount between two vectors is the hot kernel of
// the whole engine, so everything stays word-aligned and branch-light.
// Invariant: bits past size() in the last word are always zero.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t nbits) : nbits_(nbits), words_(word_count(nbits), 0) {}

    static BitVec ones(std::size_t nbits) {
        BitVec v(nbits);
        for (auto& w : v.words_) w = ~std::uint64_t{0};
        v.mask_tail();
        return v;
    }

    std::size_t size() const { return nbits_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void assign(std::size_t i, bool v) { v ? set(i) : reset(i); }

    void clear_all() { std::fill(words_.begin(), words_.end(), 0); }

    void and_with(const BitVec& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    bool none() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    bool is_subset_of(const BitVec& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    friend std::size_t xor_count(const BitVec& a, const BitVec& b) {
        std::size_t n = 0;
        for (std::size_t i = 0; i < a.words_.size(); ++i)
            n += static_cast<std::size_t>(std::popcount(a.words_[i] ^ b.words_[i]));
        return n;
    }

    bool operator==(const BitVec& o) const { return nbits_ == o.nbits_ && words_ == o.words_; }

    // Lexicographic over the 0/1 string, bit 0 first. Shorter vector that is a
    // prefix of a longer one sorts first.
    std::strong_ordering operator<=>(const BitVec& o) const {
        const std::size_t nw = std::min(words_.size(), o.words_.size());
        for (std::size_t i = 0; i < nw; ++i) {
            const std::uint64_t d = words_[i] ^ o.words_[i];
            if (d) {
                const int bit = std::countr_zero(d);
                return ((words_[i] >> bit) & 1u) ? std::strong_ordering::greater
                                                 : std::strong_ordering::less;
            }
        }
        return nbits_ <=> o.nbits_;
    }

    std::span<const std::uint64_t> words() const { return words_; }

    std::size_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ull ^ nbits_;
        for (auto w : words_) {
            h ^= w;
            h *= 0x100000001b3ull;
        }
        return static_cast<std::size_t>(h);
    }

    std::string to_string01() const {
        std::string s(nbits_, '0');
        for (std::size_t i = 0; i < nbits_; ++i)
            if (test(i)) s[i] = '1';
        return s;
    }

    static BitVec from_string01(const std::string& s) {
        BitVec v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] == '1') v.set(i);
        return v;
    }

private:
    static std::size_t word_count(std::size_t nbits) { return (nbits + 63) / 64; }

    void mask_tail() {
        const std::size_t rem = nbits_ & 63;
        if (rem && !words_.empty()) words_.back() &= (std::uint64_t{1} << rem) - 1;
    }

    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace divmine
