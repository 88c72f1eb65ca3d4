#ifndef LOWCROSS_BITSET_HPP
#define LOWCROSS_BITSET_HPP

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

namespace lowcross {

/// Fixed-capacity bitset over a dense index universe [0, n).
/// Word layout: bit i lives in word i/64, bit i%64. Tail bits past n stay zero.
class DynamicBitset {
public:
    DynamicBitset() = default;

    explicit DynamicBitset(uint32_t nbits)
        : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    uint32_t size_bits() const { return nbits_; }
    size_t word_count() const { return words_.size(); }
    std::span<const uint64_t> words() const { return words_; }

    bool test(uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(uint32_t i) { words_[i >> 6] |= uint64_t(1) << (i & 63); }
    void reset(uint32_t i) { words_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

    void clear() { std::memset(words_.data(), 0, words_.size() * sizeof(uint64_t)); }

    /// Sets bits [0, n); used to seed "all elements remaining".
    void set_first(uint32_t n) {
        clear();
        uint32_t full = n >> 6;
        std::memset(words_.data(), 0xff, full * sizeof(uint64_t));
        if (n & 63) words_[full] = (uint64_t(1) << (n & 63)) - 1;
    }

    uint32_t count() const {
        uint32_t c = 0;
        for (uint64_t w : words_) c += uint32_t(std::popcount(w));
        return c;
    }

    /// Index of the k-th set bit (k zero-based); caller guarantees k < count().
    uint32_t nth_set(uint32_t k) const {
        for (size_t w = 0; w < words_.size(); ++w) {
            uint32_t pc = uint32_t(std::popcount(words_[w]));
            if (k < pc) {
                uint64_t bits = words_[w];
                while (k--) bits &= bits - 1;
                return uint32_t(w << 6) + uint32_t(std::countr_zero(bits));
            }
            k -= pc;
        }
        return nbits_;  // unreachable under the precondition
    }

    template <typename Fn>
    void for_each_set(Fn&& fn) const {
        for (size_t w = 0; w < words_.size(); ++w) {
            uint64_t bits = words_[w];
            while (bits) {
                fn(uint32_t(w << 6) + uint32_t(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

    bool operator==(const DynamicBitset&) const = default;

private:
    uint32_t nbits_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace lowcross

#endif
