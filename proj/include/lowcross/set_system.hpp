#ifndef LOWCROSS_SET_SYSTEM_HPP
#define LOWCROSS_SET_SYSTEM_HPP

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lowcross/bitset.hpp"

namespace lowcross {

/// A finite set system: n ground elements and m ranges (subsets), stored as an
/// m x n incidence bit-matrix. Immutable after construction; pointers returned
/// by row_words() stay valid for the lifetime of the object, and concurrent
/// readers need no synchronisation.
///
/// Element and range indices are dense zero-based integers. Generator
/// provenance (family name, parameters) lives in the optional label and never
/// in the hot path.
class SetSystem {
public:
    /// Builds the incidence matrix from explicit member lists. Duplicated
    /// members within one range collapse; an out-of-range index throws.
    SetSystem(uint32_t n, const std::vector<std::vector<uint32_t>>& ranges,
              std::string label = "");

    uint32_t n() const { return n_; }
    uint32_t m() const { return m_; }
    const std::string& label() const { return label_; }

    bool contains(uint32_t range, uint32_t elem) const {
        return (words_[size_t(range) * wpr_ + (elem >> 6)] >> (elem & 63)) & 1u;
    }

    uint32_t range_size(uint32_t range) const { return sizes_[range]; }

    /// Raw words of one incidence row; bits past n are zero.
    const uint64_t* row_words(uint32_t range) const {
        return words_.data() + size_t(range) * wpr_;
    }

    size_t words_per_row() const { return wpr_; }

    std::vector<uint32_t> range_members(uint32_t range) const;

    template <typename Fn>
    void for_each_member(uint32_t range, Fn&& fn) const {
        const uint64_t* row = row_words(range);
        for (size_t w = 0; w < wpr_; ++w) {
            uint64_t bits = row[w];
            while (bits) {
                fn(uint32_t(w << 6) + uint32_t(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

    bool operator==(const SetSystem& other) const {
        return n_ == other.n_ && m_ == other.m_ && words_ == other.words_;
    }

private:
    uint32_t n_ = 0;
    uint32_t m_ = 0;
    size_t wpr_ = 0;  // 64-bit words per incidence row
    std::vector<uint64_t> words_;
    std::vector<uint32_t> sizes_;
    std::string label_;
};

/// I(P, F): 1 iff range `range` contains at least one and excludes at least
/// one element of `subset`. Throws on empty subset or invalid indices.
bool crosses(const SetSystem& sys, uint32_t range, std::span<const uint32_t> subset);

}  // namespace lowcross

#endif
