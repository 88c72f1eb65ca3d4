#include "lowcross/set_system.hpp"

#include <bit>
#include <stdexcept>

namespace lowcross {

SetSystem::SetSystem(uint32_t n, const std::vector<std::vector<uint32_t>>& ranges,
                     std::string label)
    : n_(n),
      m_(uint32_t(ranges.size())),
      wpr_((size_t(n) + 63) / 64),
      words_(size_t(ranges.size()) * ((size_t(n) + 63) / 64), 0),
      sizes_(ranges.size(), 0),
      label_(std::move(label)) {
    if (n == 0) throw std::invalid_argument("SetSystem: n must be >= 1");
    for (uint32_t r = 0; r < m_; ++r) {
        uint64_t* row = words_.data() + size_t(r) * wpr_;
        for (uint32_t e : ranges[r]) {
            if (e >= n_)
                throw std::invalid_argument("SetSystem: range " + std::to_string(r) +
                                            " references element " + std::to_string(e) +
                                            " outside [0, " + std::to_string(n_) + ")");
            row[e >> 6] |= uint64_t(1) << (e & 63);
        }
        uint32_t sz = 0;
        for (size_t w = 0; w < wpr_; ++w) sz += uint32_t(std::popcount(row[w]));
        sizes_[r] = sz;
    }
}

std::vector<uint32_t> SetSystem::range_members(uint32_t range) const {
    std::vector<uint32_t> out;
    out.reserve(sizes_[range]);
    for_each_member(range, [&](uint32_t e) { out.push_back(e); });
    return out;
}

bool crosses(const SetSystem& sys, uint32_t range, std::span<const uint32_t> subset) {
    if (subset.empty()) throw std::invalid_argument("crosses: empty subset");
    if (range >= sys.m()) throw std::invalid_argument("crosses: range id out of bounds");
    bool in = false, out = false;
    for (uint32_t e : subset) {
        if (e >= sys.n()) throw std::invalid_argument("crosses: element id out of bounds");
        (sys.contains(range, e) ? in : out) = true;
        if (in && out) return true;
    }
    return false;
}

}  // namespace lowcross
