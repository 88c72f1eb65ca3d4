#include "lowcross/evaluation.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lowcross/bitset.hpp"
#include "lowcross/rng.hpp"

namespace lowcross {

double error_factor(const SetSystem& sys, std::span<const uint32_t> A) {
    if (A.empty()) throw std::invalid_argument("error_factor: sample must be nonempty");
    DynamicBitset in_sample(sys.n());
    for (uint32_t e : A) {
        if (e >= sys.n()) throw std::invalid_argument("error_factor: element id out of bounds");
        in_sample.set(e);
    }
    const double inv_n = 1.0 / double(sys.n());
    const double inv_a = 1.0 / double(in_sample.count());

    double eps = 0.0;
    const auto sw = in_sample.words();
    for (uint32_t r = 0; r < sys.m(); ++r) {
        const uint64_t* row = sys.row_words(r);
        uint32_t hit = 0;
        for (size_t w = 0; w < sw.size(); ++w) hit += uint32_t(std::popcount(row[w] & sw[w]));
        eps = std::max(eps, std::fabs(double(sys.range_size(r)) * inv_n - double(hit) * inv_a));
    }
    return eps;
}

Sample eps_approx_from_partition(const SetSystem& sys, const Partition& p, uint64_t seed) {
    SplitMix64 rng(seed);
    Sample s;
    s.provenance = Sample::Provenance::partition_based;
    for (const auto& members : p.parts()) {
        if (members.empty()) continue;
        s.elements.push_back(members[rng.next_below(members.size())]);
    }
    s.epsilon = error_factor(sys, s.elements);
    return s;
}

Sample uniform_sample(const SetSystem& sys, uint32_t size, uint64_t seed) {
    if (size < 1 || size > sys.n())
        throw std::invalid_argument("uniform_sample: size must be in [1, n]");
    SplitMix64 rng(seed);
    std::vector<uint32_t> ids(sys.n());
    std::iota(ids.begin(), ids.end(), 0);
    for (uint32_t i = 0; i < size; ++i)
        std::swap(ids[i], ids[i + rng.next_below(ids.size() - i)]);
    Sample s;
    s.provenance = Sample::Provenance::uniform;
    s.elements.assign(ids.begin(), ids.begin() + size);
    s.epsilon = error_factor(sys, s.elements);
    return s;
}

}  // namespace lowcross
