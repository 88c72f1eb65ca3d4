#ifndef LOWCROSS_EVALUATION_HPP
#define LOWCROSS_EVALUATION_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lowcross/partition.hpp"
#include "lowcross/set_system.hpp"

namespace lowcross {

/// An element subset A together with its realized approximation error against
/// the host set system.
struct Sample {
    enum class Provenance { partition_based, uniform };
    std::vector<uint32_t> elements;
    double epsilon = 0.0;
    Provenance provenance = Provenance::uniform;
};

/// max over ranges F of | |F|/|X| - |F cap A|/|A| |. Throws on empty A.
double error_factor(const SetSystem& sys, std::span<const uint32_t> A);

/// One element chosen uniformly at random from each part; |A| = t.
Sample eps_approx_from_partition(const SetSystem& sys, const Partition& p, uint64_t seed);

/// `size` distinct elements uniform without replacement.
Sample uniform_sample(const SetSystem& sys, uint32_t size, uint64_t seed);

}  // namespace lowcross

#endif
