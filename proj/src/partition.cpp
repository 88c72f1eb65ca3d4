#include "lowcross/partition.hpp"

#include <stdexcept>

namespace lowcross {

Partition::Partition(uint32_t n_, uint32_t t_)
    : n(n_), t(t_), part_of(n_, npos) {
    if (n_ == 0 || t_ == 0) throw std::invalid_argument("Partition: n and t must be >= 1");
}

Partition::Partition(uint32_t t_, std::vector<uint32_t> assignment)
    : n(uint32_t(assignment.size())), t(t_), part_of(std::move(assignment)) {
    if (n == 0 || t_ == 0) throw std::invalid_argument("Partition: n and t must be >= 1");
}

std::vector<uint32_t> Partition::part_sizes() const {
    std::vector<uint32_t> sizes(t, 0);
    for (uint32_t p : part_of)
        if (p < t) ++sizes[p];
    return sizes;
}

std::vector<std::vector<uint32_t>> Partition::parts() const {
    std::vector<std::vector<uint32_t>> out(t);
    for (uint32_t e = 0; e < n; ++e)
        if (part_of[e] < t) out[part_of[e]].push_back(e);
    return out;
}

CrossingReport crossing_number(const SetSystem& sys, const Partition& p) {
    if (p.n != sys.n())
        throw std::invalid_argument("crossing_number: partition covers " + std::to_string(p.n) +
                                    " elements, system has " + std::to_string(sys.n()));
    for (uint32_t e = 0; e < p.n; ++e)
        if (p.part_of[e] >= p.t)
            throw std::invalid_argument("crossing_number: element " + std::to_string(e) +
                                        " not assigned to a part");

    const std::vector<uint32_t> sizes = p.part_sizes();
    CrossingReport rep;
    rep.per_range.assign(sys.m(), 0);
    std::vector<uint32_t> in_part(p.t);
    for (uint32_t r = 0; r < sys.m(); ++r) {
        std::fill(in_part.begin(), in_part.end(), 0);
        sys.for_each_member(r, [&](uint32_t e) { ++in_part[p.part_of[e]]; });
        uint32_t crossed = 0;
        for (uint32_t i = 0; i < p.t; ++i)
            if (in_part[i] > 0 && in_part[i] < sizes[i]) ++crossed;
        rep.per_range[r] = crossed;
        if (crossed > rep.kappa) {
            rep.kappa = crossed;
            rep.argmax_range = r;
        }
    }
    return rep;
}

ValidityReport validate_partition(const SetSystem& sys, const Partition& p) {
    ValidityReport rep;
    using Defect = ValidityReport::Defect;

    if (p.n != sys.n()) {
        rep.violations.push_back({Defect::element_count,
                                  "partition has " + std::to_string(p.n) +
                                      " elements, system has " + std::to_string(sys.n())});
        return rep;
    }

    uint32_t uncovered = 0;
    for (uint32_t e = 0; e < p.n; ++e)
        if (p.part_of[e] >= p.t) ++uncovered;
    if (uncovered > 0)
        rep.violations.push_back({Defect::coverage,
                                  std::to_string(uncovered) + " element(s) not assigned to a part"});

    const uint64_t n = p.n, t = p.t;
    const uint64_t base = n / t;  // floor(n/t)
    const std::vector<uint32_t> sizes = p.part_sizes();
    for (uint32_t i = 0; i + 1 < p.t; ++i) {
        if (sizes[i] != base)
            rep.violations.push_back({Defect::part_size,
                                      "part " + std::to_string(i) + " has size " +
                                          std::to_string(sizes[i]) + ", expected " +
                                          std::to_string(base)});
    }
    // Last part: n/t <= |P_t| and (|P_t| <= 2n/t or |P_t| is the exact
    // remainder). Integer comparisons avoid rounding.
    const uint64_t last = sizes[p.t - 1];
    const uint64_t remainder = n - (t - 1) * base;
    if (last * t < n)
        rep.violations.push_back({Defect::last_part_size,
                                  "last part has size " + std::to_string(last) +
                                      ", below n/t"});
    else if (last * t > 2 * n && last != remainder)
        rep.violations.push_back({Defect::last_part_size,
                                  "last part has size " + std::to_string(last) +
                                      ", above 2n/t and not the exact remainder " +
                                      std::to_string(remainder)});
    return rep;
}

}  // namespace lowcross
