#ifndef LOWCROSS_PARTITION_HPP
#define LOWCROSS_PARTITION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lowcross/set_system.hpp"

namespace lowcross {

/// Assignment of every element to one of t parts. The struct itself is plain
/// data and may hold an invalid assignment (validate_partition diagnoses it);
/// everything produced by the partitioner satisfies the balanced-size rule:
/// parts 0..t-2 of size floor(n/t), the last part takes the remainder.
struct Partition {
    static constexpr uint32_t npos = UINT32_MAX;  // element not assigned

    uint32_t n = 0;
    uint32_t t = 0;
    std::vector<uint32_t> part_of;  // length n, values in [0, t) or npos

    Partition() = default;

    /// All elements unassigned.
    Partition(uint32_t n_, uint32_t t_);

    /// From an explicit assignment (n deduced from the vector length).
    Partition(uint32_t t_, std::vector<uint32_t> assignment);

    /// Sizes of parts 0..t-1; out-of-range / unassigned entries are skipped.
    std::vector<uint32_t> part_sizes() const;

    /// Member lists per part, each sorted by element index.
    std::vector<std::vector<uint32_t>> parts() const;

    bool operator==(const Partition&) const = default;
};

struct CrossingReport {
    uint32_t kappa = 0;               // max over ranges of parts crossed
    std::vector<uint32_t> per_range;  // parts crossed, per range
    uint32_t argmax_range = 0;        // a range attaining kappa (0 when m = 0)
};

/// kappa_F(P): per-range count of crossed parts and their maximum.
/// Throws if the partition does not cover exactly the system's elements.
CrossingReport crossing_number(const SetSystem& sys, const Partition& p);

struct ValidityReport {
    enum class Defect {
        element_count,   // partition length != system n
        part_size,       // some part among the first t-1 is not floor(n/t)
        last_part_size,  // last part outside its allowed band
        coverage,        // an element unassigned or with part id >= t
    };
    struct Violation {
        Defect kind;
        std::string detail;
    };
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

/// Diagnoses the balanced-partition conditions. The last part must hold at
/// least floor(n/t) elements and at most max(2n/t, the exact remainder
/// n - (t-1)*floor(n/t)); for t greater than about sqrt(n) the remainder
/// exceeds 2n/t, so an exact-remainder last part is always accepted.
ValidityReport validate_partition(const SetSystem& sys, const Partition& p);

}  // namespace lowcross

#endif
