#ifndef LOWCROSS_PARTITIONER_HPP
#define LOWCROSS_PARTITIONER_HPP

#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "lowcross/bitset.hpp"
#include "lowcross/partition.hpp"
#include "lowcross/rng.hpp"
#include "lowcross/set_system.hpp"

namespace lowcross {

enum class Algo { greedy, minweight, partatonce };

Algo algo_from_string(const std::string& name);
const char* algo_name(Algo a);

enum class PotentialMode { practical, theoretical };

/// Parameters of the potential-function gate.
struct PotentialConfig {
    double d = 2.0;  // hereditary exponent; >= 1
    PotentialMode mode = PotentialMode::practical;
    uint32_t t = 2;  // target part count
};

/// Weight budget a k-element prefix must stay under: the practical mode is
/// 2 * k^(1/d) * sum_pi / n0^(1/d); the theoretical mode multiplies by the
/// part index i (the two agree while the first part is built).
double potential_threshold(uint32_t k, const PotentialConfig& cfg, double sum_pi,
                           uint32_t n0, uint32_t part_index);

/// Everything the greedy algorithms maintain between and within parts:
/// per-range MWU weights pi(F) = 2^c(F) where c(F) counts parts crossed so
/// far, per-element costs omega(x), and crossing bookkeeping for the part
/// under construction.
///
/// Weights are kept as integer exponents; per part, scaled values
/// 2^(c(F) - c_max) are materialized, so only weight ratios ever enter the
/// arithmetic (uniform power-of-two rescaling cannot change any selection).
class WeightState {
public:
    explicit WeightState(const SetSystem& sys);
    WeightState(const SetSystem& sys, std::vector<uint32_t> initial_exponents);

    // -- part construction ---------------------------------------------------

    /// Opens part i: snapshots n0, picks x0 uniformly from the remaining
    /// elements, and seeds omega(x) with the total weight of ranges crossing
    /// the edge {x0, x}. Returns x0. Throws when nothing remains.
    uint32_t begin_part(SplitMix64& rng);

    /// Adds the first element (in index order, lazily flushing the pending
    /// deduction queue range by range) whose cost + omega fits the practical
    /// bound; when the queue drains without a fit, records a violation and
    /// adds the minimum-omega element. `gated` off skips both the bound and
    /// the violation counter (used past floor(n/t) in the final part).
    uint32_t extend_part_greedy(const PotentialConfig& cfg, bool gated = true);

    /// Adds the element of globally minimal omega (ties to the smallest
    /// index); a violation is recorded when even that element exceeds the
    /// bound, but it is added regardless.
    uint32_t extend_part_minweight(const PotentialConfig& cfg, bool gated = true);

    /// Builds one complete part of `target` elements: picks x0, samples w
    /// ranges proportionally to pi, scores the remaining elements with the
    /// sampled weights, and takes the target-1 lightest (ties to the smallest
    /// index). The sampled accumulation runs in fixed 32-sample slots combined
    /// in slot order, so any worker count produces identical output.
    void build_part_at_once(uint32_t w, uint32_t target, SplitMix64& rng, uint32_t threads = 1);

    /// Moves every remaining element into the current (final) part.
    void take_all_remaining();

    /// Closes the current part: doubles pi(F) for every range crossing it
    /// (c(F) += 1), removes its elements from the pool, archives the
    /// violation counters, and advances the part index.
    void mwu_update();

    // -- introspection -------------------------------------------------------

    uint32_t remaining_count() const { return remaining_count_; }
    const DynamicBitset& remaining() const { return remaining_; }
    uint32_t part_index() const { return part_index_; }          // 1-based
    uint32_t snapshot_size() const { return n0_; }               // n0 of Eq. 6
    double cost() const { return cost_; }
    double sum_pi() const { return sum_pi_; }
    std::span<const uint32_t> current_part() const { return part_; }
    std::span<const uint32_t> exponents() const { return c_; }
    std::span<const double> pi_scaled() const { return pi_; }
    std::span<const double> omega() const { return omega_; }
    const std::deque<uint32_t>& pending_deductions() const { return pending_; }
    std::span<const uint32_t> last_samples() const { return samples_; }

    /// Violation counts per closed part, index = part - 1.
    const std::vector<uint32_t>& violations_practical() const { return viol_practical_; }
    const std::vector<uint32_t>& violations_theoretical() const { return viol_theoretical_; }

private:
    enum class Deduct { none, immediate, lazy };

    uint32_t pick_x0(SplitMix64& rng);
    void add_to_part(uint32_t elem, Deduct mode);
    void apply_edge_weights(uint32_t range, double delta);
    uint32_t argmin_omega() const;
    void flush_one_pending();

    const SetSystem* sys_;
    std::vector<uint32_t> c_;       // exponent per range: parts crossed so far
    std::vector<double> pi_;        // 2^(c - c_max), refreshed per part
    double sum_pi_ = 0.0;
    std::vector<double> omega_;
    DynamicBitset remaining_;
    uint32_t remaining_count_;
    uint32_t part_index_ = 1;
    uint32_t n0_ = 0;
    uint32_t x0_ = 0;
    double cost_ = 0.0;
    std::vector<uint32_t> part_;
    std::vector<uint32_t> in_part_;     // per range: members in current part
    std::vector<uint8_t> crossed_;      // per range: crosses current part
    std::vector<uint8_t> x0_in_;        // per range: contains x0
    std::deque<uint32_t> pending_;      // deductions not yet applied (greedy)
    std::vector<uint32_t> samples_;     // ranges sampled by the last part-at-once
    uint32_t cur_viol_practical_ = 0;
    uint32_t cur_viol_theoretical_ = 0;
    std::vector<uint32_t> viol_practical_;
    std::vector<uint32_t> viol_theoretical_;
    std::vector<double> slot_buffer_;   // part-at-once slot accumulators
};

/// One partitioning run's outcome and bookkeeping.
struct RunReport {
    uint32_t kappa = 0;  // recomputed via crossing_number, not MWU bookkeeping
    uint32_t argmax_range = 0;
    std::vector<uint32_t> violations_practical;   // per part
    std::vector<uint32_t> violations_theoretical; // per part
    uint64_t total_violations_practical = 0;
    uint64_t total_violations_theoretical = 0;
    double wall_ms = 0.0;
    Algo algo = Algo::minweight;
    uint64_t seed = 0;
    uint32_t n = 0, m = 0, t = 0;
    double d = 2.0;
    uint32_t w = 0;  // samples per part (part-at-once only)
};

struct PartitionOptions {
    double d = 2.0;      // potential exponent
    uint32_t w = 0;      // 0: max(30, ceil(t/2)) on grid systems, max(100, ceil(t/2)) otherwise
    uint32_t threads = 1;
};

/// Runs the chosen algorithm: t-1 parts of size floor(n/t) plus a final part
/// holding the remainder. Requires 1 <= t <= n.
std::pair<Partition, RunReport> partition(const SetSystem& sys, uint32_t t, Algo algo,
                                          uint64_t seed, const PartitionOptions& opts = {});

/// Resolved default sample count for part-at-once.
uint32_t default_w(const SetSystem& sys, uint32_t t);

struct DSearchResult {
    double best_d = 1.0;
    Partition part;
    RunReport report;
};

/// Runs `partition` once per candidate exponent (same seed) and keeps the
/// smallest crossing number, ties to the smaller d. Empty candidate list means
/// the default ladder: powers of two from 1 to n.
DSearchResult search_d(const SetSystem& sys, uint32_t t, Algo algo, uint64_t seed,
                       std::vector<double> candidates = {}, const PartitionOptions& opts = {});

}  // namespace lowcross

#endif
