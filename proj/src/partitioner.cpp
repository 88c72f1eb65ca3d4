#include "lowcross/partitioner.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace lowcross {

Algo algo_from_string(const std::string& name) {
    if (name == "greedy") return Algo::greedy;
    if (name == "minweight") return Algo::minweight;
    if (name == "partatonce") return Algo::partatonce;
    throw std::invalid_argument("unknown algorithm: " + name +
                                " (expected greedy | minweight | partatonce)");
}

const char* algo_name(Algo a) {
    switch (a) {
        case Algo::greedy: return "greedy";
        case Algo::minweight: return "minweight";
        case Algo::partatonce: return "partatonce";
    }
    return "?";
}

double potential_threshold(uint32_t k, const PotentialConfig& cfg, double sum_pi,
                           uint32_t n0, uint32_t part_index) {
    double base = 2.0 * std::pow(double(k) / double(n0), 1.0 / cfg.d) * sum_pi;
    return cfg.mode == PotentialMode::practical ? base : double(part_index) * base;
}

WeightState::WeightState(const SetSystem& sys)
    : WeightState(sys, std::vector<uint32_t>(sys.m(), 0)) {}

WeightState::WeightState(const SetSystem& sys, std::vector<uint32_t> initial_exponents)
    : sys_(&sys),
      c_(std::move(initial_exponents)),
      pi_(sys.m(), 1.0),
      omega_(sys.n(), 0.0),
      remaining_(sys.n()),
      remaining_count_(sys.n()),
      in_part_(sys.m(), 0),
      crossed_(sys.m(), 0),
      x0_in_(sys.m(), 0) {
    if (c_.size() != sys.m())
        throw std::invalid_argument("WeightState: exponent vector size must equal m");
    remaining_.set_first(sys.n());
}

// Scaled weights for the part about to be built: pi(F) = 2^(c(F) - c_max).
// c only moves in mwu_update, so within a part these are constants; factoring
// out 2^c_max keeps sums finite however large the exponents grow.
namespace {
void refresh_pi(const std::vector<uint32_t>& c, std::vector<double>& pi, double& sum_pi) {
    uint32_t c_max = 0;
    for (uint32_t e : c) c_max = std::max(c_max, e);
    sum_pi = 0.0;
    for (size_t r = 0; r < c.size(); ++r) {
        pi[r] = std::ldexp(1.0, int(c[r]) - int(c_max));
        sum_pi += pi[r];
    }
}
}  // namespace

uint32_t WeightState::pick_x0(SplitMix64& rng) {
    if (remaining_count_ == 0) throw std::logic_error("no elements remaining");
    return remaining_.nth_set(uint32_t(rng.next_below(remaining_count_)));
}

void WeightState::apply_edge_weights(uint32_t range, double delta) {
    const uint64_t* row = sys_->row_words(range);
    const auto rem = remaining_.words();
    const bool x0_in = x0_in_[range];
    for (size_t w = 0; w < rem.size(); ++w) {
        uint64_t bits = rem[w] & (x0_in ? ~row[w] : row[w]);
        while (bits) {
            omega_[(w << 6) + uint32_t(std::countr_zero(bits))] += delta;
            bits &= bits - 1;
        }
    }
}

void WeightState::add_to_part(uint32_t elem, Deduct mode) {
    remaining_.reset(elem);
    --remaining_count_;
    const auto old_size = uint32_t(part_.size());
    part_.push_back(elem);

    const uint32_t m = sys_->m();
    for (uint32_t r = 0; r < m; ++r) {
        if (crossed_[r]) {
            if (sys_->contains(r, elem)) ++in_part_[r];
            continue;  // once crossed, a part stays crossed
        }
        if (sys_->contains(r, elem)) {
            // newly crossed iff the part so far was disjoint from F
            if (in_part_[r] == 0 && old_size >= 1) {
                crossed_[r] = 1;
                if (mode == Deduct::lazy)
                    pending_.push_back(r);
                else if (mode == Deduct::immediate)
                    apply_edge_weights(r, -pi_[r]);
            }
            ++in_part_[r];
        } else if (in_part_[r] == old_size && in_part_[r] > 0) {
            // F contained the whole part and excludes elem
            crossed_[r] = 1;
            if (mode == Deduct::lazy)
                pending_.push_back(r);
            else if (mode == Deduct::immediate)
                apply_edge_weights(r, -pi_[r]);
        }
    }
}

uint32_t WeightState::begin_part(SplitMix64& rng) {
    n0_ = remaining_count_;
    refresh_pi(c_, pi_, sum_pi_);
    x0_ = pick_x0(rng);

    cost_ = 0.0;
    part_.clear();
    pending_.clear();
    samples_.clear();
    std::fill(in_part_.begin(), in_part_.end(), 0);
    std::fill(crossed_.begin(), crossed_.end(), 0);
    cur_viol_practical_ = cur_viol_theoretical_ = 0;
    for (uint32_t r = 0; r < sys_->m(); ++r) x0_in_[r] = sys_->contains(r, x0_);

    add_to_part(x0_, Deduct::none);

    std::fill(omega_.begin(), omega_.end(), 0.0);
    for (uint32_t r = 0; r < sys_->m(); ++r)
        if (pi_[r] != 0.0) apply_edge_weights(r, pi_[r]);
    return x0_;
}

uint32_t WeightState::argmin_omega() const {
    uint32_t best = UINT32_MAX;
    double best_w = 0.0;
    remaining_.for_each_set([&](uint32_t x) {
        if (best == UINT32_MAX || omega_[x] < best_w) {
            best = x;
            best_w = omega_[x];
        }
    });
    if (best == UINT32_MAX) throw std::logic_error("no elements remaining");
    return best;
}

void WeightState::flush_one_pending() {
    uint32_t r = pending_.front();
    pending_.pop_front();
    apply_edge_weights(r, -pi_[r]);
}

uint32_t WeightState::extend_part_greedy(const PotentialConfig& cfg, bool gated) {
    if (remaining_count_ == 0) throw std::logic_error("no elements remaining");
    uint32_t chosen = UINT32_MAX;

    if (!gated) {
        chosen = remaining_.nth_set(0);
    } else {
        const auto k = uint32_t(part_.size() + 1);
        const double bound = potential_threshold(k, cfg, sum_pi_, n0_, part_index_);
        while (true) {
            // first element, in index order, within the potential budget
            uint32_t found = UINT32_MAX;
            const auto rem = remaining_.words();
            for (size_t w = 0; w < rem.size() && found == UINT32_MAX; ++w) {
                uint64_t bits = rem[w];
                while (bits) {
                    auto x = uint32_t((w << 6) + std::countr_zero(bits));
                    if (cost_ + omega_[x] <= bound) {
                        found = x;
                        break;
                    }
                    bits &= bits - 1;
                }
            }
            if (found != UINT32_MAX) {
                chosen = found;
                break;
            }
            if (!pending_.empty()) {
                flush_one_pending();  // one deferred deduction, then rescan
                continue;
            }
            // queue drained and nothing fits: forced progress on the lightest
            chosen = argmin_omega();
            ++cur_viol_practical_;
            double theo = double(part_index_) * bound;
            if (cost_ + omega_[chosen] > theo) ++cur_viol_theoretical_;
            break;
        }
    }

    cost_ += omega_[chosen];
    add_to_part(chosen, Deduct::lazy);
    return chosen;
}

uint32_t WeightState::extend_part_minweight(const PotentialConfig& cfg, bool gated) {
    if (remaining_count_ == 0) throw std::logic_error("no elements remaining");
    const uint32_t chosen = argmin_omega();
    if (gated) {
        const auto k = uint32_t(part_.size() + 1);
        const double bound = potential_threshold(k, cfg, sum_pi_, n0_, part_index_);
        if (cost_ + omega_[chosen] > bound) {
            ++cur_viol_practical_;
            if (cost_ + omega_[chosen] > double(part_index_) * bound) ++cur_viol_theoretical_;
        }
    }
    cost_ += omega_[chosen];
    add_to_part(chosen, Deduct::immediate);
    return chosen;
}

void WeightState::build_part_at_once(uint32_t w, uint32_t target, SplitMix64& rng,
                                     uint32_t threads) {
    if (w < 1) throw std::invalid_argument("build_part_at_once: w must be >= 1");
    if (target < 1 || remaining_count_ < target)
        throw std::invalid_argument("build_part_at_once: part target exceeds remaining elements");

    n0_ = remaining_count_;
    refresh_pi(c_, pi_, sum_pi_);
    x0_ = pick_x0(rng);

    cost_ = 0.0;
    part_.clear();
    pending_.clear();
    std::fill(in_part_.begin(), in_part_.end(), 0);
    std::fill(crossed_.begin(), crossed_.end(), 0);
    cur_viol_practical_ = cur_viol_theoretical_ = 0;
    for (uint32_t r = 0; r < sys_->m(); ++r) x0_in_[r] = sys_->contains(r, x0_);

    add_to_part(x0_, Deduct::none);
    std::fill(omega_.begin(), omega_.end(), 0.0);

    // Draw all range samples up front (single sequential stream), then
    // accumulate in fixed 32-sample slots combined in slot order: the result
    // is bit-identical for every worker count.
    samples_.clear();
    const uint32_t m = sys_->m();
    if (m > 0) {
        std::vector<double> cum(m);
        double acc = 0.0;
        for (uint32_t r = 0; r < m; ++r) {
            acc += pi_[r];
            cum[r] = acc;
        }
        samples_.reserve(w);
        for (uint32_t j = 0; j < w; ++j) {
            double u = rng.next_double() * sum_pi_;
            auto it = std::upper_bound(cum.begin(), cum.end(), u);
            samples_.push_back(std::min(uint32_t(it - cum.begin()), m - 1));
        }

        constexpr uint32_t kSlotSamples = 32;
        const uint32_t slots = (w + kSlotSamples - 1) / kSlotSamples;
        const size_t n = sys_->n();
        slot_buffer_.assign(size_t(slots) * n, 0.0);

        auto run_slot = [&](uint32_t s) {
            double* buf = slot_buffer_.data() + size_t(s) * n;
            const auto rem = remaining_.words();
            const uint32_t lo = s * kSlotSamples, hi = std::min(w, lo + kSlotSamples);
            for (uint32_t j = lo; j < hi; ++j) {
                const uint32_t range = samples_[j];
                const double delta = pi_[range];
                const uint64_t* row = sys_->row_words(range);
                const bool x0_in = x0_in_[range];
                for (size_t wd = 0; wd < rem.size(); ++wd) {
                    uint64_t bits = rem[wd] & (x0_in ? ~row[wd] : row[wd]);
                    while (bits) {
                        buf[(wd << 6) + uint32_t(std::countr_zero(bits))] += delta;
                        bits &= bits - 1;
                    }
                }
            }
        };

        const uint32_t workers = std::max(1u, std::min(threads, slots));
        if (workers == 1) {
            for (uint32_t s = 0; s < slots; ++s) run_slot(s);
        } else {
            std::atomic<uint32_t> next{0};
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (uint32_t i = 0; i < workers; ++i)
                pool.emplace_back([&] {
                    for (uint32_t s = next.fetch_add(1); s < slots; s = next.fetch_add(1))
                        run_slot(s);
                });
            for (auto& th : pool) th.join();
        }
        for (uint32_t s = 0; s < slots; ++s) {
            const double* buf = slot_buffer_.data() + size_t(s) * n;
            for (size_t x = 0; x < n; ++x) omega_[x] += buf[x];
        }
    }

    // target-1 lightest remaining elements, ties to the smallest index
    std::vector<uint32_t> cand;
    cand.reserve(remaining_count_);
    remaining_.for_each_set([&](uint32_t x) { cand.push_back(x); });
    const uint32_t take = target - 1;
    auto lighter = [&](uint32_t a, uint32_t b) {
        return omega_[a] != omega_[b] ? omega_[a] < omega_[b] : a < b;
    };
    if (take < cand.size())
        std::nth_element(cand.begin(), cand.begin() + take, cand.end(), lighter);
    cand.resize(take);
    std::sort(cand.begin(), cand.end());
    for (uint32_t x : cand) add_to_part(x, Deduct::none);
}

void WeightState::take_all_remaining() {
    n0_ = remaining_count_;
    cost_ = 0.0;
    part_.clear();
    pending_.clear();
    samples_.clear();
    std::fill(in_part_.begin(), in_part_.end(), 0);
    std::fill(crossed_.begin(), crossed_.end(), 0);
    cur_viol_practical_ = cur_viol_theoretical_ = 0;

    std::vector<uint32_t> rest;
    rest.reserve(remaining_count_);
    remaining_.for_each_set([&](uint32_t x) { rest.push_back(x); });
    for (uint32_t x : rest) add_to_part(x, Deduct::none);
}

void WeightState::mwu_update() {
    const auto size = uint32_t(part_.size());
    for (uint32_t r = 0; r < sys_->m(); ++r)
        if (in_part_[r] > 0 && in_part_[r] < size) ++c_[r];
    viol_practical_.push_back(cur_viol_practical_);
    viol_theoretical_.push_back(cur_viol_theoretical_);
    cur_viol_practical_ = cur_viol_theoretical_ = 0;
    part_.clear();
    pending_.clear();
    ++part_index_;
}

uint32_t default_w(const SetSystem& sys, uint32_t t) {
    const uint32_t half_t = (t + 1) / 2;
    return sys.label() == "grid" ? std::max(30u, half_t) : std::max(100u, half_t);
}

std::pair<Partition, RunReport> partition(const SetSystem& sys, uint32_t t, Algo algo,
                                          uint64_t seed, const PartitionOptions& opts) {
    const uint32_t n = sys.n();
    if (t < 1 || t > n)
        throw std::invalid_argument("partition: t must satisfy 1 <= t <= n, got t = " +
                                    std::to_string(t));
    if (opts.d < 1.0) throw std::invalid_argument("partition: potential exponent d must be >= 1");
    const uint32_t w = algo == Algo::partatonce ? (opts.w > 0 ? opts.w : default_w(sys, t)) : 0;
    const uint32_t threads = std::max(1u, opts.threads);

    const auto t_start = std::chrono::steady_clock::now();

    const PotentialConfig cfg{opts.d, PotentialMode::practical, t};
    WeightState state(sys);
    SplitMix64 rng(seed);
    const uint32_t target = n / t;
    Partition part(n, t);

    for (uint32_t i = 0; i < t; ++i) {
        const bool last = (i + 1 == t);
        if (algo == Algo::partatonce) {
            if (last)
                state.take_all_remaining();
            else
                state.build_part_at_once(w, target, rng, threads);
        } else {
            state.begin_part(rng);
            const uint32_t goal = last ? state.remaining_count() + 1 : target;
            for (uint32_t k = 2; k <= goal; ++k) {
                const bool gated = k <= target;
                if (algo == Algo::greedy)
                    state.extend_part_greedy(cfg, gated);
                else
                    state.extend_part_minweight(cfg, gated);
            }
        }
        for (uint32_t e : state.current_part()) part.part_of[e] = i;
        state.mwu_update();
    }

    RunReport rep;
    rep.algo = algo;
    rep.seed = seed;
    rep.n = n;
    rep.m = sys.m();
    rep.t = t;
    rep.d = opts.d;
    rep.w = w;
    rep.violations_practical = state.violations_practical();
    rep.violations_theoretical = state.violations_theoretical();
    for (uint32_t v : rep.violations_practical) rep.total_violations_practical += v;
    for (uint32_t v : rep.violations_theoretical) rep.total_violations_theoretical += v;

    const CrossingReport cr = crossing_number(sys, part);
    rep.kappa = cr.kappa;
    rep.argmax_range = cr.argmax_range;

    rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            t_start)
                      .count();
    return {std::move(part), rep};
}

DSearchResult search_d(const SetSystem& sys, uint32_t t, Algo algo, uint64_t seed,
                       std::vector<double> candidates, const PartitionOptions& opts) {
    if (candidates.empty())
        for (double d = 1.0; d <= double(sys.n()); d *= 2.0) candidates.push_back(d);
    std::sort(candidates.begin(), candidates.end());

    DSearchResult best;
    bool have = false;
    for (double d : candidates) {
        PartitionOptions run_opts = opts;
        run_opts.d = d;
        auto [p, rep] = partition(sys, t, algo, seed, run_opts);
        if (!have || rep.kappa < best.report.kappa) {
            best = {d, std::move(p), std::move(rep)};
            have = true;
        }
    }
    return best;
}

}  // namespace lowcross
