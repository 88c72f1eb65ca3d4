#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "lowcross/generators.hpp"
#include "lowcross/partitioner.hpp"
#include "oracles.hpp"

using namespace lowcross;

namespace {

// From-scratch evaluation of the step cost: for every remaining element x,
// the total weight of ranges crossing {x0, x} but not the prefix. One pass per
// step, amortized per range.
struct OmegaOracle {
    std::vector<std::vector<uint32_t>> members;

    explicit OmegaOracle(const SetSystem& sys) {
        for (uint32_t r = 0; r < sys.m(); ++r) members.push_back(sys.range_members(r));
    }

    std::vector<double> eval(const WeightState& st) const {
        const auto part = st.current_part();
        const uint32_t x0 = part.front();
        const std::vector<uint32_t> prefix(part.begin(), part.end());
        const auto pi = st.pi_scaled();

        std::vector<char> prefix_crossed(members.size());
        for (size_t r = 0; r < members.size(); ++r)
            prefix_crossed[r] = prefix.size() >= 2 && oracles::naive_crosses(members[r], prefix);

        std::vector<double> omega;
        st.remaining().for_each_set([&](uint32_t x) {
            double total = 0.0;
            for (size_t r = 0; r < members.size(); ++r) {
                if (prefix_crossed[r]) continue;
                if (oracles::contains(members[r], x0) != oracles::contains(members[r], x))
                    total += pi[r];
            }
            omega.push_back(total);
        });
        return omega;
    }

    // maintained omega, adjusted for deductions still sitting in the lazy
    // queue (greedy defers them by design)
    std::vector<double> maintained(const WeightState& st) const {
        const uint32_t x0 = st.current_part().front();
        const auto pi = st.pi_scaled();
        std::vector<double> vals;
        st.remaining().for_each_set([&](uint32_t x) {
            double v = st.omega()[x];
            for (uint32_t r : st.pending_deductions())
                if (oracles::contains(members[r], x0) != oracles::contains(members[r], x))
                    v -= pi[r];
            vals.push_back(v);
        });
        return vals;
    }
};

// Replicates the partition() driver so tests can interleave checks.
template <typename PerStep, typename PerPart>
void drive(const SetSystem& sys, uint32_t t, Algo algo, uint64_t seed, double d, uint32_t w,
           PerStep&& per_step, PerPart&& per_part) {
    WeightState st(sys);
    SplitMix64 rng(seed);
    const uint32_t target = sys.n() / t;
    const PotentialConfig cfg{d, PotentialMode::practical, t};
    for (uint32_t i = 0; i < t; ++i) {
        const bool last = i + 1 == t;
        if (algo == Algo::partatonce) {
            if (last)
                st.take_all_remaining();
            else
                st.build_part_at_once(w, target, rng, 1);
            per_step(st);
        } else {
            st.begin_part(rng);
            per_step(st);
            const uint32_t goal = last ? st.remaining_count() + 1 : target;
            for (uint32_t k = 2; k <= goal; ++k) {
                if (algo == Algo::greedy)
                    st.extend_part_greedy(cfg, k <= target);
                else
                    st.extend_part_minweight(cfg, k <= target);
                per_step(st);
            }
        }
        per_part(st, i);
        st.mwu_update();
    }
}

}  // namespace

TEST_CASE("potential threshold: full prefix costs twice the total weight") {
    PotentialConfig cfg{3.0, PotentialMode::practical, 8};
    CHECK(potential_threshold(100, cfg, 10.0, 100, 1) == 20.0);
}

TEST_CASE("potential threshold: worked example") {
    PotentialConfig cfg{2.0, PotentialMode::practical, 4};
    CHECK(potential_threshold(25, cfg, 10.0, 100, 1) == 10.0);
}

TEST_CASE("potential threshold: theoretical mode scales with the part index") {
    PotentialConfig prac{2.0, PotentialMode::practical, 4};
    PotentialConfig theo{2.0, PotentialMode::theoretical, 4};
    CHECK(potential_threshold(25, theo, 10.0, 100, 1) == potential_threshold(25, prac, 10.0, 100, 1));
    CHECK(potential_threshold(25, theo, 10.0, 100, 3) ==
          3.0 * potential_threshold(25, prac, 10.0, 100, 1));
}

TEST_CASE("begin part: no ranges, no weight") {
    SetSystem sys(8, {});
    WeightState st(sys);
    SplitMix64 rng(4);
    st.begin_part(rng);
    st.remaining().for_each_set([&](uint32_t x) { CHECK(st.omega()[x] == 0.0); });
}

TEST_CASE("begin part: single range charges exactly the far side of x0") {
    SetSystem sys(8, {{0, 1, 2, 3}});
    // hunt a seed whose x0 lands inside the range
    for (uint64_t seed = 1;; ++seed) {
        WeightState st(sys);
        SplitMix64 rng(seed);
        uint32_t x0 = st.begin_part(rng);
        if (!sys.contains(0, x0)) continue;
        st.remaining().for_each_set(
            [&](uint32_t x) { CHECK(st.omega()[x] == (sys.contains(0, x) ? 0.0 : 1.0)); });
        break;
    }
}

TEST_CASE("begin part: matches the closed form on a random 10x5 instance") {
    SetSystem sys = oracles::random_system(10, 5, 77);
    OmegaOracle oracle(sys);
    WeightState st(sys);
    SplitMix64 rng(3);
    uint32_t x0 = st.begin_part(rng);
    auto expected = oracle.eval(st);
    size_t i = 0;
    st.remaining().for_each_set([&](uint32_t x) {
        CHECK(st.omega()[x] == expected[i]);
        CHECK(st.omega()[x] == oracles::naive_omega(sys, {st.pi_scaled().begin(),
                                                          st.pi_scaled().end()},
                                                    x0, {x0}, x));
        ++i;
    });
    CHECK_THROWS_AS(
        [&] {
            SetSystem tiny(1, {});
            WeightState s2(tiny);
            SplitMix64 r2(1);
            s2.begin_part(r2);  // consumes the only element
            s2.begin_part(r2);  // nothing left
        }(),
        std::logic_error);
}

TEST_CASE("greedy: no ranges means cost stays zero and scan order wins") {
    SetSystem sys(12, {});
    auto [part, rep] = partition(sys, 3, Algo::greedy, 5);
    CHECK(rep.total_violations_practical == 0);
    CHECK(rep.kappa == 0);
    CHECK(validate_partition(sys, part).valid());
}

TEST_CASE("trivial ranges never trip the potential gate") {
    // every range is empty or full, so nothing ever crosses and omega is 0
    SetSystem sys(16, {{}, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}, {}});
    for (Algo algo : {Algo::greedy, Algo::minweight}) {
        auto [part, rep] = partition(sys, 4, algo, 9);
        CHECK(rep.total_violations_practical == 0);
        CHECK(rep.total_violations_theoretical == 0);
        CHECK(rep.kappa == 0);
    }
}

TEST_CASE("greedy: maintained omega equals the closed form at every step (12x6)") {
    SetSystem sys = oracles::random_system(12, 6, 2025);
    OmegaOracle oracle(sys);
    drive(
        sys, 3, Algo::greedy, 8, 2.0, 0,
        [&](const WeightState& st) { CHECK(oracle.maintained(st) == oracle.eval(st)); },
        [](const WeightState&, uint32_t) {});
}

TEST_CASE("minweight: selection sequence equals the exhaustive argmin rescan (12x6)") {
    SetSystem sys = oracles::random_system(12, 6, 31);
    OmegaOracle oracle(sys);
    WeightState st(sys);
    SplitMix64 rng(6);
    const PotentialConfig cfg{2.0, PotentialMode::practical, 3};

    for (uint32_t i = 0; i < 3; ++i) {
        st.begin_part(rng);
        const uint32_t goal = i == 2 ? st.remaining_count() + 1 : 4;
        for (uint32_t k = 2; k <= goal; ++k) {
            // oracle: from-scratch omega, argmin with ties to smallest index
            auto expected_vals = oracle.eval(st);
            std::vector<uint32_t> rem;
            st.remaining().for_each_set([&](uint32_t x) { rem.push_back(x); });
            uint32_t want = rem[0];
            double best = expected_vals[0];
            for (size_t j = 1; j < rem.size(); ++j)
                if (expected_vals[j] < best) {
                    best = expected_vals[j];
                    want = rem[j];
                }
            CHECK(st.extend_part_minweight(cfg, k <= 4) == want);
        }
        st.mwu_update();
    }
}

TEST_CASE("minweight: equal weights select the smallest index") {
    SetSystem sys(6, {});  // omega identically zero
    WeightState st(sys);
    SplitMix64 rng(2);
    uint32_t x0 = st.begin_part(rng);
    const PotentialConfig cfg{2.0, PotentialMode::practical, 1};
    uint32_t first = st.extend_part_minweight(cfg);
    CHECK(first == (x0 == 0 ? 1 : 0));
}

TEST_CASE("part at once: part size is exactly floor(n/t) and runs repeat bit-identically") {
    SetSystem sys = oracles::random_system(40, 12, 5);
    PartitionOptions opts;
    opts.w = 16;
    auto [p1, r1] = partition(sys, 6, Algo::partatonce, 11, opts);
    auto [p2, r2] = partition(sys, 6, Algo::partatonce, 11, opts);
    CHECK(p1.part_of == p2.part_of);
    CHECK(r1.kappa == r2.kappa);
    auto sizes = p1.part_sizes();
    for (uint32_t i = 0; i + 1 < 6; ++i) CHECK(sizes[i] == 40 / 6);
    CHECK(sizes[5] == 40 - 5 * (40 / 6));
    CHECK(validate_partition(sys, p1).valid());
}

TEST_CASE("part at once: omega is exactly the sampled weight sum") {
    SetSystem sys = oracles::random_system(30, 10, 91);
    OmegaOracle oracle(sys);
    WeightState st(sys);
    SplitMix64 rng(17);
    st.build_part_at_once(24, 5, rng, 1);

    const uint32_t x0 = st.current_part().front();
    const auto pi = st.pi_scaled();
    st.remaining().for_each_set([&](uint32_t x) {
        double expected = 0.0;
        for (uint32_t s : st.last_samples())
            if (oracles::contains(oracle.members[s], x0) != oracles::contains(oracle.members[s], x))
                expected += pi[s];
        CHECK(st.omega()[x] == expected);
    });
    CHECK(st.current_part().size() == 5);
    CHECK_THROWS_AS(st.build_part_at_once(0, 5, rng, 1), std::invalid_argument);
}

TEST_CASE("part at once: equal weights sample ranges uniformly") {
    SetSystem sys = oracles::random_system(64, 8, 1);
    WeightState st(sys);
    SplitMix64 rng(12);
    const uint32_t w = 6400;
    st.build_part_at_once(w, 2, rng, 1);
    REQUIRE(st.last_samples().size() == w);
    std::vector<uint32_t> counts(8, 0);
    for (uint32_t s : st.last_samples()) ++counts[s];
    for (uint32_t r = 0; r < 8; ++r) {
        CHECK(counts[r] > 800 - 140);  // ~5 sigma around w/m
        CHECK(counts[r] < 800 + 140);
    }
}

TEST_CASE("part at once: identical output under 1, 4 and 8 workers") {
    SetSystem sys = gen_grid(512, 2, 3);
    Partition base;
    for (uint32_t workers : {1u, 4u, 8u}) {
        PartitionOptions opts;
        opts.threads = workers;
        auto [p, rep] = partition(sys, 16, Algo::partatonce, 7, opts);
        if (workers == 1)
            base = p;
        else
            CHECK(p.part_of == base.part_of);
    }
}

TEST_CASE("mwu update: only crossing ranges gain weight") {
    // empty range and full range never cross; singletons cross iff inside
    SetSystem sys(6, {{}, {0, 1, 2, 3, 4, 5}, {0}, {1}, {2}, {3}, {4}, {5}});
    WeightState st(sys);
    SplitMix64 rng(5);
    const PotentialConfig cfg{2.0, PotentialMode::practical, 3};
    st.begin_part(rng);
    st.extend_part_minweight(cfg);
    std::vector<uint32_t> part(st.current_part().begin(), st.current_part().end());
    REQUIRE(part.size() == 2);
    st.mwu_update();

    CHECK(st.exponents()[0] == 0);  // disjoint from the part
    CHECK(st.exponents()[1] == 0);  // contains the whole part
    for (uint32_t e = 0; e < 6; ++e) {
        bool in_part = e == part[0] || e == part[1];
        CHECK(st.exponents()[2 + e] == (in_part ? 1 : 0));
    }
}

TEST_CASE("partition: t = 1 gives one part with kappa at most 1") {
    SetSystem sys = oracles::random_system(20, 6, 3);
    for (Algo algo : {Algo::greedy, Algo::minweight, Algo::partatonce}) {
        auto [part, rep] = partition(sys, 1, algo, 2);
        CHECK(part.part_sizes() == std::vector<uint32_t>{20});
        CHECK(rep.kappa <= 1);
        CHECK(validate_partition(sys, part).valid());
    }
    // with a proper range, the single part is crossed
    SetSystem proper(4, {{1, 2}});
    auto [part, rep] = partition(proper, 1, Algo::minweight, 2);
    CHECK(rep.kappa == 1);
}

TEST_CASE("partition: t = n gives singletons and kappa 0") {
    SetSystem sys = oracles::random_system(12, 6, 4);
    for (Algo algo : {Algo::greedy, Algo::minweight, Algo::partatonce}) {
        auto [part, rep] = partition(sys, 12, algo, 3);
        CHECK(rep.kappa == 0);
        auto sizes = part.part_sizes();
        for (uint32_t s : sizes) CHECK(s == 1);
    }
}

TEST_CASE("partition: argument errors") {
    SetSystem sys = oracles::random_system(8, 2, 1);
    CHECK_THROWS_AS(partition(sys, 0, Algo::minweight, 1), std::invalid_argument);
    CHECK_THROWS_AS(partition(sys, 9, Algo::minweight, 1), std::invalid_argument);
    PartitionOptions opts;
    opts.d = 0.5;
    CHECK_THROWS_AS(partition(sys, 2, Algo::minweight, 1, opts), std::invalid_argument);
}

TEST_CASE("partition: identical seed, identical run") {
    SetSystem sys = gen_grid(256, 2, 9);
    for (Algo algo : {Algo::greedy, Algo::minweight, Algo::partatonce}) {
        auto [p1, r1] = partition(sys, 16, algo, 42);
        auto [p2, r2] = partition(sys, 16, algo, 42);
        CHECK(p1.part_of == p2.part_of);
        CHECK(r1.kappa == r2.kappa);
        CHECK(r1.violations_practical == r2.violations_practical);
        CHECK(r1.violations_theoretical == r2.violations_theoretical);
    }
}

TEST_CASE("uniform power-of-two weight scaling changes no selection") {
    SetSystem sys = oracles::random_system(24, 10, 13);
    std::vector<uint32_t> base(10);
    for (uint32_t r = 0; r < 10; ++r) base[r] = r % 3;
    std::vector<uint32_t> scaled = base;
    for (auto& c : scaled) c += 7;  // multiply every pi by 2^7

    for (bool minweight : {true, false}) {
        WeightState a(sys, base), b(sys, scaled);
        SplitMix64 rng_a(21), rng_b(21);
        const PotentialConfig cfg{2.0, PotentialMode::practical, 4};
        CHECK(a.begin_part(rng_a) == b.begin_part(rng_b));
        for (uint32_t k = 2; k <= 6; ++k) {
            if (minweight)
                CHECK(a.extend_part_minweight(cfg) == b.extend_part_minweight(cfg));
            else
                CHECK(a.extend_part_greedy(cfg) == b.extend_part_greedy(cfg));
        }
    }

    // part-at-once ordering by omega is scale-invariant too
    WeightState a(sys, base), b(sys, scaled);
    SplitMix64 rng_a(33), rng_b(33);
    a.build_part_at_once(12, 6, rng_a, 1);
    b.build_part_at_once(12, 6, rng_b, 1);
    CHECK(std::vector<uint32_t>(a.current_part().begin(), a.current_part().end()) ==
          std::vector<uint32_t>(b.current_part().begin(), b.current_part().end()));
}

TEST_CASE("property suite: omega, exponents, validity on random small instances") {
    SplitMix64 meta(987);
    for (int round = 0; round < 200; ++round) {
        const auto n = uint32_t(2 + meta.next_below(63));        // n <= 64
        const auto m = uint32_t(meta.next_below(65));            // m <= 64
        const auto t = uint32_t(1 + meta.next_below(n));
        const Algo algo = round % 3 == 0   ? Algo::greedy
                          : round % 3 == 1 ? Algo::minweight
                                           : Algo::partatonce;
        const double d = 1.0 + double(meta.next_below(4));
        const auto w = uint32_t(1 + meta.next_below(48));
        const uint64_t seed = meta.next();

        SetSystem sys = oracles::random_system(n, m, meta.next());
        OmegaOracle oracle(sys);

        std::vector<std::vector<uint32_t>> finished;
        Partition assembled(n, t);

        drive(
            sys, t, algo, seed, d, w,
            [&](const WeightState& st) {
                if (algo == Algo::partatonce) {
                    // omega equals the sampled-range weight sum
                    const auto part = st.current_part();
                    if (part.empty()) return;
                    const uint32_t x0 = part.front();
                    const auto pi = st.pi_scaled();
                    st.remaining().for_each_set([&](uint32_t x) {
                        double expected = 0.0;
                        for (uint32_t s : st.last_samples())
                            if (oracles::contains(oracle.members[s], x0) !=
                                oracles::contains(oracle.members[s], x))
                                expected += pi[s];
                        CHECK(st.omega()[x] == expected);
                    });
                } else {
                    CHECK(oracle.maintained(st) == oracle.eval(st));
                }
            },
            [&](const WeightState& st, uint32_t part_id) {
                finished.emplace_back(st.current_part().begin(), st.current_part().end());
                for (uint32_t e : st.current_part()) assembled.part_of[e] = part_id;

                // exponents equal brute-force per-range crossing counts of the
                // parts built so far
                for (uint32_t r = 0; r < sys.m(); ++r) {
                    uint32_t crossings = 0;
                    for (const auto& part : finished)
                        if (oracles::naive_crosses(oracle.members[r], part)) ++crossings;
                    // c is updated in mwu_update; account for the open part
                    uint32_t c_now = st.exponents()[r];
                    if (oracles::naive_crosses(oracle.members[r],
                                               {st.current_part().begin(),
                                                st.current_part().end()}))
                        ++c_now;  // not yet folded in
                    CHECK(c_now == crossings);
                }
            });

        CHECK(validate_partition(sys, assembled).valid());
        auto per_range = oracles::naive_per_range_crossings(sys, assembled);
        auto rep = crossing_number(sys, assembled);
        CHECK(rep.per_range == per_range);
    }
}

TEST_CASE("exponents equal per-range crossing counts after full runs") {
    for (Algo algo : {Algo::greedy, Algo::minweight, Algo::partatonce}) {
        SetSystem sys = gen_grid(128, 2, 4);
        WeightState st(sys);
        SplitMix64 rng(19);
        const uint32_t t = 8, target = 128 / 8;
        const PotentialConfig cfg{2.0, PotentialMode::practical, t};
        Partition p(128, t);
        for (uint32_t i = 0; i < t; ++i) {
            if (algo == Algo::partatonce) {
                if (i + 1 == t)
                    st.take_all_remaining();
                else
                    st.build_part_at_once(8, target, rng, 1);
            } else {
                st.begin_part(rng);
                const uint32_t goal = i + 1 == t ? st.remaining_count() + 1 : target;
                for (uint32_t k = 2; k <= goal; ++k)
                    algo == Algo::greedy ? st.extend_part_greedy(cfg, k <= target)
                                         : st.extend_part_minweight(cfg, k <= target);
            }
            for (uint32_t e : st.current_part()) p.part_of[e] = i;
            st.mwu_update();
        }
        auto rep = crossing_number(sys, p);
        for (uint32_t r = 0; r < sys.m(); ++r) CHECK(st.exponents()[r] == rep.per_range[r]);
    }
}

TEST_CASE("minweight violates the practical potential less than greedy on grids") {
    SetSystem sys = gen_grid(2048, 2, 12);
    double greedy_total = 0, minweight_total = 0;
    for (uint64_t seed = 1; seed <= 10; ++seed) {
        PartitionOptions opts;
        opts.d = 2.0;
        greedy_total += double(partition(sys, 256, Algo::greedy, seed, opts).second
                                   .total_violations_practical);
        minweight_total += double(partition(sys, 256, Algo::minweight, seed, opts).second
                                      .total_violations_practical);
    }
    CHECK(minweight_total < greedy_total);
}

TEST_CASE("violation counts never exceed the part size") {
    SetSystem sys = gen_grid(512, 2, 2);
    for (Algo algo : {Algo::greedy, Algo::minweight}) {
        auto [part, rep] = partition(sys, 32, algo, 5);
        const uint32_t target = 512 / 32;
        for (uint32_t v : rep.violations_practical) CHECK(v <= target);
        for (uint32_t i = 0; i < rep.violations_practical.size(); ++i)
            CHECK(rep.violations_theoretical[i] <= rep.violations_practical[i]);
    }
}

TEST_CASE("default sample count policy: grid floor 30, otherwise 100") {
    SetSystem grid = gen_grid(64, 2, 1);
    SetSystem plane = gen_projective_plane(3);
    CHECK(default_w(grid, 128) == 64);
    CHECK(default_w(grid, 16) == 30);
    CHECK(default_w(grid, 61) == 31);  // ceil(61/2)
    CHECK(default_w(plane, 12) == 100);
    CHECK(default_w(plane, 300) == 150);
}

TEST_CASE("search d: single candidate comes back unchanged") {
    SetSystem sys = gen_grid(128, 2, 6);
    auto res = search_d(sys, 8, Algo::minweight, 3, {2.0});
    auto [p, rep] = partition(sys, 8, Algo::minweight, 3, {.d = 2.0});
    CHECK(res.best_d == 2.0);
    CHECK(res.report.kappa == rep.kappa);
    CHECK(res.part.part_of == p.part_of);
}

TEST_CASE("search d: a superset of candidates never does worse") {
    SetSystem sys = gen_grid(128, 2, 6);
    auto narrow = search_d(sys, 8, Algo::minweight, 4, {2.0});
    auto wide = search_d(sys, 8, Algo::minweight, 4, {2.0, 4.0});
    CHECK(wide.report.kappa <= narrow.report.kappa);
}

TEST_CASE("search d: beats or ties the fixed ambient dimension on grids") {
    SetSystem sys = gen_grid(256, 2, 8);
    auto fixed = partition(sys, 16, Algo::minweight, 5, {.d = 2.0});
    auto searched = search_d(sys, 16, Algo::minweight, 5, {1.5, 2.0, 4.0});
    CHECK(searched.report.kappa <= fixed.second.kappa);
}

TEST_CASE("search d: default ladder has about log2(n) rungs") {
    SetSystem sys = oracles::random_system(64, 10, 2);
    auto res = search_d(sys, 4, Algo::minweight, 9);
    CHECK(res.best_d >= 1.0);
    CHECK(res.best_d <= 64.0);
}
