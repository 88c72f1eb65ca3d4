#ifndef LOWCROSS_BENCH_HPP
#define LOWCROSS_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lowcross/generators.hpp"
#include "lowcross/partitioner.hpp"

namespace lowcross {

/// Experiment descriptor: one generated instance, a list of algorithms, a list
/// of part counts, and a seed range. Parsed from JSON; unknown keys are a
/// config error.
struct BenchSpec {
    GenSpec gen;
    std::vector<Algo> algos;
    std::vector<uint32_t> t_values;
    uint32_t seeds = 10;      // seeds seed0 .. seed0+seeds-1
    uint64_t seed0 = 1;
    double pot_d = 0.0;       // 0: family default (geometric d, else 2)
    uint32_t w = 0;           // 0: default policy
    uint32_t threads = 1;
    bool epsilon = true;      // also report the partition-based error factor
};

BenchSpec parse_bench_spec(const std::string& json_text);
BenchSpec load_bench_spec(const std::string& path);

/// One CSV data row. Fixed column order:
/// family,n,m,d,t,algo,w,seed,kappa,violations_practical,violations_theoretical,runtime_ms,epsilon
struct BenchRow {
    std::string family;
    uint32_t n = 0, m = 0;
    double d = 0.0;
    uint32_t t = 0;
    std::string algo;
    uint32_t w = 0;
    uint64_t seed = 0;
    double kappa = 0.0;
    double violations_practical = 0.0;
    double violations_theoretical = 0.0;
    double runtime_ms = 0.0;
    double epsilon = 0.0;  // NaN when not measured
};

extern const char* kBenchCsvHeader;

/// Runs the descriptor: one row per (t, algorithm, seed), then one aggregate
/// row per (t, algorithm) holding mean +- population standard deviation.
/// CSV is written to `os` as rows complete; the rows are also returned.
std::vector<BenchRow> run_bench(const BenchSpec& spec, std::ostream& os);

}  // namespace lowcross

#endif
