#include "lowcross/bench.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lowcross/evaluation.hpp"

namespace lowcross {

const char* kBenchCsvHeader =
    "family,n,m,d,t,algo,w,seed,kappa,violations_practical,violations_theoretical,"
    "runtime_ms,epsilon";

BenchSpec parse_bench_spec(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(std::string("bench config: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("bench config: top level must be an object");

    BenchSpec spec;
    bool have_family = false;
    for (auto& [key, value] : j.items()) {
        try {
            if (key == "family") {
                spec.gen.family = value.get<std::string>();
                have_family = true;
            } else if (key == "n") {
                spec.gen.n = value.get<uint32_t>();
            } else if (key == "d") {
                spec.gen.d = value.get<uint32_t>();
            } else if (key == "m") {
                spec.gen.m = value.get<uint32_t>();
            } else if (key == "beta") {
                spec.gen.beta = value.get<double>();
            } else if (key == "r") {
                spec.gen.r = value.get<uint32_t>();
            } else if (key == "order") {
                spec.gen.order = value.get<uint32_t>();
            } else if (key == "circles") {
                spec.gen.circles = value.get<uint32_t>();
            } else if (key == "graph") {
                spec.gen.graph_path = value.get<std::string>();
            } else if (key == "gen_seed") {
                spec.gen.seed = value.get<uint64_t>();
            } else if (key == "algos") {
                for (const auto& a : value) spec.algos.push_back(algo_from_string(a.get<std::string>()));
            } else if (key == "t") {
                for (const auto& t : value) spec.t_values.push_back(t.get<uint32_t>());
            } else if (key == "seeds") {
                spec.seeds = value.get<uint32_t>();
            } else if (key == "seed0") {
                spec.seed0 = value.get<uint64_t>();
            } else if (key == "pot_d") {
                spec.pot_d = value.get<double>();
            } else if (key == "w") {
                spec.w = value.get<uint32_t>();
            } else if (key == "threads") {
                spec.threads = value.get<uint32_t>();
            } else if (key == "epsilon") {
                spec.epsilon = value.get<bool>();
            } else {
                throw std::runtime_error("bench config: unknown field '" + key + "'");
            }
        } catch (const nlohmann::json::exception& e) {
            throw std::runtime_error("bench config: field '" + key + "': " + e.what());
        }
    }
    if (!have_family) throw std::runtime_error("bench config: missing required field 'family'");
    return spec;
}

BenchSpec load_bench_spec(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open for reading: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_bench_spec(buf.str());
}

namespace {

double family_default_d(const GenSpec& gen) {
    if (gen.family == "grid" || gen.family == "random-halfspaces") return double(gen.d);
    return 2.0;
}

std::string fmt_num(double v) {
    if (std::isnan(v)) return "";
    std::ostringstream os;
    if (v == std::floor(v) && std::fabs(v) < 1e15)
        os << int64_t(v);
    else
        os << v;
    return os.str();
}

void write_data_row(std::ostream& os, const BenchRow& row) {
    os << row.family << ',' << row.n << ',' << row.m << ',' << fmt_num(row.d) << ',' << row.t
       << ',' << row.algo << ',' << row.w << ',' << row.seed << ',' << fmt_num(row.kappa) << ','
       << fmt_num(row.violations_practical) << ',' << fmt_num(row.violations_theoretical) << ','
       << row.runtime_ms << ',' << fmt_num(row.epsilon) << '\n';
}

struct MeanStd {
    double mean = 0.0, stddev = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
    MeanStd ms;
    if (xs.empty()) return ms;
    for (double x : xs) ms.mean += x;
    ms.mean /= double(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - ms.mean) * (x - ms.mean);
    ms.stddev = std::sqrt(var / double(xs.size()));  // population stddev
    return ms;
}

std::string fmt_agg(const std::vector<double>& xs) {
    bool any = false;
    for (double x : xs)
        if (!std::isnan(x)) any = true;
    if (!any) return "";
    auto ms = mean_std(xs);
    std::ostringstream os;
    os << ms.mean << "\xC2\xB1" << ms.stddev;  // mean±stddev
    return os.str();
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchSpec& spec, std::ostream& os) {
    os << kBenchCsvHeader << '\n';
    std::vector<BenchRow> rows;
    if (spec.algos.empty() || spec.t_values.empty()) return rows;

    const SetSystem sys = make_system(spec.gen);
    const double pot_d = spec.pot_d >= 1.0 ? spec.pot_d : family_default_d(spec.gen);
    const std::string family = sys.label().empty() ? spec.gen.family : sys.label();

    struct Agg {
        std::vector<double> kappa, vp, vt, ms, eps;
    };

    for (uint32_t t : spec.t_values) {
        for (Algo algo : spec.algos) {
            Agg agg;
            uint32_t w_used = 0;
            for (uint32_t s = 0; s < spec.seeds; ++s) {
                const uint64_t seed = spec.seed0 + s;
                PartitionOptions opts;
                opts.d = pot_d;
                opts.w = spec.w;
                opts.threads = spec.threads;
                auto [part, rep] = partition(sys, t, algo, seed, opts);

                BenchRow row;
                row.family = family;
                row.n = sys.n();
                row.m = sys.m();
                row.d = pot_d;
                row.t = t;
                row.algo = algo_name(algo);
                row.w = rep.w;
                row.seed = seed;
                row.kappa = rep.kappa;
                row.violations_practical = double(rep.total_violations_practical);
                row.violations_theoretical = double(rep.total_violations_theoretical);
                row.runtime_ms = rep.wall_ms;
                row.epsilon = spec.epsilon
                                  ? eps_approx_from_partition(sys, part, seed).epsilon
                                  : std::nan("");
                write_data_row(os, row);
                rows.push_back(row);

                w_used = rep.w;
                agg.kappa.push_back(row.kappa);
                agg.vp.push_back(row.violations_practical);
                agg.vt.push_back(row.violations_theoretical);
                agg.ms.push_back(row.runtime_ms);
                agg.eps.push_back(row.epsilon);
            }
            if (spec.seeds > 0) {
                os << family << ',' << sys.n() << ',' << sys.m() << ',' << fmt_num(pot_d) << ','
                   << t << ',' << algo_name(algo) << ',' << w_used << ",aggregate,"
                   << fmt_agg(agg.kappa) << ',' << fmt_agg(agg.vp) << ',' << fmt_agg(agg.vt)
                   << ',' << fmt_agg(agg.ms) << ',' << fmt_agg(agg.eps) << '\n';
            }
        }
    }
    return rows;
}

}  // namespace lowcross
