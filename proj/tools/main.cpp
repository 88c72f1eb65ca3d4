// lowcross: build, partition, and evaluate low-crossing set systems.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include "lowcross/bench.hpp"
#include "lowcross/evaluation.hpp"
#include "lowcross/generators.hpp"
#include "lowcross/io.hpp"
#include "lowcross/partitioner.hpp"

using namespace lowcross;

namespace {

void append_report_row(const std::string& path, const SetSystem& sys, const RunReport& rep,
                       double epsilon) {
    const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream f(path, std::ios::app);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    if (fresh) f << kBenchCsvHeader << '\n';
    f << (sys.label().empty() ? "unknown" : sys.label()) << ',' << rep.n << ',' << rep.m << ','
      << rep.d << ',' << rep.t << ',' << algo_name(rep.algo) << ',' << rep.w << ',' << rep.seed
      << ',' << rep.kappa << ',' << rep.total_violations_practical << ','
      << rep.total_violations_theoretical << ',' << rep.wall_ms << ',';
    if (!std::isnan(epsilon)) f << epsilon;
    f << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"low-crossing partitions for finite set systems"};
    app.require_subcommand(1);

    // ---- gen ----------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a set system and write it to a file");
    GenSpec spec;
    std::string gen_out;
    gen->add_option("--family", spec.family,
                    "grid | random-halfspaces | power-law | graph-neighborhood | "
                    "projective-plane | circle-disks")
        ->required();
    auto* n_opt = gen->add_option("--n", spec.n, "element count");
    auto* d_opt = gen->add_option("--d", spec.d, "geometric dimension");
    auto* m_opt = gen->add_option("--m", spec.m, "range count");
    auto* beta_opt = gen->add_option("--beta", spec.beta, "power-law exponent");
    auto* r_opt = gen->add_option("--r", spec.r, "neighborhood radius");
    auto* order_opt = gen->add_option("--order", spec.order, "projective plane order (prime)");
    auto* circles_opt = gen->add_option("--circles", spec.circles, "concentric circle count");
    auto* graph_opt = gen->add_option("--graph", spec.graph_path, "SNAP edge-list file");
    auto* seed_opt = gen->add_option("--seed", spec.seed, "PRNG seed");
    gen->add_option("--out", gen_out, "output set-system file")->required();

    gen->callback([&] {
        struct Rule {
            std::string family;
            std::vector<CLI::Option*> required, allowed;
        };
        const std::vector<Rule> rules = {
            {"grid", {n_opt, d_opt, seed_opt}, {}},
            {"random-halfspaces", {n_opt, d_opt, m_opt, seed_opt}, {}},
            {"power-law", {n_opt, beta_opt, seed_opt}, {r_opt}},
            {"graph-neighborhood", {graph_opt, r_opt}, {}},
            {"projective-plane", {order_opt}, {}},
            {"circle-disks", {n_opt, circles_opt, m_opt, seed_opt}, {}},
        };
        const std::vector<CLI::Option*> all = {n_opt,     d_opt,       m_opt,     beta_opt,
                                               r_opt,     order_opt,   circles_opt, graph_opt,
                                               seed_opt};
        const Rule* rule = nullptr;
        for (const auto& r : rules)
            if (r.family == spec.family) rule = &r;
        if (!rule) throw CLI::ValidationError("--family", "unknown family: " + spec.family);
        for (auto* opt : rule->required)
            if (!opt->count())
                throw CLI::ValidationError(spec.family, "missing required flag " +
                                                            opt->get_name());
        for (auto* opt : all) {
            bool ok = std::count(rule->required.begin(), rule->required.end(), opt) ||
                      std::count(rule->allowed.begin(), rule->allowed.end(), opt);
            if (!ok && opt->count())
                throw CLI::ValidationError(spec.family,
                                           opt->get_name() + " does not apply to this family");
        }

        SetSystem sys = make_system(spec);
        save_set_system(gen_out, sys);
        std::cout << "wrote " << gen_out << ": n=" << sys.n() << " m=" << sys.m()
                  << " family=" << sys.label() << '\n';
    });

    // ---- partition ----------------------------------------------------------
    auto* part_cmd = app.add_subcommand("partition", "partition a set system from a file");
    std::string part_in, part_out, report_path, algo_str = "minweight";
    uint32_t t = 0;
    uint64_t part_seed = 0;
    PartitionOptions popts;
    popts.threads = 0;  // CLI default: all cores (resolved in the callback)
    bool d_search = false;
    part_cmd->add_option("--in", part_in, "input set-system file")->required();
    part_cmd->add_option("--t", t, "number of parts")->required();
    part_cmd->add_option("--algo", algo_str, "greedy | minweight | partatonce");
    part_cmd->add_option("--d", popts.d, "potential exponent");
    part_cmd->add_option("--w", popts.w, "samples per part (partatonce; 0 = default policy)");
    part_cmd->add_option("--seed", part_seed, "PRNG seed")->required();
    part_cmd->add_option("--threads", popts.threads, "partatonce worker count (0 = all cores)");
    part_cmd->add_flag("--d-search", d_search, "search the potential exponent over [1, n]");
    part_cmd->add_option("--out", part_out, "output partition file");
    part_cmd->add_option("--report", report_path, "append a CSV report row to this file");

    part_cmd->callback([&] {
        SetSystem sys = load_set_system(part_in);
        if (popts.threads == 0)
            popts.threads = std::max(1u, std::thread::hardware_concurrency());
        Algo algo = algo_from_string(algo_str);

        Partition part;
        RunReport rep;
        if (d_search) {
            DSearchResult res = search_d(sys, t, algo, part_seed, {}, popts);
            part = std::move(res.part);
            rep = std::move(res.report);
            std::cout << "d-search selected d=" << res.best_d << '\n';
        } else {
            auto got = partition(sys, t, algo, part_seed, popts);
            part = std::move(got.first);
            rep = std::move(got.second);
        }
        std::cout << "kappa: " << rep.kappa << '\n'
                  << "violations (practical/theoretical): " << rep.total_violations_practical
                  << '/' << rep.total_violations_theoretical << '\n'
                  << "time: " << rep.wall_ms << " ms\n";
        if (!part_out.empty()) save_partition(part_out, part);
        if (!report_path.empty()) {
            double eps = eps_approx_from_partition(sys, part, rep.seed).epsilon;
            append_report_row(report_path, sys, rep, eps);
        }
    });

    // ---- eval ---------------------------------------------------------------
    auto* eval_cmd = app.add_subcommand("eval", "crossing number of a stored partition");
    std::string eval_in, eval_part;
    eval_cmd->add_option("--in", eval_in, "input set-system file")->required();
    eval_cmd->add_option("--partition", eval_part, "input partition file")->required();
    eval_cmd->callback([&] {
        SetSystem sys = load_set_system(eval_in);
        Partition part = load_partition(eval_part);
        CrossingReport rep = crossing_number(sys, part);
        std::cout << "kappa: " << rep.kappa << '\n'
                  << "argmax range: " << rep.argmax_range << " (crosses "
                  << (sys.m() ? rep.per_range[rep.argmax_range] : 0) << " parts)\n";
        ValidityReport validity = validate_partition(sys, part);
        if (validity.valid()) {
            std::cout << "valid: yes\n";
        } else {
            std::cout << "valid: no\n";
            for (const auto& v : validity.violations) std::cout << "  - " << v.detail << '\n';
        }
    });

    // ---- approx -------------------------------------------------------------
    auto* approx_cmd =
        app.add_subcommand("approx", "error factors of partition-based and uniform samples");
    std::string ap_in, ap_part;
    uint64_t ap_seed = 0;
    approx_cmd->add_option("--in", ap_in, "input set-system file")->required();
    approx_cmd->add_option("--partition", ap_part, "input partition file")->required();
    approx_cmd->add_option("--seed", ap_seed, "PRNG seed")->required();
    approx_cmd->callback([&] {
        SetSystem sys = load_set_system(ap_in);
        Partition part = load_partition(ap_part);
        Sample from_partition = eps_approx_from_partition(sys, part, ap_seed);
        Sample uniform = uniform_sample(sys, uint32_t(from_partition.elements.size()),
                                        SplitMix64(ap_seed).split().next());
        std::cout << "partition epsilon: " << from_partition.epsilon << '\n'
                  << "uniform epsilon: " << uniform.epsilon << '\n';
    });

    // ---- bench --------------------------------------------------------------
    auto* bench_cmd = app.add_subcommand("bench", "run an experiment descriptor, write CSV");
    std::string cfg_path, bench_out;
    uint32_t bench_threads = 0;
    bench_cmd->add_option("--config", cfg_path, "JSON experiment descriptor")->required();
    bench_cmd->add_option("--out", bench_out, "CSV output file (default: stdout)");
    bench_cmd->add_option("--threads", bench_threads, "override descriptor thread count");
    bench_cmd->callback([&] {
        BenchSpec spec = load_bench_spec(cfg_path);
        if (bench_threads > 0) spec.threads = bench_threads;
        if (bench_out.empty()) {
            run_bench(spec, std::cout);
        } else {
            std::ofstream f(bench_out);
            if (!f) throw std::runtime_error("cannot open for writing: " + bench_out);
            run_bench(spec, f);
            std::cout << "wrote " << bench_out << '\n';
        }
    });

    CLI11_PARSE(app, argc, argv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
