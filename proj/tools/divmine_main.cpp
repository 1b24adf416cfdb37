#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "divmine/errors.hpp"
#include "divmine/harness.hpp"
#include "divmine/oracle.hpp"
#include "divmine/search.hpp"

namespace {

using namespace divmine;

struct DatasetFlags {
    std::string path;
    std::string groups_path;
    bool no_class = false;
    bool one_indexed = false;
    bool dense = false;
};

void add_dataset_flags(CLI::App* cmd, DatasetFlags& f) {
    cmd->add_option("--dataset", f.path, "transaction file (item ids per line)")->required();
    cmd->add_option("--groups", f.groups_path, "attribute groups file (one group per line)");
    cmd->add_flag("--no-class", f.no_class, "file has no trailing class column");
    cmd->add_flag("--one-indexed", f.one_indexed, "item ids in the file start at 1");
    cmd->add_flag("--dense", f.dense, "read a dense 0/1 CSV instead of item lists");
}

Database load_db(const DatasetFlags& f) {
    ParseOptions opts;
    opts.has_class_column = !f.no_class;
    opts.indexing = f.one_indexed ? ParseOptions::Indexing::one_based
                                  : ParseOptions::Indexing::zero_based;
    std::ifstream in(f.path);
    if (!in) throw DataError("cannot open dataset file: " + f.path);
    std::string name = f.path;
    if (auto pos = name.find_last_of('/'); pos != std::string::npos) name = name.substr(pos + 1);
    if (auto pos = name.find_last_of('.'); pos != std::string::npos) name = name.substr(0, pos);
    return f.dense ? parse_dense_csv(in, opts, name) : parse_transactions(in, opts, name);
}

GroupSchema load_schema(const DatasetFlags& f, const Database& db) {
    return f.groups_path.empty() ? GroupSchema::singletons(db.n_items())
                                 : load_groups_file(f.groups_path, db.n_items());
}

DatasetRef to_ref(const DatasetFlags& f) {
    DatasetRef ref;
    ref.path = f.path;
    if (!f.groups_path.empty()) ref.groups_path = f.groups_path;
    ref.has_class = !f.no_class;
    ref.indexing = f.one_indexed ? ParseOptions::Indexing::one_based
                                 : ParseOptions::Indexing::zero_based;
    ref.dense = f.dense;
    return ref;
}

int do_run(const DatasetFlags& dataset, const SearchConfig& cfg_in, const std::string& algo,
           const std::string& trace_path, const std::string& out_path,
           const std::string& format) {
    Database db = load_db(dataset);
    GroupSchema schema = load_schema(dataset, db);

    SearchConfig cfg = cfg_in;
    const auto parsed = algo_from_name(algo);
    if (!parsed) throw std::invalid_argument("unknown algorithm: " + algo);
    cfg.algorithm = *parsed;

    SearchResult res = run_search(db, schema, cfg);

    RunRecord rec;
    rec.dataset = db.name();
    rec.k = cfg.k;
    rec.algorithm = algo;
    rec.seed = cfg.seed;
    rec.best_score = res.best_score;
    rec.elapsed_ms = res.trace.empty() ? 0 : res.trace.back().elapsed_ms;
    rec.iterations = res.iterations;
    rec.trace = res.trace;

    std::cout << "dataset=" << rec.dataset << " algo=" << algo << " k=" << cfg.k
              << " seed=" << cfg.seed << " best_score=" << rec.best_score
              << " elapsed_ms=" << rec.elapsed_ms << " iterations=" << rec.iterations
              << " restarts=" << res.restarts << '\n'
              << describe(res.best, db) << '\n';

    if (!trace_path.empty()) emit_trace(rec, trace_path);
    if (!out_path.empty()) emit_results({rec}, format, out_path);
    return 0;
}

int do_bench(const std::string& spec_path, unsigned jobs, const std::string& out_dir) {
    ExperimentSpec spec = load_experiment_spec(spec_path);
    auto records = run_experiment(spec, jobs);

    std::size_t failed = 0;
    for (const auto& rec : records) {
        if (!rec.failed) continue;
        ++failed;
        std::cerr << "run failed: dataset=" << rec.dataset << " k=" << rec.k
                  << " algo=" << rec.algorithm << " seed=" << rec.seed << ": " << rec.error
                  << '\n';
    }

    std::filesystem::create_directories(out_dir);
    {
        std::ofstream out(out_dir + "/runs.csv");
        if (!out) throw DataError("cannot write " + out_dir + "/runs.csv");
        emit_records_csv(records, out);
    }
    {
        std::ofstream out(out_dir + "/runs.json");
        if (!out) throw DataError("cannot write " + out_dir + "/runs.json");
        emit_records_json(records, out);
    }
    auto cells = aggregate(records);
    {
        std::ofstream out(out_dir + "/aggregate.csv");
        if (!out) throw DataError("cannot write " + out_dir + "/aggregate.csv");
        emit_aggregate_csv(cells, out);
    }
    emit_aggregate_csv(cells, std::cout);

    if (failed == records.size() && !records.empty())
        throw DataError("every run failed; see messages above");
    return 0;
}

int do_sweep(const DatasetFlags& dataset, std::size_t k, const std::vector<std::size_t>& sizes,
             std::size_t repeats, std::int64_t budget_ms, std::uint64_t seed, unsigned jobs,
             const std::string& out_path) {
    auto records = sweep_population(to_ref(dataset), k, sizes, repeats,
                                    std::chrono::milliseconds(budget_ms), seed, jobs);
    for (const auto& rec : records)
        if (rec.failed) throw DataError("sweep run failed: " + rec.error);
    std::ofstream out(out_path);
    if (!out) throw DataError("cannot write sweep file: " + out_path);
    emit_sweep_csv(records, out);
    emit_sweep_csv(records, std::cout);
    return 0;
}

int do_oracle(const DatasetFlags& dataset, std::size_t k, const OracleLimits& limits) {
    Database db = load_db(dataset);
    GroupSchema schema = load_schema(dataset, db);
    OracleResult res = exhaustive_best(db, schema, k, limits);
    std::cout << "dataset=" << db.name() << " k=" << k << " optimum=" << res.best_score
              << " multisets=" << res.multisets_visited << '\n'
              << describe(res.best, db) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"divmine: diverse pattern set mining over binary transaction databases"};
    app.require_subcommand(1);

    DatasetFlags run_ds;
    SearchConfig run_cfg;
    std::string run_algo, run_trace, run_out, run_format = "csv";
    std::int64_t run_budget_ms = 60000;
    std::uint64_t run_iterations = 0, run_target = 0;
    auto* run_cmd = app.add_subcommand("run", "execute one search run");
    add_dataset_flags(run_cmd, run_ds);
    run_cmd->add_option("--k", run_cfg.k, "pattern set size")->required();
    run_cmd->add_option("--algo", run_algo, "search algorithm")
        ->required()
        ->check(CLI::IsMember({"ga", "lns", "hc", "rw"}));
    run_cmd->add_option("--time-budget-ms", run_budget_ms, "wall-clock budget")
        ->default_val(60000);
    run_cmd->add_option("--seed", run_cfg.seed, "PRNG seed")->default_val(0);
    run_cmd->add_option("--pop-size", run_cfg.pop_size, "GA population size")->default_val(100);
    run_cmd->add_option("--percent-change", run_cfg.percent_change,
                        "GA restart replacement percentage")
        ->default_val(90);
    run_cmd->add_option("--stagnation", run_cfg.stagnation_limit,
                        "non-improving generations before restart/escalation")
        ->default_val(100);
    run_cmd->add_option("--lns-bit-cap", run_cfg.lns_bit_cap, "max LNS neighborhood width")
        ->default_val(20);
    run_cmd->add_option("--trace", run_trace, "write the improvement trace CSV here");
    run_cmd->add_option("--out", run_out, "write the run record here");
    run_cmd->add_option("--format", run_format, "record format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->default_val("csv");
    run_cmd->add_option("--iterations", run_iterations,
                        "deterministic iteration cutoff (0 = none)");
    run_cmd->add_option("--target-score", run_target, "stop early at this score (0 = none)");

    std::string bench_spec, bench_out;
    unsigned bench_jobs = 1;
    auto* bench_cmd = app.add_subcommand("bench", "run an experiment spec (JSON)");
    bench_cmd->add_option("--spec", bench_spec, "experiment spec file")->required();
    bench_cmd->add_option("--jobs", bench_jobs, "concurrent runs")->default_val(1);
    bench_cmd->add_option("--out", bench_out, "output directory")->required();

    DatasetFlags sweep_ds;
    std::size_t sweep_k = 2, sweep_repeats = 5;
    std::vector<std::size_t> sweep_sizes;
    std::int64_t sweep_budget_ms = 60000;
    std::uint64_t sweep_seed = 0;
    unsigned sweep_jobs = 1;
    std::string sweep_out;
    auto* sweep_cmd = app.add_subcommand("sweep-pop", "GA population-size sweep");
    add_dataset_flags(sweep_cmd, sweep_ds);
    sweep_cmd->add_option("--k", sweep_k, "pattern set size")->required();
    sweep_cmd->add_option("--pop-sizes", sweep_sizes, "comma-separated population sizes")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--repeats", sweep_repeats, "runs per population size")->required();
    sweep_cmd->add_option("--time-budget-ms", sweep_budget_ms, "wall-clock budget per run")
        ->required();
    sweep_cmd->add_option("--seed", sweep_seed, "base seed")->required();
    sweep_cmd->add_option("--out", sweep_out, "output CSV path")->required();
    sweep_cmd->add_option("--jobs", sweep_jobs, "concurrent runs")->default_val(1);

    DatasetFlags oracle_ds;
    std::size_t oracle_k = 2;
    OracleLimits limits;
    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive optimum on a tiny instance");
    add_dataset_flags(oracle_cmd, oracle_ds);
    oracle_cmd->add_option("--k", oracle_k, "pattern set size")->required();
    oracle_cmd->add_option("--max-states", limits.max_states,
                           "refuse instances beyond this many states");
    oracle_cmd->add_option("--max-items", limits.max_items, "refuse databases with more items");
    oracle_cmd->add_option("--max-k", limits.max_k, "refuse larger pattern set sizes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (run_cmd->parsed()) {
            run_cfg.time_budget = std::chrono::milliseconds(run_budget_ms);
            if (run_iterations) run_cfg.iteration_limit = run_iterations;
            if (run_target) run_cfg.target_score = run_target;
            return do_run(run_ds, run_cfg, run_algo, run_trace, run_out, run_format);
        }
        if (bench_cmd->parsed()) return do_bench(bench_spec, bench_jobs, bench_out);
        if (sweep_cmd->parsed())
            return do_sweep(sweep_ds, sweep_k, sweep_sizes, sweep_repeats, sweep_budget_ms,
                            sweep_seed, sweep_jobs, sweep_out);
        if (oracle_cmd->parsed()) return do_oracle(oracle_ds, oracle_k, limits);
    } catch (const LimitError& e) {
        std::cerr << "limit refused: " << e.what() << '\n';
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
