#include "divmine/harness.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "divmine/errors.hpp"
#include "divmine/oracle.hpp"

namespace divmine {

namespace {

struct PreparedDataset {
    std::shared_ptr<Database> db;
    std::shared_ptr<GroupSchema> schema;
    std::string name;
    std::string error;  // nonempty when loading failed
};

PreparedDataset prepare(const DatasetRef& ref) {
    PreparedDataset out;
    out.name = ref.name;
    try {
        ParseOptions opts;
        opts.has_class_column = ref.has_class;
        opts.indexing = ref.indexing;
        std::ifstream in(ref.path);
        if (!in) throw DataError("cannot open dataset file: " + ref.path);
        Database db = ref.dense ? parse_dense_csv(in, opts, ref.path)
                                : parse_transactions(in, opts, ref.path);
        if (out.name.empty()) {
            out.name = ref.path;
            if (auto pos = out.name.find_last_of('/'); pos != std::string::npos)
                out.name = out.name.substr(pos + 1);
            if (auto pos = out.name.find_last_of('.'); pos != std::string::npos)
                out.name = out.name.substr(0, pos);
        }
        out.db = std::make_shared<Database>(std::move(db));
        out.schema = std::make_shared<GroupSchema>(
            ref.groups_path ? load_groups_file(*ref.groups_path, out.db->n_items())
                            : GroupSchema::singletons(out.db->n_items()));
    } catch (const std::exception& e) {
        out.error = e.what();
        if (out.name.empty()) out.name = ref.path;
    }
    return out;
}

struct PlannedRun {
    std::size_t dataset_index;
    std::size_t k;
    Algo algo;
    std::uint64_t seed;
    std::size_t pop_size;
};

RunRecord execute(const PlannedRun& run, const PreparedDataset& data,
                  const ExperimentSpec& spec) {
    RunRecord rec;
    rec.dataset = data.name;
    rec.k = run.k;
    rec.algorithm = algo_name(run.algo);
    rec.seed = run.seed;
    rec.pop_size = run.pop_size;
    if (!data.error.empty()) {
        rec.failed = true;
        rec.error = data.error;
        return rec;
    }
    try {
        SearchConfig cfg;
        cfg.algorithm = run.algo;
        cfg.k = run.k;
        cfg.time_budget = spec.time_budget;
        cfg.seed = run.seed;
        cfg.pop_size = run.pop_size;
        cfg.percent_change = spec.percent_change;
        cfg.stagnation_limit = spec.stagnation_limit;
        cfg.lns_bit_cap = spec.lns_bit_cap;
        cfg.iteration_limit = spec.iteration_limit;
        SearchResult res = run_search(*data.db, *data.schema, cfg);
        rec.best_score = res.best_score;
        rec.elapsed_ms = res.trace.empty() ? 0 : res.trace.back().elapsed_ms;
        rec.iterations = res.iterations;
        rec.trace = std::move(res.trace);
        // Belt-and-braces bound check on everything the harness reports.
        if (rec.best_score > parity_upper_bound(data.db->n_transactions(), run.k))
            throw std::logic_error("run result exceeds the parity bound");
    } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
    }
    return rec;
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentSpec& spec, unsigned jobs) {
    if (spec.repeats < 1) throw std::invalid_argument("repeats must be at least 1");

    std::vector<PreparedDataset> data;
    data.reserve(spec.datasets.size());
    for (const auto& ref : spec.datasets) data.push_back(prepare(ref));

    std::vector<PlannedRun> plan;
    std::uint64_t index = 0;
    for (std::size_t d = 0; d < spec.datasets.size(); ++d)
        for (auto k : spec.ks)
            for (auto algo : spec.algorithms)
                for (std::size_t r = 0; r < spec.repeats; ++r)
                    plan.push_back({d, k, algo, spec.base_seed + index++, spec.pop_size});

    std::vector<RunRecord> records(plan.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < plan.size(); ++i)
            records[i] = execute(plan[i], data[plan[i].dataset_index], spec);
        return records;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= plan.size()) return;
            records[i] = execute(plan[i], data[plan[i].dataset_index], spec);
        }
    };
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    return records;
}

std::vector<AggregateCell> aggregate(const std::vector<RunRecord>& records) {
    std::vector<AggregateCell> cells;
    std::map<std::tuple<std::string, std::size_t, std::string>, std::size_t> index;
    for (const auto& rec : records) {
        if (rec.failed) continue;
        const auto key = std::make_tuple(rec.dataset, rec.k, rec.algorithm);
        auto [it, inserted] = index.emplace(key, cells.size());
        if (inserted) cells.push_back({rec.dataset, rec.k, rec.algorithm, 0.0, 0, 0});
        AggregateCell& cell = cells[it->second];
        cell.avg_score += static_cast<double>(rec.best_score);
        cell.best_score = std::max(cell.best_score, rec.best_score);
        cell.runs += 1;
    }
    for (auto& cell : cells) cell.avg_score /= static_cast<double>(cell.runs);
    return cells;
}

void emit_records_csv(const std::vector<RunRecord>& records, std::ostream& out) {
    out << "dataset,k,algorithm,seed,best_score,elapsed_ms,iterations\n";
    for (const auto& rec : records) {
        if (rec.failed) continue;
        out << rec.dataset << ',' << rec.k << ',' << rec.algorithm << ',' << rec.seed << ','
            << rec.best_score << ',' << rec.elapsed_ms << ',' << rec.iterations << '\n';
    }
}

void emit_records_json(const std::vector<RunRecord>& records, std::ostream& out) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& rec : records) {
        nlohmann::json obj{{"dataset", rec.dataset},       {"k", rec.k},
                           {"algorithm", rec.algorithm},   {"seed", rec.seed},
                           {"best_score", rec.best_score}, {"elapsed_ms", rec.elapsed_ms},
                           {"iterations", rec.iterations}};
        if (rec.failed) {
            obj["failed"] = true;
            obj["error"] = rec.error;
        }
        arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << '\n';
}

void emit_results(const std::vector<RunRecord>& records, const std::string& format,
                  const std::string& out_path) {
    std::ofstream out(out_path);
    if (!out) throw DataError("cannot write results file: " + out_path);
    if (format == "csv")
        emit_records_csv(records, out);
    else if (format == "json")
        emit_records_json(records, out);
    else
        throw std::invalid_argument("unknown results format: " + format);
}

std::vector<RunRecord> parse_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing CSV header", 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "dataset,k,algorithm,seed,best_score,elapsed_ms,iterations")
        throw ParseError("unexpected CSV header '" + line + "'", 1);

    std::vector<RunRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        RunRecord rec;
        std::string field;
        try {
            std::getline(ss, rec.dataset, ',');
            std::getline(ss, field, ',');
            rec.k = std::stoull(field);
            std::getline(ss, rec.algorithm, ',');
            std::getline(ss, field, ',');
            rec.seed = std::stoull(field);
            std::getline(ss, field, ',');
            rec.best_score = std::stoull(field);
            std::getline(ss, field, ',');
            rec.elapsed_ms = std::stoll(field);
            std::getline(ss, field, ',');
            rec.iterations = std::stoull(field);
        } catch (const std::exception&) {
            throw ParseError("bad CSV row '" + line + "'", lineno);
        }
        records.push_back(std::move(rec));
    }
    return records;
}

void emit_aggregate_csv(const std::vector<AggregateCell>& cells, std::ostream& out) {
    out << "dataset,k,algorithm,avg_score,best_score\n";
    char buf[32];
    for (const auto& cell : cells) {
        std::snprintf(buf, sizeof buf, "%.1f", cell.avg_score);
        out << cell.dataset << ',' << cell.k << ',' << cell.algorithm << ',' << buf << ','
            << cell.best_score << '\n';
    }
}

void emit_trace(const RunRecord& record, std::ostream& out) {
    if (record.trace.empty()) throw DataError("record has no trace");
    out << "elapsed_ms,best_score\n";
    for (const auto& pt : record.trace) out << pt.elapsed_ms << ',' << pt.score << '\n';
}

void emit_trace(const RunRecord& record, const std::string& out_path) {
    std::ofstream out(out_path);
    if (!out) throw DataError("cannot write trace file: " + out_path);
    emit_trace(record, out);
}

std::vector<RunRecord> sweep_population(const DatasetRef& dataset, std::size_t k,
                                        const std::vector<std::size_t>& pop_sizes,
                                        std::size_t repeats,
                                        std::chrono::milliseconds time_budget,
                                        std::uint64_t base_seed, unsigned jobs) {
    std::vector<RunRecord> all;
    for (auto p : pop_sizes) {
        ExperimentSpec spec;
        spec.datasets = {dataset};
        spec.ks = {k};
        spec.algorithms = {Algo::ga};
        spec.repeats = repeats;
        spec.time_budget = time_budget;
        spec.base_seed = base_seed;
        spec.pop_size = p;
        auto records = run_experiment(spec, jobs);
        all.insert(all.end(), std::make_move_iterator(records.begin()),
                   std::make_move_iterator(records.end()));
    }
    return all;
}

void emit_sweep_csv(const std::vector<RunRecord>& records, std::ostream& out) {
    out << "pop_size,avg_score,best_score\n";
    std::map<std::size_t, std::pair<double, std::uint64_t>> cells;  // sum, best
    std::map<std::size_t, std::size_t> counts;
    for (const auto& rec : records) {
        if (rec.failed) continue;
        auto& cell = cells[rec.pop_size];
        cell.first += static_cast<double>(rec.best_score);
        cell.second = std::max(cell.second, rec.best_score);
        counts[rec.pop_size] += 1;
    }
    char buf[32];
    for (const auto& [p, cell] : cells) {
        std::snprintf(buf, sizeof buf, "%.1f", cell.first / counts[p]);
        out << p << ',' << buf << ',' << cell.second << '\n';
    }
}

ExperimentSpec parse_experiment_spec(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad experiment spec JSON: ") + e.what());
    }

    ExperimentSpec spec;
    try {
        for (const auto& d : j.at("datasets")) {
            DatasetRef ref;
            if (d.is_string()) {
                ref.path = d.get<std::string>();
            } else {
                ref.path = d.at("path").get<std::string>();
                if (d.contains("groups")) ref.groups_path = d["groups"].get<std::string>();
                if (d.contains("name")) ref.name = d["name"].get<std::string>();
                if (d.contains("has_class")) ref.has_class = d["has_class"].get<bool>();
                if (d.contains("one_indexed") && d["one_indexed"].get<bool>())
                    ref.indexing = ParseOptions::Indexing::one_based;
                if (d.contains("dense")) ref.dense = d["dense"].get<bool>();
            }
            spec.datasets.push_back(std::move(ref));
        }
        spec.ks = j.at("ks").get<std::vector<std::size_t>>();
        for (const auto& name : j.at("algorithms")) {
            auto algo = algo_from_name(name.get<std::string>());
            if (!algo) throw ParseError("unknown algorithm '" + name.get<std::string>() + "'");
            spec.algorithms.push_back(*algo);
        }
        if (j.contains("repeats")) spec.repeats = j["repeats"].get<std::size_t>();
        if (j.contains("time_budget_ms"))
            spec.time_budget = std::chrono::milliseconds(j["time_budget_ms"].get<std::int64_t>());
        if (j.contains("base_seed")) spec.base_seed = j["base_seed"].get<std::uint64_t>();
        if (j.contains("pop_size")) spec.pop_size = j["pop_size"].get<std::size_t>();
        if (j.contains("percent_change"))
            spec.percent_change = j["percent_change"].get<unsigned>();
        if (j.contains("stagnation")) spec.stagnation_limit = j["stagnation"].get<std::size_t>();
        if (j.contains("lns_bit_cap")) spec.lns_bit_cap = j["lns_bit_cap"].get<std::size_t>();
        if (j.contains("iteration_limit") && !j["iteration_limit"].is_null())
            spec.iteration_limit = j["iteration_limit"].get<std::uint64_t>();
        if (j.contains("pop_sizes"))
            spec.pop_sizes = j["pop_sizes"].get<std::vector<std::size_t>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad experiment spec: ") + e.what());
    }
    return spec;
}

ExperimentSpec load_experiment_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open experiment spec: " + path);
    return parse_experiment_spec(in);
}

}  // namespace divmine
