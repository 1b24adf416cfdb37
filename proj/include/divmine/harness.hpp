#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "divmine/dataset.hpp"
#include "divmine/search.hpp"

namespace divmine {

struct DatasetRef {
    std::string path;
    std::optional<std::string> groups_path;
    std::string name;  // defaults to the file stem
    bool has_class = true;
    ParseOptions::Indexing indexing = ParseOptions::Indexing::zero_based;
    bool dense = false;
};

// The benchmark protocol: datasets × ks × algorithms × repeats, each run
// seeded as base_seed + its index in that nesting order.
struct ExperimentSpec {
    std::vector<DatasetRef> datasets;
    std::vector<std::size_t> ks;
    std::vector<Algo> algorithms;
    std::size_t repeats = 5;
    std::chrono::milliseconds time_budget{60000};
    std::uint64_t base_seed = 0;

    std::size_t pop_size = 100;
    unsigned percent_change = 90;
    std::size_t stagnation_limit = 100;
    std::size_t lns_bit_cap = 20;
    std::optional<std::uint64_t> iteration_limit;

    std::optional<std::vector<std::size_t>> pop_sizes;  // population sweep mode
};

struct RunRecord {
    std::string dataset;
    std::size_t k = 0;
    std::string algorithm;
    std::uint64_t seed = 0;
    std::uint64_t best_score = 0;
    std::int64_t elapsed_ms = 0;
    std::uint64_t iterations = 0;
    std::size_t pop_size = 0;  // sweep bookkeeping
    std::vector<TracePoint> trace;
    bool failed = false;
    std::string error;
};

struct AggregateCell {
    std::string dataset;
    std::size_t k = 0;
    std::string algorithm;
    double avg_score = 0;
    std::uint64_t best_score = 0;
    std::size_t runs = 0;
};

// One record per (dataset, k, algorithm, repeat). An unreadable dataset fails
// only its own records; the other cells still run. jobs > 1 executes runs
// concurrently; scores depend only on the per-run seed, never on scheduling.
std::vector<RunRecord> run_experiment(const ExperimentSpec& spec, unsigned jobs = 1);

// Per-cell best (max over repeats) and average, Table-style.
std::vector<AggregateCell> aggregate(const std::vector<RunRecord>& records);

// CSV columns: dataset,k,algorithm,seed,best_score,elapsed_ms,iterations.
// UTF-8, LF, header row. Failed records go to JSON only.
void emit_records_csv(const std::vector<RunRecord>& records, std::ostream& out);
void emit_records_json(const std::vector<RunRecord>& records, std::ostream& out);
void emit_results(const std::vector<RunRecord>& records, const std::string& format,
                  const std::string& out_path);
std::vector<RunRecord> parse_records_csv(std::istream& in);

// CSV columns: dataset,k,algorithm,avg_score,best_score (avg to 1 decimal).
void emit_aggregate_csv(const std::vector<AggregateCell>& cells, std::ostream& out);

// Two-column improvement staircase: elapsed_ms,best_score.
void emit_trace(const RunRecord& record, std::ostream& out);
void emit_trace(const RunRecord& record, const std::string& out_path);

// GA-only population-size sweep: the same cell evaluated once per size.
std::vector<RunRecord> sweep_population(const DatasetRef& dataset, std::size_t k,
                                        const std::vector<std::size_t>& pop_sizes,
                                        std::size_t repeats,
                                        std::chrono::milliseconds time_budget,
                                        std::uint64_t base_seed, unsigned jobs = 1);

// pop_size,avg_score,best_score per sweep cell.
void emit_sweep_csv(const std::vector<RunRecord>& records, std::ostream& out);

ExperimentSpec parse_experiment_spec(std::istream& in);
ExperimentSpec load_experiment_spec(const std::string& path);

}  // namespace divmine
