#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "divmine/dataset.hpp"
#include "divmine/encoding.hpp"
#include "divmine/patterns.hpp"
#include "divmine/rng.hpp"

namespace divmine {

class Population;

enum class Algo { ga, lns, hc, rw };

const char* algo_name(Algo a);
std::optional<Algo> algo_from_name(const std::string& name);

struct SearchConfig {
    Algo algorithm = Algo::ga;
    std::size_t k = 2;
    std::chrono::milliseconds time_budget{60000};
    std::uint64_t seed = 0;

    std::size_t pop_size = 100;         // GA
    unsigned percent_change = 90;       // GA restart replacement percentage
    std::size_t stagnation_limit = 100; // GA restart / LNS escalation trigger
    std::size_t lns_bit_cap = 20;       // hard cap on LNS neighborhood width

    // Optional deterministic cutoff: stop after this many generations (GA) or
    // iterations (LNS/HC/RW). Wall-clock runs cannot replay score-exactly, so
    // tests and replays pin this instead.
    std::optional<std::uint64_t> iteration_limit;
    // Optional early exit once the best score reaches this value.
    std::optional<std::uint64_t> target_score;
    // Observer called with the population entering each GA generation (after
    // selection and any restart).
    std::function<void(const Population&)> on_generation;
};

struct TracePoint {
    std::int64_t elapsed_ms;
    std::uint64_t score;
};

struct SearchResult {
    PatternSet best;
    std::uint64_t best_score = 0;
    // Improvement staircase plus one terminal point; scores non-decreasing,
    // final score equals best_score.
    std::vector<TracePoint> trace;
    std::uint64_t iterations = 0;  // generations for GA
    std::uint64_t restarts = 0;    // GA restarts / LNS bit-width escalations
};

// Fixed-size pool of pattern sets with pairwise-distinct canonical keys.
// Twin checks are O(1) by hashed key.
class Population {
public:
    bool contains(const CanonicalKey& key) const { return keys_.count(key) > 0; }

    // Rejects twins. Returns whether the member was added.
    bool try_add(PatternSet ps);

    // Accepts the member even when it duplicates an existing key. Only the
    // retry-exhaustion fallback uses this; on search spaces smaller than the
    // population size a twin-free pool of that size does not exist.
    void force_add(PatternSet ps);

    std::size_t size() const { return members_.size(); }
    const PatternSet& operator[](std::size_t i) const { return members_[i]; }
    const std::vector<PatternSet>& members() const { return members_; }

    std::uint64_t best_score() const;
    const PatternSet& best() const;

private:
    std::vector<PatternSet> members_;
    std::unordered_set<CanonicalKey, CanonicalKeyHash> keys_;
};

// One mutated child per member (single gene flip), children pairwise
// distinct; collisions regenerate from the same parent, then fall back to
// fresh random sets.
Population simple_mutation(const Population& pop, const GroupSchema& schema, const Database& db,
                           Rng& rng);

// |pop| crossover children from uniformly drawn parent pairs (parents may
// coincide), intra-pool twin-free via the same retry ladder.
Population crossover_population(const Population& pop, const GroupSchema& schema,
                                const Database& db, Rng& rng);

// Deduplicates the union by canonical key, orders by (score desc, key asc),
// keeps the top p. Pads with fresh random members when fewer than p distinct
// candidates exist.
Population select_best(const std::vector<const Population*>& pools, std::size_t p,
                       const GroupSchema& schema, const Database& db, Rng& rng);

// Replaces the worst floor(percent*|pop|/100) members with fresh random,
// twin-free pattern sets; survivors are exactly the top remainder.
Population change_population(unsigned percent, const Population& pop, const GroupSchema& schema,
                             const Database& db, Rng& rng);

SearchResult genetic_search(const Database& db, const GroupSchema& schema,
                            const SearchConfig& cfg, Rng& rng);
SearchResult lns_search(const Database& db, const GroupSchema& schema, const SearchConfig& cfg,
                        Rng& rng);
SearchResult hill_climb(const Database& db, const GroupSchema& schema, const SearchConfig& cfg,
                        Rng& rng);
SearchResult random_walk(const Database& db, const GroupSchema& schema, const SearchConfig& cfg,
                         Rng& rng);

// Dispatch on cfg.algorithm with a generator seeded from cfg.seed.
SearchResult run_search(const Database& db, const GroupSchema& schema, const SearchConfig& cfg);

}  // namespace divmine
