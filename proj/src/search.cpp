#include "divmine/search.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <stdexcept>

#include "divmine/errors.hpp"
#include "divmine/oracle.hpp"

namespace divmine {

const char* algo_name(Algo a) {
    switch (a) {
        case Algo::ga: return "ga";
        case Algo::lns: return "lns";
        case Algo::hc: return "hc";
        case Algo::rw: return "rw";
    }
    return "?";
}

std::optional<Algo> algo_from_name(const std::string& name) {
    if (name == "ga") return Algo::ga;
    if (name == "lns") return Algo::lns;
    if (name == "hc") return Algo::hc;
    if (name == "rw") return Algo::rw;
    return std::nullopt;
}

bool Population::try_add(PatternSet ps) {
    auto key = ps.canonical_key();
    if (keys_.count(key)) return false;
    keys_.insert(std::move(key));
    members_.push_back(std::move(ps));
    return true;
}

void Population::force_add(PatternSet ps) {
    keys_.insert(ps.canonical_key());
    members_.push_back(std::move(ps));
}

std::uint64_t Population::best_score() const {
    std::uint64_t best = 0;
    for (const auto& m : members_) best = std::max(best, m.score());
    return best;
}

const PatternSet& Population::best() const {
    const PatternSet* best = &members_.front();
    for (const auto& m : members_)
        if (m.score() > best->score()) best = &m;
    return *best;
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kTwinRetryLimit = 100;

// Retry ladder for keeping pools twin-free: the operation's own generator
// first, then fresh random sets, then one final perturbed candidate accepted
// even if it still collides (a pool larger than the reachable space cannot be
// twin-free).
void add_with_retries(Population& pool, const std::function<PatternSet()>& make_candidate,
                      std::size_t k, const GroupSchema& schema, const Database& db, Rng& rng) {
    for (std::size_t i = 0; i < kTwinRetryLimit; ++i)
        if (pool.try_add(make_candidate())) return;
    for (std::size_t i = 0; i < kTwinRetryLimit; ++i)
        if (pool.try_add(random_pattern_set(schema, k, rng, db))) return;
    PatternSet c = make_candidate();
    if (schema.n_groups() > 0) c = single_flip_neighbor(c, schema, rng, db);
    pool.force_add(std::move(c));
}

// Sorting order inside populations: score descending, canonical key ascending
// as the deterministic tie-break.
struct RankedMember {
    const PatternSet* ps;
    CanonicalKey key;

    bool operator<(const RankedMember& o) const {
        if (ps->score() != o.ps->score()) return ps->score() > o.ps->score();
        return canonical_key_less(key, o.key);
    }
};

std::vector<RankedMember> ranked(const Population& pop) {
    std::vector<RankedMember> out;
    out.reserve(pop.size());
    for (const auto& m : pop.members()) out.push_back({&m, m.canonical_key()});
    std::stable_sort(out.begin(), out.end());
    return out;
}

// Shared anytime bookkeeping: best-so-far, improvement trace, wall-clock
// budget, optional target and iteration cutoffs.
class Anytime {
public:
    Anytime(const SearchConfig& cfg) : cfg_(cfg), t0_(Clock::now()) {}

    std::int64_t elapsed_ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0_)
            .count();
    }

    bool budget_exhausted() const {
        return Clock::now() - t0_ >= cfg_.time_budget;
    }

    bool iterations_exhausted(std::uint64_t done) const {
        return cfg_.iteration_limit && done >= *cfg_.iteration_limit;
    }

    // Records an improvement; returns true once the target score is reached.
    bool note(const PatternSet& candidate) {
        if (!have_best_ || candidate.score() > result_.best_score) {
            result_.best = candidate;
            result_.best_score = candidate.score();
            result_.trace.push_back({elapsed_ms(), result_.best_score});
            have_best_ = true;
        }
        return cfg_.target_score && result_.best_score >= *cfg_.target_score;
    }

    std::uint64_t target_or_max() const {
        return cfg_.target_score.value_or(std::numeric_limits<std::uint64_t>::max());
    }

    SearchResult finish(std::uint64_t iterations, std::uint64_t restarts, const Database& db) {
        result_.iterations = iterations;
        result_.restarts = restarts;
        result_.trace.push_back({elapsed_ms(), result_.best_score});
        // Hard self-check on every run: the cached score must equal a
        // from-scratch recomputation and respect the parity bound.
        if (full_rescore(result_.best, db) != result_.best_score)
            throw std::logic_error("cached score diverged from full rescore");
        if (result_.best_score > parity_upper_bound(db.n_transactions(), result_.best.k()))
            throw std::logic_error("score exceeds the parity upper bound");
        return std::move(result_);
    }

private:
    const SearchConfig& cfg_;
    Clock::time_point t0_;
    SearchResult result_;
    bool have_best_ = false;
};

void validate_common(const SearchConfig& cfg) {
    if (cfg.k < 1) throw std::invalid_argument("k must be at least 1");
    if (cfg.time_budget.count() <= 0) throw std::invalid_argument("time budget must be positive");
}

// Degenerate schema without groups: the space holds exactly one pattern set.
SearchResult trivial_result(const Database& db, const GroupSchema& schema,
                            const SearchConfig& cfg, Rng& rng) {
    Anytime at(cfg);
    at.note(random_pattern_set(schema, cfg.k, rng, db));
    return at.finish(0, 0, db);
}

}  // namespace

Population simple_mutation(const Population& pop, const GroupSchema& schema, const Database& db,
                           Rng& rng) {
    if (pop.size() == 0) throw std::invalid_argument("mutation needs a nonempty population");
    Population out;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        const PatternSet& parent = pop[i];
        add_with_retries(
            out, [&] { return single_flip_neighbor(parent, schema, rng, db); }, parent.k(),
            schema, db, rng);
    }
    return out;
}

Population crossover_population(const Population& pop, const GroupSchema& schema,
                                const Database& db, Rng& rng) {
    if (pop.size() < 2) throw std::invalid_argument("crossover needs at least two members");
    Population out;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        // Parents are drawn once per child; twin collisions re-cross the same
        // pair before the ladder falls back to random sets.
        const PatternSet& mother = pop[rng.index(pop.size())];
        const PatternSet& father = pop[rng.index(pop.size())];
        add_with_retries(
            out, [&] { return uniform_crossover(mother, father, schema, rng, db); },
            mother.k(), schema, db, rng);
    }
    return out;
}

Population select_best(const std::vector<const Population*>& pools, std::size_t p,
                       const GroupSchema& schema, const Database& db, Rng& rng) {
    std::vector<RankedMember> entries;
    std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;
    std::size_t k = 0;
    for (const auto* pool : pools) {
        for (const auto& m : pool->members()) {
            k = m.k();
            auto key = m.canonical_key();
            if (seen.insert(key).second) entries.push_back({&m, std::move(key)});
        }
    }
    if (entries.empty()) throw std::invalid_argument("select_best over empty pools");
    std::stable_sort(entries.begin(), entries.end());

    Population out;
    for (std::size_t i = 0; i < std::min(p, entries.size()); ++i)
        out.force_add(*entries[i].ps);
    while (out.size() < p)
        add_with_retries(
            out, [&] { return random_pattern_set(schema, k, rng, db); }, k, schema, db, rng);
    return out;
}

Population change_population(unsigned percent, const Population& pop, const GroupSchema& schema,
                             const Database& db, Rng& rng) {
    const std::size_t n_change = percent * pop.size() / 100;
    const std::size_t n_keep = pop.size() - n_change;
    auto entries = ranked(pop);

    Population out;
    for (std::size_t i = 0; i < n_keep; ++i) out.force_add(*entries[i].ps);
    std::size_t k = pop.size() ? pop[0].k() : 1;
    for (std::size_t i = 0; i < n_change; ++i)
        add_with_retries(
            out, [&] { return random_pattern_set(schema, k, rng, db); }, k, schema, db, rng);
    return out;
}

SearchResult genetic_search(const Database& db, const GroupSchema& schema,
                            const SearchConfig& cfg, Rng& rng) {
    validate_common(cfg);
    if (cfg.pop_size < 2) throw std::invalid_argument("GA needs pop_size >= 2");
    if (cfg.percent_change == 0 || cfg.percent_change > 100)
        throw std::invalid_argument("percent_change must be in (0, 100]");
    if (schema.n_groups() == 0) return trivial_result(db, schema, cfg, rng);

    Anytime at(cfg);
    Population pop;
    for (std::size_t i = 0; i < cfg.pop_size; ++i)
        add_with_retries(
            pop, [&] { return random_pattern_set(schema, cfg.k, rng, db); }, cfg.k, schema, db,
            rng);

    bool done = at.note(pop.best());
    std::uint64_t generations = 0, restarts = 0;
    std::uint64_t last_gen_best = pop.best_score();
    std::size_t stagnant = 0;

    while (!done && !at.budget_exhausted() && !at.iterations_exhausted(generations)) {
        Population mutated = simple_mutation(pop, schema, db, rng);
        Population crossed = crossover_population(pop, schema, db, rng);
        Population next = select_best({&pop, &mutated, &crossed}, cfg.pop_size, schema, db, rng);
        ++generations;

        std::uint64_t gen_best = next.best_score();
        done = at.note(next.best());

        if (gen_best == last_gen_best) {
            if (++stagnant >= cfg.stagnation_limit) {
                // The incumbent is already archived through the tracker;
                // regenerate most of the population to escape the plateau.
                ++restarts;
                next = change_population(cfg.percent_change, next, schema, db, rng);
                stagnant = 0;
                gen_best = next.best_score();
            }
        } else {
            stagnant = 0;
        }
        last_gen_best = gen_best;
        pop = std::move(next);
        if (cfg.on_generation) cfg.on_generation(pop);
    }
    return at.finish(generations, restarts, db);
}

SearchResult lns_search(const Database& db, const GroupSchema& schema, const SearchConfig& cfg,
                        Rng& rng) {
    validate_common(cfg);
    if (cfg.lns_bit_cap < 1) throw std::invalid_argument("lns_bit_cap must be at least 1");
    if (schema.n_groups() == 0) return trivial_result(db, schema, cfg, rng);

    Anytime at(cfg);
    PatternSet current = random_pattern_set(schema, cfg.k, rng, db);
    bool done = at.note(current);

    const std::size_t max_width = std::min(cfg.lns_bit_cap, cfg.k * schema.n_groups());
    std::size_t width = 1;
    std::uint64_t iterations = 0, escalations = 0;
    std::size_t stagnant = 0;

    while (!done && !at.budget_exhausted() && !at.iterations_exhausted(iterations)) {
        ++iterations;

        PatternSet best_neighbor;
        std::uint64_t best_seen = current.score();
        bool have_neighbor = false;
        std::size_t streamed = 0;
        enumerate_lns_neighbors(current, width, schema, rng, db, cfg.lns_bit_cap,
                                [&](const PatternSet& cand) {
                                    if (cand.score() > best_seen) {
                                        best_seen = cand.score();
                                        best_neighbor = cand;
                                        have_neighbor = true;
                                        if (best_seen >= at.target_or_max()) return false;
                                    }
                                    // Wide neighborhoods check the clock so a
                                    // single stream cannot blow the budget.
                                    if ((++streamed & 1023u) == 0 && at.budget_exhausted())
                                        return false;
                                    return true;
                                });

        if (have_neighbor) {  // strictly better than current by construction
            current = std::move(best_neighbor);
            stagnant = 0;
            done = at.note(current);
        } else if (++stagnant >= cfg.stagnation_limit) {
            stagnant = 0;
            if (width < max_width) {
                ++width;
                ++escalations;
            }
            // At the cap the width stays; positions re-randomize every
            // iteration anyway.
        }
    }
    return at.finish(iterations, escalations, db);
}

SearchResult hill_climb(const Database& db, const GroupSchema& schema, const SearchConfig& cfg,
                        Rng& rng) {
    validate_common(cfg);
    if (schema.n_groups() == 0) return trivial_result(db, schema, cfg, rng);

    Anytime at(cfg);
    PatternSet current = random_pattern_set(schema, cfg.k, rng, db);
    bool done = at.note(current);
    std::uint64_t iterations = 0;

    while (!done && !at.budget_exhausted() && !at.iterations_exhausted(iterations)) {
        ++iterations;
        PatternSet cand = single_flip_neighbor(current, schema, rng, db);
        if (cand.score() > current.score()) {
            current = std::move(cand);
            done = at.note(current);
        }
    }
    return at.finish(iterations, 0, db);
}

SearchResult random_walk(const Database& db, const GroupSchema& schema, const SearchConfig& cfg,
                         Rng& rng) {
    validate_common(cfg);
    Anytime at(cfg);
    bool done = at.note(random_pattern_set(schema, cfg.k, rng, db));
    std::uint64_t iterations = 0;

    while (!done && !at.budget_exhausted() && !at.iterations_exhausted(iterations)) {
        ++iterations;
        done = at.note(random_pattern_set(schema, cfg.k, rng, db));
    }
    return at.finish(iterations, 0, db);
}

SearchResult run_search(const Database& db, const GroupSchema& schema, const SearchConfig& cfg) {
    Rng rng(cfg.seed);
    switch (cfg.algorithm) {
        case Algo::ga: return genetic_search(db, schema, cfg, rng);
        case Algo::lns: return lns_search(db, schema, cfg, rng);
        case Algo::hc: return hill_climb(db, schema, cfg, rng);
        case Algo::rw: return random_walk(db, schema, cfg, rng);
    }
    throw std::invalid_argument("unknown algorithm");
}

}  // namespace divmine
