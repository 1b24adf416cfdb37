#include <doctest.h>

#include <algorithm>
#include <set>

#include "divmine/oracle.hpp"
#include "divmine/search.hpp"
#include "test_util.hpp"

using namespace divmine;
using namespace testutil;

namespace {

bool twin_free(const Population& pop) {
    std::set<std::string> keys;
    for (const auto& m : pop.members()) {
        std::string key;
        for (const auto& bits : m.canonical_key()) key += bits.to_string01() + "|";
        keys.insert(key);
    }
    return keys.size() == pop.size();
}

Population make_population(const std::vector<PatternSet>& members) {
    Population pop;
    for (const auto& m : members) pop.force_add(m);
    return pop;
}

bool monotone(const std::vector<TracePoint>& trace) {
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].score < trace[i - 1].score) return false;
        if (trace[i].elapsed_ms < trace[i - 1].elapsed_ms) return false;
    }
    return !trace.empty();
}

}  // namespace

TEST_CASE("simple_mutation produces distinct one-flip children") {
    Rng rng(73);
    Database db = random_db(8, 16, rng);
    GroupSchema schema = GroupSchema::singletons(8);

    Population solo = make_population({random_pattern_set(schema, 2, rng, db)});
    Population child = simple_mutation(solo, schema, db, rng);
    REQUIRE(child.size() == 1);
    std::size_t delta = 0;
    for (std::size_t i = 0; i < 8; ++i) {
        delta += child[0].itemset(0).bits.test(i) != solo[0].itemset(0).bits.test(i);
        delta += child[0].itemset(1).bits.test(i) != solo[0].itemset(1).bits.test(i);
    }
    CHECK(delta == 1);

    for (int trial = 0; trial < 500; ++trial) {
        Population pop;
        while (pop.size() < 6) pop.try_add(random_pattern_set(schema, 2, rng, db));
        Population mutated = simple_mutation(pop, schema, db, rng);
        CHECK(mutated.size() == pop.size());
        CHECK(twin_free(mutated));
    }
}

TEST_CASE("crossover_population stays twin-free even for identical parents") {
    Rng rng(79);
    Database db = random_db(6, 12, rng);
    GroupSchema schema = GroupSchema::singletons(6);

    PatternSet same = random_pattern_set(schema, 2, rng, db);
    Population clones = make_population({same, same, same});
    Population children = crossover_population(clones, schema, db, rng);
    CHECK(children.size() == 3);
    CHECK(twin_free(children));

    // healthy case: sizes preserved over random pools
    for (int trial = 0; trial < 50; ++trial) {
        Population pop;
        while (pop.size() < 5) pop.try_add(random_pattern_set(schema, 3, rng, db));
        Population crossed = crossover_population(pop, schema, db, rng);
        CHECK(crossed.size() == 5);
        CHECK(twin_free(crossed));
    }
}

TEST_CASE("select_best deduplicates, ranks, and pads") {
    Rng rng(83);
    Database db = table1();
    GroupSchema schema = GroupSchema::singletons(5);

    PatternSet shared = PatternSet::from_itemsets({items({}, 5), items({1, 4}, 5)}, db);
    REQUIRE(shared.score() == 6);
    PatternSet mid = PatternSet::from_itemsets({items({1, 2}, 5), items({2, 3}, 5)}, db);
    PatternSet low = PatternSet::from_itemsets({items({2}, 5), items({2}, 5)}, db);

    Population a = make_population({shared, mid});
    Population b = make_population({shared, low});
    Population out = select_best({&a, &b}, 3, schema, db, rng);
    REQUIRE(out.size() == 3);
    CHECK(twin_free(out));  // the shared best appears exactly once
    CHECK(out.best_score() == 6);

    // padding: ask for more members than exist
    Population padded = select_best({&a}, 6, schema, db, rng);
    CHECK(padded.size() == 6);
    CHECK(padded.best_score() == 6);
}

TEST_CASE("select_best beats every other subset of the candidates") {
    Rng rng(89);
    Database db = random_db(7, 14, rng);
    GroupSchema schema = GroupSchema::singletons(7);
    for (int trial = 0; trial < 20; ++trial) {
        Population pool;
        while (pool.size() < 10) pool.try_add(random_pattern_set(schema, 2, rng, db));
        const std::size_t p = 4;
        Population chosen = select_best({&pool}, p, schema, db, rng);

        std::vector<std::uint64_t> got;
        for (const auto& m : chosen.members()) got.push_back(m.score());
        std::sort(got.rbegin(), got.rend());

        // brute force over all p-subsets of the pool
        std::vector<std::size_t> idx(pool.size());
        for (std::size_t i = 0; i < pool.size(); ++i) idx[i] = i;
        std::vector<bool> mask(pool.size(), false);
        std::fill(mask.begin(), mask.begin() + p, true);
        do {
            std::vector<std::uint64_t> alt;
            for (std::size_t i = 0; i < pool.size(); ++i)
                if (mask[i]) alt.push_back(pool[i].score());
            std::sort(alt.rbegin(), alt.rend());
            for (std::size_t i = 0; i < p; ++i) CHECK(got[i] >= alt[i]);
        } while (std::prev_permutation(mask.begin(), mask.end()));
    }
}

TEST_CASE("select_best tie-break is deterministic") {
    Rng rng1(97), rng2(97);
    Database db = table1();
    GroupSchema schema = GroupSchema::singletons(5);
    // all members score 0 (k=1): selection must order purely by canonical key
    Population pool;
    Rng fill(101);
    while (pool.size() < 8) pool.try_add(random_pattern_set(schema, 1, fill, db));
    Population first = select_best({&pool}, 4, schema, db, rng1);
    Population second = select_best({&pool}, 4, schema, db, rng2);
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) CHECK(first[i] == second[i]);
    for (std::size_t i = 1; i < first.size(); ++i)
        CHECK(canonical_key_less(first[i - 1].canonical_key(), first[i].canonical_key()));
}

TEST_CASE("change_population keeps exactly the top remainder") {
    Rng rng(103);
    Database db = random_db(8, 20, rng);
    GroupSchema schema = GroupSchema::singletons(8);

    Population pop;
    while (pop.size() < 100) pop.try_add(random_pattern_set(schema, 2, rng, db));

    std::vector<std::uint64_t> scores;
    for (const auto& m : pop.members()) scores.push_back(m.score());
    std::sort(scores.rbegin(), scores.rend());

    Population changed = change_population(90, pop, schema, db, rng);
    REQUIRE(changed.size() == 100);
    CHECK(twin_free(changed));
    // survivors are the previous top-10 (members 0..9 of the changed pool)
    std::vector<std::uint64_t> survivor_scores;
    for (std::size_t i = 0; i < 10; ++i) survivor_scores.push_back(changed[i].score());
    std::sort(survivor_scores.rbegin(), survivor_scores.rend());
    for (std::size_t i = 0; i < 10; ++i) CHECK(survivor_scores[i] == scores[i]);

    Population reseeded = change_population(100, pop, schema, db, rng);
    CHECK(reseeded.size() == 100);
    CHECK(twin_free(reseeded));

    Population small;
    while (small.size() < 10) small.try_add(random_pattern_set(schema, 2, rng, db));
    Population unchanged = change_population(5, small, schema, db, rng);  // floor(0.5) = 0
    REQUIRE(unchanged.size() == 10);
    for (std::size_t i = 0; i < 10; ++i)
        CHECK(std::find(small.members().begin(), small.members().end(), unchanged[i]) !=
              small.members().end());
}

TEST_CASE("genetic search finds the oracle optimum on the worked example") {
    Database db = table1();
    GroupSchema schema = GroupSchema::singletons(5);
    const auto oracle = exhaustive_best(db, schema, 3);
    REQUIRE(oracle.best_score == 12);

    SearchConfig cfg;
    cfg.algorithm = Algo::ga;
    cfg.k = 3;
    cfg.seed = 7;
    cfg.pop_size = 30;
    cfg.time_budget = std::chrono::milliseconds(5000);
    cfg.target_score = oracle.best_score;

    std::size_t generations_seen = 0;
    bool invariants_held = true;
    cfg.on_generation = [&](const Population& pop) {
        ++generations_seen;
        invariants_held = invariants_held && pop.size() == 30 && twin_free(pop);
    };

    Rng rng(cfg.seed);
    SearchResult res = genetic_search(db, schema, cfg, rng);
    CHECK(res.best_score == 12);
    CHECK(monotone(res.trace));
    CHECK(res.trace.back().score == res.best_score);
    CHECK(invariants_held);
    CHECK(generations_seen == res.iterations);
    CHECK(full_rescore(res.best, db) == res.best_score);
}

TEST_CASE("lns reaches the k=2 optimum on the worked example") {
    Database db = table1();
    GroupSchema schema = GroupSchema::singletons(5);
    REQUIRE(exhaustive_best(db, schema, 2).best_score == 6);

    SearchConfig cfg;
    cfg.algorithm = Algo::lns;
    cfg.k = 2;
    cfg.seed = 3;
    cfg.time_budget = std::chrono::milliseconds(5000);
    cfg.target_score = 6;
    Rng rng(cfg.seed);
    SearchResult res = lns_search(db, schema, cfg, rng);
    CHECK(res.best_score == 6);
    CHECK(monotone(res.trace));
}

TEST_CASE("lns escalates exactly at stagnation multiples") {
    // no transactions: every score is 0, so nothing ever improves
    Database frozen = Database::from_rows(5, {});
    GroupSchema schema = GroupSchema::singletons(5);

    SearchConfig cfg;
    cfg.algorithm = Algo::lns;
    cfg.k = 2;
    cfg.seed = 11;
    cfg.stagnation_limit = 100;
    cfg.time_budget = std::chrono::milliseconds(60000);
    cfg.iteration_limit = 350;
    Rng rng(cfg.seed);
    SearchResult res = lns_search(frozen, schema, cfg, rng);
    CHECK(res.iterations == 350);
    CHECK(res.restarts == 3);  // escalations at 100, 200, 300
    CHECK(res.best_score == 0);

    cfg.iteration_limit = 99;
    Rng rng2(cfg.seed);
    CHECK(lns_search(frozen, schema, cfg, rng2).restarts == 0);
}

TEST_CASE("hill climbing improves monotonically") {
    Rng seed_rng(107);
    Database db = random_db(10, 30, seed_rng);
    GroupSchema schema = GroupSchema::singletons(10);

    SearchConfig cfg;
    cfg.algorithm = Algo::hc;
    cfg.k = 3;
    cfg.seed = 5;
    cfg.time_budget = std::chrono::milliseconds(10000);
    cfg.iteration_limit = 2000;
    Rng rng(cfg.seed);
    SearchResult res = hill_climb(db, schema, cfg, rng);
    CHECK(monotone(res.trace));
    CHECK(res.trace.back().score == res.best_score);
    CHECK(res.best_score >= res.trace.front().score);
}

TEST_CASE("hill climbing solves a one-item space immediately") {
    Database db = Database::from_rows(1, {BitVec(1)});  // one empty transaction
    GroupSchema schema = GroupSchema::singletons(1);
    SearchConfig cfg;
    cfg.algorithm = Algo::hc;
    cfg.k = 2;
    cfg.seed = 1;
    cfg.time_budget = std::chrono::milliseconds(10000);
    cfg.iteration_limit = 50;
    Rng rng(cfg.seed);
    SearchResult res = hill_climb(db, schema, cfg, rng);
    CHECK(res.best_score == 1);  // {} vs {0}
}

TEST_CASE("random walk keeps the running maximum") {
    Rng seed_rng(109);
    Database db = random_db(8, 16, seed_rng);
    GroupSchema schema = GroupSchema::singletons(8);

    SearchConfig cfg;
    cfg.algorithm = Algo::rw;
    cfg.k = 3;
    cfg.seed = 13;
    cfg.time_budget = std::chrono::milliseconds(10000);
    cfg.iteration_limit = 500;
    Rng rng(cfg.seed);
    SearchResult res = random_walk(db, schema, cfg, rng);
    CHECK(monotone(res.trace));
    CHECK(res.trace.back().score == res.best_score);
    CHECK(res.iterations == 500);
}

TEST_CASE("same seed replays the same score sequence") {
    Rng seed_rng(113);
    Database db = random_db(9, 18, seed_rng);
    GroupSchema schema = GroupSchema::singletons(9);

    for (Algo algo : {Algo::ga, Algo::lns, Algo::hc, Algo::rw}) {
        SearchConfig cfg;
        cfg.algorithm = algo;
        cfg.k = 2;
        cfg.seed = 21;
        cfg.pop_size = 12;
        cfg.time_budget = std::chrono::milliseconds(60000);
        cfg.iteration_limit = 60;
        SearchResult a = run_search(db, schema, cfg);
        SearchResult b = run_search(db, schema, cfg);
        CHECK(a.best_score == b.best_score);
        REQUIRE(a.trace.size() == b.trace.size());
        for (std::size_t i = 0; i < a.trace.size(); ++i)
            CHECK(a.trace[i].score == b.trace[i].score);
        CHECK(a.best == b.best);
    }
}

TEST_CASE("searches return promptly on tiny budgets") {
    Rng seed_rng(127);
    Database db = random_db(12, 60, seed_rng);
    GroupSchema schema = GroupSchema::singletons(12);
    for (Algo algo : {Algo::ga, Algo::lns, Algo::hc, Algo::rw}) {
        SearchConfig cfg;
        cfg.algorithm = algo;
        cfg.k = 2;
        cfg.seed = 3;
        cfg.pop_size = 10;
        cfg.time_budget = std::chrono::milliseconds(150);
        SearchResult res = run_search(db, schema, cfg);
        CHECK(res.trace.back().elapsed_ms < 5000);  // generous: one iteration of slack
        CHECK(res.best_score == full_rescore(res.best, db));
    }
}

TEST_CASE("config validation") {
    Database db = table1();
    GroupSchema schema = GroupSchema::singletons(5);
    SearchConfig cfg;
    cfg.k = 0;
    CHECK_THROWS_AS(run_search(db, schema, cfg), std::invalid_argument);
    cfg.k = 2;
    cfg.pop_size = 1;
    cfg.algorithm = Algo::ga;
    CHECK_THROWS_AS(run_search(db, schema, cfg), std::invalid_argument);
    cfg.pop_size = 10;
    cfg.percent_change = 0;
    CHECK_THROWS_AS(run_search(db, schema, cfg), std::invalid_argument);
    cfg.percent_change = 101;
    CHECK_THROWS_AS(run_search(db, schema, cfg), std::invalid_argument);
}
