#pragma once

#include <cstdint>

#include "divmine/dataset.hpp"
#include "divmine/patterns.hpp"

namespace divmine {

struct OracleLimits {
    std::size_t max_items = 10;
    std::size_t max_k = 3;
    std::uint64_t max_states = 10'000'000;  // (per-itemset domain)^k must stay below
};

struct OracleResult {
    std::uint64_t best_score = 0;
    PatternSet best;
    std::uint64_t multisets_visited = 0;
};

// Exact maximum of obj_dispersion over all group-valid k-multisets of
// itemsets (the objective is order-invariant, so ordered tuples would only
// multiply the work by ~k!). Ties resolve to the lexicographically least
// multiset in enumeration order. Throws LimitError, reporting the computed
// state count, when the instance exceeds the limits.
OracleResult exhaustive_best(const Database& db, const GroupSchema& schema, std::size_t k,
                             const OracleLimits& limits = {});

// n_transactions * floor(k/2) * ceil(k/2): per transaction, m of k coverage
// bits set contribute m(k-m) pairwise XOR terms, maximized at m = floor(k/2).
std::uint64_t parity_upper_bound(std::size_t n_transactions, std::size_t k);

}  // namespace divmine
