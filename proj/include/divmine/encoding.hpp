#pragma once

#include <cstdint>
#include <functional>

#include "divmine/dataset.hpp"
#include "divmine/patterns.hpp"
#include "divmine/rng.hpp"

namespace divmine {

// Group-aware relative view of an itemset: per effective group the gene is
// either "absent" or one item of the group. Mutation, crossover and LNS moves
// all work gene-wise, so the exclusivity constraint holds by construction.

inline constexpr std::int32_t kAbsent = -1;

// ≤ 1 item per effective group.
bool is_group_valid(const GroupSchema& schema, const ItemSet& itemset);

// Current choice of (itemset, group): kAbsent or the selected item id.
// Undefined for itemsets violating the group constraint.
std::int32_t gene_of(const GroupSchema& schema, const ItemSet& itemset, std::size_t group);

// Writes the given choice into the itemset's bits for that group.
void set_gene(const GroupSchema& schema, ItemSet& itemset, std::size_t group,
              std::int32_t choice);

// Per group, a choice drawn uniformly from {absent} ∪ items(group).
ItemSet random_itemset(const GroupSchema& schema, Rng& rng);

// k independent random itemsets with coverage/score caches filled.
PatternSet random_pattern_set(const GroupSchema& schema, std::size_t k, Rng& rng,
                              const Database& db);

// Reassigns one uniformly chosen (slot, group) gene to a uniformly chosen
// different value. Exactly one gene differs from the input. Throws LimitError
// when the schema has no groups at all (no neighbors exist).
PatternSet single_flip_neighbor(const PatternSet& ps, const GroupSchema& schema, Rng& rng,
                                const Database& db);

// Samples n distinct (slot, group) positions plus one alternative value each,
// then streams all 2^n pattern sets formed by applying each subset of those
// changes (the empty subset reproduces ps). Enumeration is Gray-coded so each
// step costs one slot rescore; nothing is materialized. visit returning false
// stops the stream. Throws LimitError when n exceeds the cap or the number of
// changeable positions.
void enumerate_lns_neighbors(const PatternSet& ps, std::size_t n, const GroupSchema& schema,
                             Rng& rng, const Database& db, std::size_t bit_cap,
                             const std::function<bool(const PatternSet&)>& visit);

// Gene-wise uniform crossover: each (slot, group) gene comes from a or b with
// equal probability. Slots are aligned positionally. Requires a.k == b.k.
PatternSet uniform_crossover(const PatternSet& a, const PatternSet& b,
                             const GroupSchema& schema, Rng& rng, const Database& db);

}  // namespace divmine
