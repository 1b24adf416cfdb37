#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "divmine/bitvec.hpp"
#include "divmine/dataset.hpp"

namespace divmine {

// Bit vector over items.
struct ItemSet {
    BitVec bits;

    bool operator==(const ItemSet& o) const = default;
};

// Bit vector over transactions: the pattern's footprint in the database.
struct Coverage {
    BitVec bits;

    bool operator==(const Coverage& o) const = default;
};

// Transactions containing every item of the set. The empty itemset covers
// everything (vacuous conjunction).
Coverage coverage(const Database& db, const ItemSet& itemset);

std::size_t support(const Database& db, const ItemSet& itemset);

// Hamming distance between two coverages: the diversity measure between two
// patterns.
std::size_t xor_dispersion(const Coverage& a, const Coverage& b);

// Rückert-style ±1-coded similarity, kept for comparison output only. Equals
// n_transactions - 2 * xor_dispersion(a, b) and is -|T| for complements.
long long legacy_dispersion(const Coverage& a, const Coverage& b);

// Order-insensitive identity of a pattern set: its itemsets sorted
// lexicographically. Two pattern sets are twins iff their keys are equal.
using CanonicalKey = std::vector<BitVec>;

struct CanonicalKeyHash {
    std::size_t operator()(const CanonicalKey& k) const {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (const auto& v : k) h = h * 0x100000001b3ull ^ v.hash();
        return h;
    }
};

bool canonical_key_less(const CanonicalKey& a, const CanonicalKey& b);

// Ordered list of k itemsets with cached coverages and cached objective
// score. Caches are maintained by construction: every mutation path runs
// through replace_slot, so they are never stale.
class PatternSet {
public:
    PatternSet() = default;

    static PatternSet from_itemsets(std::vector<ItemSet> itemsets, const Database& db);

    std::size_t k() const { return itemsets_.size(); }
    const ItemSet& itemset(std::size_t p) const { return itemsets_[p]; }
    const Coverage& cover(std::size_t p) const { return coverages_[p]; }
    const std::vector<ItemSet>& itemsets() const { return itemsets_; }

    std::uint64_t score() const { return score_; }

    // Recomputes only coverages_[slot] and the k-1 pairwise terms touching
    // slot; single-slot moves dominate every search loop.
    void replace_slot(std::size_t slot, ItemSet itemset, const Database& db);

    CanonicalKey canonical_key() const;

    bool operator==(const PatternSet& o) const {
        return itemsets_ == o.itemsets_;
    }

private:
    std::vector<ItemSet> itemsets_;
    std::vector<Coverage> coverages_;
    std::uint64_t score_ = 0;
};

// Sum of xor_dispersion over all unordered pairs: the maximized objective.
std::uint64_t obj_dispersion(const PatternSet& ps);

// Value-returning form of PatternSet::replace_slot.
PatternSet rescore_slot(const PatternSet& ps, std::size_t slot, ItemSet itemset,
                        const Database& db);

// From-scratch recomputation (fresh coverages, full pair sum). Verification
// route for the incremental caches; must stay independent of replace_slot.
std::uint64_t full_rescore(const PatternSet& ps, const Database& db);

std::string describe(const PatternSet& ps, const Database& db);

}  // namespace divmine
