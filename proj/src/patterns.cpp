#include "divmine/patterns.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace divmine {

Coverage coverage(const Database& db, const ItemSet& itemset) {
    if (itemset.bits.size() != db.n_items())
        throw std::invalid_argument("itemset length does not match n_items");
    // Conjunction over the chosen items' columns; empty conjunction is true
    // everywhere.
    Coverage cov{BitVec::ones(db.n_transactions())};
    const auto words = itemset.bits.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t bits = words[w];
        while (bits) {
            const std::size_t item = (w << 6) + static_cast<std::size_t>(std::countr_zero(bits));
            cov.bits.and_with(db.item_bitmap(item));
            bits &= bits - 1;
        }
    }
    return cov;
}

std::size_t support(const Database& db, const ItemSet& itemset) {
    return coverage(db, itemset).bits.count();
}

std::size_t xor_dispersion(const Coverage& a, const Coverage& b) {
    if (a.bits.size() != b.bits.size())
        throw std::invalid_argument("coverage length mismatch");
    return xor_count(a.bits, b.bits);
}

long long legacy_dispersion(const Coverage& a, const Coverage& b) {
    if (a.bits.size() != b.bits.size())
        throw std::invalid_argument("coverage length mismatch");
    const auto n = static_cast<long long>(a.bits.size());
    return n - 2 * static_cast<long long>(xor_count(a.bits, b.bits));
}

bool canonical_key_less(const CanonicalKey& a, const CanonicalKey& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

PatternSet PatternSet::from_itemsets(std::vector<ItemSet> itemsets, const Database& db) {
    PatternSet ps;
    ps.itemsets_ = std::move(itemsets);
    ps.coverages_.reserve(ps.itemsets_.size());
    for (const auto& is : ps.itemsets_) ps.coverages_.push_back(coverage(db, is));
    ps.score_ = 0;
    for (std::size_t i = 0; i < ps.coverages_.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            ps.score_ += xor_count(ps.coverages_[i].bits, ps.coverages_[j].bits);
    return ps;
}

void PatternSet::replace_slot(std::size_t slot, ItemSet itemset, const Database& db) {
    if (slot >= itemsets_.size()) throw std::out_of_range("slot out of range");
    Coverage fresh = coverage(db, itemset);
    std::uint64_t removed = 0, added = 0;
    for (std::size_t q = 0; q < coverages_.size(); ++q) {
        if (q == slot) continue;
        removed += xor_count(coverages_[slot].bits, coverages_[q].bits);
        added += xor_count(fresh.bits, coverages_[q].bits);
    }
    score_ = score_ - removed + added;
    coverages_[slot] = std::move(fresh);
    itemsets_[slot] = std::move(itemset);
}

CanonicalKey PatternSet::canonical_key() const {
    CanonicalKey key;
    key.reserve(itemsets_.size());
    for (const auto& is : itemsets_) key.push_back(is.bits);
    std::sort(key.begin(), key.end());
    return key;
}

std::uint64_t obj_dispersion(const PatternSet& ps) { return ps.score(); }

PatternSet rescore_slot(const PatternSet& ps, std::size_t slot, ItemSet itemset,
                        const Database& db) {
    PatternSet out = ps;
    out.replace_slot(slot, std::move(itemset), db);
    return out;
}

std::uint64_t full_rescore(const PatternSet& ps, const Database& db) {
    std::vector<Coverage> covs;
    covs.reserve(ps.k());
    for (std::size_t p = 0; p < ps.k(); ++p) covs.push_back(coverage(db, ps.itemset(p)));
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < covs.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) total += xor_count(covs[i].bits, covs[j].bits);
    return total;
}

std::string describe(const PatternSet& ps, const Database& db) {
    std::ostringstream out;
    for (std::size_t p = 0; p < ps.k(); ++p) {
        out << "  [" << p << "] {";
        bool first = true;
        for (std::size_t i = 0; i < ps.itemset(p).bits.size(); ++i) {
            if (!ps.itemset(p).bits.test(i)) continue;
            if (!first) out << ' ';
            out << i;
            first = false;
        }
        out << "} support=" << ps.cover(p).bits.count() << '\n';
    }
    out << "  score=" << ps.score() << " (of " << db.n_transactions() << " transactions)";
    return out.str();
}

}  // namespace divmine
