#include "divmine/oracle.hpp"

#include <string>
#include <vector>

#include "divmine/errors.hpp"

namespace divmine {

namespace {

// Mixed-radix decode with group 0 as the most significant digit and, within a
// group, absent < first item < second item < ...; index order therefore
// matches lexicographic order over gene tuples.
ItemSet decode_itemset(std::uint64_t index, const GroupSchema& schema) {
    ItemSet is{BitVec(schema.n_items())};
    for (std::size_t g = schema.n_groups(); g-- > 0;) {
        const std::uint64_t radix = schema.domain_size(g);
        const std::uint64_t digit = index % radix;
        index /= radix;
        if (digit > 0) is.bits.set(schema.group(g)[static_cast<std::size_t>(digit - 1)]);
    }
    return is;
}

}  // namespace

std::uint64_t parity_upper_bound(std::size_t n_transactions, std::size_t k) {
    return static_cast<std::uint64_t>(n_transactions) * (k / 2) * (k - k / 2);
}

OracleResult exhaustive_best(const Database& db, const GroupSchema& schema, std::size_t k,
                             const OracleLimits& limits) {
    if (k < 1) throw LimitError("oracle requires k >= 1");
    if (db.n_items() > limits.max_items)
        throw LimitError("oracle refuses " + std::to_string(db.n_items()) +
                         " items (max_items=" + std::to_string(limits.max_items) + ")");
    if (k > limits.max_k)
        throw LimitError("oracle refuses k=" + std::to_string(k) +
                         " (max_k=" + std::to_string(limits.max_k) + ")");

    std::uint64_t domain = 1;
    for (std::size_t g = 0; g < schema.n_groups(); ++g) {
        if (domain > limits.max_states / schema.domain_size(g))
            throw LimitError("oracle refuses: per-itemset domain alone exceeds max_states=" +
                             std::to_string(limits.max_states));
        domain *= schema.domain_size(g);
    }
    std::uint64_t states = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (domain != 0 && states > limits.max_states / domain)
            throw LimitError("oracle refuses: state count " + std::to_string(domain) + "^" +
                             std::to_string(k) + " exceeds max_states=" +
                             std::to_string(limits.max_states));
        states *= domain;
    }

    if (k == 1) {
        // Every singleton multiset scores 0; the lex-least one is index 0.
        OracleResult result;
        result.best = PatternSet::from_itemsets({decode_itemset(0, schema)}, db);
        result.multisets_visited = 1;
        return result;
    }

    // All candidate coverages fit comfortably once the state bound holds.
    std::vector<Coverage> covs;
    covs.reserve(domain);
    for (std::uint64_t i = 0; i < domain; ++i)
        covs.push_back(coverage(db, decode_itemset(i, schema)));

    OracleResult result;
    std::uint64_t best = 0;
    std::vector<std::uint64_t> pick(k, 0), best_pick(k, 0);
    std::vector<std::uint64_t> prefix(k + 1, 0);
    bool have_best = false;

    // DFS over non-decreasing index tuples; first strict improvement keeps
    // the lexicographically least optimal multiset.
    std::size_t depth = 0;
    pick[0] = 0;
    while (true) {
        if (pick[depth] == domain) {
            if (depth == 0) break;
            --depth;
            ++pick[depth];
            continue;
        }
        std::uint64_t gained = 0;
        for (std::size_t d = 0; d < depth; ++d)
            gained += xor_count(covs[pick[d]].bits, covs[pick[depth]].bits);
        prefix[depth + 1] = prefix[depth] + gained;

        if (depth + 1 == k) {
            ++result.multisets_visited;
            if (!have_best || prefix[k] > best) {
                best = prefix[k];
                best_pick = pick;
                have_best = true;
            }
            ++pick[depth];
        } else {
            ++depth;
            pick[depth] = pick[depth - 1];
        }
    }

    std::vector<ItemSet> best_sets;
    best_sets.reserve(k);
    for (auto idx : best_pick) best_sets.push_back(decode_itemset(idx, schema));
    result.best = PatternSet::from_itemsets(std::move(best_sets), db);
    result.best_score = best;
    return result;
}

}  // namespace divmine
