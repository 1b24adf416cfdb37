#include "divmine/encoding.hpp"

#include <algorithm>

#include "divmine/errors.hpp"

namespace divmine {

bool is_group_valid(const GroupSchema& schema, const ItemSet& itemset) {
    if (itemset.bits.size() != schema.n_items()) return false;
    for (std::size_t g = 0; g < schema.n_groups(); ++g) {
        int chosen = 0;
        for (auto item : schema.group(g))
            if (itemset.bits.test(item) && ++chosen > 1) return false;
    }
    return true;
}

std::int32_t gene_of(const GroupSchema& schema, const ItemSet& itemset, std::size_t group) {
    for (auto item : schema.group(group))
        if (itemset.bits.test(item)) return static_cast<std::int32_t>(item);
    return kAbsent;
}

void set_gene(const GroupSchema& schema, ItemSet& itemset, std::size_t group,
              std::int32_t choice) {
    for (auto item : schema.group(group)) itemset.bits.reset(item);
    if (choice != kAbsent) itemset.bits.set(static_cast<std::size_t>(choice));
}

namespace {

// Uniform over {absent} ∪ items(group).
std::int32_t random_choice(const GroupSchema& schema, std::size_t group, Rng& rng) {
    const auto members = schema.group(group);
    const std::size_t pick = rng.index(members.size() + 1);
    return pick == 0 ? kAbsent : static_cast<std::int32_t>(members[pick - 1]);
}

// Uniform over the domain minus the current choice.
std::int32_t random_other_choice(const GroupSchema& schema, std::size_t group,
                                 std::int32_t current, Rng& rng) {
    const auto members = schema.group(group);
    // Domain laid out as [absent, members...]; skip past the current value.
    const std::size_t cur_pos =
        current == kAbsent
            ? 0
            : 1 + static_cast<std::size_t>(
                      std::lower_bound(members.begin(), members.end(),
                                       static_cast<std::uint32_t>(current)) -
                      members.begin());
    std::size_t pick = rng.index(members.size());  // domain size - 1 alternatives
    if (pick >= cur_pos) ++pick;
    return pick == 0 ? kAbsent : static_cast<std::int32_t>(members[pick - 1]);
}

}  // namespace

ItemSet random_itemset(const GroupSchema& schema, Rng& rng) {
    ItemSet is{BitVec(schema.n_items())};
    for (std::size_t g = 0; g < schema.n_groups(); ++g) {
        const std::int32_t choice = random_choice(schema, g, rng);
        if (choice != kAbsent) is.bits.set(static_cast<std::size_t>(choice));
    }
    return is;
}

PatternSet random_pattern_set(const GroupSchema& schema, std::size_t k, Rng& rng,
                              const Database& db) {
    std::vector<ItemSet> itemsets;
    itemsets.reserve(k);
    for (std::size_t p = 0; p < k; ++p) itemsets.push_back(random_itemset(schema, rng));
    return PatternSet::from_itemsets(std::move(itemsets), db);
}

PatternSet single_flip_neighbor(const PatternSet& ps, const GroupSchema& schema, Rng& rng,
                                const Database& db) {
    if (schema.n_groups() == 0) throw LimitError("no neighbors exist: schema has no groups");
    const std::size_t slot = rng.index(ps.k());
    const std::size_t group = rng.index(schema.n_groups());
    const std::int32_t current = gene_of(schema, ps.itemset(slot), group);
    const std::int32_t next = random_other_choice(schema, group, current, rng);

    ItemSet changed = ps.itemset(slot);
    set_gene(schema, changed, group, next);
    return rescore_slot(ps, slot, std::move(changed), db);
}

void enumerate_lns_neighbors(const PatternSet& ps, std::size_t n, const GroupSchema& schema,
                             Rng& rng, const Database& db, std::size_t bit_cap,
                             const std::function<bool(const PatternSet&)>& visit) {
    if (n < 1) throw LimitError("LNS width must be at least 1");
    if (n > bit_cap)
        throw LimitError("LNS width " + std::to_string(n) + " exceeds the cap of " +
                         std::to_string(bit_cap));
    const std::size_t total_positions = ps.k() * schema.n_groups();
    if (n > total_positions)
        throw LimitError("LNS width " + std::to_string(n) + " exceeds the " +
                         std::to_string(total_positions) + " changeable positions");

    // Sample n distinct (slot, group) positions without replacement, then
    // pre-bind one alternative value for each.
    std::vector<std::size_t> positions(total_positions);
    for (std::size_t i = 0; i < total_positions; ++i) positions[i] = i;
    for (std::size_t i = 0; i < n; ++i)
        std::swap(positions[i], positions[i + rng.index(total_positions - i)]);
    positions.resize(n);

    struct Change {
        std::size_t slot, group;
        std::int32_t original, alternative;
    };
    std::vector<Change> changes;
    changes.reserve(n);
    for (auto pos : positions) {
        Change c;
        c.slot = pos / schema.n_groups();
        c.group = pos % schema.n_groups();
        c.original = gene_of(schema, ps.itemset(c.slot), c.group);
        c.alternative = random_other_choice(schema, c.group, c.original, rng);
        changes.push_back(c);
    }

    // Gray-code walk: consecutive subsets differ in one position, so every
    // step is a single slot rescore of the working copy.
    PatternSet work = ps;
    std::vector<bool> applied(n, false);
    if (!visit(work)) return;  // empty subset
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < count; ++step) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(step));
        const Change& c = changes[bit];
        applied[bit] = !applied[bit];
        ItemSet changed = work.itemset(c.slot);
        set_gene(schema, changed, c.group, applied[bit] ? c.alternative : c.original);
        work.replace_slot(c.slot, std::move(changed), db);
        if (!visit(work)) return;
    }
}

PatternSet uniform_crossover(const PatternSet& a, const PatternSet& b,
                             const GroupSchema& schema, Rng& rng, const Database& db) {
    if (a.k() != b.k()) throw std::invalid_argument("crossover parents must share k");
    std::vector<ItemSet> itemsets;
    itemsets.reserve(a.k());
    for (std::size_t p = 0; p < a.k(); ++p) {
        ItemSet child{BitVec(schema.n_items())};
        for (std::size_t g = 0; g < schema.n_groups(); ++g) {
            const PatternSet& src = rng.coin() ? a : b;
            const std::int32_t choice = gene_of(schema, src.itemset(p), g);
            if (choice != kAbsent) child.bits.set(static_cast<std::size_t>(choice));
        }
        itemsets.push_back(std::move(child));
    }
    return PatternSet::from_itemsets(std::move(itemsets), db);
}

}  // namespace divmine
