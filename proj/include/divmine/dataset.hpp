#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "divmine/bitvec.hpp"

namespace divmine {

struct ParseOptions {
    enum class Indexing { zero_based, one_based };

    bool has_class_column = false;
    Indexing indexing = Indexing::zero_based;
    // Item ids above this are treated as a mis-parsed file rather than data.
    std::uint64_t max_item_id = 1u << 20;
};

// Immutable binary transaction matrix. rows is the per-transaction item view,
// cols the per-item transaction view; they are exact transposes. Class labels
// are carried through as opaque tokens and never enter any objective.
class Database {
public:
    Database() = default;

    static Database from_rows(std::size_t n_items, std::vector<BitVec> rows,
                              std::vector<std::string> labels = {}, std::string name = "");

    std::size_t n_items() const { return n_items_; }
    std::size_t n_transactions() const { return rows_.size(); }

    const BitVec& row(std::size_t t) const { return rows_[t]; }
    const std::vector<BitVec>& rows() const { return rows_; }

    // Column view: bit t set iff transaction t contains the item.
    const BitVec& item_bitmap(std::size_t item) const;

    bool has_labels() const { return !labels_.empty(); }
    const std::vector<std::string>& labels() const { return labels_; }

    const std::string& name() const { return name_; }

    bool operator==(const Database& o) const {
        return n_items_ == o.n_items_ && rows_ == o.rows_ && labels_ == o.labels_;
    }

    // Canonical fixture form: header "n_items n_transactions has_labels",
    // then one 0/1 string per transaction (plus the label when present).
    void serialize(std::ostream& out) const;
    static Database deserialize(std::istream& in, std::string name = "");

private:
    std::size_t n_items_ = 0;
    std::vector<BitVec> rows_;
    std::vector<BitVec> cols_;
    std::vector<std::string> labels_;
    std::string name_;
};

// Partition of items into mutually exclusive attribute groups. Items not
// listed in any explicit group form implicit singleton groups, so the
// effective groups always partition {0..n_items-1}.
class GroupSchema {
public:
    GroupSchema() = default;

    static GroupSchema singletons(std::size_t n_items);
    // explicit_groups must be disjoint, non-empty, with ids < n_items.
    static GroupSchema from_groups(std::vector<std::vector<std::uint32_t>> explicit_groups,
                                   std::size_t n_items);

    std::size_t n_items() const { return n_items_; }
    std::size_t n_groups() const { return groups_.size(); }
    std::size_t n_explicit_groups() const { return n_explicit_; }

    std::span<const std::uint32_t> group(std::size_t g) const { return groups_[g]; }
    std::size_t group_of(std::size_t item) const { return group_of_[item]; }

    // |{absent} ∪ items(g)|
    std::size_t domain_size(std::size_t g) const { return groups_[g].size() + 1; }

private:
    std::size_t n_items_ = 0;
    std::size_t n_explicit_ = 0;
    std::vector<std::vector<std::uint32_t>> groups_;
    std::vector<std::uint32_t> group_of_;
};

// One transaction per nonempty line, whitespace-separated item ids, optional
// trailing class token (CP4IM style). Lines may end in LF or CRLF.
Database parse_transactions(std::istream& in, const ParseOptions& opts = {},
                            std::string name = "");

// Strict dense reader: every line is n_items comma- or whitespace-separated
// 0/1 cells, optionally followed by a class cell.
Database parse_dense_csv(std::istream& in, const ParseOptions& opts = {}, std::string name = "");

// One group per nonempty line, listing its item ids. Unlisted items become
// singleton groups.
GroupSchema parse_groups(std::istream& in, std::size_t n_items);

Database load_transactions_file(const std::string& path, const ParseOptions& opts = {});
GroupSchema load_groups_file(const std::string& path, std::size_t n_items);

}  // namespace divmine
