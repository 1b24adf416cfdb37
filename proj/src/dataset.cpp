#include "divmine/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "divmine/errors.hpp"

namespace divmine {

namespace {

std::vector<BitVec> transpose(std::size_t n_cols, const std::vector<BitVec>& rows) {
    std::vector<BitVec> cols(n_cols, BitVec(rows.size()));
    for (std::size_t t = 0; t < rows.size(); ++t)
        for (std::size_t i = 0; i < n_cols; ++i)
            if (rows[t].test(i)) cols[i].set(t);
    return cols;
}

bool parse_u64(std::string_view tok, std::uint64_t& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

// Strips a trailing CR so both LF and CRLF files parse identically.
std::string chomp(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace

Database Database::from_rows(std::size_t n_items, std::vector<BitVec> rows,
                             std::vector<std::string> labels, std::string name) {
    if (!labels.empty() && labels.size() != rows.size())
        throw ParseError("label count does not match transaction count");
    Database db;
    db.n_items_ = n_items;
    db.cols_ = transpose(n_items, rows);
    db.rows_ = std::move(rows);
    db.labels_ = std::move(labels);
    db.name_ = std::move(name);
    return db;
}

const BitVec& Database::item_bitmap(std::size_t item) const {
    if (item >= n_items_) throw std::out_of_range("item id out of range");
    return cols_[item];
}

void Database::serialize(std::ostream& out) const {
    out << n_items_ << ' ' << n_transactions() << ' ' << (has_labels() ? 1 : 0) << '\n';
    for (std::size_t t = 0; t < rows_.size(); ++t) {
        out << rows_[t].to_string01();
        if (has_labels()) out << ' ' << labels_[t];
        out << '\n';
    }
}

Database Database::deserialize(std::istream& in, std::string name) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing header", 1);
    std::istringstream hdr(chomp(line));
    std::size_t n_items = 0, n_trans = 0;
    int has_labels = 0;
    if (!(hdr >> n_items >> n_trans >> has_labels))
        throw ParseError("bad header '" + line + "'", 1);

    std::vector<BitVec> rows;
    std::vector<std::string> labels;
    rows.reserve(n_trans);
    for (std::size_t t = 0; t < n_trans; ++t) {
        if (!std::getline(in, line)) throw ParseError("unexpected end of input", t + 2);
        line = chomp(line);
        const auto toks = split_ws(line);
        const std::size_t want = has_labels ? 2 : 1;
        if (toks.size() != want || toks[0].size() != n_items)
            throw ParseError("bad row '" + line + "'", t + 2);
        BitVec row(n_items);
        for (std::size_t i = 0; i < n_items; ++i) {
            if (toks[0][i] == '1')
                row.set(i);
            else if (toks[0][i] != '0')
                throw ParseError("row is not a 0/1 string", t + 2);
        }
        rows.push_back(std::move(row));
        if (has_labels) labels.emplace_back(toks[1]);
    }
    return from_rows(n_items, std::move(rows), std::move(labels), std::move(name));
}

GroupSchema GroupSchema::singletons(std::size_t n_items) {
    return from_groups({}, n_items);
}

GroupSchema GroupSchema::from_groups(std::vector<std::vector<std::uint32_t>> explicit_groups,
                                     std::size_t n_items) {
    GroupSchema s;
    s.n_items_ = n_items;
    s.n_explicit_ = explicit_groups.size();
    s.group_of_.assign(n_items, UINT32_MAX);

    for (auto& g : explicit_groups) {
        if (g.empty()) throw ParseError("empty group");
        const auto gi = static_cast<std::uint32_t>(s.groups_.size());
        for (auto item : g) {
            if (item >= n_items) throw ParseError("group item id " + std::to_string(item) +
                                                  " out of range (n_items=" +
                                                  std::to_string(n_items) + ")");
            if (s.group_of_[item] != UINT32_MAX)
                throw ParseError("item " + std::to_string(item) + " appears in two groups");
            s.group_of_[item] = gi;
        }
        std::sort(g.begin(), g.end());
        s.groups_.push_back(std::move(g));
    }
    // Unlisted items fall back to singleton groups.
    for (std::uint32_t item = 0; item < n_items; ++item) {
        if (s.group_of_[item] == UINT32_MAX) {
            s.group_of_[item] = static_cast<std::uint32_t>(s.groups_.size());
            s.groups_.push_back({item});
        }
    }
    return s;
}

Database parse_transactions(std::istream& in, const ParseOptions& opts, std::string name) {
    std::vector<std::vector<std::uint64_t>> raw;
    std::vector<std::string> labels;
    std::uint64_t max_id = 0;
    bool any_item = false;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = chomp(std::move(line));
        const auto toks = split_ws(line);
        if (toks.empty()) continue;

        std::size_t n_item_toks = toks.size();
        if (opts.has_class_column) {
            labels.emplace_back(toks.back());
            --n_item_toks;
        }
        std::vector<std::uint64_t> items;
        items.reserve(n_item_toks);
        for (std::size_t i = 0; i < n_item_toks; ++i) {
            std::uint64_t id = 0;
            if (!parse_u64(toks[i], id))
                throw ParseError("non-integer item token '" + std::string(toks[i]) + "'",
                                 lineno);
            if (opts.indexing == ParseOptions::Indexing::one_based) {
                if (id == 0) throw ParseError("item id 0 in a one-indexed file", lineno);
                --id;
            }
            if (id > opts.max_item_id)
                throw ParseError("item id " + std::to_string(id) +
                                     " exceeds the cap; refusing a likely mis-parsed file",
                                 lineno);
            max_id = std::max(max_id, id);
            any_item = true;
            items.push_back(id);
        }
        raw.push_back(std::move(items));
    }

    const std::size_t n_items = any_item ? static_cast<std::size_t>(max_id) + 1 : 0;
    std::vector<BitVec> rows;
    rows.reserve(raw.size());
    for (const auto& items : raw) {
        BitVec row(n_items);
        for (auto id : items) row.set(static_cast<std::size_t>(id));
        rows.push_back(std::move(row));
    }
    if (!opts.has_class_column) labels.clear();
    return Database::from_rows(n_items, std::move(rows), std::move(labels), std::move(name));
}

Database parse_dense_csv(std::istream& in, const ParseOptions& opts, std::string name) {
    std::vector<BitVec> rows;
    std::vector<std::string> labels;
    std::size_t n_items = 0;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = chomp(line);
        std::replace(line.begin(), line.end(), ',', ' ');
        const auto toks = split_ws(line);
        if (toks.empty()) continue;

        std::size_t n_cells = toks.size();
        if (opts.has_class_column) {
            labels.emplace_back(toks.back());
            --n_cells;
        }
        if (rows.empty()) {
            n_items = n_cells;
        } else if (n_cells != n_items) {
            throw ParseError("row width " + std::to_string(n_cells) + " differs from " +
                                 std::to_string(n_items),
                             lineno);
        }
        BitVec row(n_items);
        for (std::size_t i = 0; i < n_cells; ++i) {
            if (toks[i] == "1")
                row.set(i);
            else if (toks[i] != "0")
                throw ParseError("dense cell must be 0 or 1, got '" + std::string(toks[i]) +
                                     "'",
                                 lineno);
        }
        rows.push_back(std::move(row));
    }
    if (!opts.has_class_column) labels.clear();
    return Database::from_rows(n_items, std::move(rows), std::move(labels), std::move(name));
}

GroupSchema parse_groups(std::istream& in, std::size_t n_items) {
    std::vector<std::vector<std::uint32_t>> groups;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = chomp(std::move(line));
        const auto toks = split_ws(line);
        if (toks.empty()) continue;
        std::vector<std::uint32_t> g;
        g.reserve(toks.size());
        for (const auto& tok : toks) {
            std::uint64_t id = 0;
            if (!parse_u64(tok, id))
                throw ParseError("non-integer group token '" + std::string(tok) + "'", lineno);
            if (id >= n_items)
                throw ParseError("group item id " + std::to_string(id) + " out of range",
                                 lineno);
            g.push_back(static_cast<std::uint32_t>(id));
        }
        groups.push_back(std::move(g));
    }
    return GroupSchema::from_groups(std::move(groups), n_items);
}

Database load_transactions_file(const std::string& path, const ParseOptions& opts) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file: " + path);
    auto stem = path;
    if (auto pos = stem.find_last_of('/'); pos != std::string::npos) stem = stem.substr(pos + 1);
    if (auto pos = stem.find_last_of('.'); pos != std::string::npos) stem = stem.substr(0, pos);
    return parse_transactions(in, opts, stem);
}

GroupSchema load_groups_file(const std::string& path, std::size_t n_items) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open groups file: " + path);
    return parse_groups(in, n_items);
}

}  // namespace divmine
