#include "divmine/datagen.hpp"

#include <array>
#include <fstream>
#include <numeric>

#include "divmine/errors.hpp"
#include "divmine/rng.hpp"

namespace divmine {

namespace {

Database rows_from_items(std::size_t n_items,
                         const std::vector<std::vector<std::uint32_t>>& transactions,
                         std::vector<std::string> labels, std::string name) {
    std::vector<BitVec> rows;
    rows.reserve(transactions.size());
    for (const auto& items : transactions) {
        BitVec row(n_items);
        for (auto i : items) row.set(i);
        rows.push_back(std::move(row));
    }
    return Database::from_rows(n_items, std::move(rows), std::move(labels), std::move(name));
}

std::vector<std::vector<std::uint32_t>> one_hot_groups(const std::vector<std::size_t>& sizes) {
    std::vector<std::vector<std::uint32_t>> groups;
    std::uint32_t next = 0;
    for (auto m : sizes) {
        std::vector<std::uint32_t> g(m);
        std::iota(g.begin(), g.end(), next);
        next += static_cast<std::uint32_t>(m);
        groups.push_back(std::move(g));
    }
    return groups;
}

// Skewed value pick: value j of an m-valued attribute with weight 1/(j+1),
// which gives the item supports a realistic long tail.
std::size_t skewed_value(std::size_t m, Rng& rng) {
    std::vector<std::uint64_t> cum(m);
    std::uint64_t total = 0;
    for (std::size_t j = 0; j < m; ++j) {
        total += 840 / (j + 1);  // 840 = lcm(1..8), keeps weights integral
        cum[j] = total;
    }
    const std::uint64_t r = rng.next_below(total);
    for (std::size_t j = 0; j < m; ++j)
        if (r < cum[j]) return j;
    return m - 1;
}

GeneratedDataset synthetic_from_shape(const std::vector<std::size_t>& attr_sizes,
                                      std::size_t n_transactions, std::uint64_t seed,
                                      std::string name) {
    const std::size_t n_items =
        std::accumulate(attr_sizes.begin(), attr_sizes.end(), std::size_t{0});
    auto groups = one_hot_groups(attr_sizes);

    Rng rng(seed);
    std::vector<std::vector<std::uint32_t>> transactions(n_transactions);
    std::vector<std::string> labels(n_transactions);
    for (std::size_t t = 0; t < n_transactions; ++t) {
        auto& items = transactions[t];
        items.reserve(attr_sizes.size());
        for (std::size_t a = 0; a < attr_sizes.size(); ++a)
            items.push_back(groups[a][skewed_value(attr_sizes[a], rng)]);
        labels[t] = rng.coin() ? "1" : "0";
    }

    GeneratedDataset out;
    out.db = rows_from_items(n_items, transactions, std::move(labels), std::move(name));
    out.groups = std::move(groups);
    return out;
}

}  // namespace

GeneratedDataset make_table1() {
    // Five items A..E as 0..4; six transactions; class +/- encoded as 1/0.
    const std::vector<std::vector<std::uint32_t>> transactions = {
        {0, 1, 3}, {1, 2}, {0, 3}, {0, 2, 3}, {1, 2, 3}, {2, 3, 4},
    };
    const std::vector<std::string> labels = {"1", "1", "1", "0", "0", "0"};
    GeneratedDataset out;
    out.db = rows_from_items(5, transactions, labels, "table1");
    out.groups = one_hot_groups({1, 1, 1, 1, 1});
    return out;
}

GeneratedDataset make_tictactoe() {
    // All 958 terminal boards of tic-tac-toe with x moving first: x has a
    // line and one extra move, or o has a line on even moves, or a full board
    // without a line. One-hot encoding: item = 3*cell + value, value order
    // x, o, blank. Class 1 = win for x.
    static constexpr std::array<std::array<int, 3>, 8> lines = {{{0, 1, 2},
                                                                 {3, 4, 5},
                                                                 {6, 7, 8},
                                                                 {0, 3, 6},
                                                                 {1, 4, 7},
                                                                 {2, 5, 8},
                                                                 {0, 4, 8},
                                                                 {2, 4, 6}}};
    enum : int { X = 0, O = 1, B = 2 };

    std::vector<std::vector<std::uint32_t>> transactions;
    std::vector<std::string> labels;

    std::array<int, 9> board{};
    const auto wins = [&](int player) {
        for (const auto& line : lines)
            if (board[line[0]] == player && board[line[1]] == player &&
                board[line[2]] == player)
                return true;
        return false;
    };

    for (std::uint32_t code = 0; code < 19683; ++code) {  // 3^9 boards
        std::uint32_t rest = code;
        int n_x = 0, n_o = 0;
        for (int c = 8; c >= 0; --c) {
            board[c] = static_cast<int>(rest % 3);
            rest /= 3;
            n_x += board[c] == X;
            n_o += board[c] == O;
        }
        const bool x_line = wins(X), o_line = wins(O);
        const bool x_won = x_line && !o_line && n_x == n_o + 1;
        const bool o_won = o_line && !x_line && n_x == n_o;
        const bool draw = !x_line && !o_line && n_x == 5 && n_o == 4;
        if (!x_won && !o_won && !draw) continue;

        std::vector<std::uint32_t> items(9);
        for (int c = 0; c < 9; ++c)
            items[c] = static_cast<std::uint32_t>(3 * c + board[c]);
        transactions.push_back(std::move(items));
        labels.push_back(x_won ? "1" : "0");
    }

    GeneratedDataset out;
    out.db = rows_from_items(27, transactions, std::move(labels), "tic-tac-toe");
    out.groups = one_hot_groups(std::vector<std::size_t>(9, 3));
    return out;
}

GeneratedDataset make_synthetic(const std::string& name) {
    // Shapes follow the published benchmark corpus (items, transactions, and
    // a one-hot attribute structure with several two-valued attributes).
    if (name == "primary-tumor") {
        std::vector<std::size_t> sizes(13, 2);
        sizes.push_back(5);
        return synthetic_from_shape(sizes, 336, 0x9e3779b97f4a7c15ull, name);
    }
    if (name == "soybean") {
        std::vector<std::size_t> sizes(10, 2);
        sizes.insert(sizes.end(), 6, 3);
        sizes.insert(sizes.end(), 3, 4);
        return synthetic_from_shape(sizes, 630, 0xc2b2ae3d27d4eb4full, name);
    }
    if (name == "hypothyroid") {
        std::vector<std::size_t> sizes(20, 2);
        sizes.insert(sizes.end(), 8, 4);
        sizes.insert(sizes.end(), 2, 8);
        return synthetic_from_shape(sizes, 3247, 0x165667b19e3779f9ull, name);
    }
    if (name == "mushroom") {
        const std::vector<std::size_t> sizes = {6, 4, 10, 2, 9, 2, 2, 2, 12, 2, 5,
                                                4, 4, 9,  9, 2, 4, 3, 5,  9, 6, 8};
        return synthetic_from_shape(sizes, 8124, 0x27d4eb2f165667c5ull, name);
    }
    throw DataError("unknown synthetic dataset: " + name);
}

std::vector<std::string> generator_names() {
    return {"table1", "tic-tac-toe", "primary-tumor", "soybean", "hypothyroid", "mushroom"};
}

GeneratedDataset make_dataset(const std::string& name) {
    if (name == "table1") return make_table1();
    if (name == "tic-tac-toe") return make_tictactoe();
    return make_synthetic(name);
}

void write_transactions_file(const Database& db, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write dataset file: " + path);
    for (std::size_t t = 0; t < db.n_transactions(); ++t) {
        bool first = true;
        for (std::size_t i = 0; i < db.n_items(); ++i) {
            if (!db.row(t).test(i)) continue;
            if (!first) out << ' ';
            out << i;
            first = false;
        }
        if (db.has_labels()) {
            if (!first) out << ' ';
            out << db.labels()[t];
        }
        out << '\n';
    }
}

void write_groups_file(const std::vector<std::vector<std::uint32_t>>& groups,
                       const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write groups file: " + path);
    for (const auto& g : groups) {
        for (std::size_t i = 0; i < g.size(); ++i) out << (i ? " " : "") << g[i];
        out << '\n';
    }
}

}  // namespace divmine
