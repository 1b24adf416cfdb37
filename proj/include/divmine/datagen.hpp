#pragma once

#include <string>
#include <vector>

#include "divmine/dataset.hpp"

namespace divmine {

// Benchmark fixtures. tic-tac-toe is reconstructed exactly: its transactions
// are the 958 terminal boards of the game (626 x-wins, 316 o-wins, 16 draws),
// one-hot encoded as 9 cells × {x,o,b}. The other corpus entries are
// deterministic synthetic stand-ins that reproduce the published shape
// (item count, transaction count, one value per attribute per transaction)
// when the original distribution files are unavailable.

struct GeneratedDataset {
    Database db;
    // Attribute structure: one group of item ids per attribute.
    std::vector<std::vector<std::uint32_t>> groups;
};

// The six-transaction, five-item worked example used across the test suite.
GeneratedDataset make_table1();

GeneratedDataset make_tictactoe();

// name ∈ {primary-tumor, soybean, hypothyroid, mushroom}; shape-matched
// synthetic data, deterministic for a given name.
GeneratedDataset make_synthetic(const std::string& name);

// All generator names accepted by make_dataset / the datagen tool.
std::vector<std::string> generator_names();
GeneratedDataset make_dataset(const std::string& name);

// CP4IM-style transaction file: item ids then the class token, LF endings.
void write_transactions_file(const Database& db, const std::string& path);
void write_groups_file(const std::vector<std::vector<std::uint32_t>>& groups,
                       const std::string& path);

}  // namespace divmine
