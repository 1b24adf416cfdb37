#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "divmine/datagen.hpp"
#include "divmine/errors.hpp"

// Emits the bundled benchmark fixtures as CP4IM-style transaction files plus
// their attribute-group sidecars. tic-tac-toe is derived exactly (all 958
// terminal boards); the other corpus names are deterministic synthetic
// stand-ins matching the published dataset shapes.

int main(int argc, char** argv) {
    CLI::App app{"divmine-datagen: write bundled benchmark datasets"};

    std::string name, out_path, groups_out, out_dir;
    bool all = false, list = false;
    app.add_option("--name", name, "dataset to generate");
    app.add_option("--out", out_path, "transaction file path");
    app.add_option("--groups-out", groups_out, "groups file path");
    app.add_flag("--all", all, "generate every dataset into --out-dir");
    app.add_option("--out-dir", out_dir, "directory for --all");
    app.add_flag("--list", list, "list dataset names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (list) {
            for (const auto& n : divmine::generator_names()) std::cout << n << '\n';
            return 0;
        }
        if (all) {
            if (out_dir.empty()) throw std::invalid_argument("--all requires --out-dir");
            std::filesystem::create_directories(out_dir);
            for (const auto& n : divmine::generator_names()) {
                auto gen = divmine::make_dataset(n);
                divmine::write_transactions_file(gen.db, out_dir + "/" + n + ".txt");
                divmine::write_groups_file(gen.groups, out_dir + "/" + n + ".groups");
                std::cout << n << ": " << gen.db.n_transactions() << " transactions, "
                          << gen.db.n_items() << " items\n";
            }
            return 0;
        }
        if (name.empty() || out_path.empty())
            throw std::invalid_argument("need --name and --out (or --all/--list)");
        auto gen = divmine::make_dataset(name);
        divmine::write_transactions_file(gen.db, out_path);
        if (!groups_out.empty()) divmine::write_groups_file(gen.groups, groups_out);
        std::cout << name << ": " << gen.db.n_transactions() << " transactions, "
                  << gen.db.n_items() << " items\n";
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
