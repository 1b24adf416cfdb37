#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "divmine/dataset.hpp"
#include "divmine/errors.hpp"
#include "divmine/patterns.hpp"
#include "test_util.hpp"

using namespace divmine;
using namespace testutil;

TEST_CASE("table1 parses to the expected matrix") {
    Database db = table1();
    CHECK(db.n_items() == 5);
    CHECK(db.n_transactions() == 6);
    CHECK(db.row(0).to_string01() == "11010");
    CHECK(db.row(5).to_string01() == "00111");
    REQUIRE(db.has_labels());
    CHECK(db.labels() == std::vector<std::string>{"1", "1", "1", "0", "0", "0"});
}

TEST_CASE("empty stream gives an empty database") {
    std::istringstream in("\n\n");
    Database db = parse_transactions(in);
    CHECK(db.n_items() == 0);
    CHECK(db.n_transactions() == 0);
}

TEST_CASE("duplicate items collapse to set semantics") {
    std::istringstream in("0 0 0\n");
    Database db = parse_transactions(in);
    CHECK(db.n_transactions() == 1);
    CHECK(db.n_items() == 1);
    CHECK(db.row(0).count() == 1);
    CHECK(db.row(0).test(0));
}

TEST_CASE("crlf and blank lines are tolerated") {
    std::istringstream in("0 2\r\n\r\n1 2\r\n");
    Database db = parse_transactions(in);
    CHECK(db.n_transactions() == 2);
    CHECK(db.n_items() == 3);
    CHECK(db.row(1).to_string01() == "011");
}

TEST_CASE("one-indexed files shift down") {
    std::istringstream in("1 3\n2\n");
    ParseOptions opts;
    opts.indexing = ParseOptions::Indexing::one_based;
    Database db = parse_transactions(in, opts);
    CHECK(db.n_items() == 3);
    CHECK(db.row(0).to_string01() == "101");
    CHECK(db.row(1).to_string01() == "010");

    std::istringstream bad("0 1\n");
    CHECK_THROWS_AS(parse_transactions(bad, opts), ParseError);
}

TEST_CASE("parse errors carry line numbers") {
    std::istringstream in("0 1\n2 x\n");
    try {
        parse_transactions(in);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("item ids beyond the cap are refused") {
    std::istringstream in("9999999\n");
    CHECK_THROWS_AS(parse_transactions(in), ParseError);

    ParseOptions tight;
    tight.max_item_id = 99;
    std::istringstream over("100\n");
    CHECK_THROWS_AS(parse_transactions(over, tight), ParseError);
    std::istringstream at("99\n");
    CHECK(parse_transactions(at, tight).n_items() == 100);
}

TEST_CASE("gaps in item ids become always-zero columns") {
    std::istringstream in("0 4\n4\n");
    Database db = parse_transactions(in);
    CHECK(db.n_items() == 5);
    CHECK(db.item_bitmap(2).none());
    CHECK(db.item_bitmap(4).count() == 2);
}

TEST_CASE("item_bitmap matches the worked example") {
    Database db = table1();
    CHECK(db.item_bitmap(2).to_string01() == "010111");  // item C
    CHECK(db.item_bitmap(4).to_string01() == "000001");  // item E
    CHECK_THROWS_AS(db.item_bitmap(5), std::out_of_range);
}

TEST_CASE("transpose round-trip on random matrices") {
    Rng rng(13);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n_items = 1 + rng.index(200);
        const std::size_t n_trans = 1 + rng.index(200);
        Database db = random_db(n_items, n_trans, rng);
        // re-derive rows from the column view
        for (std::size_t t = 0; t < n_trans; ++t) {
            BitVec row(n_items);
            for (std::size_t i = 0; i < n_items; ++i)
                if (db.item_bitmap(i).test(t)) row.set(i);
            CHECK(row == db.row(t));
        }
    }
}

TEST_CASE("serialization reproduces the database bit-exactly") {
    Database db = table1();
    std::stringstream buf;
    db.serialize(buf);
    Database back = Database::deserialize(buf, "table1");
    CHECK(back == db);

    Rng rng(17);
    Database rnd = random_db(40, 30, rng);
    std::stringstream buf2;
    rnd.serialize(buf2);
    CHECK(Database::deserialize(buf2) == rnd);
}

TEST_CASE("line order only permutes transactions") {
    std::istringstream in1("0 1\n1 2\n0 2\n");
    std::istringstream in2("1 2\n0 2\n0 1\n");
    Database a = parse_transactions(in1);
    Database b = parse_transactions(in2);
    auto sorted_rows = [](const Database& db) {
        std::vector<std::string> rows;
        for (std::size_t t = 0; t < db.n_transactions(); ++t)
            rows.push_back(db.row(t).to_string01());
        std::sort(rows.begin(), rows.end());
        return rows;
    };
    CHECK(sorted_rows(a) == sorted_rows(b));
}

TEST_CASE("dense csv reader") {
    std::istringstream in("1,1,0,1\n0,0,1,0\n");
    ParseOptions opts;
    Database db = parse_dense_csv(in, opts);
    CHECK(db.n_items() == 4);
    CHECK(db.row(0).to_string01() == "1101");

    std::istringstream with_class("1,0,1\n0,1,0\n");
    opts.has_class_column = true;
    Database db2 = parse_dense_csv(with_class, opts);
    CHECK(db2.n_items() == 2);
    CHECK(db2.labels() == std::vector<std::string>{"1", "0"});

    std::istringstream ragged("1,0\n1\n");
    CHECK_THROWS_AS(parse_dense_csv(ragged, ParseOptions{}), ParseError);
    std::istringstream bad("1,2\n");
    CHECK_THROWS_AS(parse_dense_csv(bad, ParseOptions{}), ParseError);
}

TEST_CASE("group schema from explicit groups") {
    std::istringstream in("0 1 2\n3 4\n");
    GroupSchema schema = parse_groups(in, 5);
    CHECK(schema.n_groups() == 2);
    CHECK(schema.n_explicit_groups() == 2);
    CHECK(schema.group(0).size() == 3);
    CHECK(schema.group_of(4) == 1);
    CHECK(schema.domain_size(1) == 3);
}

TEST_CASE("unlisted items become singletons") {
    std::istringstream in("1 3\n");
    GroupSchema schema = parse_groups(in, 5);
    CHECK(schema.n_groups() == 4);  // {1,3} plus singletons 0, 2, 4
    CHECK(schema.group_of(1) == schema.group_of(3));
    CHECK(schema.group(schema.group_of(0)).size() == 1);

    std::istringstream empty("");
    GroupSchema singles = parse_groups(empty, 5);
    CHECK(singles.n_groups() == 5);
    CHECK(singles.n_explicit_groups() == 0);
}

TEST_CASE("group file errors") {
    std::istringstream dup("0 0\n");
    CHECK_THROWS_AS(parse_groups(dup, 5), ParseError);
    std::istringstream twice("0 1\n1 2\n");
    CHECK_THROWS_AS(parse_groups(twice, 5), ParseError);
    std::istringstream oob("0 9\n");
    CHECK_THROWS_AS(parse_groups(oob, 5), ParseError);
}
