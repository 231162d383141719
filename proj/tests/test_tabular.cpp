#include <doctest.h>

#include <algorithm>

#include "foundry/errors.hpp"
#include "foundry/tabular.hpp"

using namespace foundry;

TEST_CASE("classify_attribute kinds") {
    CHECK(classify_attribute({"1995", "2001", "2024"}) == AttributeKind::Temporal);
    CHECK(classify_attribute({"2021-01-05", "2021-02-05"}) == AttributeKind::Temporal);
    CHECK(classify_attribute({"Jan-2021", "Feb-2021"}) == AttributeKind::Temporal);
    CHECK(classify_attribute({"1.5", "-3", "2e2"}) == AttributeKind::Numeric);
    CHECK(classify_attribute({"21.4%", "3%"}) == AttributeKind::Numeric);
    CHECK(classify_attribute({"$12", "$14.50"}) == AttributeKind::Numeric);
    CHECK(classify_attribute({"red", "12"}) == AttributeKind::Categorical);
    CHECK(classify_attribute({"red", "green"}) == AttributeKind::Categorical);
    // year-like integers are temporal even though they parse as numbers
    CHECK(classify_attribute({"1000", "2999"}) == AttributeKind::Temporal);
    CHECK(classify_attribute({"999", "3000"}) == AttributeKind::Numeric);
}

TEST_CASE("classification is order-insensitive") {
    std::vector<std::string> vals = {"2001", "1995", "2024", "2010"};
    AttributeKind base = classify_attribute(vals);
    std::sort(vals.begin(), vals.end());
    do {
        CHECK(classify_attribute(vals) == base);
    } while (std::next_permutation(vals.begin(), vals.end()));
}

TEST_CASE("parse_numeric_cell strips units") {
    std::string unit;
    auto v = parse_numeric_cell("21.4%", &unit);
    REQUIRE(v.has_value());
    CHECK(*v == doctest::Approx(21.4));
    CHECK(unit == "%");

    unit.clear();
    v = parse_numeric_cell("$1200", &unit);
    REQUIRE(v.has_value());
    CHECK(*v == doctest::Approx(1200));
    CHECK(unit == "$");

    CHECK_FALSE(parse_numeric_cell("abc").has_value());
    CHECK_FALSE(parse_numeric_cell("").has_value());
    CHECK_FALSE(parse_numeric_cell("nan").has_value());
}

TEST_CASE("temporal ordering") {
    CHECK(temporal_ordinal("1999") < temporal_ordinal("2000"));
    CHECK(temporal_ordinal("2021-01-05") < temporal_ordinal("2021-02-05"));
    CHECK(temporal_ordinal("Jan-2021") < temporal_ordinal("Feb-2021"));
}

TEST_CASE("csv load basics") {
    DataTable t = load_table_text("Country,Rate\nIndia,22.4\nChina,35.8\n");
    REQUIRE(t.columns.size() == 2);
    CHECK(t.row_count == 2);
    CHECK(t.columns[0].kind == AttributeKind::Categorical);
    CHECK(t.columns[1].kind == AttributeKind::Numeric);
    CHECK(t.columns[1].numbers[1] == doctest::Approx(35.8));
    CHECK(t.columns[0].distinct_count == 2);
}

TEST_CASE("csv quoting") {
    DataTable t = load_table_text("Name,Note\n\"a,b\",\"say \"\"hi\"\"\"\n");
    CHECK(t.columns[0].values[0] == "a,b");
    CHECK(t.columns[1].values[0] == "say \"hi\"");
}

TEST_CASE("csv errors") {
    CHECK_THROWS_WITH_AS(load_table_text(""), "empty input", Error);
    try {
        load_table_text("");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptyTable);
    }
    CHECK_THROWS_AS(load_table_text("A,B\n"), Error); // header only
    try {
        load_table_text("A,B\n1,2\n3\n");
        FAIL("ragged row accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::RaggedRows);
    }
    try {
        load_table_text("A,B\n\"x,2\n");
        FAIL("unterminated quote accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MalformedInput);
    }
}

TEST_CASE("row limit enforced") {
    std::string big = "A\n";
    for (std::size_t i = 0; i <= kMaxRows; ++i) big += std::to_string(i) + "\n";
    try {
        load_table_text(big);
        FAIL("oversized table accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MalformedInput);
    }
}

TEST_CASE("json table input with explicit and inferred kinds") {
    const char* doc = R"({"topic":"adoption",
      "columns":[{"name":"Country","values":["India","China"]},
                 {"name":"Rate","kind":"numeric","values":["22.4","35.8"]}]})";
    DataTable t = load_table_text(doc);
    CHECK(t.topic == "adoption");
    CHECK(t.columns[0].kind == AttributeKind::Categorical);
    CHECK(t.columns[1].kind == AttributeKind::Numeric);
    CHECK(t.row_count == 2);
}

TEST_CASE("serialize round trip") {
    DataTable t = load_table_text("Country,Year,Rate\nIndia,2001,22.4%\nChina,2004,35.8%\n");
    DataTable u = load_table_text(serialize_table(t));
    REQUIRE(u.columns.size() == t.columns.size());
    CHECK(u.row_count == t.row_count);
    CHECK(u.topic == t.topic);
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        CHECK(u.columns[c].name == t.columns[c].name);
        CHECK(u.columns[c].kind == t.columns[c].kind);
        CHECK(u.columns[c].values == t.columns[c].values);
        CHECK(u.columns[c].unit == t.columns[c].unit);
    }
    // serialize of the reparse is byte-identical (canonical form)
    CHECK(serialize_table(u) == serialize_table(t));
}

TEST_CASE("signature invariant under column reorder") {
    DataTable a = load_table_text("Country,Year,Rate\nIndia,2001,22.4\nChina,2004,35.8\n");
    DataTable b = load_table_text("Rate,Country,Year\n22.4,India,2001\n35.8,China,2004\n");
    CHECK(signature_of(a) == signature_of(b));
    CHECK(signature_of(a).to_string() == "C1+N1+T1");
}

TEST_CASE("signature string forms") {
    CHECK(signature_of(load_table_text("A,B\nx,1\ny,2\n")).to_string() == "C1+N1");
    CHECK(signature_of(load_table_text("A\n4\n7\n")).to_string() == "N1");
    CHECK(signature_of(load_table_text("G,S,V\na,u,1\nb,v,2\n")).to_string() == "C2+N1");
}

TEST_CASE("table_stats") {
    DataTable t = load_table_text("Cat,Val\na,1\nb,3\na,5\n");
    TableStats s = table_stats(t);
    CHECK(s.row_count == 3);
    REQUIRE(s.columns.size() == 2);
    CHECK(s.columns[0].distinct_count == 2);
    CHECK(s.columns[1].min == doctest::Approx(1));
    CHECK(s.columns[1].max == doctest::Approx(5));
    CHECK(s.columns[1].mean == doctest::Approx(3));
}
