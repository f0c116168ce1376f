#include <map>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "seqenrich/csv.hpp"
#include "seqenrich/digest.hpp"
#include "seqenrich/rng.hpp"
#include "seqenrich/text.hpp"

using namespace seqenrich;

TEST_SUITE("text") {

TEST_CASE("token estimates") {
    CHECK(estimate_tokens("") == 0);
    CHECK(estimate_tokens("The scores are 1 out of 1 in Homework_1.") == 10);
    CHECK(estimate_tokens("In week 1, On Monday,") == 7);
    CHECK(tokenize("In week 1, On Monday,") ==
          std::vector<std::string>{"In", "week", "1", ",", "On", "Monday", ","});
    CHECK(tokenize("Homework_1.") == std::vector<std::string>{"Homework_1", "."});
}

TEST_CASE("estimate agrees with tokenize") {
    for (const char* s : {"  a  b ", "\"Hi,\" she said.", "$50,000-$75,000.", "...", "x"}) {
        CHECK(estimate_tokens(s) == tokenize(s).size());
    }
}

TEST_CASE("number rendering") {
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.80) == "0.8");
    CHECK(format_number(3) == "3");
    CHECK(format_number(0.1 + 0.2) == "0.30000000000000004");
    CHECK(parse_number("0.8") == doctest::Approx(0.8));
    CHECK_THROWS_AS(parse_number("abc"), ValueError);
    CHECK_THROWS_AS(parse_number("1,5"), ValueError);
}

TEST_CASE("string helpers") {
    CHECK(trim("  x y \n") == "x y");
    CHECK(split("a;b;;c", ';') == std::vector<std::string>{"a", "b", "", "c"});
    CHECK(join({"a", "b"}, ", ") == "a, b");
    CHECK(collapse_whitespace(" a \t b\n") == "a b");
    CHECK(as_sentence("Hello, World!") == "Hello, World!");
    CHECK(as_sentence("N/A") == "N/A.");
    CHECK(count_occurrences("aaaa", "aa") == 2);
}

TEST_CASE("sha256 known vector") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("csv quoting") {
    auto t = CsvTable::parse("a,b\n\"x,1\",\"say \"\"hi\"\"\"\n");
    REQUIRE(t.rows() == 1);
    CHECK(t.at(0, 0) == "x,1");
    CHECK(t.at(0, 1) == "say \"hi\"");
    CHECK(csv_escape("x,1") == "\"x,1\"");
    CHECK_THROWS_AS(CsvTable::parse("a,b\n1\n"), SyntaxError);
    CHECK_THROWS_AS(CsvTable::parse("a\n\"open\n"), SyntaxError);
}

TEST_CASE("rng is reproducible and keyed") {
    Rng a(42), b(42);
    for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());
    CHECK(derive_seed(1, "x", 2) == derive_seed(1, "x", 2));
    CHECK(derive_seed(1, "x", 2) != derive_seed(1, "x", 3));
    CHECK(derive_seed(1, "ablation", "S001") != derive_seed(1, "ablation", "S002"));
}

TEST_CASE("uniform_below covers range evenly") {
    Rng rng(7);
    std::map<std::uint64_t, int> hist;
    const int n = 60000;
    for (int i = 0; i < n; ++i) ++hist[rng.uniform_below(6)];
    REQUIRE(hist.size() == 6);
    double chi2 = 0;
    for (auto& [k, v] : hist) chi2 += (v - n / 6.0) * (v - n / 6.0) / (n / 6.0);
    CHECK(test::chi2_sf_df5(chi2) > 0.001);
}

TEST_CASE("permutation is a permutation") {
    Rng rng(3);
    auto p = rng.permutation(10);
    CHECK(std::set<std::size_t>(p.begin(), p.end()).size() == 10);
}

TEST_CASE("chi-square tail oracle") {
    // Tabulated critical values for df = 5.
    CHECK(test::chi2_sf_df5(11.0705) == doctest::Approx(0.05).epsilon(0.001));
    CHECK(test::chi2_sf_df5(15.0863) == doctest::Approx(0.01).epsilon(0.001));
}

}
