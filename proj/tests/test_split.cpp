#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "seqenrich/augmentation.hpp"
#include "seqenrich/digest.hpp"
#include "seqenrich/split.hpp"

using namespace seqenrich;

namespace {

std::vector<TextExample> pool144() {
    auto o = test::skewed_examples();
    return augment(o, {30, 30, 36, 48}, SynonymLexicon::builtin(), 0.1, 0);
}

// floor(f * n + 0.5) with integers: f = 3/10.
std::size_t oracle_count(std::size_t n) { return (3 * n * 2 + 10) / 20; }

std::string ids(const std::vector<TextExample>& v) {
    std::string s;
    for (const auto& e : v) s += e.example_id + ",";
    return sha256_hex(s);
}

}  // namespace

TEST_SUITE("split") {

TEST_CASE("rounding rule") {
    CHECK(test_count(0.30, 48) == 14);
    CHECK(test_count(0.30, 36) == 11);
    CHECK(test_count(0.30, 30) == 9);
    CHECK(test_count(0.30, 1) == 1);
    CHECK(test_count(0.30, 0) == 0);
    CHECK(test_count(0.5, 2) == 1);
    for (std::size_t n = 1; n < 200; ++n) CHECK(test_count(0.30, n) == std::max<std::size_t>(1, oracle_count(n)));
}

TEST_CASE("stratified counts and partition") {
    auto pool = pool144();
    SplitSpec spec;
    auto r = stratified_split(pool, spec);
    CHECK(count_labels(r.test) == CategoryCounts{9, 9, 11, 14});
    CHECK(r.test.size() == 43);
    CHECK(r.train.size() == 101);
    std::set<std::string> train_ids, test_ids;
    for (const auto& e : r.train) {
        CHECK(e.split == Split::Train);
        train_ids.insert(e.example_id);
    }
    for (const auto& e : r.test) {
        CHECK(e.split == Split::Test);
        CHECK(train_ids.count(e.example_id) == 0);
        test_ids.insert(e.example_id);
    }
    CHECK(train_ids.size() + test_ids.size() == pool.size());
}

TEST_CASE("halving") {
    std::vector<TextExample> v;
    for (auto c : kAllCategories) {
        for (int i = 0; i < 2; ++i) v.push_back(test::make_example(std::string(surface_form(c)) + std::to_string(i), c, "x"));
    }
    SplitSpec spec;
    spec.test_fraction = 0.5;
    auto r = stratified_split(v, spec);
    CHECK(count_labels(r.test) == CategoryCounts{1, 1, 1, 1});
    CHECK(count_labels(r.train) == CategoryCounts{1, 1, 1, 1});
}

TEST_CASE("seeded") {
    auto pool = pool144();
    SplitSpec a, b;
    a.seed = b.seed = 11;
    CHECK(ids(stratified_split(pool, a).test) == ids(stratified_split(pool, b).test));
    b.seed = 12;
    CHECK(ids(stratified_split(pool, a).test) != ids(stratified_split(pool, b).test));
}

TEST_CASE("before augmentation keeps families together") {
    auto pool = pool144();
    SplitSpec spec;
    spec.split_point = SplitPoint::BeforeAugmentation;
    auto r = stratified_split(pool, spec);
    std::set<std::string> test_roots, train_roots;
    for (const auto& e : r.test) test_roots.insert(e.parent_id.value_or(e.example_id));
    for (const auto& e : r.train) train_roots.insert(e.parent_id.value_or(e.example_id));
    for (const auto& id : test_roots) CHECK(train_roots.count(id) == 0);
    std::size_t test_originals = 0;
    for (const auto& e : r.test) test_originals += e.is_augmented() ? 0 : 1;
    CHECK(test_originals == 2 + 2 + 4 + 7);
}

TEST_CASE("split errors") {
    auto pool = test::skewed_examples();
    SplitSpec spec;
    spec.test_fraction = 1.0;
    CHECK_THROWS_AS(stratified_split(pool, spec), ValidationError);
    std::vector<TextExample> three(pool.begin() + 6, pool.end());
    CHECK_THROWS_AS(stratified_split(three, SplitSpec{}), EmptyCategory);
    pool.push_back(pool.front());
    CHECK_THROWS_AS(stratified_split(pool, SplitSpec{}), ValueError);
}

}
