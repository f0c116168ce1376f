#include "seqenrich/split.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "seqenrich/rng.hpp"

namespace seqenrich {

std::string_view split_point_name(SplitPoint point) noexcept {
    return point == SplitPoint::AfterAugmentation ? "after_augmentation" : "before_augmentation";
}

std::optional<SplitPoint> parse_split_point(std::string_view name) noexcept {
    if (name == "after_augmentation") return SplitPoint::AfterAugmentation;
    if (name == "before_augmentation") return SplitPoint::BeforeAugmentation;
    return std::nullopt;
}

std::vector<Violation> SplitSpec::validate() const {
    std::vector<Violation> out;
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        out.push_back({"test_fraction", "0 < test_fraction < 1"});
    }
    return out;
}

std::size_t test_count(double test_fraction, std::size_t n) noexcept {
    if (n == 0) return 0;
    const auto k = static_cast<std::size_t>(std::floor(test_fraction * static_cast<double>(n) + 0.5));
    return std::clamp<std::size_t>(k, 1, n);
}

namespace {

// Ids assigned to the test side, drawn group by group from `pool`.
std::set<std::string> choose_test_ids(const std::vector<const TextExample*>& pool, const SplitSpec& spec) {
    std::map<std::size_t, std::vector<std::string>> groups;
    for (const auto* e : pool) {
        groups[spec.stratify ? category_index(e->label) : 0].push_back(e->example_id);
    }
    if (spec.stratify) {
        for (auto c : kAllCategories) {
            if (!groups.count(category_index(c))) {
                throw EmptyCategory("stratified split: no examples labeled '" + std::string(surface_form(c)) + "'");
            }
        }
    }
    std::set<std::string> test;
    for (auto& [group, ids] : groups) {
        std::sort(ids.begin(), ids.end());
        Rng rng(derive_seed(spec.seed, "split", static_cast<std::uint64_t>(group)));
        rng.shuffle(ids);
        const std::size_t k = test_count(spec.test_fraction, ids.size());
        test.insert(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return test;
}

}  // namespace

SplitResult stratified_split(const std::vector<TextExample>& examples, const SplitSpec& spec) {
    if (auto v = spec.validate(); !v.empty()) {
        throw ValidationError("split spec", std::move(v));
    }
    std::set<std::string> ids;
    for (const auto& e : examples) {
        if (!ids.insert(e.example_id).second) {
            throw ValueError("duplicate example id '" + e.example_id + "'");
        }
    }

    std::vector<const TextExample*> pool;
    for (const auto& e : examples) {
        if (spec.split_point == SplitPoint::AfterAugmentation || !e.is_augmented()) pool.push_back(&e);
    }
    const std::set<std::string> test_ids = choose_test_ids(pool, spec);

    SplitResult out;
    for (const auto& e : examples) {
        bool to_test = false;
        if (spec.split_point == SplitPoint::BeforeAugmentation && e.is_augmented()) {
            if (!ids.count(*e.parent_id)) {
                throw ValueError("augmented example '" + e.example_id + "' has no parent '" + *e.parent_id +
                                 "' in the dataset");
            }
            to_test = test_ids.count(*e.parent_id) > 0;
        } else {
            to_test = test_ids.count(e.example_id) > 0;
        }
        TextExample stamped = e;
        stamped.split = to_test ? Split::Test : Split::Train;
        (to_test ? out.test : out.train).push_back(std::move(stamped));
    }
    return out;
}

}  // namespace seqenrich
