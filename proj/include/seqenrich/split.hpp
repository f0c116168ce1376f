#pragma once
// Seeded, stratified train/test partitioning.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "seqenrich/core.hpp"

namespace seqenrich {

enum class SplitPoint {
    // Sample the test set from the augmented pool. Near-duplicates of a test
    // example can land in train; accuracy measured this way is optimistic.
    AfterAugmentation,
    // Split originals first; every augmented example follows its parent.
    BeforeAugmentation,
};

std::string_view split_point_name(SplitPoint point) noexcept;
std::optional<SplitPoint> parse_split_point(std::string_view name) noexcept;

struct SplitSpec {
    double test_fraction = 0.30;
    std::uint64_t seed = 0;
    bool stratify = true;
    SplitPoint split_point = SplitPoint::AfterAugmentation;

    std::vector<Violation> validate() const;
};

struct SplitResult {
    std::vector<TextExample> train;
    std::vector<TextExample> test;
};

/// floor(fraction * n + 0.5), at least 1 when n > 0.
std::size_t test_count(double test_fraction, std::size_t n) noexcept;

/// Per group (category when stratified, the whole pool otherwise) the
/// example_ids are sorted, shuffled with substream (seed, "split", group),
/// and the first test_count() go to test. Both outputs keep input order and
/// carry the split stamp. Throws ValidationError (bad spec), ValueError
/// (duplicate ids, or an augmented example whose parent is absent under
/// BeforeAugmentation), EmptyCategory (stratified split with an empty
/// category).
SplitResult stratified_split(const std::vector<TextExample>& examples, const SplitSpec& spec);

}  // namespace seqenrich
