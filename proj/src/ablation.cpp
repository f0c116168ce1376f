#include "seqenrich/ablation.hpp"

namespace seqenrich {

std::string_view ablation_name(AblationMode mode) noexcept {
    switch (mode) {
        case AblationMode::NoRandomization:
            return "none";
        case AblationMode::Full:
            return "full";
        case AblationMode::Partial:
            return "partial";
        case AblationMode::Pseudo:
            return "pseudo";
    }
    return "";
}

std::optional<AblationMode> parse_ablation(std::string_view name) noexcept {
    for (auto m : kAllAblationModes) {
        if (ablation_name(m) == name) return m;
    }
    return std::nullopt;
}

namespace {

template <typename T>
std::vector<T> permuted(std::vector<T>&& items, Rng& rng) {
    const auto order = rng.permutation(items.size());
    std::vector<T> out;
    out.reserve(items.size());
    for (auto i : order) out.push_back(std::move(items[i]));
    return out;
}

}  // namespace

SequencePlan apply_ablation(SequencePlan plan, AblationMode mode, Rng& rng) {
    if (mode == AblationMode::NoRandomization) {
        return plan;
    }
    plan.week_blocks = permuted(std::move(plan.week_blocks), rng);
    for (auto& week : plan.week_blocks) {
        switch (mode) {
            case AblationMode::Full:
                week.tag_enabled = false;
                week.day_blocks = permuted(std::move(week.day_blocks), rng);
                for (auto& day : week.day_blocks) day.tag_enabled = false;
                break;
            case AblationMode::Partial:
                week.tag_enabled = false;
                break;
            case AblationMode::Pseudo:
            case AblationMode::NoRandomization:
                break;
        }
    }
    return plan;
}

DatasetBuild ablate_dataset(const Cohort& cohort, const EnrichmentConfig& config, AblationMode mode,
                            std::size_t jobs) {
    if (mode == AblationMode::NoRandomization) {
        return build_dataset(cohort, config, jobs);
    }
    const std::uint64_t seed = config.master_seed;
    return build_dataset(
        cohort, config,
        [mode, seed](SequencePlan plan, const StudentRecord& record) {
            Rng rng(derive_seed(seed, "ablation", record.student_id));
            return apply_ablation(std::move(plan), mode, rng);
        },
        jobs);
}

}  // namespace seqenrich
