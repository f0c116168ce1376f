#pragma once
// Temporal-structure ablations over SequencePlans.

#include <optional>
#include <string_view>
#include <vector>

#include "seqenrich/core.hpp"
#include "seqenrich/enrichment.hpp"
#include "seqenrich/rng.hpp"

namespace seqenrich {

enum class AblationMode {
    NoRandomization,
    Full,     // shuffle weeks and the days inside each week; drop every temporal tag
    Partial,  // shuffle weeks, keep day order; drop weekly tags only
    Pseudo,   // shuffle weeks exactly as Partial does, keep the (true) weekly tags
};

inline constexpr std::array<AblationMode, 4> kAllAblationModes = {AblationMode::NoRandomization, AblationMode::Full,
                                                                  AblationMode::Partial, AblationMode::Pseudo};

/// "none", "full", "partial", "pseudo".
std::string_view ablation_name(AblationMode mode) noexcept;
std::optional<AblationMode> parse_ablation(std::string_view name) noexcept;

/// The week permutation is always the first draw from `rng`, so Partial and
/// Pseudo given equal streams move the same blocks; Full then draws one day
/// permutation per week in the new week order. Week blocks keep their
/// week_number.
SequencePlan apply_ablation(SequencePlan plan, AblationMode mode, Rng& rng);

/// build_dataset with apply_ablation between planning and rendering. Each
/// student draws from substream (config.master_seed, "ablation", student_id).
DatasetBuild ablate_dataset(const Cohort& cohort, const EnrichmentConfig& config, AblationMode mode,
                            std::size_t jobs = 1);

}  // namespace seqenrich
