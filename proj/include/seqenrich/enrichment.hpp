#pragma once
// Sequence assembly: record -> SequencePlan -> input text, and whole-cohort
// dataset builds.
//
// Rendered layout (blocks joined by single spaces):
//   <instruction> [Background information: ...]
//   for each week:  [In week N,] for each day: [On Day,] <answers...>  [<score sentence>]
// Days always run Monday, Thursday, Saturday; answers run Behavioral,
// Emotional, Cognitive; the week's score sentence follows its day blocks.

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "seqenrich/core.hpp"

namespace seqenrich {

struct TokenBudgetReport {
    std::string example_id;
    std::size_t estimated_tokens = 0;
    std::size_t budget = 0;
    bool over_budget = false;

    bool operator==(const TokenBudgetReport&) const = default;
};

struct StudentError {
    std::string student_id;
    std::string message;

    bool operator==(const StudentError&) const = default;
};

/// Partial results: one example per student that built, one error per student
/// that did not. Both lists are ordered by student_id.
struct DatasetBuild {
    std::vector<TextExample> examples;
    std::vector<TokenBudgetReport> budget_reports;
    std::vector<StudentError> errors;
};

std::string weekly_tag(int week);
std::string daily_tag(Weekday day);

/// The answer text when present, the policy's descriptor otherwise.
std::string apply_missing_policy(const NonCogResponse& response, const MissingPolicy& policy);

/// Weeks past min(horizon_weeks, n_weeks) are never included. Weeks with no
/// content for the selected modalities are skipped. Throws NoModalityData,
/// MissingField (background selected but incomplete), ValidationError.
SequencePlan build_plan(const StudentRecord& record, const EnrichmentConfig& config, int n_weeks = kMaxWeek);

std::string render_plan(const SequencePlan& plan);

/// Recovers the block tree from rendered text. Exact for tagged plans whose
/// items are single sentences; for untagged text the recovered tree renders
/// back to the same bytes.
SequencePlan parse_plan(std::string_view text, std::string_view instruction_text = kDefaultInstruction,
                        const VerbalizationTemplates& templates = {});

/// Response slots in weeks 1..min(horizon, n_weeks) without an answer,
/// counting the three kinds of every collection day with no row at all.
std::size_t count_missing_slots(const StudentRecord& record, int horizon_weeks, int n_weeks = kMaxWeek);

/// Hook applied between build_plan and render_plan (used by ablations).
using PlanTransform = std::function<SequencePlan(SequencePlan, const StudentRecord&)>;

DatasetBuild build_dataset(const Cohort& cohort, const EnrichmentConfig& config, std::size_t jobs = 1);
DatasetBuild build_dataset(const Cohort& cohort, const EnrichmentConfig& config, const PlanTransform& transform,
                           std::size_t jobs = 1);

}  // namespace seqenrich
