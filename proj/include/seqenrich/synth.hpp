#pragma once
// Synthetic cohorts with controllable signal, for checking what each pipeline
// transformation does to learnable structure.
//
// Per student:
//   * the label comes from a shuffled quota list, so the class histogram is
//     exactly target_label_distribution; a latent ability is drawn inside the
//     label's band and a final grade inside the label's grade range;
//   * each score fraction is clamp(ability + trend_scale * trend(week) + noise);
//   * each engagement answer comes, with probability coupling, from the phrase
//     bank cell for (kind, tercile of the drifting ability, phase of the week),
//     otherwise from the kind's neutral bank;
//   * week-1 answers are missing with week1_missing_rate, later ones with
//     later_missing_rate, and a quota of students loses every row inside one
//     contiguous window of at least dropout_min_weeks weeks.
// The trend drifts high-ability students up and low-ability students down,
// so position in the sequence carries information that shuffling destroys.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "seqenrich/core.hpp"

namespace seqenrich {

enum class AbilityTercile { Low = 0, Mid, High };
enum class SemesterPhase { Early = 0, Late };

std::string_view tercile_name(AbilityTercile tercile) noexcept;
std::string_view phase_name(SemesterPhase phase) noexcept;

/// Weeks 1-8 are Early, 9-16 Late.
SemesterPhase phase_of_week(int week) noexcept;

struct ScheduledAssessment {
    int week = 1;
    AssessmentKind kind = AssessmentKind::Homework;
    double max = 1.0;
};

/// Two diaries, three labs, two quizzes, and three homework assignments over
/// weeks 1-4, numbered per kind in schedule order.
std::vector<ScheduledAssessment> default_schedule();

struct SynthConfig {
    int n_students = 48;
    int n_weeks = 16;
    std::vector<ScheduledAssessment> schedule = default_schedule();
    double cross_modal_coupling = 0.8;  // rho
    double temporal_trend = 0.6;        // tau
    double week1_missing_rate = 0.66;
    double later_missing_rate = 0.3;
    double dropout_participant_rate = 0.37;
    int dropout_min_weeks = 2;
    CategoryCounts target_label_distribution{6, 6, 12, 24};
    std::uint64_t master_seed = 0;
    std::string course_name = "Introductory STEM course";

    std::vector<Violation> validate() const;
};

/// Throws InfeasibleDistribution when the targets do not sum to n_students,
/// ValidationError for any other invalid field.
Cohort generate_cohort(const SynthConfig& config);

/// Sentences for one bank cell, in file order.
const std::vector<std::string>& phrase_bank(EngagementKind kind, AbilityTercile tercile, SemesterPhase phase);
const std::vector<std::string>& neutral_phrase_bank(EngagementKind kind);

}  // namespace seqenrich
