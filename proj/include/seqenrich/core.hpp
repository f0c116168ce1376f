#pragma once
// Domain types shared by every stage of the pipeline. Values only: no I/O here.

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqenrich/errors.hpp"

namespace seqenrich {

// Ordered from worst to best; the enum order is the category order used for
// tie-breaking, report rows, and augmentation output.
enum class PerformanceCategory { AtRisk = 0, ProneToRisk = 1, Average = 2, Outstanding = 3 };

inline constexpr std::array<PerformanceCategory, 4> kAllCategories = {
    PerformanceCategory::AtRisk, PerformanceCategory::ProneToRisk, PerformanceCategory::Average,
    PerformanceCategory::Outstanding};

std::string_view surface_form(PerformanceCategory category) noexcept;
std::optional<PerformanceCategory> category_from_surface(std::string_view text) noexcept;
std::size_t category_index(PerformanceCategory category) noexcept;

/// Per-category counts, indexed by category_index().
using CategoryCounts = std::array<std::size_t, 4>;

// Enum value is the rank: a larger value is a better grade.
enum class LetterGrade {
    F = 0,
    DMinus,
    D,
    DPlus,
    CMinus,
    C,
    CPlus,
    BMinus,
    B,
    BPlus,
    AMinus,
    A,
    APlus,
};

inline constexpr std::array<LetterGrade, 13> kAllGrades = {
    LetterGrade::F,     LetterGrade::DMinus, LetterGrade::D,      LetterGrade::DPlus, LetterGrade::CMinus,
    LetterGrade::C,     LetterGrade::CPlus,  LetterGrade::BMinus, LetterGrade::B,     LetterGrade::BPlus,
    LetterGrade::AMinus, LetterGrade::A,     LetterGrade::APlus};

int grade_rank(LetterGrade grade) noexcept;
std::string_view grade_symbol(LetterGrade grade) noexcept;
std::optional<LetterGrade> parse_grade(std::string_view symbol) noexcept;

/// Total and monotone. Intervals are closed on the left: [A, A+] outstanding,
/// [B, A) average, (C, B) prone-to-risk, everything at or below C at-risk.
PerformanceCategory grade_to_category(LetterGrade grade) noexcept;

struct BackgroundProfile {
    std::string class_standing;
    std::string major;
    std::string gender;
    std::string race;
    std::string family_income;
    std::optional<std::string> international_status;
    std::optional<std::string> parents_education;
    std::optional<std::string> science_identity;
    std::optional<std::string> reflected_science_identity;

    /// True when all five distal fields are non-empty.
    bool complete() const noexcept;

    bool operator==(const BackgroundProfile&) const = default;
};

enum class AssessmentKind { Diary = 0, Lab, Quiz, Homework };

std::string_view kind_name(AssessmentKind kind) noexcept;
std::optional<AssessmentKind> parse_assessment_kind(std::string_view text) noexcept;

inline constexpr int kMinWeek = 1;
inline constexpr int kMaxWeek = 16;

struct AssessmentScore {
    AssessmentKind kind = AssessmentKind::Homework;
    int index = 1;
    double earned = 0.0;
    double max = 1.0;
    int week = 1;

    bool operator==(const AssessmentScore&) const = default;
};

enum class Weekday { Monday = 0, Thursday, Saturday };
inline constexpr std::array<Weekday, 3> kCollectionDays = {Weekday::Monday, Weekday::Thursday, Weekday::Saturday};

std::string_view weekday_name(Weekday day) noexcept;
std::optional<Weekday> parse_weekday(std::string_view text) noexcept;

enum class EngagementKind { Behavioral = 0, Emotional, Cognitive };
inline constexpr std::array<EngagementKind, 3> kEngagementKinds = {EngagementKind::Behavioral,
                                                                   EngagementKind::Emotional,
                                                                   EngagementKind::Cognitive};

std::string_view engagement_name(EngagementKind kind) noexcept;
std::optional<EngagementKind> parse_engagement_kind(std::string_view text) noexcept;

struct NonCogResponse {
    int week = 1;
    Weekday day = Weekday::Monday;
    EngagementKind engagement_kind = EngagementKind::Behavioral;
    std::optional<std::string> answer;  // nullopt = missing

    bool operator==(const NonCogResponse&) const = default;
};

struct StudentRecord {
    std::string student_id;
    BackgroundProfile background;
    std::vector<AssessmentScore> cognitive;
    std::vector<NonCogResponse> noncognitive;
    LetterGrade final_grade = LetterGrade::C;

    bool operator==(const StudentRecord&) const = default;
};

inline constexpr std::string_view kSchemaVersion = "1";

struct Cohort {
    std::string schema_version{kSchemaVersion};
    std::string course_name;
    int n_weeks = kMaxWeek;
    std::vector<StudentRecord> records;

    bool operator==(const Cohort&) const = default;
};

enum class Modality { NonCognitive = 0, Cognitive, Background };

/// Small value set over the three modalities.
class ModalitySet {
public:
    constexpr ModalitySet() = default;
    constexpr ModalitySet(std::initializer_list<Modality> items) {
        for (auto m : items) {
            bits_ |= bit(m);
        }
    }

    static constexpr ModalitySet all() {
        return {Modality::NonCognitive, Modality::Cognitive, Modality::Background};
    }

    constexpr bool contains(Modality m) const { return (bits_ & bit(m)) != 0; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr ModalitySet with(Modality m) const {
        ModalitySet s = *this;
        s.bits_ |= bit(m);
        return s;
    }
    constexpr ModalitySet without(Modality m) const {
        ModalitySet s = *this;
        s.bits_ &= static_cast<std::uint8_t>(~bit(m));
        return s;
    }

    /// "NC", "C", "B" joined with '+' in that fixed order, e.g. "NC+C+B".
    std::string label() const;
    static std::optional<ModalitySet> parse(std::string_view label);

    constexpr bool operator==(const ModalitySet&) const = default;

private:
    static constexpr std::uint8_t bit(Modality m) { return static_cast<std::uint8_t>(1u << static_cast<int>(m)); }
    std::uint8_t bits_ = 0;
};

class MissingPolicy {
public:
    enum class Kind { SkippedDescriptor, GenericNA, Custom };

    static MissingPolicy skipped() { return MissingPolicy(Kind::SkippedDescriptor, "Skipped the question"); }
    static MissingPolicy generic_na() { return MissingPolicy(Kind::GenericNA, "N/A"); }
    /// Throws ValueError on empty text.
    static MissingPolicy custom(std::string text);

    Kind kind() const noexcept { return kind_; }
    const std::string& descriptor() const noexcept { return text_; }

    /// "skipped", "na", or "custom:<text>".
    std::string label() const;
    static MissingPolicy parse(std::string_view label);

    bool operator==(const MissingPolicy&) const = default;

private:
    MissingPolicy(Kind kind, std::string text) : kind_(kind), text_(std::move(text)) {}

    Kind kind_;
    std::string text_;
};

struct VerbalizationTemplates {
    std::string score_sentence_prefix = "The scores are ";
    std::string score_item_format = "{earned} out of {max} in {Kind}_{index}";
    std::string list_joiner = ", ";
    std::string final_joiner = " and ";
    std::string background_prefix = "Background information: ";
    std::string background_body =
        "The student is a {class_standing} {race} {gender} majoring in {major} with a family yearly income of "
        "{family_income}.";
    std::string output_template = "At the end of the semester, the student will be {category}.";

    /// Each template must carry each of its placeholders exactly once.
    std::vector<Violation> validate() const;

    bool operator==(const VerbalizationTemplates&) const = default;
};

inline constexpr std::string_view kDefaultInstruction = "Forecast the student's end-of-semester academic performance.";

struct EnrichmentConfig {
    int horizon_weeks = 4;
    ModalitySet modalities = ModalitySet::all();
    MissingPolicy missing_policy = MissingPolicy::skipped();
    bool weekly_tags = true;
    bool daily_tags = true;
    std::string instruction_text{kDefaultInstruction};
    std::size_t token_budget = 512;
    std::uint64_t master_seed = 0;
    VerbalizationTemplates templates;

    std::vector<Violation> validate() const;

    bool operator==(const EnrichmentConfig&) const = default;
};

enum class Split { Train, Test };

std::string_view split_name(Split split) noexcept;

struct TextExample {
    std::string example_id;
    std::string student_id;
    std::string input_text;
    std::string output_text;
    PerformanceCategory label = PerformanceCategory::AtRisk;
    std::optional<std::string> parent_id;  // set iff the example is augmented
    std::optional<Split> split;

    bool is_augmented() const noexcept { return parent_id.has_value(); }

    bool operator==(const TextExample&) const = default;
};

struct DayBlock {
    Weekday day = Weekday::Monday;
    bool tag_enabled = true;
    std::vector<std::string> items;

    bool operator==(const DayBlock&) const = default;
};

struct WeekBlock {
    int week_number = 1;
    bool tag_enabled = true;
    std::vector<DayBlock> day_blocks;
    // Week-level items rendered after the day blocks (the score sentence).
    std::vector<std::string> items;

    bool operator==(const WeekBlock&) const = default;
};

struct SequencePlan {
    std::string instruction_block;
    std::optional<std::string> background_block;
    std::vector<WeekBlock> week_blocks;

    bool operator==(const SequencePlan&) const = default;
};

/// Empty iff every record invariant holds. Field paths look like
/// "cognitive[2].earned".
std::vector<Violation> validate_record(const StudentRecord& record);

/// Record violations are prefixed with "records[<student_id>].".
std::vector<Violation> validate_cohort(const Cohort& cohort);

/// Throws ValidationError naming the first offending record.
void require_valid(const Cohort& cohort);

}  // namespace seqenrich
