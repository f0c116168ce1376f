#include "seqenrich/core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "seqenrich/text.hpp"

namespace seqenrich {

std::string_view surface_form(PerformanceCategory category) noexcept {
    switch (category) {
        case PerformanceCategory::AtRisk:
            return "at-risk";
        case PerformanceCategory::ProneToRisk:
            return "prone-to-risk";
        case PerformanceCategory::Average:
            return "average";
        case PerformanceCategory::Outstanding:
            return "outstanding";
    }
    return "";
}

std::optional<PerformanceCategory> category_from_surface(std::string_view text) noexcept {
    for (auto c : kAllCategories) {
        if (surface_form(c) == text) {
            return c;
        }
    }
    return std::nullopt;
}

std::size_t category_index(PerformanceCategory category) noexcept { return static_cast<std::size_t>(category); }

int grade_rank(LetterGrade grade) noexcept { return static_cast<int>(grade); }

std::string_view grade_symbol(LetterGrade grade) noexcept {
    static constexpr std::array<std::string_view, 13> kSymbols = {"F",  "D-", "D",  "D+", "C-", "C", "C+",
                                                                  "B-", "B",  "B+", "A-", "A",  "A+"};
    return kSymbols[static_cast<std::size_t>(grade)];
}

std::optional<LetterGrade> parse_grade(std::string_view symbol) noexcept {
    for (auto g : kAllGrades) {
        if (grade_symbol(g) == symbol) {
            return g;
        }
    }
    return std::nullopt;
}

PerformanceCategory grade_to_category(LetterGrade grade) noexcept {
    if (grade >= LetterGrade::A) {
        return PerformanceCategory::Outstanding;
    }
    if (grade >= LetterGrade::B) {
        return PerformanceCategory::Average;
    }
    if (grade > LetterGrade::C) {
        return PerformanceCategory::ProneToRisk;
    }
    return PerformanceCategory::AtRisk;
}

bool BackgroundProfile::complete() const noexcept {
    return !class_standing.empty() && !major.empty() && !gender.empty() && !race.empty() && !family_income.empty();
}

std::string_view kind_name(AssessmentKind kind) noexcept {
    switch (kind) {
        case AssessmentKind::Diary:
            return "Diary";
        case AssessmentKind::Lab:
            return "Lab";
        case AssessmentKind::Quiz:
            return "Quiz";
        case AssessmentKind::Homework:
            return "Homework";
    }
    return "";
}

std::optional<AssessmentKind> parse_assessment_kind(std::string_view text) noexcept {
    const std::string lowered = to_lower(text);
    for (auto k : {AssessmentKind::Diary, AssessmentKind::Lab, AssessmentKind::Quiz, AssessmentKind::Homework}) {
        if (to_lower(kind_name(k)) == lowered) {
            return k;
        }
    }
    return std::nullopt;
}

std::string_view weekday_name(Weekday day) noexcept {
    switch (day) {
        case Weekday::Monday:
            return "Monday";
        case Weekday::Thursday:
            return "Thursday";
        case Weekday::Saturday:
            return "Saturday";
    }
    return "";
}

std::optional<Weekday> parse_weekday(std::string_view text) noexcept {
    const std::string lowered = to_lower(text);
    for (auto d : kCollectionDays) {
        if (to_lower(weekday_name(d)) == lowered) {
            return d;
        }
    }
    return std::nullopt;
}

std::string_view engagement_name(EngagementKind kind) noexcept {
    switch (kind) {
        case EngagementKind::Behavioral:
            return "Behavioral";
        case EngagementKind::Emotional:
            return "Emotional";
        case EngagementKind::Cognitive:
            return "Cognitive";
    }
    return "";
}

std::optional<EngagementKind> parse_engagement_kind(std::string_view text) noexcept {
    const std::string lowered = to_lower(text);
    for (auto k : kEngagementKinds) {
        if (to_lower(engagement_name(k)) == lowered) {
            return k;
        }
    }
    return std::nullopt;
}

std::string ModalitySet::label() const {
    std::string out;
    auto add = [&](std::string_view part) {
        if (!out.empty()) {
            out += '+';
        }
        out += part;
    };
    if (contains(Modality::NonCognitive)) add("NC");
    if (contains(Modality::Cognitive)) add("C");
    if (contains(Modality::Background)) add("B");
    return out;
}

std::optional<ModalitySet> ModalitySet::parse(std::string_view label) {
    ModalitySet set;
    for (const auto& part : split(label, '+')) {
        const std::string p = trim(part);
        if (p == "NC") {
            set = set.with(Modality::NonCognitive);
        } else if (p == "C") {
            set = set.with(Modality::Cognitive);
        } else if (p == "B") {
            set = set.with(Modality::Background);
        } else {
            return std::nullopt;
        }
    }
    if (set.empty()) {
        return std::nullopt;
    }
    return set;
}

MissingPolicy MissingPolicy::custom(std::string text) {
    if (text.empty()) {
        throw ValueError("missing-value descriptor must be non-empty");
    }
    return MissingPolicy(Kind::Custom, std::move(text));
}

std::string MissingPolicy::label() const {
    switch (kind_) {
        case Kind::SkippedDescriptor:
            return "skipped";
        case Kind::GenericNA:
            return "na";
        case Kind::Custom:
            return "custom:" + text_;
    }
    return "";
}

MissingPolicy MissingPolicy::parse(std::string_view label) {
    if (label == "skipped") {
        return skipped();
    }
    if (label == "na") {
        return generic_na();
    }
    constexpr std::string_view kCustom = "custom:";
    if (label.substr(0, kCustom.size()) == kCustom) {
        return custom(std::string(label.substr(kCustom.size())));
    }
    throw ValueError("unknown missing policy '" + std::string(label) + "' (expected skipped, na, or custom:<text>)");
}

namespace {

void require_placeholders(std::vector<Violation>& out, std::string_view name, std::string_view tmpl,
                          std::initializer_list<std::string_view> placeholders) {
    for (auto p : placeholders) {
        if (count_occurrences(tmpl, p) != 1) {
            out.push_back({std::string(name), std::string(p) + " exactly once"});
        }
    }
}

}  // namespace

std::vector<Violation> VerbalizationTemplates::validate() const {
    std::vector<Violation> out;
    require_placeholders(out, "score_item_format", score_item_format, {"{earned}", "{max}", "{Kind}", "{index}"});
    require_placeholders(out, "background_body", background_body,
                         {"{class_standing}", "{race}", "{gender}", "{major}", "{family_income}"});
    require_placeholders(out, "output_template", output_template, {"{category}"});
    return out;
}

std::vector<Violation> EnrichmentConfig::validate() const {
    std::vector<Violation> out;
    if (modalities.empty()) {
        out.push_back({"modalities", "non-empty"});
    }
    if (horizon_weeks < kMinWeek || horizon_weeks > kMaxWeek) {
        out.push_back({"horizon_weeks", "in [1,16]"});
    }
    if (token_budget < 1) {
        out.push_back({"token_budget", ">= 1"});
    }
    if (trim(instruction_text).empty()) {
        out.push_back({"instruction_text", "non-empty"});
    }
    for (auto& v : templates.validate()) {
        out.push_back({"templates." + v.field, v.rule});
    }
    return out;
}

std::string_view split_name(Split split) noexcept { return split == Split::Train ? "train" : "test"; }

std::vector<Violation> validate_record(const StudentRecord& record) {
    std::vector<Violation> out;
    if (trim(record.student_id).empty()) {
        out.push_back({"student_id", "non-empty"});
    }

    std::set<std::pair<AssessmentKind, int>> seen_scores;
    for (std::size_t i = 0; i < record.cognitive.size(); ++i) {
        const auto& s = record.cognitive[i];
        const std::string at = "cognitive[" + std::to_string(i) + "]";
        if (!(s.earned >= 0.0)) out.push_back({at + ".earned", "earned>=0"});
        if (!(s.max > 0.0)) out.push_back({at + ".max", "max>0"});
        if (s.earned > s.max) out.push_back({at + ".earned", "earned<=max"});
        if (s.index < 1) out.push_back({at + ".index", "index>=1"});
        if (s.week < kMinWeek || s.week > kMaxWeek) out.push_back({at + ".week", "week in [1,16]"});
        if (!seen_scores.insert({s.kind, s.index}).second) {
            out.push_back({at, "unique (kind,index)"});
        }
        if (i > 0 && record.cognitive[i - 1].week > s.week) {
            out.push_back({at + ".week", "sorted by week"});
        }
    }

    std::set<std::tuple<int, Weekday, EngagementKind>> seen_responses;
    for (std::size_t i = 0; i < record.noncognitive.size(); ++i) {
        const auto& r = record.noncognitive[i];
        const std::string at = "noncognitive[" + std::to_string(i) + "]";
        if (r.week < kMinWeek || r.week > kMaxWeek) out.push_back({at + ".week", "week in [1,16]"});
        if (!seen_responses.insert({r.week, r.day, r.engagement_kind}).second) {
            out.push_back({at, "unique (week,day,engagement_kind)"});
        }
        if (i > 0) {
            const auto& p = record.noncognitive[i - 1];
            if (std::tie(p.week, p.day, p.engagement_kind) > std::tie(r.week, r.day, r.engagement_kind)) {
                out.push_back({at, "sorted by (week,day,engagement_kind)"});
            }
        }
    }
    return out;
}

std::vector<Violation> validate_cohort(const Cohort& cohort) {
    std::vector<Violation> out;
    if (cohort.schema_version != kSchemaVersion) {
        out.push_back({"schema_version", "recognized version \"1\""});
    }
    if (cohort.n_weeks < kMinWeek || cohort.n_weeks > kMaxWeek) {
        out.push_back({"n_weeks", "in [1,16]"});
    }
    std::set<std::string> ids;
    int max_week = 0;
    for (const auto& rec : cohort.records) {
        const std::string prefix = "records[" + rec.student_id + "].";
        if (!ids.insert(rec.student_id).second) {
            out.push_back({prefix + "student_id", "unique within cohort"});
        }
        for (auto& v : validate_record(rec)) {
            out.push_back({prefix + v.field, v.rule});
        }
        for (const auto& s : rec.cognitive) max_week = std::max(max_week, s.week);
        for (const auto& r : rec.noncognitive) max_week = std::max(max_week, r.week);
    }
    if (cohort.n_weeks < max_week) {
        out.push_back({"n_weeks", "n_weeks>=max referenced week"});
    }
    return out;
}

void require_valid(const Cohort& cohort) {
    std::set<std::string> ids;
    for (const auto& rec : cohort.records) {
        auto v = validate_record(rec);
        if (!ids.insert(rec.student_id).second) {
            v.push_back({"student_id", "unique within cohort"});
        }
        if (!v.empty()) {
            throw ValidationError("student '" + rec.student_id + "'", std::move(v));
        }
    }
    auto all = validate_cohort(cohort);
    if (!all.empty()) {
        throw ValidationError("cohort", std::move(all));
    }
}

}  // namespace seqenrich
