#include "seqenrich/enrichment.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "seqenrich/parallel.hpp"
#include "seqenrich/text.hpp"
#include "seqenrich/verbalizer.hpp"

namespace seqenrich {

std::string weekly_tag(int week) { return "In week " + std::to_string(week) + ","; }

std::string daily_tag(Weekday day) { return "On " + std::string(weekday_name(day)) + ","; }

std::string apply_missing_policy(const NonCogResponse& response, const MissingPolicy& policy) {
    return response.answer ? *response.answer : policy.descriptor();
}

namespace {

using SlotKey = std::tuple<int, Weekday, EngagementKind>;

std::map<SlotKey, const NonCogResponse*> index_responses(const StudentRecord& record) {
    std::map<SlotKey, const NonCogResponse*> slots;
    for (const auto& r : record.noncognitive) {
        slots.emplace(SlotKey{r.week, r.day, r.engagement_kind}, &r);
    }
    return slots;
}

int effective_horizon(int horizon_weeks, int n_weeks) { return std::max(0, std::min(horizon_weeks, n_weeks)); }

}  // namespace

SequencePlan build_plan(const StudentRecord& record, const EnrichmentConfig& config, int n_weeks) {
    if (auto v = config.validate(); !v.empty()) {
        throw ValidationError("enrichment config", std::move(v));
    }
    if (auto v = validate_record(record); !v.empty()) {
        throw ValidationError("student '" + record.student_id + "'", std::move(v));
    }

    const int horizon = effective_horizon(config.horizon_weeks, n_weeks);
    const bool use_nc = config.modalities.contains(Modality::NonCognitive);
    const bool use_cog = config.modalities.contains(Modality::Cognitive);
    const bool use_bg = config.modalities.contains(Modality::Background);

    const bool nc_has_data = use_nc && !record.noncognitive.empty() && horizon > 0;
    const bool cog_has_data =
        use_cog && std::any_of(record.cognitive.begin(), record.cognitive.end(),
                               [&](const AssessmentScore& s) { return s.week <= horizon; });
    if (!nc_has_data && !cog_has_data && !use_bg) {
        throw NoModalityData("student '" + record.student_id + "' has no data for modalities " +
                             config.modalities.label() + " within " + std::to_string(horizon) + " week(s)");
    }

    SequencePlan plan;
    plan.instruction_block = config.instruction_text;
    if (use_bg) {
        plan.background_block = verbalize_background(record.background, config.templates);
    }

    const auto slots = index_responses(record);
    for (int week = 1; week <= horizon; ++week) {
        WeekBlock wb;
        wb.week_number = week;
        wb.tag_enabled = config.weekly_tags;
        if (use_nc) {
            for (auto day : kCollectionDays) {
                DayBlock db;
                db.day = day;
                db.tag_enabled = config.daily_tags;
                for (auto kind : kEngagementKinds) {
                    auto it = slots.find(SlotKey{week, day, kind});
                    const std::string text = it != slots.end()
                                                 ? apply_missing_policy(*it->second, config.missing_policy)
                                                 : config.missing_policy.descriptor();
                    db.items.push_back(as_sentence(collapse_whitespace(text)));
                }
                wb.day_blocks.push_back(std::move(db));
            }
        }
        if (use_cog) {
            std::vector<AssessmentScore> scores;
            for (const auto& s : record.cognitive) {
                if (s.week == week) scores.push_back(s);
            }
            if (!scores.empty()) {
                wb.items.push_back(verbalize_scores(scores, config.templates));
            }
        }
        if (!wb.day_blocks.empty() || !wb.items.empty()) {
            plan.week_blocks.push_back(std::move(wb));
        }
    }
    return plan;
}

std::string render_plan(const SequencePlan& plan) {
    std::string out;
    auto append = [&out](std::string_view piece) {
        const std::string p = collapse_whitespace(piece);
        if (p.empty()) return;
        if (!out.empty()) out += ' ';
        out += p;
    };
    append(plan.instruction_block);
    if (plan.background_block) append(*plan.background_block);
    for (const auto& week : plan.week_blocks) {
        if (week.tag_enabled) append(weekly_tag(week.week_number));
        for (const auto& day : week.day_blocks) {
            if (day.tag_enabled) append(daily_tag(day.day));
            for (const auto& item : day.items) append(item);
        }
        for (const auto& item : week.items) append(item);
    }
    return out;
}

namespace {

// One lexical unit of rendered text: a tag or a sentence.
struct Unit {
    enum class Kind { WeekTag, DayTag, Sentence } kind;
    std::string text;
    int week = 0;
    Weekday day = Weekday::Monday;
};

bool at_boundary(std::string_view text, std::size_t pos) { return pos >= text.size() || text[pos] == ' '; }

std::optional<Unit> match_tag(std::string_view rest) {
    constexpr std::string_view kWeek = "In week ";
    if (starts_with(rest, kWeek)) {
        std::size_t i = kWeek.size();
        std::size_t digits = 0;
        int n = 0;
        while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9' && digits < 3) {
            n = n * 10 + (rest[i] - '0');
            ++i;
            ++digits;
        }
        if (digits > 0 && i < rest.size() && rest[i] == ',' && at_boundary(rest, i + 1)) {
            return Unit{Unit::Kind::WeekTag, std::string(rest.substr(0, i + 1)), n, Weekday::Monday};
        }
    }
    for (auto day : kCollectionDays) {
        const std::string tag = daily_tag(day);
        if (starts_with(rest, tag) && at_boundary(rest, tag.size())) {
            return Unit{Unit::Kind::DayTag, tag, 0, day};
        }
    }
    return std::nullopt;
}

std::vector<Unit> lex_units(std::string_view text) {
    std::vector<Unit> units;
    std::size_t pos = 0;
    while (pos < text.size()) {
        while (pos < text.size() && text[pos] == ' ') ++pos;
        if (pos >= text.size()) break;
        const std::string_view rest = text.substr(pos);
        if (auto tag = match_tag(rest)) {
            pos += tag->text.size();
            units.push_back(std::move(*tag));
            continue;
        }
        std::size_t end = 0;
        while (end < rest.size()) {
            const char c = rest[end];
            if ((c == '.' || c == '!' || c == '?') && at_boundary(rest, end + 1)) {
                ++end;
                break;
            }
            ++end;
        }
        units.push_back(Unit{Unit::Kind::Sentence, std::string(rest.substr(0, end)), 0, Weekday::Monday});
        pos += end;
    }
    return units;
}

}  // namespace

SequencePlan parse_plan(std::string_view text, std::string_view instruction_text,
                        const VerbalizationTemplates& templates) {
    const std::string body = collapse_whitespace(text);
    const std::string instruction = collapse_whitespace(instruction_text);
    SequencePlan plan;
    std::string_view rest = body;
    if (!instruction.empty() && starts_with(rest, instruction) && at_boundary(rest, instruction.size())) {
        plan.instruction_block = instruction;
        rest.remove_prefix(instruction.size());
    }

    const std::string bg_prefix = trim(templates.background_prefix);
    const std::string score_prefix = trim(templates.score_sentence_prefix);
    auto units = lex_units(rest);
    std::size_t u = 0;
    if (plan.instruction_block.empty() && !units.empty() && units[0].kind == Unit::Kind::Sentence) {
        plan.instruction_block = units[0].text;
        u = 1;
    }
    if (u < units.size() && units[u].kind == Unit::Kind::Sentence && starts_with(units[u].text, bg_prefix)) {
        plan.background_block = units[u].text;
        ++u;
    }

    auto next_week_number = [&plan] {
        return plan.week_blocks.empty() ? 1 : plan.week_blocks.back().week_number + 1;
    };
    auto open_untagged_week = [&] {
        WeekBlock wb;
        wb.week_number = next_week_number();
        wb.tag_enabled = false;
        plan.week_blocks.push_back(std::move(wb));
    };

    for (; u < units.size(); ++u) {
        Unit& unit = units[u];
        switch (unit.kind) {
            case Unit::Kind::WeekTag: {
                WeekBlock wb;
                wb.week_number = unit.week;
                wb.tag_enabled = true;
                plan.week_blocks.push_back(std::move(wb));
                break;
            }
            case Unit::Kind::DayTag: {
                if (plan.week_blocks.empty() || !plan.week_blocks.back().items.empty()) open_untagged_week();
                DayBlock db;
                db.day = unit.day;
                db.tag_enabled = true;
                plan.week_blocks.back().day_blocks.push_back(std::move(db));
                break;
            }
            case Unit::Kind::Sentence: {
                const bool is_score = starts_with(unit.text, score_prefix);
                if (plan.week_blocks.empty() || (!is_score && !plan.week_blocks.back().items.empty())) {
                    open_untagged_week();
                }
                WeekBlock& wb = plan.week_blocks.back();
                if (is_score) {
                    wb.items.push_back(std::move(unit.text));
                    break;
                }
                if (wb.day_blocks.empty()) {
                    DayBlock db;
                    db.tag_enabled = false;
                    wb.day_blocks.push_back(std::move(db));
                }
                wb.day_blocks.back().items.push_back(std::move(unit.text));
                break;
            }
        }
    }
    return plan;
}

std::size_t count_missing_slots(const StudentRecord& record, int horizon_weeks, int n_weeks) {
    const int horizon = effective_horizon(horizon_weeks, n_weeks);
    const auto slots = index_responses(record);
    std::size_t missing = 0;
    for (int week = 1; week <= horizon; ++week) {
        for (auto day : kCollectionDays) {
            for (auto kind : kEngagementKinds) {
                auto it = slots.find(SlotKey{week, day, kind});
                if (it == slots.end() || !it->second->answer) ++missing;
            }
        }
    }
    return missing;
}

DatasetBuild build_dataset(const Cohort& cohort, const EnrichmentConfig& config, std::size_t jobs) {
    return build_dataset(cohort, config, PlanTransform{}, jobs);
}

DatasetBuild build_dataset(const Cohort& cohort, const EnrichmentConfig& config, const PlanTransform& transform,
                           std::size_t jobs) {
    if (auto v = config.validate(); !v.empty()) {
        throw ValidationError("enrichment config", std::move(v));
    }

    std::vector<const StudentRecord*> ordered;
    ordered.reserve(cohort.records.size());
    for (const auto& r : cohort.records) ordered.push_back(&r);
    std::sort(ordered.begin(), ordered.end(),
              [](const StudentRecord* a, const StudentRecord* b) { return a->student_id < b->student_id; });

    struct Slot {
        std::optional<TextExample> example;
        std::optional<StudentError> error;
    };
    std::vector<Slot> slots(ordered.size());

    parallel_for(ordered.size(), jobs, [&](std::size_t i) {
        const StudentRecord& rec = *ordered[i];
        try {
            SequencePlan plan = build_plan(rec, config, cohort.n_weeks);
            if (transform) plan = transform(std::move(plan), rec);
            TextExample ex;
            ex.example_id = rec.student_id;
            ex.student_id = rec.student_id;
            ex.input_text = render_plan(plan);
            ex.label = grade_to_category(rec.final_grade);
            ex.output_text = verbalize_output(ex.label, config.templates);
            slots[i].example = std::move(ex);
        } catch (const Error& e) {
            slots[i].error = StudentError{rec.student_id, e.what()};
        }
    });

    DatasetBuild out;
    for (auto& s : slots) {
        if (s.example) {
            const std::size_t tokens = estimate_tokens(s.example->input_text);
            out.budget_reports.push_back(
                {s.example->example_id, tokens, config.token_budget, tokens > config.token_budget});
            out.examples.push_back(std::move(*s.example));
        }
        if (s.error) out.errors.push_back(std::move(*s.error));
    }
    return out;
}

}  // namespace seqenrich
