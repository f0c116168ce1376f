#include "seqenrich/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <tuple>

#include "seqenrich/csv.hpp"
#include "seqenrich/text.hpp"

namespace seqenrich {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string type_name_of(const json& j) {
    if (j.is_number_integer()) return "integer";
    if (j.is_number_float()) return "number";
    return j.type_name();
}

class Reader {
public:
    explicit Reader(std::vector<std::string>* warnings) : warnings_(warnings) {}

    const json& require(const json& obj, std::string_view key, const std::string& path) const {
        auto it = obj.find(std::string(key));
        if (it == obj.end()) {
            throw SchemaError(path + "." + std::string(key), "required field", "nothing");
        }
        return *it;
    }

    void expect_object(const json& j, const std::string& path) const {
        if (!j.is_object()) throw SchemaError(path, "object", type_name_of(j));
    }

    void expect_array(const json& j, const std::string& path) const {
        if (!j.is_array()) throw SchemaError(path, "array", type_name_of(j));
    }

    std::string string_at(const json& obj, std::string_view key, const std::string& path) const {
        const json& j = require(obj, key, path);
        if (!j.is_string()) throw SchemaError(path + "." + std::string(key), "string", type_name_of(j));
        return j.get<std::string>();
    }

    std::optional<std::string> optional_string_at(const json& obj, std::string_view key,
                                                  const std::string& path) const {
        auto it = obj.find(std::string(key));
        if (it == obj.end() || it->is_null()) return std::nullopt;
        if (!it->is_string()) throw SchemaError(path + "." + std::string(key), "string or null", type_name_of(*it));
        return it->get<std::string>();
    }

    int int_at(const json& obj, std::string_view key, const std::string& path) const {
        const json& j = require(obj, key, path);
        if (j.is_number_integer()) {
            const auto v = j.get<std::int64_t>();
            if (v >= std::numeric_limits<int>::min() && v <= std::numeric_limits<int>::max()) {
                return static_cast<int>(v);
            }
        }
        if (j.is_number_float()) {
            const double d = j.get<double>();
            if (std::floor(d) == d && std::abs(d) < 1e9) return static_cast<int>(d);
        }
        throw SchemaError(path + "." + std::string(key), "integer", type_name_of(j));
    }

    double number_at(const json& obj, std::string_view key, const std::string& path) const {
        const json& j = require(obj, key, path);
        if (!j.is_number()) throw SchemaError(path + "." + std::string(key), "number", type_name_of(j));
        return j.get<double>();
    }

    void warn_unknown(const json& obj, std::initializer_list<std::string_view> known, const std::string& path) const {
        if (warnings_ == nullptr) return;
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
                warnings_->push_back("ignoring unknown field " + path + "." + it.key());
            }
        }
    }

private:
    std::vector<std::string>* warnings_;
};

BackgroundProfile read_background(const Reader& rd, const json& j, const std::string& path) {
    rd.expect_object(j, path);
    rd.warn_unknown(j,
                    {"class_standing", "major", "gender", "race", "family_income", "international_status",
                     "parents_education", "science_identity", "reflected_science_identity"},
                    path);
    BackgroundProfile b;
    b.class_standing = rd.string_at(j, "class_standing", path);
    b.major = rd.string_at(j, "major", path);
    b.gender = rd.string_at(j, "gender", path);
    b.race = rd.string_at(j, "race", path);
    b.family_income = rd.string_at(j, "family_income", path);
    b.international_status = rd.optional_string_at(j, "international_status", path);
    b.parents_education = rd.optional_string_at(j, "parents_education", path);
    b.science_identity = rd.optional_string_at(j, "science_identity", path);
    b.reflected_science_identity = rd.optional_string_at(j, "reflected_science_identity", path);
    return b;
}

AssessmentScore read_score(const Reader& rd, const json& j, const std::string& path) {
    rd.expect_object(j, path);
    rd.warn_unknown(j, {"kind", "index", "earned", "max", "week"}, path);
    AssessmentScore s;
    const std::string kind = rd.string_at(j, "kind", path);
    auto k = parse_assessment_kind(kind);
    if (!k) throw SchemaError(path + ".kind", "one of Diary, Lab, Quiz, Homework", "'" + kind + "'");
    s.kind = *k;
    s.index = rd.int_at(j, "index", path);
    s.earned = rd.number_at(j, "earned", path);
    s.max = rd.number_at(j, "max", path);
    s.week = rd.int_at(j, "week", path);
    return s;
}

NonCogResponse read_response(const Reader& rd, const json& j, const std::string& path) {
    rd.expect_object(j, path);
    rd.warn_unknown(j, {"week", "day", "engagement_kind", "answer"}, path);
    NonCogResponse r;
    r.week = rd.int_at(j, "week", path);
    const std::string day = rd.string_at(j, "day", path);
    auto d = parse_weekday(day);
    if (!d) throw SchemaError(path + ".day", "one of Monday, Thursday, Saturday", "'" + day + "'");
    r.day = *d;
    const std::string kind = rd.string_at(j, "engagement_kind", path);
    auto k = parse_engagement_kind(kind);
    if (!k) throw SchemaError(path + ".engagement_kind", "one of Behavioral, Emotional, Cognitive", "'" + kind + "'");
    r.engagement_kind = *k;
    const json& answer = rd.require(j, "answer", path);
    if (answer.is_string()) {
        r.answer = answer.get<std::string>();
    } else if (!answer.is_null()) {
        throw SchemaError(path + ".answer", "string or null", type_name_of(answer));
    }
    return r;
}

StudentRecord read_record(const Reader& rd, const json& j, const std::string& path) {
    rd.expect_object(j, path);
    rd.warn_unknown(j, {"student_id", "background", "cognitive", "noncognitive", "final_grade"}, path);
    StudentRecord rec;
    rec.student_id = rd.string_at(j, "student_id", path);
    const std::string at = "records[" + rec.student_id + "]";
    rec.background = read_background(rd, rd.require(j, "background", at), at + ".background");

    const json& cognitive = rd.require(j, "cognitive", at);
    rd.expect_array(cognitive, at + ".cognitive");
    for (std::size_t i = 0; i < cognitive.size(); ++i) {
        rec.cognitive.push_back(read_score(rd, cognitive[i], at + ".cognitive[" + std::to_string(i) + "]"));
    }
    const json& noncognitive = rd.require(j, "noncognitive", at);
    rd.expect_array(noncognitive, at + ".noncognitive");
    for (std::size_t i = 0; i < noncognitive.size(); ++i) {
        rec.noncognitive.push_back(
            read_response(rd, noncognitive[i], at + ".noncognitive[" + std::to_string(i) + "]"));
    }
    const std::string grade = rd.string_at(j, "final_grade", at);
    auto g = parse_grade(grade);
    if (!g) throw SchemaError(at + ".final_grade", "letter grade (A+ ... F)", "'" + grade + "'");
    rec.final_grade = *g;
    return rec;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view bytes, std::size_t offset) {
    offset = std::min(offset, bytes.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < offset; ++i) {
        if (bytes[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

ordered_json number_json(double v) {
    if (std::floor(v) == v && std::abs(v) < 9.0e15) {
        return ordered_json(static_cast<std::int64_t>(v));
    }
    return ordered_json(v);
}

ordered_json optional_json(const std::optional<std::string>& v) {
    return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

Cohort parse_cohort(std::string_view bytes, std::vector<std::string>* warnings) {
    json doc;
    try {
        doc = json::parse(bytes.begin(), bytes.end());
    } catch (const json::parse_error& e) {
        auto [line, col] = line_column(bytes, e.byte);
        throw SyntaxError(line, col, e.what());
    }

    Reader rd(warnings);
    rd.expect_object(doc, "$");
    rd.warn_unknown(doc, {"schema_version", "course_name", "n_weeks", "records"}, "$");

    Cohort cohort;
    cohort.schema_version = rd.string_at(doc, "schema_version", "$");
    if (cohort.schema_version != kSchemaVersion) {
        throw SchemaError("$.schema_version", "\"1\"", "\"" + cohort.schema_version + "\"");
    }
    cohort.course_name = rd.string_at(doc, "course_name", "$");
    cohort.n_weeks = rd.int_at(doc, "n_weeks", "$");
    const json& records = rd.require(doc, "records", "$");
    rd.expect_array(records, "$.records");
    cohort.records.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        cohort.records.push_back(read_record(rd, records[i], "$.records[" + std::to_string(i) + "]"));
    }
    require_valid(cohort);
    return cohort;
}

std::string write_cohort(const Cohort& cohort) {
    require_valid(cohort);

    std::vector<const StudentRecord*> sorted;
    sorted.reserve(cohort.records.size());
    for (const auto& r : cohort.records) sorted.push_back(&r);
    std::sort(sorted.begin(), sorted.end(),
              [](const StudentRecord* a, const StudentRecord* b) { return a->student_id < b->student_id; });

    ordered_json doc;
    doc["schema_version"] = cohort.schema_version;
    doc["course_name"] = cohort.course_name;
    doc["n_weeks"] = cohort.n_weeks;
    doc["records"] = ordered_json::array();
    for (const StudentRecord* rec : sorted) {
        ordered_json r;
        r["student_id"] = rec->student_id;
        ordered_json b;
        b["class_standing"] = rec->background.class_standing;
        b["major"] = rec->background.major;
        b["gender"] = rec->background.gender;
        b["race"] = rec->background.race;
        b["family_income"] = rec->background.family_income;
        b["international_status"] = optional_json(rec->background.international_status);
        b["parents_education"] = optional_json(rec->background.parents_education);
        b["science_identity"] = optional_json(rec->background.science_identity);
        b["reflected_science_identity"] = optional_json(rec->background.reflected_science_identity);
        r["background"] = std::move(b);

        r["cognitive"] = ordered_json::array();
        for (const auto& s : rec->cognitive) {
            ordered_json o;
            o["kind"] = kind_name(s.kind);
            o["index"] = s.index;
            o["earned"] = number_json(s.earned);
            o["max"] = number_json(s.max);
            o["week"] = s.week;
            r["cognitive"].push_back(std::move(o));
        }
        r["noncognitive"] = ordered_json::array();
        for (const auto& n : rec->noncognitive) {
            ordered_json o;
            o["week"] = n.week;
            o["day"] = weekday_name(n.day);
            o["engagement_kind"] = engagement_name(n.engagement_kind);
            o["answer"] = optional_json(n.answer);
            r["noncognitive"].push_back(std::move(o));
        }
        r["final_grade"] = grade_symbol(rec->final_grade);
        doc["records"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

namespace {

struct Columns {
    const CsvTable& table;
    std::string table_name;

    std::size_t require(std::string_view name) const {
        auto c = table.column(name);
        if (!c) throw SchemaError(table_name + "." + std::string(name), "column present", "no such column");
        return *c;
    }
};

int parse_int_cell(const std::string& cell, const std::string& where) {
    double v = 0;
    try {
        v = parse_number(cell);
    } catch (const ValueError&) {
        throw ValueError(where + ": not an integer: '" + cell + "'");
    }
    if (std::floor(v) != v || std::abs(v) > 1e9) {
        throw ValueError(where + ": not an integer: '" + cell + "'");
    }
    return static_cast<int>(v);
}

}  // namespace

Cohort import_tabular(std::string_view score_table, std::string_view response_table,
                      std::string_view background_table, const TabularImportOptions& options,
                      std::vector<std::string>* warnings) {
    const CsvTable scores = CsvTable::parse(score_table);
    const CsvTable responses = CsvTable::parse(response_table);
    const CsvTable background = CsvTable::parse(background_table);

    const Columns bg{background, "background"};
    const std::size_t b_id = bg.require("student_id");
    const std::size_t b_standing = bg.require("class_standing");
    const std::size_t b_major = bg.require("major");
    const std::size_t b_gender = bg.require("gender");
    const std::size_t b_race = bg.require("race");
    const std::size_t b_income = bg.require("family_income");
    const std::size_t b_grade = bg.require("final_grade");
    const auto b_intl = background.column("international_status");
    const auto b_parents = background.column("parents_education");
    const auto b_sci = background.column("science_identity");
    const auto b_rsci = background.column("reflected_science_identity");
    if (warnings != nullptr) {
        static const std::set<std::string> kKnown = {
            "student_id", "class_standing", "major", "gender", "race", "family_income", "final_grade",
            "international_status", "parents_education", "science_identity", "reflected_science_identity"};
        for (const auto& h : background.header()) {
            if (!kKnown.count(h)) warnings->push_back("ignoring unknown column background." + h);
        }
    }

    std::map<std::string, StudentRecord> roster;
    for (std::size_t r = 0; r < background.rows(); ++r) {
        const std::string where = "background line " + std::to_string(background.line_of(r));
        StudentRecord rec;
        rec.student_id = trim(background.at(r, b_id));
        if (rec.student_id.empty()) throw ValueError(where + ": empty student_id");
        rec.background.class_standing = trim(background.at(r, b_standing));
        rec.background.major = trim(background.at(r, b_major));
        rec.background.gender = trim(background.at(r, b_gender));
        rec.background.race = trim(background.at(r, b_race));
        rec.background.family_income = trim(background.at(r, b_income));
        auto optional_cell = [&](const std::optional<std::size_t>& col) -> std::optional<std::string> {
            if (!col) return std::nullopt;
            std::string v = trim(background.at(r, *col));
            if (v.empty()) return std::nullopt;
            return v;
        };
        rec.background.international_status = optional_cell(b_intl);
        rec.background.parents_education = optional_cell(b_parents);
        rec.background.science_identity = optional_cell(b_sci);
        rec.background.reflected_science_identity = optional_cell(b_rsci);
        const std::string grade = trim(background.at(r, b_grade));
        auto g = parse_grade(grade);
        if (!g) throw ValueError(where + ": unknown final_grade '" + grade + "'");
        rec.final_grade = *g;
        const std::string id = rec.student_id;
        if (!roster.emplace(id, std::move(rec)).second) {
            throw ValueError(where + ": duplicate student_id '" + id + "'");
        }
    }

    const Columns sc{scores, "scores"};
    const std::size_t s_id = sc.require("student_id");
    const std::size_t s_kind = sc.require("kind");
    const std::size_t s_index = sc.require("index");
    const std::size_t s_earned = sc.require("earned");
    const std::size_t s_max = sc.require("max");
    const std::size_t s_week = sc.require("week");
    for (std::size_t r = 0; r < scores.rows(); ++r) {
        const std::string where = "scores line " + std::to_string(scores.line_of(r));
        const std::string id = trim(scores.at(r, s_id));
        auto it = roster.find(id);
        if (it == roster.end()) {
            throw JoinError(where + ": student '" + id + "' is not in the background table");
        }
        AssessmentScore s;
        const std::string kind = trim(scores.at(r, s_kind));
        auto k = parse_assessment_kind(kind);
        if (!k) throw ValueError(where + ": unknown assessment kind '" + kind + "'");
        s.kind = *k;
        s.index = parse_int_cell(scores.at(r, s_index), where + " index");
        try {
            s.earned = parse_number(scores.at(r, s_earned));
            s.max = parse_number(scores.at(r, s_max));
        } catch (const ValueError& e) {
            throw ValueError(where + ": " + e.what());
        }
        s.week = parse_int_cell(scores.at(r, s_week), where + " week");
        it->second.cognitive.push_back(s);
    }

    const Columns rs{responses, "responses"};
    const std::size_t r_id = rs.require("student_id");
    const std::size_t r_week = rs.require("week");
    const std::size_t r_day = rs.require("day");
    const std::size_t r_kind = rs.require("engagement_kind");
    const std::size_t r_answer = rs.require("answer");
    for (std::size_t r = 0; r < responses.rows(); ++r) {
        const std::string where = "responses line " + std::to_string(responses.line_of(r));
        const std::string id = trim(responses.at(r, r_id));
        auto it = roster.find(id);
        if (it == roster.end()) {
            throw JoinError(where + ": student '" + id + "' is not in the background table");
        }
        NonCogResponse n;
        n.week = parse_int_cell(responses.at(r, r_week), where + " week");
        const std::string day = trim(responses.at(r, r_day));
        auto d = parse_weekday(day);
        if (!d) throw ValueError(where + ": unknown day '" + day + "'");
        n.day = *d;
        const std::string kind = trim(responses.at(r, r_kind));
        auto k = parse_engagement_kind(kind);
        if (!k) throw ValueError(where + ": unknown engagement_kind '" + kind + "'");
        n.engagement_kind = *k;
        std::string answer = trim(responses.at(r, r_answer));
        if (!answer.empty()) n.answer = std::move(answer);
        it->second.noncognitive.push_back(std::move(n));
    }

    Cohort cohort;
    cohort.course_name = options.course_name;
    int max_week = 1;
    for (auto& [id, rec] : roster) {
        if (rec.cognitive.empty()) {
            throw JoinError("student '" + id + "' is in the background table but has no score rows");
        }
        std::stable_sort(rec.cognitive.begin(), rec.cognitive.end(),
                         [](const AssessmentScore& a, const AssessmentScore& b) { return a.week < b.week; });
        std::stable_sort(rec.noncognitive.begin(), rec.noncognitive.end(),
                         [](const NonCogResponse& a, const NonCogResponse& b) {
                             return std::tie(a.week, a.day, a.engagement_kind) <
                                    std::tie(b.week, b.day, b.engagement_kind);
                         });
        for (const auto& s : rec.cognitive) max_week = std::max(max_week, s.week);
        for (const auto& n : rec.noncognitive) max_week = std::max(max_week, n.week);
        cohort.records.push_back(std::move(rec));
    }
    cohort.n_weeks = options.n_weeks > 0 ? options.n_weeks : max_week;
    require_valid(cohort);
    return cohort;
}

}  // namespace seqenrich
