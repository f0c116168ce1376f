#include "seqenrich/dataset_io.hpp"

#include <map>
#include <nlohmann/json.hpp>
#include <set>

#include "seqenrich/csv.hpp"
#include "seqenrich/text.hpp"

namespace seqenrich {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kAugmentedPrefix = "augmented:";

std::string type_name(const json& v) { return v.type_name(); }

// Calls fn(line_number, parsed_object) for every non-blank line.
template <typename Fn>
void for_each_object(std::string_view bytes, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= bytes.size()) {
        auto end = bytes.find('\n', start);
        if (end == std::string_view::npos) end = bytes.size();
        ++line_no;
        std::string_view line = bytes.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!trim(line).empty()) {
            json obj;
            try {
                obj = json::parse(line.begin(), line.end());
            } catch (const json::parse_error& e) {
                throw SyntaxError(line_no, e.byte, e.what());
            }
            if (!obj.is_object()) {
                throw SchemaError("line " + std::to_string(line_no), "object", type_name(obj));
            }
            fn(line_no, obj);
        }
        if (end == bytes.size()) break;
        start = end + 1;
    }
}

std::string string_field(const json& obj, const char* key, std::size_t line_no) {
    const std::string where = "line " + std::to_string(line_no) + "." + key;
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(where, "string", "nothing");
    if (!it->is_string()) throw SchemaError(where, "string", type_name(*it));
    return it->get<std::string>();
}

}  // namespace

std::string write_dataset_jsonl(const std::vector<TextExample>& examples) {
    std::string out;
    for (const auto& e : examples) {
        ordered_json j;
        j["id"] = e.example_id;
        j["student_id"] = e.student_id;
        j["input"] = e.input_text;
        j["output"] = e.output_text;
        j["label"] = std::string(surface_form(e.label));
        j["provenance"] = e.parent_id ? std::string(kAugmentedPrefix) + *e.parent_id : "original";
        j["split"] = e.split ? ordered_json(std::string(split_name(*e.split))) : ordered_json(nullptr);
        out += j.dump() + "\n";
    }
    return out;
}

std::vector<TextExample> read_dataset_jsonl(std::string_view bytes) {
    std::vector<TextExample> out;
    for_each_object(bytes, [&](std::size_t line_no, const json& obj) {
        TextExample e;
        e.example_id = string_field(obj, "id", line_no);
        e.student_id = string_field(obj, "student_id", line_no);
        e.input_text = string_field(obj, "input", line_no);
        e.output_text = string_field(obj, "output", line_no);

        auto label = obj.find("label");
        if (label == obj.end() || label->is_null()) {
            throw UnlabeledExample("example '" + e.example_id + "' has no label");
        }
        if (!label->is_string()) {
            throw UnlabeledExample("example '" + e.example_id + "' has a non-text label");
        }
        auto category = category_from_surface(label->get<std::string>());
        if (!category) {
            throw UnlabeledExample("example '" + e.example_id + "' has unknown label '" + label->get<std::string>() +
                                   "'");
        }
        e.label = *category;

        auto prov = obj.find("provenance");
        if (prov != obj.end() && !prov->is_null()) {
            if (!prov->is_string()) {
                throw SchemaError("line " + std::to_string(line_no) + ".provenance", "string", type_name(*prov));
            }
            const auto p = prov->get<std::string>();
            if (starts_with(p, kAugmentedPrefix)) {
                e.parent_id = p.substr(kAugmentedPrefix.size());
            } else if (p != "original") {
                throw SchemaError("line " + std::to_string(line_no) + ".provenance",
                                  "\"original\" or \"augmented:<id>\"", "\"" + p + "\"");
            }
        }

        auto split = obj.find("split");
        if (split != obj.end() && !split->is_null()) {
            const std::string s = split->is_string() ? split->get<std::string>() : std::string();
            if (s == "train") {
                e.split = Split::Train;
            } else if (s == "test") {
                e.split = Split::Test;
            } else {
                throw SchemaError("line " + std::to_string(line_no) + ".split", "\"train\", \"test\" or null",
                                  split->dump());
            }
        }
        out.push_back(std::move(e));
    });
    return out;
}

std::string write_predictions_jsonl(const std::vector<Prediction>& predictions) {
    std::string out;
    for (const auto& p : predictions) {
        ordered_json j;
        j["id"] = p.id;
        j["generated"] = p.generated;
        out += j.dump() + "\n";
    }
    return out;
}

std::vector<Prediction> read_predictions_jsonl(std::string_view bytes) {
    std::vector<Prediction> out;
    for_each_object(bytes, [&](std::size_t line_no, const json& obj) {
        out.push_back({string_field(obj, "id", line_no), string_field(obj, "generated", line_no)});
    });
    return out;
}

EvalSummary score_predictions(const std::vector<Prediction>& predictions, const std::vector<TextExample>& references) {
    if (references.empty()) throw EmptyInput("no reference examples");
    std::map<std::string_view, const Prediction*> by_id;
    for (const auto& p : predictions) {
        if (!by_id.emplace(p.id, &p).second) throw ValueError("duplicate prediction id '" + p.id + "'");
    }
    std::set<std::string_view> seen;
    std::vector<KeywordOutcome> outcomes;
    std::vector<PerformanceCategory> labels;
    EvalSummary summary;
    for (const auto& r : references) {
        if (!seen.insert(r.example_id).second) throw ValueError("duplicate reference id '" + r.example_id + "'");
        auto it = by_id.find(r.example_id);
        if (it == by_id.end()) throw JoinError("no prediction for example '" + r.example_id + "'");
        const auto outcome = keyword_score(it->second->generated);
        if (outcome.kind() == KeywordOutcome::Kind::NoMatch) ++summary.no_match;
        if (outcome.kind() == KeywordOutcome::Kind::Ambiguous) ++summary.ambiguous;
        if (outcome.is(r.label)) ++summary.correct;
        outcomes.push_back(outcome);
        labels.push_back(r.label);
    }
    for (const auto& p : predictions) {
        if (!seen.count(p.id)) throw JoinError("prediction '" + p.id + "' has no reference example");
    }
    summary.n = outcomes.size();
    summary.accuracy = accuracy(outcomes, labels);
    return summary;
}

std::string write_budget_csv(const std::vector<TokenBudgetReport>& reports) {
    std::string out = "id,estimated_tokens,budget,over_budget\n";
    for (const auto& r : reports) {
        out += csv_escape(r.example_id) + "," + std::to_string(r.estimated_tokens) + "," + std::to_string(r.budget) + "," +
               (r.over_budget ? "true" : "false") + "\n";
    }
    return out;
}

}  // namespace seqenrich
