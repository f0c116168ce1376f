#include "seqenrich/verbalizer.hpp"

#include "seqenrich/text.hpp"

namespace seqenrich {

std::string fill_template(std::string_view tmpl,
                          std::initializer_list<std::pair<std::string_view, std::string_view>> values) {
    std::string out;
    out.reserve(tmpl.size() + 32);
    std::size_t i = 0;
    while (i < tmpl.size()) {
        if (tmpl[i] == '{') {
            const auto close = tmpl.find('}', i);
            if (close != std::string_view::npos) {
                const std::string_view name = tmpl.substr(i + 1, close - i - 1);
                bool replaced = false;
                for (const auto& [key, value] : values) {
                    if (key == name) {
                        out += value;
                        replaced = true;
                        break;
                    }
                }
                if (replaced) {
                    i = close + 1;
                    continue;
                }
            }
        }
        out += tmpl[i++];
    }
    return out;
}

std::string verbalize_scores(std::span<const AssessmentScore> scores, const VerbalizationTemplates& templates) {
    if (scores.empty()) {
        throw EmptyInput("verbalize_scores: no scores to verbalize");
    }
    std::vector<std::string> items;
    items.reserve(scores.size());
    for (const auto& s : scores) {
        const std::string earned = format_number(s.earned);
        const std::string max = format_number(s.max);
        const std::string index = std::to_string(s.index);
        items.push_back(fill_template(templates.score_item_format,
                                      {{"earned", earned}, {"max", max}, {"Kind", kind_name(s.kind)}, {"index", index}}));
    }

    std::string list;
    if (items.size() == 1) {
        list = items[0];
    } else if (items.size() == 2) {
        list = items[0] + templates.final_joiner + items[1];
    } else {
        for (std::size_t i = 0; i + 1 < items.size(); ++i) {
            list += items[i];
            list += templates.list_joiner;
        }
        list += trim(templates.final_joiner) + " " + items.back();
    }
    return templates.score_sentence_prefix + list + ".";
}

std::string verbalize_background(const BackgroundProfile& profile, const VerbalizationTemplates& templates) {
    const std::pair<std::string_view, const std::string*> fields[] = {
        {"class_standing", &profile.class_standing},
        {"major", &profile.major},
        {"gender", &profile.gender},
        {"race", &profile.race},
        {"family_income", &profile.family_income},
    };
    for (const auto& [name, value] : fields) {
        if (trim(*value).empty()) {
            throw MissingField(std::string(name));
        }
    }
    return templates.background_prefix + fill_template(templates.background_body,
                                                       {{"class_standing", profile.class_standing},
                                                        {"race", profile.race},
                                                        {"gender", profile.gender},
                                                        {"major", profile.major},
                                                        {"family_income", profile.family_income}});
}

std::string verbalize_output(PerformanceCategory category, const VerbalizationTemplates& templates) {
    return fill_template(templates.output_template, {{"category", surface_form(category)}});
}

}  // namespace seqenrich
