#pragma once
// Natural-language renderings of the non-text parts of a record.

#include <initializer_list>
#include <span>
#include <string>
#include <utility>

#include "seqenrich/core.hpp"

namespace seqenrich {

/// "The scores are 1 out of 1 in Homework_1, 3 out of 3 in Lab_1, and 0.8 out
/// of 1 in Quiz_1." Items keep input order. Two items are joined with " and ",
/// three or more with ", " and a final ", and ". Throws EmptyInput.
std::string verbalize_scores(std::span<const AssessmentScore> scores,
                             const VerbalizationTemplates& templates = {});

/// Throws MissingField naming the first empty distal field, checked in the
/// order class_standing, major, gender, race, family_income.
std::string verbalize_background(const BackgroundProfile& profile, const VerbalizationTemplates& templates = {});

std::string verbalize_output(PerformanceCategory category, const VerbalizationTemplates& templates = {});

/// Replaces every "{name}" with its value. Unknown placeholders are left as is.
std::string fill_template(std::string_view tmpl, std::initializer_list<std::pair<std::string_view, std::string_view>> values);

}  // namespace seqenrich
