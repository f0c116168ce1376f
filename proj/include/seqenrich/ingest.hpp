#pragma once
// Cohort documents: strict parsing, canonical writing, and the tabular import
// adapter for raw course exports.
//
// Document layout (keys written in this order):
//   {"schema_version": "1", "course_name": ..., "n_weeks": ...,
//    "records": [{"student_id", "background": {...}, "cognitive": [...],
//                 "noncognitive": [...], "final_grade"}]}
// Missing answers are JSON null. Scores are {kind, index, earned, max, week}.

#include <string>
#include <string_view>
#include <vector>

#include "seqenrich/core.hpp"

namespace seqenrich {

/// Throws SyntaxError, SchemaError, or ValidationError. Unknown keys are
/// ignored; each one adds a message to *warnings when it is given.
Cohort parse_cohort(std::string_view bytes, std::vector<std::string>* warnings = nullptr);

/// Canonical bytes: fixed key order, records sorted by student_id, two-space
/// indent, trailing newline. Throws ValidationError.
std::string write_cohort(const Cohort& cohort);

struct TabularImportOptions {
    std::string course_name;
    int n_weeks = 0;  // 0: infer from the largest week referenced (at least 1)
};

/// Joins the three exports on student_id.
///
/// scores:     student_id,kind,index,earned,max,week
/// responses:  student_id,week,day,engagement_kind,answer
/// background: student_id,class_standing,major,gender,race,family_income,final_grade
///             [,international_status,parents_education,science_identity,reflected_science_identity]
///
/// The background table is the roster. Every roster student must have at
/// least one score row; responses are optional per student. A blank answer
/// cell is a missing response. Throws SchemaError, JoinError, ValueError,
/// SyntaxError, ValidationError.
Cohort import_tabular(std::string_view score_table, std::string_view response_table,
                      std::string_view background_table, const TabularImportOptions& options = {},
                      std::vector<std::string>* warnings = nullptr);

}  // namespace seqenrich
