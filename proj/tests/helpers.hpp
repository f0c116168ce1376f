#pragma once
// Shared fixtures and small oracles for the unit tests.

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "seqenrich/core.hpp"
#include "seqenrich/verbalizer.hpp"

namespace seqenrich::test {

inline std::string fixture(const std::string& name) {
    const std::string path = std::string(SEQENRICH_FIXTURES) + "/" + name;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline TextExample make_example(std::string id, PerformanceCategory label, std::string input) {
    TextExample e;
    e.example_id = id;
    e.student_id = std::move(id);
    e.input_text = std::move(input);
    e.output_text = verbalize_output(label);
    e.label = label;
    return e;
}

// 6 at-risk, 6 prone-to-risk, 12 average, 24 outstanding originals.
inline std::vector<TextExample> skewed_examples() {
    const std::size_t counts[4] = {6, 6, 12, 24};
    std::vector<TextExample> out;
    int n = 0;
    for (std::size_t c = 0; c < 4; ++c) {
        for (std::size_t i = 0; i < counts[c]; ++i) {
            char id[16];
            std::snprintf(id, sizeof id, "S%03d", ++n);
            out.push_back(make_example(id, kAllCategories[c],
                                       "Forecast it. In week 1, On Monday, I felt happy and studied hard today. "
                                       "Student number " + std::to_string(n) + "."));
        }
    }
    return out;
}

// Upper tail of the chi-square distribution with 5 degrees of freedom,
// closed form for odd df.
inline double chi2_sf_df5(double x) {
    const double pi = 3.14159265358979323846;
    const double r = std::sqrt(x);
    return std::erfc(r / std::sqrt(2.0)) + std::sqrt(2.0 / pi) * std::exp(-x / 2.0) * (r + r * r * r / 3.0);
}

inline StudentRecord small_record() {
    StudentRecord r;
    r.student_id = "S001";
    r.background = {"freshman", "Computer Science", "female", "Asian", "$50,000-$75,000", {}, {}, {}, {}};
    r.cognitive = {{AssessmentKind::Homework, 1, 1, 1, 1}, {AssessmentKind::Lab, 1, 3, 3, 1},
                   {AssessmentKind::Quiz, 1, 0.8, 1, 2}};
    r.noncognitive = {{1, Weekday::Monday, EngagementKind::Behavioral, "I felt engaged."},
                      {1, Weekday::Monday, EngagementKind::Emotional, std::nullopt},
                      {2, Weekday::Thursday, EngagementKind::Cognitive, "I reviewed my notes."}};
    r.final_grade = LetterGrade::A;
    return r;
}

}  // namespace seqenrich::test
