#include "doctest.h"
#include "helpers.hpp"
#include "seqenrich/core.hpp"

using namespace seqenrich;

TEST_SUITE("core") {

TEST_CASE("grade thresholds") {
    CHECK(grade_to_category(LetterGrade::A) == PerformanceCategory::Outstanding);
    CHECK(grade_to_category(LetterGrade::APlus) == PerformanceCategory::Outstanding);
    CHECK(grade_to_category(LetterGrade::AMinus) == PerformanceCategory::Average);
    CHECK(grade_to_category(LetterGrade::BPlus) == PerformanceCategory::Average);
    CHECK(grade_to_category(LetterGrade::B) == PerformanceCategory::Average);
    CHECK(grade_to_category(LetterGrade::BMinus) == PerformanceCategory::ProneToRisk);
    CHECK(grade_to_category(LetterGrade::CPlus) == PerformanceCategory::ProneToRisk);
    CHECK(grade_to_category(LetterGrade::C) == PerformanceCategory::AtRisk);
    CHECK(grade_to_category(LetterGrade::CMinus) == PerformanceCategory::AtRisk);
    CHECK(grade_to_category(LetterGrade::F) == PerformanceCategory::AtRisk);
}

TEST_CASE("grade mapping is monotone") {
    for (std::size_t i = 1; i < kAllGrades.size(); ++i) {
        CHECK(category_index(grade_to_category(kAllGrades[i - 1])) <=
              category_index(grade_to_category(kAllGrades[i])));
    }
}

TEST_CASE("grade symbols round trip") {
    for (auto g : kAllGrades) {
        auto back = parse_grade(grade_symbol(g));
        REQUIRE(back);
        CHECK(*back == g);
    }
    CHECK(parse_grade("C-") == LetterGrade::CMinus);
    CHECK_FALSE(parse_grade("E"));
}

TEST_CASE("surface forms are distinct and not nested") {
    for (auto a : kAllCategories) {
        CHECK(category_from_surface(surface_form(a)) == a);
        for (auto b : kAllCategories) {
            if (a == b) continue;
            CHECK(surface_form(a).find(surface_form(b)) == std::string_view::npos);
        }
    }
}

TEST_CASE("modality labels") {
    CHECK(ModalitySet::all().label() == "NC+C+B");
    CHECK(ModalitySet{Modality::Cognitive}.label() == "C");
    auto parsed = ModalitySet::parse("NC+C");
    REQUIRE(parsed);
    CHECK(*parsed == ModalitySet{Modality::NonCognitive, Modality::Cognitive});
    CHECK_FALSE(ModalitySet::parse("X"));
}

TEST_CASE("missing policy labels") {
    CHECK(MissingPolicy::parse("skipped") == MissingPolicy::skipped());
    CHECK(MissingPolicy::parse("na") == MissingPolicy::generic_na());
    auto c = MissingPolicy::parse("custom:Hello, World!");
    CHECK(c.kind() == MissingPolicy::Kind::Custom);
    CHECK(c.descriptor() == "Hello, World!");
    CHECK(MissingPolicy::parse(c.label()) == c);
    CHECK_THROWS_AS(MissingPolicy::custom(""), ValueError);
}

TEST_CASE("valid record has no violations") {
    CHECK(validate_record(test::small_record()).empty());
}

TEST_CASE("earned above max") {
    auto r = test::small_record();
    r.cognitive = {{AssessmentKind::Homework, 1, 2, 1, 1}};
    auto v = validate_record(r);
    REQUIRE(v.size() == 1);
    CHECK(v[0].field == "cognitive[0].earned");
    CHECK(v[0].rule == "earned<=max");
}

TEST_CASE("duplicate response slot") {
    auto r = test::small_record();
    r.noncognitive.push_back(r.noncognitive.back());
    auto v = validate_record(r);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule.find("unique") != std::string::npos);
}

TEST_CASE("require_valid names the student") {
    Cohort c;
    c.records = {test::small_record()};
    c.records[0].student_id = "S003";
    c.records[0].cognitive[0].earned = 5;
    try {
        require_valid(c);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.subject().find("S003") != std::string::npos);
    }
}

TEST_CASE("template placeholders checked") {
    VerbalizationTemplates t;
    CHECK(t.validate().empty());
    t.output_template = "{category} {category}";
    CHECK_FALSE(t.validate().empty());
}

}
