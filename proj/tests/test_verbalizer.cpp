#include "doctest.h"
#include "seqenrich/evalkit.hpp"
#include "seqenrich/verbalizer.hpp"

using namespace seqenrich;

TEST_SUITE("verbalizer") {

TEST_CASE("three scores") {
    std::vector<AssessmentScore> s = {{AssessmentKind::Homework, 1, 1, 1, 1},
                                      {AssessmentKind::Lab, 1, 3, 3, 1},
                                      {AssessmentKind::Quiz, 1, 0.8, 1, 1}};
    CHECK(verbalize_scores(s) ==
          "The scores are 1 out of 1 in Homework_1, 3 out of 3 in Lab_1, and 0.8 out of 1 in Quiz_1.");
}

TEST_CASE("one and two scores") {
    std::vector<AssessmentScore> one = {{AssessmentKind::Lab, 2, 3, 3, 1}};
    CHECK(verbalize_scores(one) == "The scores are 3 out of 3 in Lab_2.");
    std::vector<AssessmentScore> two = {{AssessmentKind::Diary, 1, 0, 1, 1}, {AssessmentKind::Diary, 2, 1, 1, 1}};
    CHECK(verbalize_scores(two) == "The scores are 0 out of 1 in Diary_1 and 1 out of 1 in Diary_2.");
    CHECK_THROWS_AS(verbalize_scores(std::vector<AssessmentScore>{}), EmptyInput);
}

TEST_CASE("background sentence") {
    BackgroundProfile p{"freshman", "Computer Science", "female", "Asian", "$50,000-$75,000", {}, {}, {}, {}};
    CHECK(verbalize_background(p) ==
          "Background information: The student is a freshman Asian female majoring in Computer Science with a "
          "family yearly income of $50,000-$75,000.");
    p.major = "week studies";
    CHECK(verbalize_background(p).find("majoring in week studies") != std::string::npos);
    p.major.clear();
    try {
        verbalize_background(p);
        FAIL("expected MissingField");
    } catch (const MissingField& e) {
        CHECK(e.name() == "major");
    }
}

TEST_CASE("output sentences") {
    CHECK(verbalize_output(PerformanceCategory::Outstanding) ==
          "At the end of the semester, the student will be outstanding.");
    CHECK(verbalize_output(PerformanceCategory::AtRisk) == "At the end of the semester, the student will be at-risk.");
    for (auto c : kAllCategories) CHECK(keyword_score(verbalize_output(c)).is(c));
}

TEST_CASE("custom templates") {
    VerbalizationTemplates t;
    t.score_sentence_prefix = "Scores: ";
    t.score_item_format = "{Kind}_{index}={earned}/{max}";
    std::vector<AssessmentScore> s = {{AssessmentKind::Quiz, 2, 0.5, 1, 1}};
    CHECK(verbalize_scores(s, t) == "Scores: Quiz_2=0.5/1.");
    CHECK(fill_template("{a}-{b}-{c}", {{"a", "1"}, {"b", "2"}}) == "1-2-{c}");
}

}
