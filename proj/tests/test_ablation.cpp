#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "seqenrich/ablation.hpp"
#include "seqenrich/synth.hpp"
#include "seqenrich/text.hpp"

using namespace seqenrich;

namespace {

SequencePlan plan_of_weeks(int n) {
    SequencePlan p;
    p.instruction_block = "Forecast.";
    for (int w = 1; w <= n; ++w) {
        WeekBlock b;
        b.week_number = w;
        for (auto d : kCollectionDays) {
            DayBlock day;
            day.day = d;
            day.items = {"Item " + std::to_string(w) + std::string(weekday_name(d)) + "."};
            b.day_blocks.push_back(day);
        }
        b.items = {"Score " + std::to_string(w) + "."};
        p.week_blocks.push_back(b);
    }
    return p;
}

std::string strip_weekly_tags(std::string text) {
    for (int w = 1; w <= 16; ++w) {
        const std::string tag = weekly_tag(w) + " ";
        for (auto pos = text.find(tag); pos != std::string::npos; pos = text.find(tag)) text.erase(pos, tag.size());
    }
    return text;
}

std::multiset<std::string> items_of(const SequencePlan& p) {
    std::multiset<std::string> out;
    for (const auto& w : p.week_blocks) {
        for (const auto& d : w.day_blocks) out.insert(d.items.begin(), d.items.end());
        out.insert(w.items.begin(), w.items.end());
    }
    return out;
}

}  // namespace

TEST_SUITE("ablation") {

TEST_CASE("names") {
    for (auto m : kAllAblationModes) CHECK(parse_ablation(ablation_name(m)) == m);
    CHECK_FALSE(parse_ablation("bogus"));
}

TEST_CASE("none is identity") {
    Rng rng(1);
    auto p = plan_of_weeks(4);
    CHECK(apply_ablation(p, AblationMode::NoRandomization, rng) == p);
}

TEST_CASE("full on a one-week one-day plan only drops tags") {
    SequencePlan p = plan_of_weeks(1);
    p.week_blocks[0].day_blocks.resize(1);
    Rng rng(9);
    auto out = apply_ablation(p, AblationMode::Full, rng);
    CHECK_FALSE(out.week_blocks[0].tag_enabled);
    CHECK_FALSE(out.week_blocks[0].day_blocks[0].tag_enabled);
    out.week_blocks[0].tag_enabled = true;
    out.week_blocks[0].day_blocks[0].tag_enabled = true;
    CHECK(out == p);
}

TEST_CASE("partial preserves weeks and day order") {
    const auto p = plan_of_weeks(4);
    for (std::uint64_t s = 0; s < 100; ++s) {
        Rng rng(derive_seed(s, "trial"));
        auto out = apply_ablation(p, AblationMode::Partial, rng);
        std::vector<int> weeks;
        for (const auto& w : out.week_blocks) {
            weeks.push_back(w.week_number);
            CHECK_FALSE(w.tag_enabled);
            CHECK(w.day_blocks == p.week_blocks[w.week_number - 1].day_blocks);
        }
        std::sort(weeks.begin(), weeks.end());
        CHECK(weeks == std::vector<int>{1, 2, 3, 4});
    }
}

TEST_CASE("full strips every tag and conserves content") {
    const auto p = plan_of_weeks(4);
    Rng rng(4);
    auto out = apply_ablation(p, AblationMode::Full, rng);
    auto text = render_plan(out);
    CHECK(text.find("In week") == std::string::npos);
    CHECK(text.find("On Monday") == std::string::npos);
    CHECK(items_of(out) == items_of(p));
}

TEST_CASE("pseudo stripped equals partial") {
    const auto p = plan_of_weeks(4);
    for (std::uint64_t s = 0; s < 50; ++s) {
        Rng a(s), b(s);
        auto pseudo = render_plan(apply_ablation(p, AblationMode::Pseudo, a));
        auto partial = render_plan(apply_ablation(p, AblationMode::Partial, b));
        CHECK(strip_weekly_tags(pseudo) == partial);
    }
}

TEST_CASE("week permutations are uniform") {
    const auto p = plan_of_weeks(3);
    std::map<std::vector<int>, int> hist;
    const int draws = 600;
    for (int s = 0; s < draws; ++s) {
        Rng rng(derive_seed(0, "uniformity", s));
        std::vector<int> order;
        for (const auto& w : apply_ablation(p, AblationMode::Partial, rng).week_blocks) order.push_back(w.week_number);
        ++hist[order];
    }
    REQUIRE(hist.size() == 6);
    double chi2 = 0;
    for (auto& [k, v] : hist) chi2 += (v - draws / 6.0) * (v - draws / 6.0) / (draws / 6.0);
    CHECK(test::chi2_sf_df5(chi2) > 0.01);
}

TEST_CASE("dataset-level modes") {
    Cohort c = generate_cohort(SynthConfig{});
    EnrichmentConfig cfg;
    auto base = build_dataset(c, cfg).examples;
    CHECK(ablate_dataset(c, cfg, AblationMode::NoRandomization).examples == base);
    auto full = ablate_dataset(c, cfg, AblationMode::Full).examples;
    auto pseudo = ablate_dataset(c, cfg, AblationMode::Pseudo).examples;
    auto partial = ablate_dataset(c, cfg, AblationMode::Partial).examples;
    REQUIRE(full.size() == base.size());
    for (std::size_t i = 0; i < base.size(); ++i) {
        for (auto tag : {"In week", "On Monday", "On Thursday", "On Saturday"}) {
            CHECK(full[i].input_text.find(tag) == std::string::npos);
        }
        for (int w = 1; w <= 4; ++w) {
            CHECK(count_occurrences(pseudo[i].input_text, weekly_tag(w)) ==
                  count_occurrences(base[i].input_text, weekly_tag(w)));
        }
        CHECK(strip_weekly_tags(pseudo[i].input_text) == partial[i].input_text);
    }
    CHECK(ablate_dataset(c, cfg, AblationMode::Full, 3).examples == full);
}

}
