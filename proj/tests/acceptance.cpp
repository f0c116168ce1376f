// Acceptance checks. One PASS/FAIL line per criterion, seed 0 throughout;
// exits nonzero when any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "seqenrich/ablation.hpp"
#include "seqenrich/augmentation.hpp"
#include "seqenrich/dataset_io.hpp"
#include "seqenrich/enrichment.hpp"
#include "seqenrich/evalkit.hpp"
#include "seqenrich/ingest.hpp"
#include "seqenrich/split.hpp"
#include "seqenrich/synth.hpp"
#include "seqenrich/text.hpp"
#include "seqenrich/verbalizer.hpp"

namespace fs = std::filesystem;
using namespace seqenrich;

namespace {

constexpr std::uint64_t kSeed = 0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

SynthConfig synth_config(double tau) {
    SynthConfig c;
    c.master_seed = kSeed;
    c.temporal_trend = tau;
    return c;
}

std::vector<TextExample> default_originals() {
    auto build = build_dataset(generate_cohort(synth_config(0.6)), EnrichmentConfig{});
    if (!build.errors.empty()) throw std::runtime_error("synthetic build failed");
    return build.examples;
}

std::vector<TextExample> augmented_pool() {
    auto originals = default_originals();
    return augment(originals, default_targets(count_labels(originals)), SynonymLexicon::builtin(),
                   kDefaultReplacementRate, kSeed);
}

// Counts in surface order outstanding, average, prone-to-risk, at-risk.
std::string counts_text(const CategoryCounts& c) {
    return "{" + std::to_string(c[3]) + "," + std::to_string(c[2]) + "," + std::to_string(c[1]) + "," +
           std::to_string(c[0]) + "}";
}

Outcome ac1() {
    std::vector<AssessmentScore> s = {{AssessmentKind::Homework, 1, 1, 1, 1},
                                      {AssessmentKind::Lab, 1, 3, 3, 1},
                                      {AssessmentKind::Quiz, 1, 0.8, 1, 1}};
    const std::string want =
        "The scores are 1 out of 1 in Homework_1, 3 out of 3 in Lab_1, and 0.8 out of 1 in Quiz_1.";
    const auto got = verbalize_scores(s);
    return {got == want, "\"" + got + "\""};
}

Outcome ac2() {
    auto originals = default_originals();
    const auto before = count_labels(originals);
    auto out = augment(originals, default_targets(before), SynonymLexicon::builtin(), kDefaultReplacementRate, kSeed);
    bool ok = before == CategoryCounts{6, 6, 12, 24} && out.size() == 144 &&
              count_labels(out) == CategoryCounts{30, 30, 36, 48};
    std::map<std::string, PerformanceCategory> parent_label;
    for (std::size_t i = 0; i < originals.size(); ++i) {
        ok = ok && write_dataset_jsonl({out[i]}) == write_dataset_jsonl({originals[i]});
        parent_label[originals[i].example_id] = originals[i].label;
    }
    for (std::size_t i = originals.size(); i < out.size(); ++i) {
        ok = ok && out[i].is_augmented() && parent_label.at(*out[i].parent_id) == out[i].label &&
             keyword_score(out[i].output_text).is(out[i].label);
    }
    return {ok, std::to_string(out.size()) + " examples " + counts_text(count_labels(out))};
}

Outcome ac3() {
    auto pool = augmented_pool();
    SplitSpec spec;
    spec.seed = kSeed;
    auto r = stratified_split(pool, spec);
    bool ok = count_labels(r.test) == CategoryCounts{9, 9, 11, 14};
    std::multiset<std::string> all, parts;
    std::set<std::string> train_ids;
    for (const auto& e : pool) all.insert(e.example_id);
    for (const auto& e : r.train) {
        parts.insert(e.example_id);
        train_ids.insert(e.example_id);
    }
    for (const auto& e : r.test) {
        parts.insert(e.example_id);
        ok = ok && train_ids.count(e.example_id) == 0;
    }
    ok = ok && all == parts;
    return {ok, "test " + counts_text(count_labels(r.test)) + ", train " + std::to_string(r.train.size()) +
                    ", test " + std::to_string(r.test.size())};
}

Outcome ac4() {
    bool ok = true;
    std::size_t n = 0;
    for (const auto& e : default_originals()) {
        ++n;
        for (std::string anchor : {std::string(kDefaultInstruction), std::string("Background information:"),
                                   std::string("In week 1,"), std::string("On Monday,")}) {
            ok = ok && e.input_text.find(anchor) != std::string::npos;
        }
    }
    Cohort fixture = parse_cohort(slurp(std::string(SEQENRICH_FIXTURES) + "/missing7.json"));
    std::size_t slots = 0, descriptors = 0;
    const auto build = build_dataset(fixture, EnrichmentConfig{});
    for (std::size_t i = 0; i < fixture.records.size(); ++i) {
        const auto expected = count_missing_slots(fixture.records[i], 4, fixture.n_weeks);
        const auto found = count_occurrences(build.examples[i].input_text, "Skipped the question");
        ok = ok && expected == found;
        slots += expected;
        descriptors += found;
    }
    ok = ok && slots == 7;
    return {ok, std::to_string(n) + " examples anchored; fixture slots " + std::to_string(slots) + ", descriptors " +
                    std::to_string(descriptors)};
}

MatrixOptions matrix_options() {
    MatrixOptions o;
    o.n_seeds = 5;
    o.seed = kSeed;
    return o;
}

Outcome ac5() {
    const Cohort cohort = generate_cohort(synth_config(0.8));
    MatrixAxes axes;
    axes.ablations = {AblationMode::NoRandomization, AblationMode::Partial, AblationMode::Full};
    auto report = run_experiment_matrix(cohort, EnrichmentConfig{}, axes, matrix_options());
    const double none = report.rows[0].accuracy_mean;
    const double partial = report.rows[1].accuracy_mean;
    const double full = report.rows[2].accuracy_mean;
    const bool ok = none >= partial && partial >= full && none - full >= 0.05;
    return {ok, "none " + fmt(none) + ", partial " + fmt(partial) + ", full " + fmt(full)};
}

std::string strip_weekly_tags(std::string text) {
    for (int w = 1; w <= kMaxWeek; ++w) {
        const std::string tag = weekly_tag(w) + " ";
        for (auto pos = text.find(tag); pos != std::string::npos; pos = text.find(tag)) text.erase(pos, tag.size());
    }
    return text;
}

Outcome ac6() {
    const Cohort cohort = generate_cohort(synth_config(0.8));
    std::size_t compared = 0;
    bool ok = true;
    for (std::uint64_t s = 0; s < 5; ++s) {
        EnrichmentConfig cfg;
        cfg.master_seed = derive_seed(kSeed, "coupling", s);
        auto pseudo = ablate_dataset(cohort, cfg, AblationMode::Pseudo).examples;
        auto partial = ablate_dataset(cohort, cfg, AblationMode::Partial).examples;
        ok = ok && pseudo.size() == partial.size();
        for (std::size_t i = 0; ok && i < pseudo.size(); ++i, ++compared) {
            ok = strip_weekly_tags(pseudo[i].input_text) == partial[i].input_text;
        }
    }
    return {ok, std::to_string(compared) + " examples compared"};
}

Outcome ac7() {
    const Cohort cohort = generate_cohort(synth_config(0.8));
    MatrixAxes axes;
    const ModalitySet nc{Modality::NonCognitive}, c{Modality::Cognitive}, b{Modality::Background};
    axes.modality_sets = {nc, c, b, nc.with(Modality::Cognitive), ModalitySet::all()};
    axes.horizons = {2, 3, 4};
    auto report = run_experiment_matrix(cohort, EnrichmentConfig{}, axes, matrix_options());
    bool ok = true;
    std::string detail;
    for (int h : axes.horizons) {
        auto mean = [&](ModalitySet m) {
            const auto* row = report.find(m, h, AblationMode::NoRandomization, MissingPolicy::skipped());
            if (!row || row->failed()) throw std::runtime_error("missing cell " + m.label());
            return row->accuracy_mean;
        };
        const double all = mean(ModalitySet::all());
        const bool cell_ok = all >= mean(nc) && all >= mean(c) && all >= mean(b);
        ok = ok && cell_ok;
        detail += "h" + std::to_string(h) + " NC " + fmt(mean(nc)) + " C " + fmt(mean(c)) + " B " + fmt(mean(b)) +
                  " NC+C+B " + fmt(all) + (cell_ok ? "" : " (below)") + "; ";
    }
    return {ok, detail};
}

Outcome ac8() {
    const Cohort cohort = generate_cohort(synth_config(0.6));
    MatrixAxes axes;
    axes.missing_policies = {MissingPolicy::skipped(), MissingPolicy::generic_na(), MissingPolicy::custom("Hello, World!")};
    auto a = run_experiment_matrix(cohort, EnrichmentConfig{}, axes, matrix_options());
    auto again = run_experiment_matrix(cohort, EnrichmentConfig{}, axes, matrix_options());
    bool ok = a.to_csv() == again.to_csv();
    std::string detail;
    for (const auto& r : a.rows) {
        ok = ok && !r.failed();
        detail += r.missing_policy.label() + " " + fmt(r.accuracy_mean) + "; ";
    }
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        for (std::size_t j = i + 1; j < a.rows.size(); ++j) {
            ok = ok && std::abs(a.rows[i].accuracy_mean - a.rows[j].accuracy_mean) <= 0.15;
        }
    }
    std::size_t missing = 0;
    for (const auto& r : cohort.records) missing += count_missing_slots(r, 1, cohort.n_weeks);
    detail += "week-1 missing " + fmt(static_cast<double>(missing) / (cohort.records.size() * 9.0));
    return {ok, detail};
}

Outcome ac9() {
    auto build = build_dataset(generate_cohort(synth_config(0.6)), EnrichmentConfig{});
    std::size_t worst = 0;
    bool ok = build.errors.empty() && build.budget_reports.size() == 48;
    for (const auto& r : build.budget_reports) {
        worst = std::max(worst, r.estimated_tokens);
        ok = ok && r.estimated_tokens <= 512 && !r.over_budget;
    }
    return {ok, "max estimated tokens " + std::to_string(worst)};
}

// Upper tail of chi-square with 5 degrees of freedom.
double chi2_sf_df5(double x) {
    const double pi = 3.14159265358979323846;
    const double r = std::sqrt(x);
    return std::erfc(r / std::sqrt(2.0)) + std::sqrt(2.0 / pi) * std::exp(-x / 2.0) * (r + r * r * r / 3.0);
}

std::map<std::string, std::string> tree(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file()) out[fs::relative(e.path(), root).generic_string()] = slurp(e.path());
    }
    return out;
}

Outcome ac10() {
    const fs::path base = fs::current_path() / "acceptance_demo";
    fs::remove_all(base);
    fs::create_directories(base);
    for (const char* run : {"a", "b"}) {
        const std::string cmd = "'" + std::string(SEQENRICH_CLI) + "' demo --seed 7 --out '" + (base / run).string() +
                                "' > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) return {false, std::string("demo run ") + run + " failed"};
    }
    const auto a = tree(base / "a");
    const bool same = !a.empty() && a == tree(base / "b");

    SequencePlan plan;
    plan.instruction_block = "Forecast.";
    for (int w = 1; w <= 3; ++w) {
        WeekBlock b;
        b.week_number = w;
        b.items = {"Week " + std::to_string(w) + "."};
        plan.week_blocks.push_back(b);
    }
    std::map<std::vector<int>, int> hist;
    const int draws = 600;
    for (int s = 0; s < draws; ++s) {
        Rng rng(derive_seed(kSeed, "permutation", s));
        std::vector<int> order;
        for (const auto& w : apply_ablation(plan, AblationMode::Full, rng).week_blocks) order.push_back(w.week_number);
        ++hist[order];
    }
    double chi2 = 0;
    for (const auto& [k, v] : hist) chi2 += (v - draws / 6.0) * (v - draws / 6.0) / (draws / 6.0);
    chi2 += (6 - static_cast<double>(hist.size())) * draws / 6.0;
    const double p = chi2_sf_df5(chi2);
    return {same && p > 0.01, std::to_string(a.size()) + " files " + (same ? "identical" : "differ") +
                                  "; chi-square " + fmt(chi2) + ", p " + fmt(p)};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double max_seconds;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"AC1 verbalization golden", 1, ac1},
        {"AC2 augmentation counts", 1, ac2},
        {"AC3 split formula", 1, ac3},
        {"AC4 enrichment anchors", 1, ac4},
        {"AC5 temporal ablation ordering", 120, ac5},
        {"AC6 pseudo/partial coupling", 10, ac6},
        {"AC7 modality ordering", 300, ac7},
        {"AC8 missingness robustness", 120, ac8},
        {"AC9 token budget", 5, ac9},
        {"AC10 determinism", 60, ac10},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.max_seconds;
        const bool pass = o.pass && in_time;
        failed += pass ? 0 : 1;
        std::printf("%s %s: %s [%.2fs%s]\n", pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs,
                    in_time ? "" : ", over time limit");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
