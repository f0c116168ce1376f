#pragma once
// Keyword scoring of generated outputs, the surrogate text classifier, and
// multi-seed experiment matrices.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqenrich/ablation.hpp"
#include "seqenrich/augmentation.hpp"
#include "seqenrich/core.hpp"
#include "seqenrich/split.hpp"

namespace seqenrich {

class KeywordOutcome {
public:
    enum class Kind { Match, NoMatch, Ambiguous };

    static KeywordOutcome match(PerformanceCategory c) { return KeywordOutcome(Kind::Match, c); }
    static KeywordOutcome no_match() { return KeywordOutcome(Kind::NoMatch, std::nullopt); }
    static KeywordOutcome ambiguous() { return KeywordOutcome(Kind::Ambiguous, std::nullopt); }

    Kind kind() const noexcept { return kind_; }
    /// Set only for Match.
    std::optional<PerformanceCategory> category() const noexcept { return category_; }
    bool is(PerformanceCategory c) const noexcept { return kind_ == Kind::Match && category_ == c; }

    /// The category surface form, "no_match", or "ambiguous".
    std::string label() const;

    bool operator==(const KeywordOutcome&) const = default;

private:
    KeywordOutcome(Kind kind, std::optional<PerformanceCategory> c) : kind_(kind), category_(c) {}
    Kind kind_;
    std::optional<PerformanceCategory> category_;
};

/// Words are maximal runs of ASCII letters, digits, hyphens and apostrophes,
/// compared case-insensitively against the category surface forms. A form
/// only counts as a whole word, so "at-risk" inside "prone-to-risk" does not.
KeywordOutcome keyword_score(std::string_view generated);

/// Fraction of positions where the outcome matches the reference. NoMatch and
/// Ambiguous are wrong. Throws LengthMismatch, EmptyInput.
double accuracy(const std::vector<KeywordOutcome>& predictions, const std::vector<PerformanceCategory>& references);

struct SurrogateOptions {
    double alpha = 1.0;
    // With B > 1, each token also yields "<bucket>|<token>" where
    // bucket = floor(B * i / n) for unit i of n. B = 1 is a plain bag of
    // tokens, which makes predictions invariant to token order.
    int position_buckets = 1;
    // Units are sentences (a unit ends at '.', '!' or '?') instead of tokens.
    bool sentence_positions = false;
    // Keep the bare token as a feature next to its bucketed form. Ignored
    // when B = 1, where the bare token is the only feature.
    bool plain_tokens = true;
    // After an "On <Day> ," tag, each token also yields "@<day>|<token>" until
    // the next day tag.
    bool day_context = false;
    std::uint64_t seed = 0;

    std::vector<Violation> validate() const;
};

/// Additive-smoothed multinomial naive Bayes over lowercased tokens.
struct SurrogateModel {
    SurrogateOptions options;
    std::array<double, 4> log_prior{};
    // Per feature, log P(feature | category) for each category.
    std::map<std::string, std::array<double, 4>, std::less<>> log_likelihood;

    /// Canonical JSON; equal models serialize to equal bytes.
    std::string serialize() const;
};

/// Lowercased tokens of `text` mapped to features.
std::vector<std::string> surrogate_features(std::string_view text, const SurrogateOptions& options);

/// Throws EmptyInput, MissingCategory (a category has no training example),
/// ValidationError (bad options).
SurrogateModel train_surrogate(const std::vector<TextExample>& train, const SurrogateOptions& options = {});

/// Argmax of prior plus summed log-likelihoods of in-vocabulary features. Ties
/// go to the earlier category (at-risk first).
PerformanceCategory predict_surrogate(const SurrogateModel& model, std::string_view input_text);

/// Accuracy of the model on `test`. Throws EmptyInput.
double surrogate_accuracy(const SurrogateModel& model, const std::vector<TextExample>& test);

/// Order-sensitive settings used by experiment matrices: four sentence-position
/// buckets, no bare tokens, day context on.
SurrogateOptions tuned_surrogate_options();

struct MatrixAxes {
    std::vector<ModalitySet> modality_sets{ModalitySet::all()};
    std::vector<int> horizons{4};
    std::vector<AblationMode> ablations{AblationMode::NoRandomization};
    std::vector<MissingPolicy> missing_policies{MissingPolicy::skipped()};

    std::size_t cell_count() const noexcept;
};

struct MatrixOptions {
    int n_seeds = 5;
    std::uint64_t seed = 0;
    bool augment = true;
    std::optional<CategoryCounts> augmentation_targets;  // default_targets() when unset
    double replacement_rate = kDefaultReplacementRate;
    const SynonymLexicon* lexicon = nullptr;  // SynonymLexicon::builtin() when null
    double test_fraction = 0.30;
    bool stratify = true;
    SplitPoint split_point = SplitPoint::BeforeAugmentation;
    SurrogateOptions surrogate = tuned_surrogate_options();
    std::size_t jobs = 1;
};

struct ReportRow {
    ModalitySet modalities;
    int horizon_weeks = 0;
    AblationMode ablation = AblationMode::NoRandomization;
    MissingPolicy missing_policy = MissingPolicy::skipped();
    std::size_t seed_count = 0;
    double n_test = 0.0;  // mean test-set size over seeds
    double accuracy_mean = 0.0;
    double accuracy_std = 0.0;  // sample standard deviation; 0 for one seed
    std::vector<double> accuracies;
    std::optional<std::string> error;  // set when the cell failed

    bool failed() const noexcept { return error.has_value(); }
};

struct ExperimentReport {
    std::vector<ReportRow> rows;

    /// Header modalities,horizon,ablation,missing_policy,seed_count,n_test,
    /// accuracy_mean,accuracy_std. Failed cells have seed_count 0 and empty
    /// accuracy fields.
    std::string to_csv() const;
    std::string summary() const;

    const ReportRow* find(ModalitySet modalities, int horizon, AblationMode ablation,
                          const MissingPolicy& policy) const;
};

/// One row per cell, nested in axis order (modality sets outermost, then
/// horizons, ablations, policies). For seed index s every cell uses the same
/// seed derive_seed(options.seed, "matrix", s) for ablation, augmentation and
/// split, so cells are compared on identical draws. A cell that throws is
/// reported as failed; the rest of the matrix still runs.
ExperimentReport run_experiment_matrix(const Cohort& cohort, const EnrichmentConfig& base_config,
                                       const MatrixAxes& axes, const MatrixOptions& options);

/// Mean and sample standard deviation.
std::pair<double, double> mean_and_std(const std::vector<double>& values);

}  // namespace seqenrich
