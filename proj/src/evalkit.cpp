#include "seqenrich/evalkit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>
#include <sstream>

#include "seqenrich/csv.hpp"
#include "seqenrich/parallel.hpp"
#include "seqenrich/text.hpp"

namespace seqenrich {

std::string KeywordOutcome::label() const {
    switch (kind_) {
        case Kind::Match:
            return std::string(surface_form(*category_));
        case Kind::NoMatch:
            return "no_match";
        case Kind::Ambiguous:
            return "ambiguous";
    }
    return "";
}

namespace {

bool is_word_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) != 0 || c == '-' || c == '\'';
}

std::string fixed(double value, int precision) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, precision);
    if (ec != std::errc()) throw ValueError("cannot format number");
    return std::string(buf, end);
}

}  // namespace

KeywordOutcome keyword_score(std::string_view generated) {
    std::optional<PerformanceCategory> found;
    std::size_t i = 0;
    while (i < generated.size()) {
        if (!is_word_char(generated[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < generated.size() && is_word_char(generated[j])) ++j;
        std::string word = to_lower(generated.substr(i, j - i));
        // Hyphens and quotes at the edges are punctuation, not part of the word.
        const auto first = word.find_first_not_of("-'");
        const auto last = word.find_last_not_of("-'");
        if (first != std::string::npos) {
            if (auto c = category_from_surface(std::string_view(word).substr(first, last - first + 1))) {
                if (found && *found != *c) return KeywordOutcome::ambiguous();
                found = c;
            }
        }
        i = j;
    }
    return found ? KeywordOutcome::match(*found) : KeywordOutcome::no_match();
}

double accuracy(const std::vector<KeywordOutcome>& predictions, const std::vector<PerformanceCategory>& references) {
    if (predictions.size() != references.size()) {
        throw LengthMismatch(std::to_string(predictions.size()) + " predictions for " +
                             std::to_string(references.size()) + " references");
    }
    if (predictions.empty()) throw EmptyInput("accuracy of an empty list");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        if (predictions[i].is(references[i])) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(predictions.size());
}

std::vector<Violation> SurrogateOptions::validate() const {
    std::vector<Violation> out;
    if (!(alpha > 0.0) || !std::isfinite(alpha)) out.push_back({"alpha", "> 0"});
    if (position_buckets < 1) out.push_back({"position_buckets", ">= 1"});
    return out;
}

SurrogateOptions tuned_surrogate_options() {
    SurrogateOptions o;
    o.position_buckets = 4;
    o.sentence_positions = true;
    o.plain_tokens = false;
    o.day_context = true;
    return o;
}

std::vector<std::string> surrogate_features(std::string_view text, const SurrogateOptions& options) {
    const auto tokens = tokenize(text);
    const std::size_t n = tokens.size();
    const bool bucketed = options.position_buckets > 1;

    // Unit index of each token, and the unit count.
    std::vector<std::size_t> unit(n);
    std::size_t n_units = n;
    if (options.sentence_positions) {
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i) {
            unit[i] = k;
            if (tokens[i] == "." || tokens[i] == "!" || tokens[i] == "?") ++k;
        }
        // an unterminated last sentence still counts
        n_units = std::max<std::size_t>(1, k + (n > 0 && unit[n - 1] == k ? 1 : 0));
    } else {
        for (std::size_t i = 0; i < n; ++i) unit[i] = i;
    }

    std::vector<std::string> features;
    features.reserve(3 * n);
    std::string day;
    for (std::size_t i = 0; i < n; ++i) {
        std::string token = to_lower(tokens[i]);
        if (bucketed) {
            const auto bucket = (static_cast<std::size_t>(options.position_buckets) * unit[i]) / n_units;
            features.push_back(std::to_string(bucket) + "|" + token);
        }
        if (options.day_context) {
            if (i >= 1 && i + 1 < n && tokens[i + 1] == "," && to_lower(tokens[i - 1]) == "on" &&
                parse_weekday(tokens[i])) {
                day = token;
            }
            if (!day.empty()) features.push_back("@" + day + "|" + token);
        }
        if (!bucketed || options.plain_tokens) features.push_back(std::move(token));
    }
    return features;
}

SurrogateModel train_surrogate(const std::vector<TextExample>& train, const SurrogateOptions& options) {
    if (auto v = options.validate(); !v.empty()) throw ValidationError("surrogate options", std::move(v));
    if (train.empty()) throw EmptyInput("surrogate training set is empty");

    CategoryCounts docs{};
    std::map<std::string, std::array<double, 4>, std::less<>> counts;
    for (const auto& e : train) {
        const auto c = category_index(e.label);
        ++docs[c];
        for (auto& f : surrogate_features(e.input_text, options)) counts[f][c] += 1.0;
    }
    for (auto c : kAllCategories) {
        if (docs[category_index(c)] == 0) {
            throw MissingCategory("no training example labeled '" + std::string(surface_form(c)) + "'");
        }
    }

    std::array<double, 4> totals{};
    for (const auto& [feature, per_class] : counts) {
        for (std::size_t c = 0; c < 4; ++c) totals[c] += per_class[c];
    }

    SurrogateModel model;
    model.options = options;
    const double vocab = static_cast<double>(counts.size());
    for (std::size_t c = 0; c < 4; ++c) {
        model.log_prior[c] = std::log(static_cast<double>(docs[c]) / static_cast<double>(train.size()));
    }
    for (auto& [feature, per_class] : counts) {
        std::array<double, 4> ll{};
        for (std::size_t c = 0; c < 4; ++c) {
            ll[c] = std::log((per_class[c] + options.alpha) / (totals[c] + options.alpha * vocab));
        }
        model.log_likelihood.emplace(feature, ll);
    }
    return model;
}

PerformanceCategory predict_surrogate(const SurrogateModel& model, std::string_view input_text) {
    std::array<double, 4> score = model.log_prior;
    for (const auto& f : surrogate_features(input_text, model.options)) {
        auto it = model.log_likelihood.find(f);
        if (it == model.log_likelihood.end()) continue;
        for (std::size_t c = 0; c < 4; ++c) score[c] += it->second[c];
    }
    std::size_t best = 0;
    for (std::size_t c = 1; c < 4; ++c) {
        if (score[c] > score[best]) best = c;
    }
    return kAllCategories[best];
}

double surrogate_accuracy(const SurrogateModel& model, const std::vector<TextExample>& test) {
    if (test.empty()) throw EmptyInput("surrogate test set is empty");
    std::size_t correct = 0;
    for (const auto& e : test) {
        if (predict_surrogate(model, e.input_text) == e.label) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(test.size());
}

std::string SurrogateModel::serialize() const {
    nlohmann::ordered_json j;
    j["alpha"] = options.alpha;
    j["position_buckets"] = options.position_buckets;
    j["sentence_positions"] = options.sentence_positions;
    j["plain_tokens"] = options.plain_tokens;
    j["day_context"] = options.day_context;
    j["seed"] = options.seed;
    j["log_prior"] = log_prior;
    auto& ll = j["log_likelihood"] = nlohmann::ordered_json::object();
    for (const auto& [feature, values] : log_likelihood) ll[feature] = values;
    return j.dump() + "\n";
}

std::size_t MatrixAxes::cell_count() const noexcept {
    return modality_sets.size() * horizons.size() * ablations.size() * missing_policies.size();
}

std::pair<double, double> mean_and_std(const std::vector<double>& values) {
    if (values.empty()) return {0.0, 0.0};
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() == 1) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
}

std::string ExperimentReport::to_csv() const {
    std::string out = "modalities,horizon,ablation,missing_policy,seed_count,n_test,accuracy_mean,accuracy_std\n";
    for (const auto& r : rows) {
        out += csv_escape(r.modalities.label()) + "," + std::to_string(r.horizon_weeks) + "," +
               std::string(ablation_name(r.ablation)) + "," + csv_escape(r.missing_policy.label()) + ",";
        if (r.failed()) {
            out += "0,,,\n";
            continue;
        }
        out += std::to_string(r.seed_count) + "," + format_number(r.n_test) + "," + fixed(r.accuracy_mean, 4) + "," +
               fixed(r.accuracy_std, 4) + "\n";
    }
    return out;
}

std::string ExperimentReport::summary() const {
    std::ostringstream os;
    std::size_t failed = 0;
    for (const auto& r : rows) failed += r.failed() ? 1 : 0;
    os << rows.size() << " cells, " << failed << " failed\n";
    for (const auto& r : rows) {
        os << "  " << r.modalities.label() << "  " << r.horizon_weeks << "w  " << ablation_name(r.ablation) << "  "
           << r.missing_policy.label() << ": ";
        if (r.failed()) {
            os << "FAILED (" << *r.error << ")\n";
        } else {
            os << fixed(100.0 * r.accuracy_mean, 1) << "% +/- " << fixed(100.0 * r.accuracy_std, 1) << " over "
               << r.seed_count << " seeds, " << format_number(r.n_test) << " test examples\n";
        }
    }
    return os.str();
}

const ReportRow* ExperimentReport::find(ModalitySet modalities, int horizon, AblationMode ablation,
                                        const MissingPolicy& policy) const {
    for (const auto& r : rows) {
        if (r.modalities == modalities && r.horizon_weeks == horizon && r.ablation == ablation &&
            r.missing_policy == policy) {
            return &r;
        }
    }
    return nullptr;
}

namespace {

struct RunResult {
    double accuracy = 0.0;
    std::size_t n_test = 0;
    std::optional<std::string> error;
};

RunResult run_once(const Cohort& cohort, EnrichmentConfig config, AblationMode ablation, const MatrixOptions& options,
                   std::uint64_t seed) {
    config.master_seed = seed;
    const DatasetBuild build = ablate_dataset(cohort, config, ablation, 1);
    if (build.examples.empty()) {
        throw EmptyInput(build.errors.empty() ? "no examples built"
                                              : build.errors.front().student_id + ": " + build.errors.front().message);
    }
    std::vector<TextExample> pool = build.examples;
    if (options.augment) {
        const SynonymLexicon& lexicon = options.lexicon ? *options.lexicon : SynonymLexicon::builtin();
        const CategoryCounts targets =
            options.augmentation_targets ? *options.augmentation_targets : default_targets(count_labels(pool));
        pool = augment(pool, targets, lexicon, options.replacement_rate, seed);
    }
    SplitSpec spec;
    spec.test_fraction = options.test_fraction;
    spec.seed = seed;
    spec.stratify = options.stratify;
    spec.split_point = options.split_point;
    const SplitResult split = stratified_split(pool, spec);
    SurrogateOptions surrogate = options.surrogate;
    surrogate.seed = seed;
    const SurrogateModel model = train_surrogate(split.train, surrogate);
    return {surrogate_accuracy(model, split.test), split.test.size(), std::nullopt};
}

}  // namespace

ExperimentReport run_experiment_matrix(const Cohort& cohort, const EnrichmentConfig& base_config,
                                       const MatrixAxes& axes, const MatrixOptions& options) {
    if (axes.cell_count() == 0) throw ValueError("experiment matrix has an empty axis");
    if (options.n_seeds < 1) throw ValueError("n_seeds must be >= 1");

    ExperimentReport report;
    std::vector<EnrichmentConfig> configs;
    for (const auto& modalities : axes.modality_sets) {
        for (int horizon : axes.horizons) {
            for (auto ablation : axes.ablations) {
                for (const auto& policy : axes.missing_policies) {
                    ReportRow row;
                    row.modalities = modalities;
                    row.horizon_weeks = horizon;
                    row.ablation = ablation;
                    row.missing_policy = policy;
                    report.rows.push_back(row);
                    EnrichmentConfig config = base_config;
                    config.modalities = modalities;
                    config.horizon_weeks = horizon;
                    config.missing_policy = policy;
                    configs.push_back(std::move(config));
                }
            }
        }
    }

    const auto n_seeds = static_cast<std::size_t>(options.n_seeds);
    std::vector<RunResult> results(report.rows.size() * n_seeds);
    parallel_for(results.size(), options.jobs, [&](std::size_t k) {
        const std::size_t cell = k / n_seeds;
        const std::size_t s = k % n_seeds;
        try {
            results[k] = run_once(cohort, configs[cell], report.rows[cell].ablation, options,
                                  derive_seed(options.seed, "matrix", static_cast<std::uint64_t>(s)));
        } catch (const std::exception& e) {
            results[k].error = e.what();
        }
    });

    for (std::size_t cell = 0; cell < report.rows.size(); ++cell) {
        auto& row = report.rows[cell];
        double test_total = 0.0;
        for (std::size_t s = 0; s < n_seeds; ++s) {
            const auto& r = results[cell * n_seeds + s];
            if (r.error) {
                row.error = "seed " + std::to_string(s) + ": " + *r.error;
                break;
            }
            row.accuracies.push_back(r.accuracy);
            test_total += static_cast<double>(r.n_test);
        }
        if (row.failed()) {
            row.accuracies.clear();
            continue;
        }
        row.seed_count = n_seeds;
        row.n_test = test_total / static_cast<double>(n_seeds);
        std::tie(row.accuracy_mean, row.accuracy_std) = mean_and_std(row.accuracies);
    }
    return report;
}

}  // namespace seqenrich
