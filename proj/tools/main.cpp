// seqenrich command-line tool.
//
// Exit status: 0 success, 1 data error, 2 usage or config error. Errors go to
// stderr as one JSON object per line.

#include <CLI11.hpp>
#include <deque>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>

#include "run_dir.hpp"
#include "seqenrich/ablation.hpp"
#include "seqenrich/augmentation.hpp"
#include "seqenrich/dataset_io.hpp"
#include "seqenrich/enrichment.hpp"
#include "seqenrich/evalkit.hpp"
#include "seqenrich/ingest.hpp"
#include "seqenrich/pipeline_config.hpp"
#include "seqenrich/split.hpp"
#include "seqenrich/synth.hpp"
#include "seqenrich/text.hpp"
#include "seqenrich/verbalizer.hpp"

namespace {

using namespace seqenrich;
using seqenrich::cli::RunDir;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

class UsageError : public Error {
public:
    using Error::Error;
};

// --- error reporting -----------------------------------------------------

std::string error_kind(const std::exception& e) {
#define SEQ_KIND(T) \
    if (dynamic_cast<const T*>(&e)) return #T;
    SEQ_KIND(SyntaxError)
    SEQ_KIND(SchemaError)
    SEQ_KIND(ValidationError)
    SEQ_KIND(JoinError)
    SEQ_KIND(ValueError)
    SEQ_KIND(EmptyInput)
    SEQ_KIND(MissingField)
    SEQ_KIND(NoModalityData)
    SEQ_KIND(TargetBelowCurrent)
    SEQ_KIND(EmptyCategory)
    SEQ_KIND(UnlabeledExample)
    SEQ_KIND(InfeasibleDistribution)
    SEQ_KIND(LengthMismatch)
    SEQ_KIND(MissingCategory)
    SEQ_KIND(ConfigError)
    SEQ_KIND(UsageError)
    SEQ_KIND(cli::IoError)
#undef SEQ_KIND
    return "Error";
}

void report(const std::exception& e) {
    ordered_json j;
    j["error"] = error_kind(e);
    j["message"] = e.what();
    if (auto* v = dynamic_cast<const ValidationError*>(&e)) {
        j["subject"] = v->subject();
        auto& list = j["violations"] = ordered_json::array();
        for (const auto& x : v->violations()) list.push_back({{"field", x.field}, {"rule", x.rule}});
    } else if (auto* s = dynamic_cast<const SyntaxError*>(&e)) {
        j["line"] = s->line();
        j["column"] = s->column();
    } else if (auto* s = dynamic_cast<const SchemaError*>(&e)) {
        j["field"] = s->field();
    } else if (auto* m = dynamic_cast<const MissingField*>(&e)) {
        j["field"] = m->name();
    }
    std::cerr << j.dump() << "\n";
}

void report_student_errors(const std::vector<StudentError>& errors) {
    for (const auto& e : errors) {
        ordered_json j;
        j["error"] = "StudentError";
        j["student"] = e.student_id;
        j["message"] = e.message;
        std::cerr << j.dump() << "\n";
    }
}

// --- shared options ------------------------------------------------------

struct Inputs {
    std::string cohort;
    std::string scores;
    std::string responses;
    std::string background;
    std::string dataset;
    std::string predictions;
    std::string references;
};

// Options every subcommand takes, plus named flags that map onto config keys.
struct Command {
    CLI::App* app = nullptr;
    std::string name;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> jobs;
    std::string config_path;
    std::string out;
    std::vector<std::string> sets;
    std::deque<std::string> storage;
    std::vector<std::pair<std::string, CLI::Option*>> keyed;
    Inputs in;

    void flag(const std::string& option, const std::string& key, const std::string& help) {
        storage.emplace_back();
        keyed.emplace_back(key, app->add_option(option, storage.back(), help + " [" + key + "]"));
    }

    void switch_flag(const std::string& option, const std::string& key, const std::string& value,
                     const std::string& help) {
        storage.emplace_back(value);
        keyed.emplace_back(key, app->add_flag(option)->description(help + " [" + key + " = " + value + "]"));
    }
};

std::unique_ptr<Command> make_command(CLI::App& root, const std::string& name, const std::string& description) {
    auto cmd = std::make_unique<Command>();
    cmd->name = name;
    cmd->app = root.add_subcommand(name, description);
    cmd->app->add_option("--seed", cmd->seed, "Master seed [seed]");
    cmd->app->add_option("--config", cmd->config_path, "Config file (key = value lines)");
    cmd->app->add_option("--out", cmd->out, "Output directory; nothing is written outside it")->required();
    cmd->app->add_option("--jobs", cmd->jobs, "Worker threads; 0 means one per core [jobs]");
    cmd->app->add_option("--set", cmd->sets, "Override any config key: key=value (repeatable)");
    return cmd;
}

void add_cohort_inputs(Command& c) {
    c.app->add_option("--cohort", c.in.cohort, "Cohort JSON document");
    c.app->add_option("--scores", c.in.scores, "Score table (CSV), with --responses and --background");
    c.app->add_option("--responses", c.in.responses, "Response table (CSV)");
    c.app->add_option("--background", c.in.background, "Background table (CSV)");
}

void add_enrichment_flags(Command& c) {
    c.flag("--horizon", "enrichment.horizon_weeks", "Weeks to include");
    c.flag("--modalities", "enrichment.modalities", "Modalities, e.g. NC+C+B");
    c.flag("--policy", "enrichment.missing_policy", "Missing-answer policy: skipped, na, custom:<text>");
    c.switch_flag("--no-weekly-tags", "enrichment.weekly_tags", "false", "Omit \"In week N,\" tags");
    c.switch_flag("--no-daily-tags", "enrichment.daily_tags", "false", "Omit \"On Day,\" tags");
    c.flag("--token-budget", "enrichment.token_budget", "Token budget per example");
}

void add_synth_flags(Command& c) {
    c.flag("--students", "synth.n_students", "Cohort size");
    c.flag("--rho", "synth.coupling", "Cross-modal coupling");
    c.flag("--tau", "synth.trend", "Temporal trend strength");
    c.flag("--labels", "synth.label_distribution", "Label counts: at-risk,prone,average,outstanding");
}

// Defaults, then the config file, then --set, then named flags, then --seed
// and --jobs.
PipelineConfig resolve_config(Command& c, RunDir& run) {
    PipelineConfig config;
    if (!c.config_path.empty()) config = parse_config(run.read_input("config", c.config_path));
    for (const auto& s : c.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + s + "'");
        config.set(trim(std::string_view(s).substr(0, eq)), trim(std::string_view(s).substr(eq + 1)));
    }
    std::size_t i = 0;
    for (const auto& [key, option] : c.keyed) {
        if (option->count() > 0) config.set(key, c.storage[i]);
        ++i;
    }
    if (c.seed) config.seed = *c.seed;
    if (c.jobs) config.jobs = *c.jobs;
    config.output_dir = c.out;
    config.apply_seed();
    if (auto v = config.validate(); !v.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& x : v) msg += " [" + x.field + ": " + x.rule + "]";
        throw ConfigError(msg);
    }
    return config;
}

Cohort load_cohort(const Command& c, RunDir& run) {
    std::vector<std::string> warnings;
    Cohort cohort;
    if (!c.in.cohort.empty()) {
        cohort = parse_cohort(run.read_input("cohort", c.in.cohort), &warnings);
    } else if (!c.in.scores.empty() && !c.in.responses.empty() && !c.in.background.empty()) {
        cohort = import_tabular(run.read_input("scores", c.in.scores), run.read_input("responses", c.in.responses),
                                run.read_input("background", c.in.background), {}, &warnings);
    } else {
        throw UsageError("give --cohort, or all of --scores, --responses and --background");
    }
    for (const auto& w : warnings) std::cerr << ordered_json{{"warning", w}}.dump() << "\n";
    return cohort;
}

const SynonymLexicon& load_lexicon(const PipelineConfig& config, RunDir& run, std::optional<SynonymLexicon>& holder) {
    if (config.augmentation.lexicon_path.empty()) return SynonymLexicon::builtin();
    holder = SynonymLexicon::parse(run.read_input("lexicon", config.augmentation.lexicon_path));
    return *holder;
}

std::string budget_note(const DatasetBuild& build) {
    std::size_t over = 0;
    for (const auto& r : build.budget_reports) over += r.over_budget ? 1 : 0;
    return std::to_string(build.examples.size()) + " examples, " + std::to_string(over) + " over the token budget";
}

std::string eval_json(const EvalSummary& s) {
    ordered_json j;
    j["n"] = s.n;
    j["correct"] = s.correct;
    j["no_match"] = s.no_match;
    j["ambiguous"] = s.ambiguous;
    j["accuracy"] = s.accuracy;
    return j.dump(2) + "\n";
}

MatrixOptions matrix_options(const PipelineConfig& config, const SynonymLexicon& lexicon) {
    MatrixOptions o;
    o.n_seeds = config.matrix.n_seeds;
    o.seed = config.seed;
    o.augment = config.augmentation.enabled;
    o.augmentation_targets = config.augmentation.targets;
    o.replacement_rate = config.augmentation.rate;
    o.lexicon = &lexicon;
    o.test_fraction = config.split.test_fraction;
    o.stratify = config.split.stratify;
    o.split_point = config.matrix.split_point;
    o.surrogate = config.surrogate;
    o.jobs = config.effective_jobs();
    return o;
}

// --- subcommands ---------------------------------------------------------

int cmd_synth(Command& c) {
    RunDir run(c.out, c.name);
    auto config = resolve_config(c, run);
    const Cohort cohort = generate_cohort(config.synth);
    run.write("cohort.json", write_cohort(cohort));
    run.finish(config);
    std::cout << "wrote " << cohort.records.size() << " students to " << (run.root() / "cohort.json").string() << "\n";
    return 0;
}

int cmd_validate(Command& c) {
    RunDir run(c.out, c.name);
    auto config = resolve_config(c, run);
    std::string text;
    int status = 0;
    try {
        const Cohort cohort = load_cohort(c, run);
        text = "valid: " + std::to_string(cohort.records.size()) + " students, " + std::to_string(cohort.n_weeks) +
               " weeks\n";
    } catch (const ValidationError& e) {
        text = "invalid: " + e.subject() + "\n";
        for (const auto& v : e.violations()) text += "  " + v.field + ": " + v.rule + "\n";
        report(e);
        status = kExitData;
    }
    run.write("validation.txt", text);
    run.finish(config);
    std::cout << text;
    return status;
}

int cmd_build(Command& c, bool ablate) {
    RunDir run(c.out, c.name);
    auto config = resolve_config(c, run);
    const Cohort cohort = load_cohort(c, run);
    const DatasetBuild build = ablate ? ablate_dataset(cohort, config.enrichment, config.ablation, config.effective_jobs())
                                      : build_dataset(cohort, config.enrichment, config.effective_jobs());
    run.write("dataset.jsonl", write_dataset_jsonl(build.examples));
    run.write("budget.csv", write_budget_csv(build.budget_reports));
    if (!build.errors.empty()) {
        std::string lines;
        for (const auto& e : build.errors) lines += ordered_json{{"student", e.student_id}, {"message", e.message}}.dump() + "\n";
        run.write("errors.jsonl", lines);
    }
    run.finish(config);
    std::cout << budget_note(build) << "\n";
    if (!build.errors.empty()) {
        report_student_errors(build.errors);
        return kExitData;
    }
    return 0;
}

int cmd_augment(Command& c) {
    RunDir run(c.out, c.name);
    auto config = resolve_config(c, run);
    if (c.in.dataset.empty()) throw UsageError("--dataset is required");
    auto examples = read_dataset_jsonl(run.read_input("dataset", c.in.dataset));
    std::optional<SynonymLexicon> holder;
    const auto& lexicon = load_lexicon(config, run, holder);
    if (config.augmentation.enabled) {
        const auto targets = config.augmentation.targets.value_or(default_targets(count_labels(examples)));
        examples = augment(examples, targets, lexicon, config.augmentation.rate, config.seed);
    }
    run.write("augmented.jsonl", write_dataset_jsonl(examples));
    run.finish(config);
    const auto counts = count_labels(examples);
    std::cout << examples.size() << " examples (" << counts[0] << "/" << counts[1] << "/" << counts[2] << "/"
              << counts[3] << ")\n";
    return 0;
}

int cmd_split(Command& c) {
    RunDir run(c.out, c.name);
    auto config = resolve_config(c, run);
    if (c.in.dataset.empty()) throw UsageError("--dataset is required");
    const auto examples = read_dataset_jsonl(run.read_input("dataset", c.in.dataset));
    const auto result = stratified_split(examples, config.split);
    run.write("train.jsonl", write_dataset_jsonl(result.train));
    run.write("test.jsonl", write_dataset_jsonl(result.test));
    run.finish(config);
    std::cout << result.train.size() << " train, " << result.test.size() << " test\n";
    return 0;
}

int cmd_eval(Command& c) {
    RunDir run(c.out, c.name);
    auto config = resolve_config(c, run);
    if (c.in.predictions.empty() || c.in.references.empty()) {
        throw UsageError("--predictions and --references are required");
    }
    const auto predictions = read_predictions_jsonl(run.read_input("predictions", c.in.predictions));
    const auto references = read_dataset_jsonl(run.read_input("references", c.in.references));
    const auto summary = score_predictions(predictions, references);
    run.write("eval.json", eval_json(summary));
    run.finish(config);
    std::cout << "accuracy " << format_number(summary.accuracy) << " (" << summary.correct << "/" << summary.n
              << ")\n";
    return 0;
}

int cmd_matrix(Command& c) {
    RunDir run(c.out, c.name);
    auto config = resolve_config(c, run);
    const bool have_input = !c.in.cohort.empty() || !c.in.scores.empty();
    const Cohort cohort = have_input ? load_cohort(c, run) : generate_cohort(config.synth);
    std::optional<SynonymLexicon> holder;
    const auto& lexicon = load_lexicon(config, run, holder);
    const auto report =
        run_experiment_matrix(cohort, config.enrichment, config.matrix.axes, matrix_options(config, lexicon));
    run.write("report.csv", report.to_csv());
    run.write("summary.txt", report.summary());
    run.finish(config);
    std::cout << report.summary();
    for (const auto& row : report.rows) {
        if (row.failed()) std::cerr << ordered_json{{"warning", "cell failed: " + *row.error}}.dump() << "\n";
    }
    return 0;
}

// synth -> build -> augment -> split -> surrogate -> eval, plus a small
// ablation matrix.
int cmd_demo(Command& c) {
    RunDir run(c.out, c.name);
    auto config = resolve_config(c, run);
    const std::size_t jobs = config.effective_jobs();

    const Cohort cohort = generate_cohort(config.synth);
    run.write("cohort.json", write_cohort(cohort));

    const DatasetBuild build = build_dataset(cohort, config.enrichment, jobs);
    if (!build.errors.empty()) {
        report_student_errors(build.errors);
        return kExitData;
    }
    run.write("dataset.jsonl", write_dataset_jsonl(build.examples));
    run.write("budget.csv", write_budget_csv(build.budget_reports));

    std::optional<SynonymLexicon> holder;
    const auto& lexicon = load_lexicon(config, run, holder);
    auto examples = build.examples;
    if (config.augmentation.enabled) {
        const auto targets = config.augmentation.targets.value_or(default_targets(count_labels(examples)));
        examples = augment(examples, targets, lexicon, config.augmentation.rate, config.seed);
    }
    run.write("augmented.jsonl", write_dataset_jsonl(examples));

    const auto split = stratified_split(examples, config.split);
    run.write("train.jsonl", write_dataset_jsonl(split.train));
    run.write("test.jsonl", write_dataset_jsonl(split.test));

    const auto model = train_surrogate(split.train, config.surrogate);
    std::vector<Prediction> predictions;
    for (const auto& e : split.test) {
        predictions.push_back(
            {e.example_id, verbalize_output(predict_surrogate(model, e.input_text), config.enrichment.templates)});
    }
    run.write("predictions.jsonl", write_predictions_jsonl(predictions));
    const auto summary = score_predictions(predictions, split.test);
    run.write("eval.json", eval_json(summary));

    MatrixAxes axes;
    axes.modality_sets = {config.enrichment.modalities};
    axes.horizons = {config.enrichment.horizon_weeks};
    axes.ablations = {AblationMode::NoRandomization, AblationMode::Partial, AblationMode::Full};
    axes.missing_policies = {config.enrichment.missing_policy};
    const auto report = run_experiment_matrix(cohort, config.enrichment, axes, matrix_options(config, lexicon));
    run.write("report.csv", report.to_csv());
    run.write("summary.txt", report.summary());
    run.finish(config);

    std::cout << "surrogate accuracy on " << summary.n << " test examples: " << format_number(summary.accuracy)
              << "\n"
              << report.summary();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"seqenrich: sequence-enriched datasets from student course records"};
    app.set_version_flag("--version", "seqenrich 0.1.0");
    app.require_subcommand(1);

    auto synth = make_command(app, "synth", "Generate a synthetic cohort");
    add_synth_flags(*synth);

    auto validate = make_command(app, "validate", "Check a cohort against the record invariants");
    add_cohort_inputs(*validate);

    auto build = make_command(app, "build", "Cohort to dataset JSONL and token-budget report");
    add_cohort_inputs(*build);
    add_enrichment_flags(*build);

    auto ablate = make_command(app, "ablate", "Build with temporal order ablated");
    add_cohort_inputs(*ablate);
    add_enrichment_flags(*ablate);
    ablate->flag("--mode", "ablation.mode", "none, full, partial or pseudo");

    auto augment_cmd = make_command(app, "augment", "Balance classes by oversampling with synonym replacement");
    augment_cmd->app->add_option("--dataset", augment_cmd->in.dataset, "Dataset JSONL of original examples");
    augment_cmd->flag("--targets", "augmentation.targets", "Target counts: at-risk,prone,average,outstanding");
    augment_cmd->flag("--rate", "augmentation.rate", "Synonym replacement rate");
    augment_cmd->flag("--lexicon", "augmentation.lexicon", "Synonym lexicon file");

    auto split_cmd = make_command(app, "split", "Seeded stratified train/test split");
    split_cmd->app->add_option("--dataset", split_cmd->in.dataset, "Dataset JSONL");
    split_cmd->flag("--test-fraction", "split.test_fraction", "Fraction of each class sent to test");
    split_cmd->flag("--split-point", "split.point", "after_augmentation or before_augmentation");
    split_cmd->switch_flag("--no-stratify", "split.stratify", "false", "Split the pool as one group");

    auto eval = make_command(app, "eval", "Score a predictions file against reference examples");
    eval->app->add_option("--predictions", eval->in.predictions, "Predictions JSONL ({\"id\",\"generated\"})");
    eval->app->add_option("--references", eval->in.references, "Reference dataset JSONL");

    auto matrix = make_command(app, "matrix", "Run the experiment grid with the surrogate classifier");
    add_cohort_inputs(*matrix);
    add_synth_flags(*matrix);
    matrix->flag("--modality-sets", "matrix.modalities", "e.g. \"NC;C;B;NC+C;NC+C+B\"");
    matrix->flag("--horizons", "matrix.horizons", "e.g. \"2;3;4\"");
    matrix->flag("--ablations", "matrix.ablations", "e.g. \"none;partial;full\"");
    matrix->flag("--policies", "matrix.missing_policies", "e.g. \"skipped;na\"");
    matrix->flag("--n-seeds", "matrix.n_seeds", "Seeds per cell");

    auto demo = make_command(app, "demo", "End-to-end run on a synthetic cohort");
    add_synth_flags(*demo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (synth->app->parsed()) return cmd_synth(*synth);
        if (validate->app->parsed()) return cmd_validate(*validate);
        if (build->app->parsed()) return cmd_build(*build, false);
        if (ablate->app->parsed()) return cmd_build(*ablate, true);
        if (augment_cmd->app->parsed()) return cmd_augment(*augment_cmd);
        if (split_cmd->app->parsed()) return cmd_split(*split_cmd);
        if (eval->app->parsed()) return cmd_eval(*eval);
        if (matrix->app->parsed()) return cmd_matrix(*matrix);
        if (demo->app->parsed()) return cmd_demo(*demo);
    } catch (const UsageError& e) {
        report(e);
        return kExitUsage;
    } catch (const ConfigError& e) {
        report(e);
        return kExitUsage;
    } catch (const Error& e) {
        report(e);
        return kExitData;
    } catch (const std::exception& e) {
        report(e);
        return kExitData;
    }
    return kExitUsage;
}
