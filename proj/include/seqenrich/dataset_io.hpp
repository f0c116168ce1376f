#pragma once
// JSON Lines files: datasets, prediction files, and token budget reports.
//
// Dataset line:    {"id","student_id","input","output","label","provenance","split"}
//   provenance is "original" or "augmented:<parent id>"; split is "train",
//   "test", or null.
// Prediction line: {"id","generated"}

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "seqenrich/core.hpp"
#include "seqenrich/enrichment.hpp"
#include "seqenrich/evalkit.hpp"

namespace seqenrich {

std::string write_dataset_jsonl(const std::vector<TextExample>& examples);

/// Blank lines are skipped. Throws SyntaxError (line numbers are 1-based file
/// lines), SchemaError, UnlabeledExample (label absent or not a category).
std::vector<TextExample> read_dataset_jsonl(std::string_view bytes);

struct Prediction {
    std::string id;
    std::string generated;

    bool operator==(const Prediction&) const = default;
};

std::string write_predictions_jsonl(const std::vector<Prediction>& predictions);
std::vector<Prediction> read_predictions_jsonl(std::string_view bytes);

struct EvalSummary {
    std::size_t n = 0;
    std::size_t correct = 0;
    std::size_t no_match = 0;
    std::size_t ambiguous = 0;
    double accuracy = 0.0;
};

/// Scores each reference against the prediction with the same id. Throws
/// EmptyInput, ValueError (duplicate ids), JoinError (a reference without a
/// prediction or a prediction without a reference).
EvalSummary score_predictions(const std::vector<Prediction>& predictions, const std::vector<TextExample>& references);

/// id,estimated_tokens,budget,over_budget
std::string write_budget_csv(const std::vector<TokenBudgetReport>& reports);

}  // namespace seqenrich
