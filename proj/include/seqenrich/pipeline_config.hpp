#pragma once
// The single config file shared by every subcommand.
//
// Format: one "key = value" per line. Lines whose first non-blank character
// is '#' are comments; there are no trailing comments, so values may contain
// '#'. A value may be wrapped in double quotes to keep surrounding blanks;
// inside quotes \" \\ \n and \t are escapes. Lists use ';' between items.
// Any key not listed by config_keys() is an error.
//
// Precedence: built-in defaults, then the file, then command-line flags.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqenrich/ablation.hpp"
#include "seqenrich/augmentation.hpp"
#include "seqenrich/core.hpp"
#include "seqenrich/evalkit.hpp"
#include "seqenrich/split.hpp"
#include "seqenrich/synth.hpp"

namespace seqenrich {

struct AugmentationSettings {
    bool enabled = true;
    std::optional<CategoryCounts> targets;  // default_targets() when unset
    double rate = kDefaultReplacementRate;
    std::string lexicon_path;  // empty: the built-in lexicon
};

struct MatrixSettings {
    MatrixAxes axes;
    int n_seeds = 5;
    // Matrices split before augmentation so that accuracy is not inflated by
    // near-duplicates; split.point only affects the split subcommand and demo.
    SplitPoint split_point = SplitPoint::BeforeAugmentation;
};

struct PipelineConfig {
    // One seed drives everything; the stage seeds below are overwritten from
    // it by apply_seed().
    std::uint64_t seed = 0;
    std::size_t jobs = 0;  // 0: one per available core
    std::string output_dir;

    EnrichmentConfig enrichment;
    AugmentationSettings augmentation;
    AblationMode ablation = AblationMode::NoRandomization;
    SplitSpec split;
    SynthConfig synth;
    MatrixSettings matrix;
    SurrogateOptions surrogate = MatrixOptions{}.surrogate;

    /// Sets one key from its text value. Throws ConfigError for unknown keys
    /// or values that do not parse.
    void set(std::string_view key, std::string_view value);

    /// Copies `seed` into the enrichment, split, synth and surrogate seeds.
    void apply_seed();

    /// Every key except output_dir with its current value, in config_keys()
    /// order. output_dir is left out so a run directory does not depend on
    /// where it was written. Parsing the result gives back an equal config
    /// apart from output_dir.
    std::string resolved_text() const;

    /// Collected violations of every section.
    std::vector<Violation> validate() const;

    std::size_t effective_jobs() const;
};

const std::vector<std::string_view>& config_keys();

/// Applies every line of `text` on top of `base`. Errors carry the line
/// number. Throws ConfigError.
PipelineConfig parse_config(std::string_view text, PipelineConfig base = {});

}  // namespace seqenrich
