#pragma once
// Class balancing by oversampling originals, with synonym replacement on the
// duplicated input texts.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "seqenrich/core.hpp"
#include "seqenrich/rng.hpp"

namespace seqenrich {

struct BalancePlan {
    CategoryCounts current{};
    CategoryCounts target{};
    CategoryCounts n_duplicates{};

    std::size_t total_target() const noexcept;
};

/// Throws TargetBelowCurrent naming the first offending category.
BalancePlan plan_balance(const CategoryCounts& current, const CategoryCounts& targets);

/// {30, 30, 36, 48} (at-risk, prone-to-risk, average, outstanding) for the
/// 6/6/12/24 distribution; otherwise every category is raised to the largest
/// current count.
CategoryCounts default_targets(const CategoryCounts& current);

CategoryCounts count_labels(const std::vector<TextExample>& examples);

class SynonymLexicon {
public:
    /// One entry per line, "word: syn1, syn2, ...". Blank lines and lines
    /// starting with '#' are skipped. Keys are lowercased. Throws SyntaxError
    /// or ValidationError (protected key, or a synonym equal to its key).
    static SynonymLexicon parse(std::string_view text, std::set<std::string> protected_tokens = default_protected());

    /// The curated lexicon shipped with the library.
    static const SynonymLexicon& builtin();

    /// The four category surface forms.
    static std::set<std::string> default_protected();

    const std::vector<std::string>* synonyms(std::string_view lowercase_word) const;
    bool is_protected(std::string_view lowercase_word) const;
    std::size_t size() const noexcept { return entries_.size(); }
    const std::map<std::string, std::vector<std::string>, std::less<>>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, std::vector<std::string>, std::less<>> entries_;
    std::set<std::string, std::less<>> protected_;
};

/// Replaces each eligible word independently with probability `rate` by a
/// uniformly chosen synonym, keeping the case of its first letter. Temporal
/// tags, score sentences, and the background sentence are never touched, nor
/// are protected tokens. Throws ValueError if rate is outside [0, 1].
std::string synonym_replace(std::string_view text, const SynonymLexicon& lexicon, double rate, Rng& rng);

inline constexpr double kDefaultReplacementRate = 0.1;

/// Originals first (input order), then the duplicates, category by category
/// (at-risk first) in generation order. Duplicate i of category c draws from
/// substream (master_seed, "augment", c, i): a parent chosen uniformly from
/// that category's originals, then synonym replacement on its input text.
/// Throws ValueError (non-original input), TargetBelowCurrent, EmptyCategory.
std::vector<TextExample> augment(const std::vector<TextExample>& examples, const CategoryCounts& targets,
                                 const SynonymLexicon& lexicon, double rate, std::uint64_t master_seed);

}  // namespace seqenrich
