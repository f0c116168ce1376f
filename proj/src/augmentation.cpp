#include "seqenrich/augmentation.hpp"

#include <algorithm>
#include <cctype>

#include "seqenrich/embedded_data.hpp"
#include "seqenrich/enrichment.hpp"
#include "seqenrich/text.hpp"

namespace seqenrich {

std::size_t BalancePlan::total_target() const noexcept {
    std::size_t n = 0;
    for (auto t : target) n += t;
    return n;
}

BalancePlan plan_balance(const CategoryCounts& current, const CategoryCounts& targets) {
    BalancePlan plan;
    plan.current = current;
    plan.target = targets;
    for (auto c : kAllCategories) {
        const auto i = category_index(c);
        if (targets[i] < current[i]) {
            throw TargetBelowCurrent("target " + std::to_string(targets[i]) + " for '" + std::string(surface_form(c)) +
                                     "' is below its current count " + std::to_string(current[i]));
        }
        plan.n_duplicates[i] = targets[i] - current[i];
    }
    return plan;
}

CategoryCounts default_targets(const CategoryCounts& current) {
    if (current == CategoryCounts{6, 6, 12, 24}) {
        return {30, 30, 36, 48};
    }
    const std::size_t top = *std::max_element(current.begin(), current.end());
    return {top, top, top, top};
}

CategoryCounts count_labels(const std::vector<TextExample>& examples) {
    CategoryCounts counts{};
    for (const auto& e : examples) ++counts[category_index(e.label)];
    return counts;
}

std::set<std::string> SynonymLexicon::default_protected() {
    std::set<std::string> out;
    for (auto c : kAllCategories) out.emplace(surface_form(c));
    return out;
}

SynonymLexicon SynonymLexicon::parse(std::string_view text, std::set<std::string> protected_tokens) {
    SynonymLexicon lex;
    for (auto& p : protected_tokens) lex.protected_.insert(to_lower(p));
    std::vector<Violation> violations;
    std::size_t line_no = 0;
    for (const auto& raw : split(text, '\n')) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw SyntaxError(line_no, 1, "lexicon entry needs 'word: synonyms'");
        }
        const std::string key = to_lower(trim(line.substr(0, colon)));
        if (key.empty()) {
            throw SyntaxError(line_no, 1, "empty lexicon key");
        }
        std::vector<std::string> syns;
        for (const auto& s : split(line.substr(colon + 1), ',')) {
            std::string syn = trim(s);
            if (syn.empty()) continue;
            if (to_lower(syn) == key) {
                violations.push_back({"lexicon line " + std::to_string(line_no), "synonym differs from its key"});
                continue;
            }
            syns.push_back(std::move(syn));
        }
        if (syns.empty()) {
            throw SyntaxError(line_no, colon + 2, "lexicon entry '" + key + "' has no synonyms");
        }
        if (lex.protected_.count(key)) {
            violations.push_back({"lexicon line " + std::to_string(line_no), "protected token is not a key"});
        }
        auto& slot = lex.entries_[key];
        for (auto& s : syns) {
            if (std::find(slot.begin(), slot.end(), s) == slot.end()) slot.push_back(std::move(s));
        }
    }
    if (!violations.empty()) {
        throw ValidationError("synonym lexicon", std::move(violations));
    }
    return lex;
}

const SynonymLexicon& SynonymLexicon::builtin() {
    static const SynonymLexicon lex = parse(embedded::kLexicon);
    return lex;
}

const std::vector<std::string>* SynonymLexicon::synonyms(std::string_view lowercase_word) const {
    auto it = entries_.find(lowercase_word);
    return it == entries_.end() ? nullptr : &it->second;
}

bool SynonymLexicon::is_protected(std::string_view lowercase_word) const {
    return protected_.find(lowercase_word) != protected_.end();
}

namespace {

bool is_word_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    return std::isalpha(u) != 0 || c == '\'' || c == '-';
}

using Span = std::pair<std::size_t, std::size_t>;

// Byte ranges that synonym replacement must leave alone.
std::vector<Span> protected_spans(std::string_view text) {
    std::vector<Span> spans;
    auto sentence_end = [&](std::size_t from) {
        for (std::size_t i = from; i < text.size(); ++i) {
            const char c = text[i];
            if ((c == '.' || c == '!' || c == '?') && (i + 1 == text.size() || text[i + 1] == ' ')) return i + 1;
        }
        return text.size();
    };
    const VerbalizationTemplates defaults;
    for (const std::string& prefix : {trim(defaults.score_sentence_prefix), trim(defaults.background_prefix)}) {
        for (auto pos = text.find(prefix); pos != std::string_view::npos; pos = text.find(prefix, pos + 1)) {
            spans.emplace_back(pos, sentence_end(pos + prefix.size()));
        }
    }
    for (auto pos = text.find("In week "); pos != std::string_view::npos; pos = text.find("In week ", pos + 1)) {
        const auto comma = text.find(',', pos);
        spans.emplace_back(pos, comma == std::string_view::npos ? text.size() : comma + 1);
    }
    for (auto day : kCollectionDays) {
        const std::string tag = daily_tag(day);
        for (auto pos = text.find(tag); pos != std::string_view::npos; pos = text.find(tag, pos + 1)) {
            spans.emplace_back(pos, pos + tag.size());
        }
    }
    return spans;
}

bool inside(const std::vector<Span>& spans, std::size_t begin, std::size_t end) {
    return std::any_of(spans.begin(), spans.end(),
                       [&](const Span& s) { return begin < s.second && end > s.first; });
}

}  // namespace

std::string synonym_replace(std::string_view text, const SynonymLexicon& lexicon, double rate, Rng& rng) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
        throw ValueError("replacement rate must be in [0, 1]");
    }
    const auto spans = protected_spans(text);
    std::string out;
    out.reserve(text.size() + 16);
    std::size_t i = 0;
    while (i < text.size()) {
        if (!std::isalpha(static_cast<unsigned char>(text[i]))) {
            out += text[i++];
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && is_word_char(text[j])) ++j;
        // Trailing apostrophes and hyphens belong to the punctuation, not the word.
        std::size_t k = j;
        while (k > i && (text[k - 1] == '\'' || text[k - 1] == '-')) --k;
        const std::string_view word = text.substr(i, k - i);
        const std::string key = to_lower(word);
        const auto* syns = lexicon.synonyms(key);
        if (syns != nullptr && !lexicon.is_protected(key) && !inside(spans, i, k) && rng.uniform01() < rate) {
            std::string replacement = (*syns)[rng.uniform_below(syns->size())];
            if (std::isupper(static_cast<unsigned char>(word[0])) && !replacement.empty()) {
                replacement[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(replacement[0])));
            }
            out += replacement;
        } else {
            out += word;
        }
        out.append(text.substr(k, j - k));
        i = j;
    }
    return out;
}

std::vector<TextExample> augment(const std::vector<TextExample>& examples, const CategoryCounts& targets,
                                 const SynonymLexicon& lexicon, double rate, std::uint64_t master_seed) {
    for (const auto& e : examples) {
        if (e.is_augmented()) {
            throw ValueError("augment expects original examples only; '" + e.example_id + "' is augmented");
        }
    }
    const BalancePlan plan = plan_balance(count_labels(examples), targets);

    std::vector<TextExample> out = examples;
    out.reserve(plan.total_target());
    for (auto c : kAllCategories) {
        const auto ci = category_index(c);
        const std::size_t needed = plan.n_duplicates[ci];
        if (needed == 0) continue;
        std::vector<const TextExample*> pool;
        for (const auto& e : examples) {
            if (e.label == c) pool.push_back(&e);
        }
        if (pool.empty()) {
            throw EmptyCategory("cannot oversample '" + std::string(surface_form(c)) + "': no originals");
        }
        for (std::size_t i = 0; i < needed; ++i) {
            Rng rng(derive_seed(master_seed, "augment", static_cast<std::uint64_t>(ci), static_cast<std::uint64_t>(i)));
            const TextExample& parent = *pool[rng.uniform_below(pool.size())];
            TextExample dup = parent;
            std::string suffix = std::to_string(i);
            if (suffix.size() < 3) suffix.insert(0, 3 - suffix.size(), '0');
            dup.example_id = parent.example_id + "-aug" + suffix;
            dup.parent_id = parent.example_id;
            dup.split.reset();
            dup.input_text = synonym_replace(parent.input_text, lexicon, rate, rng);
            out.push_back(std::move(dup));
        }
    }
    return out;
}

}  // namespace seqenrich
