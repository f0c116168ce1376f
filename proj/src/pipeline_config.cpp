#include "seqenrich/pipeline_config.hpp"

#include <charconv>
#include <functional>
#include <map>

#include "seqenrich/parallel.hpp"
#include "seqenrich/text.hpp"

namespace seqenrich {

namespace {

// --- value parsing -------------------------------------------------------

std::uint64_t parse_u64(std::string_view key, std::string_view v) {
    std::uint64_t out = 0;
    auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || end != v.data() + v.size() || v.empty()) {
        throw ConfigError("'" + std::string(key) + "': expected a non-negative integer, got '" + std::string(v) + "'");
    }
    return out;
}

int parse_int(std::string_view key, std::string_view v) {
    int out = 0;
    auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || end != v.data() + v.size() || v.empty()) {
        throw ConfigError("'" + std::string(key) + "': expected an integer, got '" + std::string(v) + "'");
    }
    return out;
}

double parse_real(std::string_view key, std::string_view v) {
    try {
        return parse_number(v);
    } catch (const ValueError&) {
        throw ConfigError("'" + std::string(key) + "': expected a number, got '" + std::string(v) + "'");
    }
}

bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true") return true;
    if (v == "false") return false;
    throw ConfigError("'" + std::string(key) + "': expected true or false, got '" + std::string(v) + "'");
}

std::vector<std::string> parse_list(std::string_view v) {
    std::vector<std::string> out;
    if (trim(v).empty()) return out;
    for (auto& item : split(v, ';')) out.push_back(trim(item));
    return out;
}

ModalitySet parse_modalities(std::string_view key, std::string_view v) {
    auto m = ModalitySet::parse(v);
    if (!m || m->empty()) {
        throw ConfigError("'" + std::string(key) + "': expected modalities like NC+C+B, got '" + std::string(v) + "'");
    }
    return *m;
}

AblationMode parse_mode(std::string_view key, std::string_view v) {
    auto m = parse_ablation(v);
    if (!m) {
        throw ConfigError("'" + std::string(key) + "': expected none, full, partial or pseudo, got '" +
                          std::string(v) + "'");
    }
    return *m;
}

MissingPolicy parse_policy(std::string_view key, std::string_view v) {
    try {
        return MissingPolicy::parse(v);
    } catch (const ValueError& e) {
        throw ConfigError("'" + std::string(key) + "': " + e.what());
    }
}

CategoryCounts parse_counts(std::string_view key, std::string_view v) {
    auto parts = split(v, ',');
    if (parts.size() != 4) {
        throw ConfigError("'" + std::string(key) + "': expected four comma-separated counts, got '" + std::string(v) +
                          "'");
    }
    CategoryCounts out{};
    for (std::size_t i = 0; i < 4; ++i) out[i] = parse_u64(key, trim(parts[i]));
    return out;
}

std::string counts_text(const CategoryCounts& c) {
    return std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]) + "," +
           std::to_string(c[3]);
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += ch;
        }
    }
    return out + "\"";
}

template <typename T, typename Fn>
std::string join_mapped(const std::vector<T>& items, Fn&& fn) {
    std::vector<std::string> parts;
    for (const auto& item : items) parts.push_back(fn(item));
    return join(parts, ";");
}

// --- key table -----------------------------------------------------------

struct Entry {
    std::string_view key;
    std::function<void(PipelineConfig&, std::string_view key, std::string_view value)> set;
    std::function<std::string(const PipelineConfig&)> get;
};

#define SEQ_STRING(name, field)                                                            \
    Entry {                                                                                \
        name, [](PipelineConfig& c, std::string_view, std::string_view v) { c.field = v; }, \
            [](const PipelineConfig& c) { return quote(c.field); }                         \
    }

#define SEQ_REAL(name, field)                                                                              \
    Entry {                                                                                                \
        name, [](PipelineConfig& c, std::string_view k, std::string_view v) { c.field = parse_real(k, v); }, \
            [](const PipelineConfig& c) { return format_number(c.field); }                                 \
    }

#define SEQ_BOOL(name, field)                                                                              \
    Entry {                                                                                                \
        name, [](PipelineConfig& c, std::string_view k, std::string_view v) { c.field = parse_bool(k, v); }, \
            [](const PipelineConfig& c) { return bool_text(c.field); }                                     \
    }

#define SEQ_INT(name, field)                                                                              \
    Entry {                                                                                               \
        name, [](PipelineConfig& c, std::string_view k, std::string_view v) { c.field = parse_int(k, v); }, \
            [](const PipelineConfig& c) { return std::to_string(c.field); }                               \
    }

#define SEQ_COUNT(name, field)                                                                            \
    Entry {                                                                                               \
        name, [](PipelineConfig& c, std::string_view k, std::string_view v) { c.field = parse_u64(k, v); }, \
            [](const PipelineConfig& c) { return std::to_string(c.field); }                               \
    }

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table = {
        SEQ_COUNT("seed", seed),
        SEQ_COUNT("jobs", jobs),
        SEQ_STRING("output_dir", output_dir),

        SEQ_INT("enrichment.horizon_weeks", enrichment.horizon_weeks),
        {"enrichment.modalities",
         [](PipelineConfig& c, std::string_view k, std::string_view v) {
             c.enrichment.modalities = parse_modalities(k, v);
         },
         [](const PipelineConfig& c) { return c.enrichment.modalities.label(); }},
        {"enrichment.missing_policy",
         [](PipelineConfig& c, std::string_view k, std::string_view v) {
             c.enrichment.missing_policy = parse_policy(k, v);
         },
         [](const PipelineConfig& c) { return quote(c.enrichment.missing_policy.label()); }},
        SEQ_BOOL("enrichment.weekly_tags", enrichment.weekly_tags),
        SEQ_BOOL("enrichment.daily_tags", enrichment.daily_tags),
        SEQ_STRING("enrichment.instruction", enrichment.instruction_text),
        SEQ_COUNT("enrichment.token_budget", enrichment.token_budget),

        SEQ_STRING("templates.score_sentence_prefix", enrichment.templates.score_sentence_prefix),
        SEQ_STRING("templates.score_item_format", enrichment.templates.score_item_format),
        SEQ_STRING("templates.list_joiner", enrichment.templates.list_joiner),
        SEQ_STRING("templates.final_joiner", enrichment.templates.final_joiner),
        SEQ_STRING("templates.background_prefix", enrichment.templates.background_prefix),
        SEQ_STRING("templates.background_body", enrichment.templates.background_body),
        SEQ_STRING("templates.output", enrichment.templates.output_template),

        SEQ_BOOL("augmentation.enabled", augmentation.enabled),
        {"augmentation.targets",
         [](PipelineConfig& c, std::string_view k, std::string_view v) {
             if (trim(v).empty() || v == "default") {
                 c.augmentation.targets.reset();
             } else {
                 c.augmentation.targets = parse_counts(k, v);
             }
         },
         [](const PipelineConfig& c) {
             return c.augmentation.targets ? counts_text(*c.augmentation.targets) : std::string("default");
         }},
        SEQ_REAL("augmentation.rate", augmentation.rate),
        SEQ_STRING("augmentation.lexicon", augmentation.lexicon_path),

        {"ablation.mode",
         [](PipelineConfig& c, std::string_view k, std::string_view v) { c.ablation = parse_mode(k, v); },
         [](const PipelineConfig& c) { return std::string(ablation_name(c.ablation)); }},

        SEQ_REAL("split.test_fraction", split.test_fraction),
        SEQ_BOOL("split.stratify", split.stratify),
        {"split.point",
         [](PipelineConfig& c, std::string_view k, std::string_view v) {
             auto p = parse_split_point(v);
             if (!p) {
                 throw ConfigError("'" + std::string(k) + "': expected after_augmentation or before_augmentation, got '" +
                                   std::string(v) + "'");
             }
             c.split.split_point = *p;
         },
         [](const PipelineConfig& c) { return std::string(split_point_name(c.split.split_point)); }},

        SEQ_INT("synth.n_students", synth.n_students),
        SEQ_INT("synth.n_weeks", synth.n_weeks),
        SEQ_REAL("synth.coupling", synth.cross_modal_coupling),
        SEQ_REAL("synth.trend", synth.temporal_trend),
        SEQ_REAL("synth.week1_missing_rate", synth.week1_missing_rate),
        SEQ_REAL("synth.later_missing_rate", synth.later_missing_rate),
        SEQ_REAL("synth.dropout_rate", synth.dropout_participant_rate),
        SEQ_INT("synth.dropout_min_weeks", synth.dropout_min_weeks),
        {"synth.label_distribution",
         [](PipelineConfig& c, std::string_view k, std::string_view v) {
             c.synth.target_label_distribution = parse_counts(k, v);
         },
         [](const PipelineConfig& c) { return counts_text(c.synth.target_label_distribution); }},
        SEQ_STRING("synth.course_name", synth.course_name),

        {"matrix.modalities",
         [](PipelineConfig& c, std::string_view k, std::string_view v) {
             c.matrix.axes.modality_sets.clear();
             for (auto& item : parse_list(v)) c.matrix.axes.modality_sets.push_back(parse_modalities(k, item));
         },
         [](const PipelineConfig& c) {
             return join_mapped(c.matrix.axes.modality_sets, [](const ModalitySet& m) { return m.label(); });
         }},
        {"matrix.horizons",
         [](PipelineConfig& c, std::string_view k, std::string_view v) {
             c.matrix.axes.horizons.clear();
             for (auto& item : parse_list(v)) c.matrix.axes.horizons.push_back(parse_int(k, item));
         },
         [](const PipelineConfig& c) {
             return join_mapped(c.matrix.axes.horizons, [](int h) { return std::to_string(h); });
         }},
        {"matrix.ablations",
         [](PipelineConfig& c, std::string_view k, std::string_view v) {
             c.matrix.axes.ablations.clear();
             for (auto& item : parse_list(v)) c.matrix.axes.ablations.push_back(parse_mode(k, item));
         },
         [](const PipelineConfig& c) {
             return join_mapped(c.matrix.axes.ablations,
                                [](AblationMode m) { return std::string(ablation_name(m)); });
         }},
        // Custom descriptors inside this list cannot contain ';'.
        {"matrix.missing_policies",
         [](PipelineConfig& c, std::string_view k, std::string_view v) {
             c.matrix.axes.missing_policies.clear();
             for (auto& item : parse_list(v)) c.matrix.axes.missing_policies.push_back(parse_policy(k, item));
         },
         [](const PipelineConfig& c) {
             return quote(join_mapped(c.matrix.axes.missing_policies,
                                      [](const MissingPolicy& p) { return p.label(); }));
         }},
        SEQ_INT("matrix.n_seeds", matrix.n_seeds),
        {"matrix.split_point",
         [](PipelineConfig& c, std::string_view k, std::string_view v) {
             auto p = parse_split_point(v);
             if (!p) {
                 throw ConfigError("'" + std::string(k) + "': expected after_augmentation or before_augmentation, got '" +
                                   std::string(v) + "'");
             }
             c.matrix.split_point = *p;
         },
         [](const PipelineConfig& c) { return std::string(split_point_name(c.matrix.split_point)); }},

        SEQ_REAL("surrogate.alpha", surrogate.alpha),
        SEQ_INT("surrogate.position_buckets", surrogate.position_buckets),
        SEQ_BOOL("surrogate.sentence_positions", surrogate.sentence_positions),
        SEQ_BOOL("surrogate.plain_tokens", surrogate.plain_tokens),
        SEQ_BOOL("surrogate.day_context", surrogate.day_context),
    };
    return table;
}

#undef SEQ_STRING
#undef SEQ_REAL
#undef SEQ_BOOL
#undef SEQ_INT
#undef SEQ_COUNT

const Entry* find_entry(std::string_view key) {
    for (const auto& e : entries()) {
        if (e.key == key) return &e;
    }
    return nullptr;
}

// Strips quotes and resolves escapes; unquoted values are trimmed.
std::string unquote(std::string_view raw, std::size_t line_no) {
    std::string v = trim(raw);
    if (v.empty() || v.front() != '"') return v;
    if (v.size() < 2 || v.back() != '"') {
        throw ConfigError("line " + std::to_string(line_no) + ": unterminated quoted value");
    }
    std::string out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        char ch = v[i];
        if (ch == '\\') {
            if (i + 2 >= v.size()) throw ConfigError("line " + std::to_string(line_no) + ": dangling escape");
            const char next = v[++i];
            switch (next) {
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                default:
                    throw ConfigError("line " + std::to_string(line_no) + ": unknown escape \\" + std::string(1, next));
            }
        } else if (ch == '"') {
            throw ConfigError("line " + std::to_string(line_no) + ": unescaped quote inside value");
        } else {
            out += ch;
        }
    }
    return out;
}

}  // namespace

void PipelineConfig::set(std::string_view key, std::string_view value) {
    const Entry* e = find_entry(key);
    if (!e) throw ConfigError("unknown config key '" + std::string(key) + "'");
    e->set(*this, key, value);
}

void PipelineConfig::apply_seed() {
    enrichment.master_seed = seed;
    split.seed = seed;
    synth.master_seed = seed;
    surrogate.seed = seed;
}

std::string PipelineConfig::resolved_text() const {
    std::string out;
    for (const auto& e : entries()) {
        if (e.key == "output_dir") continue;
        out += std::string(e.key) + " = " + e.get(*this) + "\n";
    }
    return out;
}

std::vector<Violation> PipelineConfig::validate() const {
    std::vector<Violation> out;
    auto add = [&](std::string_view prefix, std::vector<Violation> vs) {
        for (auto& v : vs) out.push_back({std::string(prefix) + v.field, v.rule});
    };
    add("enrichment.", enrichment.validate());
    add("split.", split.validate());
    add("synth.", synth.validate());
    add("surrogate.", surrogate.validate());
    if (!(augmentation.rate >= 0.0 && augmentation.rate <= 1.0)) out.push_back({"augmentation.rate", "in [0, 1]"});
    if (matrix.n_seeds < 1) out.push_back({"matrix.n_seeds", ">= 1"});
    if (matrix.axes.cell_count() == 0) out.push_back({"matrix", "every axis non-empty"});
    return out;
}

std::size_t PipelineConfig::effective_jobs() const { return jobs == 0 ? default_jobs() : jobs; }

const std::vector<std::string_view>& config_keys() {
    static const std::vector<std::string_view> keys = [] {
        std::vector<std::string_view> out;
        for (const auto& e : entries()) out.push_back(e.key);
        return out;
    }();
    return keys;
}

PipelineConfig parse_config(std::string_view text, PipelineConfig base) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const std::string stripped = trim(line);
        if (!stripped.empty() && stripped.front() != '#') {
            const auto eq = stripped.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
            }
            const std::string key = trim(std::string_view(stripped).substr(0, eq));
            const std::string value = unquote(std::string_view(stripped).substr(eq + 1), line_no);
            try {
                base.set(key, value);
            } catch (const ConfigError& e) {
                throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
            }
        }
        if (end == text.size()) break;
        start = end + 1;
    }
    return base;
}

}  // namespace seqenrich
