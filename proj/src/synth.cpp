#include "seqenrich/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>

#include "seqenrich/embedded_data.hpp"
#include "seqenrich/rng.hpp"
#include "seqenrich/text.hpp"

namespace seqenrich {

std::string_view tercile_name(AbilityTercile tercile) noexcept {
    switch (tercile) {
        case AbilityTercile::Low:
            return "Low";
        case AbilityTercile::Mid:
            return "Mid";
        case AbilityTercile::High:
            return "High";
    }
    return "";
}

std::string_view phase_name(SemesterPhase phase) noexcept { return phase == SemesterPhase::Early ? "Early" : "Late"; }

SemesterPhase phase_of_week(int week) noexcept { return week <= 8 ? SemesterPhase::Early : SemesterPhase::Late; }

std::vector<ScheduledAssessment> default_schedule() {
    using K = AssessmentKind;
    return {
        {1, K::Diary, 1}, {1, K::Lab, 3},      {1, K::Homework, 1}, {2, K::Quiz, 1},     {2, K::Lab, 3},
        {2, K::Homework, 1}, {3, K::Diary, 1}, {3, K::Lab, 3},      {4, K::Quiz, 1},     {4, K::Homework, 1},
    };
}

namespace {

// Ability bands per category, indexed by category_index().
constexpr std::array<std::pair<double, double>, 4> kAbilityBands = {{
    {0.30, 0.50},
    {0.50, 0.62},
    {0.62, 0.76},
    {0.76, 0.94},
}};

// Students below the pivot drift down, above it up. The narrow spread makes
// almost everyone drift at full strength, so neighbouring categories cross
// over during the first weeks and only the order of the weeks separates them.
constexpr double kTrendPivot = 0.62;
constexpr double kTrendSpread = 0.03;
constexpr double kScoreTrendScale = 0.25;
constexpr double kScoreNoise = 0.10;
// Earned fractions are rounded to quarters of the maximum.
constexpr double kScoreSteps = 4.0;
constexpr double kAnswerTrendScale = 0.30;
constexpr double kLowCut = 0.55;
constexpr double kHighCut = 0.72;
// Probability that family income follows ability instead of being uniform.
constexpr double kIncomeTilt = 0.5;

const std::array<std::vector<LetterGrade>, 4>& grades_by_category() {
    static const std::array<std::vector<LetterGrade>, 4> grades = [] {
        std::array<std::vector<LetterGrade>, 4> g;
        for (auto grade : kAllGrades) g[category_index(grade_to_category(grade))].push_back(grade);
        return g;
    }();
    return grades;
}

// -1 for the weakest students, +1 for the strongest.
double trend_direction(double ability) { return std::clamp((ability - kTrendPivot) / kTrendSpread, -1.0, 1.0); }

// Answers swing from -1 to +1 across weeks 1-4 and stay there. `time` may be
// fractional (days inside a week).
double answer_ramp(double time) { return std::clamp((time - 2.5) / 1.5, -1.0, 1.0); }

// Scores start at the student's level in week 1 and drift for three weeks.
double score_ramp(int week) { return std::clamp((week - 1) / 3.0, 0.0, 1.0); }

AbilityTercile tercile_of(double ability) {
    if (ability < kLowCut) return AbilityTercile::Low;
    if (ability < kHighCut) return AbilityTercile::Mid;
    return AbilityTercile::High;
}

struct PhraseBanks {
    std::map<std::tuple<EngagementKind, AbilityTercile, SemesterPhase>, std::vector<std::string>> cells;
    std::map<EngagementKind, std::vector<std::string>> neutral;
};

const PhraseBanks& phrase_banks() {
    static const PhraseBanks banks = [] {
        PhraseBanks b;
        std::vector<std::string>* current = nullptr;
        for (const auto& raw : split(embedded::kPhraseBanks, '\n')) {
            const std::string line = trim(raw);
            if (line.empty() || line[0] == '#') continue;
            if (line.front() == '[' && line.back() == ']') {
                const auto parts = split(line.substr(1, line.size() - 2), ' ');
                auto kind = parse_engagement_kind(parts.at(0));
                if (!kind) throw Error("phrase banks: unknown engagement kind in " + line);
                if (parts.size() == 2 && parts[1] == "Neutral") {
                    current = &b.neutral[*kind];
                    continue;
                }
                if (parts.size() != 3) throw Error("phrase banks: malformed section " + line);
                AbilityTercile t;
                if (parts[1] == "Low") t = AbilityTercile::Low;
                else if (parts[1] == "Mid") t = AbilityTercile::Mid;
                else if (parts[1] == "High") t = AbilityTercile::High;
                else throw Error("phrase banks: unknown tercile in " + line);
                SemesterPhase p;
                if (parts[2] == "Early") p = SemesterPhase::Early;
                else if (parts[2] == "Late") p = SemesterPhase::Late;
                else throw Error("phrase banks: unknown phase in " + line);
                current = &b.cells[{*kind, t, p}];
                continue;
            }
            if (current == nullptr) throw Error("phrase banks: sentence outside a section");
            current->push_back(line);
        }
        return b;
    }();
    return banks;
}

template <typename T>
const T& pick(const std::vector<T>& items, Rng& rng) {
    return items[rng.uniform_below(items.size())];
}

BackgroundProfile draw_background(double ability, Rng& rng) {
    static const std::vector<std::string> kMajors = {"Computer Science", "Biology", "Chemistry", "Mathematics",
                                                     "Physics", "Mechanical Engineering", "Electrical Engineering"};
    static const std::vector<std::string> kRaces = {"Asian", "White", "Black", "Hispanic", "multiracial"};
    static const std::vector<std::string> kIncomes = {"under $30,000", "$30,000-$50,000", "$50,000-$75,000",
                                                      "$75,000-$100,000", "over $100,000"};
    static const std::vector<std::string> kParents = {"high school", "some college", "bachelor's degree",
                                                      "graduate degree"};
    BackgroundProfile b;
    b.class_standing = rng.bernoulli(0.85) ? "freshman" : "sophomore";
    b.major = pick(kMajors, rng);
    const double g = rng.uniform01();
    b.gender = g < 0.48 ? "female" : (g < 0.96 ? "male" : "non-binary");
    b.race = pick(kRaces, rng);
    // Income leans with ability half of the time.
    if (rng.bernoulli(kIncomeTilt)) {
        const double u = std::clamp((ability - 0.30) / 0.64, 0.0, 0.999);
        b.family_income = kIncomes[static_cast<std::size_t>(u * static_cast<double>(kIncomes.size()))];
    } else {
        b.family_income = pick(kIncomes, rng);
    }
    b.international_status = rng.bernoulli(0.1) ? "international" : "domestic";
    b.parents_education = pick(kParents, rng);
    return b;
}

}  // namespace

const std::vector<std::string>& phrase_bank(EngagementKind kind, AbilityTercile tercile, SemesterPhase phase) {
    return phrase_banks().cells.at({kind, tercile, phase});
}

const std::vector<std::string>& neutral_phrase_bank(EngagementKind kind) { return phrase_banks().neutral.at(kind); }

std::vector<Violation> SynthConfig::validate() const {
    std::vector<Violation> out;
    auto probability = [&](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0)) out.push_back({name, "in [0,1]"});
    };
    if (n_students < 1) out.push_back({"n_students", ">= 1"});
    if (n_weeks < kMinWeek || n_weeks > kMaxWeek) out.push_back({"n_weeks", "in [1,16]"});
    probability(cross_modal_coupling, "cross_modal_coupling");
    probability(temporal_trend, "temporal_trend");
    probability(week1_missing_rate, "week1_missing_rate");
    probability(later_missing_rate, "later_missing_rate");
    probability(dropout_participant_rate, "dropout_participant_rate");
    if (dropout_min_weeks < 1 || dropout_min_weeks > n_weeks) out.push_back({"dropout_min_weeks", "in [1,n_weeks]"});
    for (std::size_t i = 0; i < schedule.size(); ++i) {
        const auto& s = schedule[i];
        if (s.week < 1 || s.week > n_weeks) out.push_back({"schedule[" + std::to_string(i) + "].week", "in [1,n_weeks]"});
        if (!(s.max > 0.0)) out.push_back({"schedule[" + std::to_string(i) + "].max", "> 0"});
    }
    return out;
}

Cohort generate_cohort(const SynthConfig& config) {
    if (auto v = config.validate(); !v.empty()) {
        throw ValidationError("synth config", std::move(v));
    }
    const std::size_t total = std::accumulate(config.target_label_distribution.begin(),
                                              config.target_label_distribution.end(), std::size_t{0});
    if (total != static_cast<std::size_t>(config.n_students)) {
        throw InfeasibleDistribution("target label counts sum to " + std::to_string(total) + ", expected " +
                                     std::to_string(config.n_students));
    }
    const std::size_t n = static_cast<std::size_t>(config.n_students);

    std::vector<PerformanceCategory> labels;
    for (auto c : kAllCategories) {
        labels.insert(labels.end(), config.target_label_distribution[category_index(c)], c);
    }
    Rng label_rng(derive_seed(config.master_seed, "labels"));
    label_rng.shuffle(labels);

    std::vector<bool> drops_out(n, false);
    {
        const auto n_drop = std::min(
            n, static_cast<std::size_t>(std::ceil(config.dropout_participant_rate * static_cast<double>(n) - 1e-9)));
        Rng drop_rng(derive_seed(config.master_seed, "dropout"));
        const auto order = drop_rng.permutation(n);
        for (std::size_t i = 0; i < n_drop; ++i) drops_out[order[i]] = true;
    }

    const std::size_t id_width = std::max<std::size_t>(3, std::to_string(n).size());
    const double tau = config.temporal_trend;
    const double rho = config.cross_modal_coupling;

    Cohort cohort;
    cohort.course_name = config.course_name;
    cohort.n_weeks = config.n_weeks;
    cohort.records.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(derive_seed(config.master_seed, "student", static_cast<std::uint64_t>(i)));
        const PerformanceCategory label = labels[i];
        const auto [lo, hi] = kAbilityBands[category_index(label)];
        const double ability = rng.uniform(lo, hi);
        const double direction = trend_direction(ability);

        StudentRecord rec;
        std::string number = std::to_string(i + 1);
        rec.student_id = "S" + std::string(id_width - number.size(), '0') + number;
        rec.final_grade = pick(grades_by_category()[category_index(label)], rng);
        rec.background = draw_background(ability, rng);

        std::map<AssessmentKind, int> next_index;
        for (const auto& item : config.schedule) {
            AssessmentScore s;
            s.kind = item.kind;
            s.index = ++next_index[item.kind];
            s.week = item.week;
            s.max = item.max;
            const double fraction = std::clamp(
                ability + tau * kScoreTrendScale * direction * score_ramp(item.week) + rng.normal(0.0, kScoreNoise),
                0.0, 1.0);
            s.earned = std::round(fraction * kScoreSteps) * item.max / kScoreSteps;
            rec.cognitive.push_back(s);
        }
        std::stable_sort(rec.cognitive.begin(), rec.cognitive.end(),
                         [](const AssessmentScore& a, const AssessmentScore& b) { return a.week < b.week; });

        int window_start = 0;
        int window_end = -1;
        if (drops_out[i]) {
            const int len = std::min(config.n_weeks, rng.uniform_int(config.dropout_min_weeks,
                                                                     config.dropout_min_weeks + 2));
            window_start = rng.uniform_int(1, config.n_weeks - len + 1);
            window_end = window_start + len - 1;
        }

        for (int week = 1; week <= config.n_weeks; ++week) {
            for (std::size_t d = 0; d < kCollectionDays.size(); ++d) {
                const double time = week + static_cast<double>(d) / 3.0;
                const double drifted = ability + tau * kAnswerTrendScale * direction * answer_ramp(time);
                for (auto kind : kEngagementKinds) {
                    NonCogResponse r;
                    r.week = week;
                    r.day = kCollectionDays[d];
                    r.engagement_kind = kind;
                    const bool coupled = rng.bernoulli(rho);
                    const auto& bank = coupled ? phrase_bank(kind, tercile_of(drifted), phase_of_week(week))
                                               : neutral_phrase_bank(kind);
                    std::string answer = pick(bank, rng);
                    const double missing_rate = week == 1 ? config.week1_missing_rate : config.later_missing_rate;
                    const bool missing = rng.bernoulli(missing_rate);
                    if (week >= window_start && week <= window_end) continue;
                    if (!missing) r.answer = std::move(answer);
                    rec.noncognitive.push_back(std::move(r));
                }
            }
        }
        cohort.records.push_back(std::move(rec));
    }
    return cohort;
}

}  // namespace seqenrich
