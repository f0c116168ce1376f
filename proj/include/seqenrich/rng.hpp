#pragma once
// Seeded random streams with platform-independent output.
//
// std:: distributions are implementation-defined, so every draw here goes
// through our own mapping from the mt19937_64 engine (whose output sequence the
// standard does pin down).

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace seqenrich {

std::uint64_t splitmix64(std::uint64_t x) noexcept;
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

/// Mixes a key path into a seed. Used to derive independent substreams, e.g.
/// derive_seed(master, "ablation", student_id).
class SeedKey {
public:
    explicit SeedKey(std::uint64_t seed) noexcept : state_(splitmix64(seed)) {}

    SeedKey& add(std::uint64_t part) noexcept {
        state_ = splitmix64(state_ ^ splitmix64(part + 0x632be59bd9b4e019ULL));
        return *this;
    }
    SeedKey& add(std::string_view part) noexcept { return add(fnv1a64(part)); }

    std::uint64_t value() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

template <typename... Parts>
std::uint64_t derive_seed(std::uint64_t seed, const Parts&... parts) noexcept {
    SeedKey key(seed);
    (key.add(parts), ...);
    return key.value();
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, bound). bound must be > 0. Rejection sampling keeps it
    /// exactly uniform.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Uniform in [lo, hi] inclusive.
    int uniform_int(int lo, int hi);

    /// Uniform in [0, 1) with 53 random bits.
    double uniform01();

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Box-Muller; one fresh pair of draws per call.
    double normal(double mean, double sd);

    /// Fisher-Yates, walking from the back.
    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    template <typename T>
    void shuffle(std::vector<T>& items) {
        shuffle(std::span<T>(items));
    }

    /// A uniformly random permutation of 0..n-1 (a shuffled identity).
    std::vector<std::size_t> permutation(std::size_t n);

private:
    std::mt19937_64 engine_;
};

}  // namespace seqenrich
