#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace sfv {

/// Deterministic seeded random stream. All draws go through uniform_below,
/// which is implemented here (not via std::uniform_int_distribution) so that
/// identical seeds produce identical output on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform value in [0, n). Rejection sampling, bias-free.
    std::uint64_t uniform_below(std::uint64_t n);

    /// Independent stream for one purpose. Streams are derived by hashing
    /// (seed, label), so adding a consumer never perturbs existing ones.
    Rng derive(std::string_view label) const;

    /// Stream for trial `index` of a labeled family. Stateless in the parent,
    /// so trials may run in any order or in parallel.
    Rng derive(std::string_view label, std::uint64_t index) const;

    std::uint64_t seed() const { return seed_; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[uniform_below(i)]);
        }
    }

  private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

}  // namespace sfv
