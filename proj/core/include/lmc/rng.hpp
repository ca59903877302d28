#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace lmc {

/// Deterministic random source. Wraps mt19937_64 but implements its own
/// bounded-integer, uniform-real, normal and gamma sampling: the std::*
/// distributions are implementation-defined and would break cross-platform
/// reproducibility of seeded experiments.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t uniform_below(std::uint64_t bound);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01();

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi);

    /// Standard normal via Box-Muller (pairs cached).
    double normal();

    /// Gamma(alpha, 1) via Marsaglia-Tsang, boosted for alpha < 1.
    double gamma(double alpha);

    /// Dirichlet(concentration * 1_k) over k components.
    std::vector<double> dirichlet(double concentration, std::size_t k);

    /// In-place Fisher-Yates shuffle with this source's bounded draws.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        if (v.size() < 2) return;
        for (std::size_t i = v.size() - 1; i > 0; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_below(i + 1));
            std::swap(v[i], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// 64-bit FNV-1a. Used for architecture ids and seed derivation.
std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a64(const std::string& s);

}  // namespace lmc
