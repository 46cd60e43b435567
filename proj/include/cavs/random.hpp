#ifndef CAVS_RANDOM_HPP
#define CAVS_RANDOM_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace cavs {

/// splitmix64 step; the usual seed expander.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic sub-seed derivation: fold each path element into the base
/// with a splitmix64 step. Documented contract for re-runnable experiments.
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = base;
    for (std::uint64_t p : path) {
        s ^= p + 0x9e3779b97f4a7c15ULL;
        (void)splitmix64(s);
        s = splitmix64(s);
    }
    return s;
}

/// mt19937_64 with hand-rolled draws. The standard pins the raw engine
/// sequence but not the distributions, so the mappings below are spelled
/// out here and never delegated to <random> distribution objects.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1): top 53 bits scaled.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n): multiply-high mapping.
    std::int64_t next_below(std::int64_t n) {
        return static_cast<std::int64_t>(
            (static_cast<unsigned __int128>(next_u64()) *
             static_cast<unsigned __int128>(n)) >>
            64);
    }

    /// Categorical draw by cumulative walk over `probs` (assumed to sum
    /// to ~1); rounding spill lands on the last category.
    int next_category(const std::vector<double>& probs) {
        double u = next_unit();
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(probs.size()) - 1;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace cavs

#endif
