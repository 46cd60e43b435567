#ifndef CAVS_INTERVENTION_HPP
#define CAVS_INTERVENTION_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cavs/dataset.hpp"

namespace cavs {

struct ConditionalEstimate {
    std::vector<double> probabilities;  // over y's alphabet; zeros when support == 0
    std::int64_t support = 0;           // rows matching the assignment
};

/// Relative frequencies of y among rows matching the assignment
/// (column -> category index). Zero support yields a zero vector; the caller
/// decides what that means.
ConditionalEstimate estimate_conditional(const Dataset& d, int y,
                                         const std::map<int, int>& given);

struct InterventionOptions {
    enum class ZeroSupport { marginal_fallback, error };
    // What to do when a (x_j, z) stratum has positive weight but no samples:
    // substitute P(Y | X = x_j) and record the event, or fail.
    ZeroSupport zero_support = ZeroSupport::marginal_fallback;
    // Additive smoothing for the stratum conditionals; 0 keeps raw
    // frequencies. With alpha > 0 empty strata become uniform instead of
    // triggering the fallback.
    double laplace_alpha = 0.0;
    // Strata with fewer matching rows than this are listed as sparse.
    std::int64_t sparse_warn_threshold = 5;
};

/// Per-stratum bookkeeping: the joint z category state (aligned with the
/// sorted z columns), its total count and weight, and the per-x-category
/// counts inside it.
struct StratumInfo {
    std::vector<int> z_state;
    std::int64_t count = 0;
    double weight = 0.0;  // count / N
    std::vector<std::int64_t> count_per_x;
};

struct FallbackEvent {
    int x_category;
    std::size_t stratum_index;
};

struct SparseStratumWarning {
    int x_category;
    std::size_t stratum_index;
    std::int64_t count;
};

/// Estimated interventional distributions of y for every category of x,
/// with full stratum diagnostics. The diagnostics enumerate every joint
/// z state of the adjustment set's alphabets, observed or not.
struct InterventionResult {
    std::string x_name, y_name;
    std::vector<std::string> x_alphabet, y_alphabet;
    std::vector<std::string> z_names;                 // sorted by column index
    std::vector<std::vector<double>> per_x;           // [x category][y category]
    std::vector<StratumInfo> strata;
    std::vector<FallbackEvent> fallbacks;
    std::vector<SparseStratumWarning> sparse;
};

/// Back-door adjustment: per_x[x_j] = sum over z strata of
/// P(Y | X = x_j, Z = z) * P(Z = z). An empty z degenerates to the plain
/// conditional. Fails when a category of x never occurs in the data.
InterventionResult do_effect(const Dataset& d, int x, int y,
                             const std::vector<int>& z,
                             const InterventionOptions& opts = {});

/// per_x[x1][y_target] - per_x[x0][y_target].
double average_causal_effect(const InterventionResult& r, int x0, int x1,
                             int y_target);

}  // namespace cavs

#endif
