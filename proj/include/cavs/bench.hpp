#ifndef CAVS_BENCH_HPP
#define CAVS_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cavs/graph.hpp"
#include "cavs/intervention.hpp"
#include "cavs/io.hpp"

namespace cavs {

inline constexpr int kBenchSchemaVersion = 1;

/// Mean over the intervention categories of one minus the cosine similarity
/// between the reference and estimated outcome distributions. Both results
/// must share X and Y alphabets. A zero vector on either side is an error.
double cosine_error(const InterventionResult& reference,
                    const InterventionResult& estimate);

/// Smallest subset of pa(x) that satisfies the back-door criterion, ties
/// broken lexicographically. pa(x) itself always qualifies.
std::vector<NodeId> baseline_minimal_parents(const MixedGraph& g, NodeId x, NodeId y);

struct RandomNetworkParams {
    int nodes = 30;
    int edges = 40;
    int cardinality = 4;
    CptPrior prior = CptPrior::normalized_uniform;
};

/// One experiment: sample a reference dataset per network, pick each
/// method's adjustment set, then measure per-subsample cosine errors
/// against the reference intervention estimates.
struct ExperimentConfig {
    // Network source: a parsed file, or randomly generated networks.
    std::optional<std::string> network_file_text;
    std::optional<RandomNetworkParams> random;
    int n_graphs = 1;     // random source only
    int n_cpt_draws = 1;  // random source only

    std::string x, y;     // empty with a random source = auto-pick per graph

    std::int64_t reference_n = 10000;
    std::int64_t subsample_n = 500;
    int k_subsamples = 5;

    std::vector<std::string> methods{"cavs", "minimal_parents", "parents"};
    std::uint64_t seed = 0;

    // Compute the CAVS mutual-information scores from each subsample instead
    // of the reference dataset.
    bool mi_from_subsample = false;

    void validate() const;
};

struct TrialRecord {
    std::string method;
    std::uint64_t graph_seed = 0;
    std::uint64_t cpt_seed = 0;
    std::uint64_t subsample_seed = 0;
    double error = 0.0;
    bool failed = false;
    std::string failure;
};

struct MethodSummary {
    std::string method;
    int trials = 0;
    double mean = 0.0, min = 0.0, max = 0.0;
    double q25 = 0.0, median = 0.0, q75 = 0.0;
};

struct ErrorReport {
    ExperimentConfig config;
    // One entry per network: the (x, y) pair used and each method's set.
    std::vector<std::string> provenance;
    std::vector<TrialRecord> trials;
    std::vector<MethodSummary> summaries;
};

ErrorReport run_experiment(const ExperimentConfig& cfg);

/// Machine outputs; identical configs give byte-identical text.
std::string report_to_csv(const ErrorReport& report);
std::string report_to_json(const ErrorReport& report);

}  // namespace cavs

#endif
