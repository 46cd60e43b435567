#ifndef CAVS_CPDAG_HPP
#define CAVS_CPDAG_HPP

#include <optional>
#include <utility>
#include <vector>

#include "cavs/dataset.hpp"
#include "cavs/graph.hpp"
#include "cavs/select.hpp"

namespace cavs {

/// A direction picked for each undirected edge incident to the intervention
/// variable: (tail, head) pairs. Must cover exactly those edges.
struct OrientationChoice {
    std::vector<std::pair<NodeId, NodeId>> edges;
};

/// DAGs sharing skeleton and v-structures with a source CPDAG.
struct EquivalenceClass {
    std::vector<MixedGraph> members;
};

struct CpdagOptions {
    long max_paths = kDefaultPathCap;
    long class_cap = 10000;
};

/// If some possibly directed path from x to y starts with an undirected edge
/// at x, returns one such path; otherwise std::nullopt.
std::optional<std::vector<NodeId>> find_non_amenable_path(const MixedGraph& g,
                                                          NodeId x, NodeId y);

/// Adjustment amenability: every possibly directed path from x to y starts
/// with a directed edge out of x. Trivially true on DAGs.
bool is_amenable(const MixedGraph& g, NodeId x, NodeId y);

/// Generalized adjustment criterion on a CPDAG (or DAG): amenability, no
/// z member among possible descendants of nodes on possibly causal x-y
/// paths, and every definite-status non-causal path blocked by z.
bool satisfies_gac(const MixedGraph& g, NodeId x, NodeId y,
                   const std::vector<NodeId>& z, const CpdagOptions& opts = {});

/// All DAG extensions of g preserving its skeleton and v-structures, in a
/// deterministic order (undirected edges processed in sorted order, the
/// low-index-to-high-index orientation explored first).
EquivalenceClass enumerate_equivalence_class(const MixedGraph& g,
                                             long cap = CpdagOptions{}.class_cap);

/// Applies the chosen directions to the undirected edges at x, propagates
/// forced orientations, and returns the restricted class of DAG extensions.
/// An inconsistent choice (directed cycle or new v-structure in every
/// completion) raises OrientationInconsistencyError.
EquivalenceClass orient_and_restrict(const MixedGraph& g, NodeId x,
                                     const OrientationChoice& choice,
                                     long cap = CpdagOptions{}.class_cap);

/// Selection on a CPDAG, as returned by cavs_on_cpdag: the member DAG the
/// selection actually ran on and the size of the (restricted) class.
struct CpdagSelectionReport {
    SelectionReport report;
    MixedGraph member_used;
    std::size_t class_size = 0;
};

/// Runs adjustment-variable selection on a CPDAG. When undirected edges
/// touch x an OrientationChoice is mandatory; the class is restricted
/// accordingly and the lexicographically first member DAG is used.
CpdagSelectionReport cavs_on_cpdag(const MixedGraph& g, NodeId x, NodeId y,
                                   const Dataset& d,
                                   const std::optional<OrientationChoice>& choice,
                                   MiUnit unit = MiUnit::nats,
                                   const CpdagOptions& opts = {});

/// The completed partially directed graph of a DAG: skeleton plus
/// v-structures, closed under the orientation propagation rules.
MixedGraph cpdag_of(const MixedGraph& dag);

}  // namespace cavs

#endif
