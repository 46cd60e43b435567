#ifndef CAVS_BACKDOOR_HPP
#define CAVS_BACKDOOR_HPP

#include <optional>
#include <vector>

#include "cavs/graph.hpp"

namespace cavs {

/// A variable set satisfying the back-door criterion for some (x, y).
/// `members` is sorted by node index, never contains x, y, or a descendant
/// of x. `mi_score` stays empty until the selection stage fills it.
struct CandidateSet {
    std::vector<NodeId> members;
    bool minimal = true;
    std::optional<double> mi_score;

    bool operator==(const CandidateSet& other) const {
        return members == other.members;
    }
};

struct BackdoorOptions {
    long max_paths = kDefaultPathCap;
    // Subset scan is 2^|pool|; refuse pools larger than this.
    int max_pool = 20;
    // Sensitivity variant: evaluate collider descendants in the original
    // graph instead of the surgered one.
    bool collider_descendants_in_original = false;
};

/// Back-door criterion: (i) no member of z is a descendant of x in g, and
/// (ii) x and y are d-separated by z once edges out of x are removed.
bool satisfies_backdoor(const MixedGraph& g, NodeId x, NodeId y,
                        const std::vector<NodeId>& z,
                        const BackdoorOptions& opts = {});

/// All minimal sets satisfying the back-door criterion for (x, y), ordered
/// by cardinality and then lexicographically by members. When x and y have
/// no open path given the empty set, the result is exactly {∅}.
std::vector<CandidateSet> enumerate_minimal_backdoor_sets(
    const MixedGraph& g, NodeId x, NodeId y, const BackdoorOptions& opts = {});

}  // namespace cavs

#endif
