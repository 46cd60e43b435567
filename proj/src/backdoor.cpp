#include "cavs/backdoor.hpp"

#include <algorithm>
#include <functional>

#include "cavs/errors.hpp"

namespace cavs {

namespace {

bool all_paths_blocked(const std::vector<Path>& paths, const std::vector<NodeId>& z,
                       const MixedGraph& descendant_graph) {
    for (const Path& p : paths)
        if (!path_blocked(p, z, descendant_graph)) return false;
    return true;
}

}  // namespace

bool satisfies_backdoor(const MixedGraph& g, NodeId x, NodeId y,
                        const std::vector<NodeId>& z, const BackdoorOptions& opts) {
    g.check_node(x);
    g.check_node(y);
    if (x == y) throw ValidationError("back-door check requires x != y");
    if (!g.is_dag()) throw ValidationError("back-door criterion is defined on DAGs");
    for (NodeId zv : z) {
        g.check_node(zv);
        if (zv == x || zv == y)
            throw ValidationError("adjustment set contains '" + g.name(zv) + "'");
    }

    // Condition (i): no descendant of x in z.
    std::vector<NodeId> des_x = descendants(g, x);
    for (NodeId zv : z)
        if (std::binary_search(des_x.begin(), des_x.end(), zv)) return false;

    // Condition (ii): d-separation in the graph without edges out of x.
    MixedGraph surgered = remove_outgoing(g, x);
    const MixedGraph& desc_graph = opts.collider_descendants_in_original ? g : surgered;
    std::vector<Path> paths = enumerate_paths(surgered, x, y, opts.max_paths);
    return all_paths_blocked(paths, z, desc_graph);
}

std::vector<CandidateSet> enumerate_minimal_backdoor_sets(const MixedGraph& g, NodeId x,
                                                          NodeId y,
                                                          const BackdoorOptions& opts) {
    g.check_node(x);
    g.check_node(y);
    if (x == y) throw ValidationError("back-door enumeration requires x != y");
    if (!g.is_dag()) throw ValidationError("back-door enumeration is defined on DAGs");

    MixedGraph pruned = prune_to_ancestors(g, x, y);
    MixedGraph surgered = remove_outgoing(pruned, x);
    const MixedGraph& desc_graph =
        opts.collider_descendants_in_original ? g : surgered;
    std::vector<Path> paths = enumerate_paths(surgered, x, y, opts.max_paths);

    // Already separated (or no paths at all): the empty set is the unique
    // minimal back-door set.
    if (all_paths_blocked(paths, {}, desc_graph)) return {CandidateSet{}};

    // Candidate pool: interior path nodes, minus descendants of x in the
    // original graph (condition (i) of the criterion).
    std::vector<NodeId> des_x = descendants(g, x);
    std::vector<bool> in_pool(static_cast<std::size_t>(g.node_count()), false);
    for (const Path& p : paths)
        for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i)
            in_pool[static_cast<std::size_t>(p.nodes[i])] = true;
    for (NodeId d : des_x) in_pool[static_cast<std::size_t>(d)] = false;
    std::vector<NodeId> pool;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (in_pool[static_cast<std::size_t>(v)]) pool.push_back(v);

    if (static_cast<int>(pool.size()) > opts.max_pool)
        throw PoolLimitError("candidate pool has " + std::to_string(pool.size()) +
                             " nodes, above the subset-scan bound of " +
                             std::to_string(opts.max_pool));

    std::vector<CandidateSet> kept;
    const int pool_size = static_cast<int>(pool.size());

    auto is_superset_of_kept = [&](const std::vector<NodeId>& members) {
        for (const CandidateSet& k : kept)
            if (std::includes(members.begin(), members.end(), k.members.begin(),
                              k.members.end()))
                return true;
        return false;
    };

    // Ascending cardinality with superset pruning keeps exactly the minimal
    // blocking sets, in (cardinality, lexicographic) order. A partial pick
    // that already contains a kept set can be skipped outright: every
    // completion stays a superset.
    std::vector<NodeId> members;
    std::function<void(int, int)> scan = [&](int start, int remaining) {
        if (remaining == 0) {
            if (all_paths_blocked(paths, members, desc_graph))
                kept.push_back(CandidateSet{members, true, std::nullopt});
            return;
        }
        for (int i = start; i <= pool_size - remaining; ++i) {
            members.push_back(pool[static_cast<std::size_t>(i)]);
            if (!is_superset_of_kept(members)) scan(i + 1, remaining - 1);
            members.pop_back();
        }
    };
    for (int k = 1; k <= pool_size; ++k) scan(0, k);

    return kept;
}

}  // namespace cavs
