#include "cavs/cpdag.hpp"

#include <algorithm>
#include <functional>

#include "cavs/backdoor.hpp"
#include "cavs/errors.hpp"

namespace cavs {

namespace {

// u -> v is a possibly directed step when the edge is directed that way or
// undirected.
bool possibly_directed_step(const MixedGraph& g, NodeId u, NodeId v) {
    return g.has_directed(u, v) || g.has_undirected(u, v);
}

bool directed_reachable(const MixedGraph& g, NodeId from, NodeId to) {
    if (from == to) return true;
    std::vector<NodeId> des = descendants(g, from);
    return std::binary_search(des.begin(), des.end(), to);
}

// Nodes reachable from `from` by possibly directed steps, excluding `skip`;
// parent links allow path reconstruction. `from` itself is included.
std::vector<NodeId> possibly_directed_tree(const MixedGraph& g, NodeId from,
                                           NodeId skip,
                                           std::vector<NodeId>* parent_out) {
    std::vector<NodeId> parent(static_cast<std::size_t>(g.node_count()), -1);
    std::vector<bool> seen(static_cast<std::size_t>(g.node_count()), false);
    std::vector<NodeId> order;
    seen[static_cast<std::size_t>(from)] = true;
    std::vector<NodeId> stack{from};
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        order.push_back(v);
        std::vector<NodeId> next = g.children(v);
        for (NodeId n : g.neighbors(v)) next.push_back(n);
        std::sort(next.begin(), next.end());
        for (NodeId n : next) {
            if (n == skip || seen[static_cast<std::size_t>(n)]) continue;
            seen[static_cast<std::size_t>(n)] = true;
            parent[static_cast<std::size_t>(n)] = v;
            stack.push_back(n);
        }
    }
    if (parent_out) *parent_out = parent;
    return order;
}

// All simple paths between x and y over the skeleton, as node sequences in
// lexicographic order.
std::vector<std::vector<NodeId>> skeleton_paths(const MixedGraph& g, NodeId x,
                                                NodeId y, long cap) {
    std::vector<std::vector<NodeId>> paths;
    std::vector<NodeId> current{x};
    std::vector<bool> on_path(static_cast<std::size_t>(g.node_count()), false);
    on_path[static_cast<std::size_t>(x)] = true;
    std::function<void(NodeId)> dfs = [&](NodeId v) {
        for (NodeId n : relatives(g, v, RelativeKind::adjacent)) {
            if (n == y) {
                if (static_cast<long>(paths.size()) >= cap)
                    throw EnumerationLimitError(
                        "path enumeration exceeded the cap of " + std::to_string(cap) +
                        " paths between '" + g.name(x) + "' and '" + g.name(y) + "'");
                current.push_back(y);
                paths.push_back(current);
                current.pop_back();
            } else if (!on_path[static_cast<std::size_t>(n)]) {
                on_path[static_cast<std::size_t>(n)] = true;
                current.push_back(n);
                dfs(n);
                current.pop_back();
                on_path[static_cast<std::size_t>(n)] = false;
            }
        }
    };
    dfs(x);
    return paths;
}

bool path_possibly_causal(const MixedGraph& g, const std::vector<NodeId>& path) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (g.has_directed(path[i + 1], path[i])) return false;
    return true;
}

enum class NodeStatus { definite_collider, definite_non_collider, indefinite };

NodeStatus interior_status(const MixedGraph& g, NodeId prev, NodeId mid, NodeId next) {
    if (g.has_directed(prev, mid) && g.has_directed(next, mid))
        return NodeStatus::definite_collider;
    if (g.has_directed(mid, prev) || g.has_directed(mid, next))
        return NodeStatus::definite_non_collider;
    if (g.has_undirected(prev, mid) && g.has_undirected(mid, next) &&
        !g.adjacent(prev, next))
        return NodeStatus::definite_non_collider;
    return NodeStatus::indefinite;
}

}  // namespace

std::optional<std::vector<NodeId>> find_non_amenable_path(const MixedGraph& g,
                                                          NodeId x, NodeId y) {
    g.check_node(x);
    g.check_node(y);
    if (x == y) throw ValidationError("amenability check requires x != y");
    for (NodeId v : g.neighbors(x)) {
        if (v == y) return std::vector<NodeId>{x, y};
        std::vector<NodeId> parent;
        std::vector<NodeId> reach = possibly_directed_tree(g, v, x, &parent);
        if (std::find(reach.begin(), reach.end(), y) == reach.end()) continue;
        std::vector<NodeId> path{y};
        for (NodeId cur = y; cur != v;) {
            cur = parent[static_cast<std::size_t>(cur)];
            path.push_back(cur);
        }
        path.push_back(x);
        std::reverse(path.begin(), path.end());
        return path;
    }
    return std::nullopt;
}

bool is_amenable(const MixedGraph& g, NodeId x, NodeId y) {
    return !find_non_amenable_path(g, x, y).has_value();
}

bool satisfies_gac(const MixedGraph& g, NodeId x, NodeId y,
                   const std::vector<NodeId>& z, const CpdagOptions& opts) {
    g.check_node(x);
    g.check_node(y);
    if (x == y) throw ValidationError("criterion check requires x != y");
    std::vector<bool> in_z(static_cast<std::size_t>(g.node_count()), false);
    for (NodeId zv : z) {
        g.check_node(zv);
        if (zv == x || zv == y)
            throw ValidationError("adjustment set contains '" + g.name(zv) + "'");
        in_z[static_cast<std::size_t>(zv)] = true;
    }

    // Condition 1: amenability.
    if (!is_amenable(g, x, y)) return false;

    std::vector<std::vector<NodeId>> paths = skeleton_paths(g, x, y, opts.max_paths);

    // Condition 2: no z member may be a possible descendant of a node other
    // than x on a possibly causal path from x to y.
    std::vector<bool> on_causal(static_cast<std::size_t>(g.node_count()), false);
    for (const auto& p : paths) {
        if (!path_possibly_causal(g, p)) continue;
        for (std::size_t i = 1; i < p.size(); ++i)
            on_causal[static_cast<std::size_t>(p[i])] = true;
    }
    for (NodeId w = 0; w < g.node_count(); ++w) {
        if (!on_causal[static_cast<std::size_t>(w)]) continue;
        for (NodeId pd : possibly_directed_tree(g, w, -1, nullptr))
            if (in_z[static_cast<std::size_t>(pd)]) return false;
    }

    // Condition 3: every definite status non-causal path is blocked.
    for (const auto& p : paths) {
        if (path_possibly_causal(g, p)) continue;
        bool definite = true;
        bool blocked = false;
        for (std::size_t i = 1; i + 1 < p.size() && definite && !blocked; ++i) {
            switch (interior_status(g, p[i - 1], p[i], p[i + 1])) {
                case NodeStatus::indefinite:
                    definite = false;
                    break;
                case NodeStatus::definite_non_collider:
                    if (in_z[static_cast<std::size_t>(p[i])]) blocked = true;
                    break;
                case NodeStatus::definite_collider: {
                    if (in_z[static_cast<std::size_t>(p[i])]) break;
                    bool opened = false;
                    for (NodeId dv : descendants(g, p[i])) {
                        if (in_z[static_cast<std::size_t>(dv)]) {
                            opened = true;
                            break;
                        }
                    }
                    if (!opened) blocked = true;
                    break;
                }
            }
        }
        if (definite && !blocked) return false;
    }
    return true;
}

namespace {

// Orienting tail -> head must not complete a collider absent from the source
// graph: every other directed edge p -> head requires p adjacent to tail.
bool creates_new_collider(const MixedGraph& g, NodeId tail, NodeId head) {
    for (NodeId p : g.parents(head))
        if (p != tail && !g.adjacent(p, tail)) return true;
    return false;
}

// Starting PDAG sanity: every collider that the already-directed edges form
// must be a collider of the source graph.
bool has_foreign_collider(const MixedGraph& pdag, const MixedGraph& source) {
    for (NodeId v = 0; v < pdag.node_count(); ++v) {
        const auto& ps = pdag.parents(v);
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = i + 1; j < ps.size(); ++j) {
                if (pdag.adjacent(ps[i], ps[j])) continue;
                if (!(source.has_directed(ps[i], v) && source.has_directed(ps[j], v)))
                    return true;
            }
    }
    return false;
}

void enumerate_extensions(MixedGraph& work, const MixedGraph& source,
                          const std::vector<std::pair<NodeId, NodeId>>& edges,
                          std::size_t pos, long cap,
                          std::vector<MixedGraph>& out) {
    if (pos == edges.size()) {
        if (static_cast<long>(out.size()) >= cap)
            throw ClassCapError("equivalence class exceeds the cap of " +
                                std::to_string(cap) + " DAGs");
        out.push_back(work);
        return;
    }
    auto [a, b] = edges[pos];
    for (auto [tail, head] : {std::pair{a, b}, std::pair{b, a}}) {
        if (directed_reachable(work, head, tail)) continue;  // would cycle
        if (creates_new_collider(work, tail, head)) continue;
        work.remove_undirected_edge(a, b);
        work.add_directed_edge(tail, head);
        enumerate_extensions(work, source, edges, pos + 1, cap, out);
        work.remove_directed_edge(tail, head);
        work.add_undirected_edge(a, b);
    }
}

EquivalenceClass extensions_of(const MixedGraph& pdag, const MixedGraph& source,
                               long cap) {
    EquivalenceClass cls;
    if (has_foreign_collider(pdag, source)) return cls;
    MixedGraph work = pdag;
    enumerate_extensions(work, source, pdag.undirected_edges(), 0, cap, cls.members);
    return cls;
}

// True when some propagation rule directs the undirected edge u -- v as
// u -> v. Pure query; g is not modified.
bool rule_forces(const MixedGraph& g, NodeId u, NodeId v) {
    // R1: w -> u -- v with w, v non-adjacent.
    for (NodeId w : g.parents(u))
        if (!g.adjacent(w, v)) return true;
    // R2: u -> w -> v with u -- v.
    for (NodeId w : g.children(u))
        if (g.has_directed(w, v)) return true;
    // R3: u -- c, u -- d, c -> v, d -> v, c and d non-adjacent.
    const auto& nb = g.neighbors(u);
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
            if (g.has_directed(nb[i], v) && g.has_directed(nb[j], v) &&
                !g.adjacent(nb[i], nb[j]))
                return true;
    // R4: u -- d, d -> c -> v with d, v non-adjacent.
    for (NodeId d : nb) {
        if (d == v || g.adjacent(d, v)) continue;
        for (NodeId c : g.children(d))
            if (g.has_directed(c, v)) return true;
    }
    return false;
}

// Orientation-propagation closure. Returns false on a contradiction: a rule
// forcing an edge both ways, or a forced orientation closing a cycle.
bool propagation_closure(MixedGraph& g) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [a, b] : g.undirected_edges()) {
            if (!g.has_undirected(a, b)) continue;  // oriented earlier this sweep
            bool ab = rule_forces(g, a, b);
            bool ba = rule_forces(g, b, a);
            if (!ab && !ba) continue;
            if (ab && ba) return false;
            NodeId tail = ab ? a : b;
            NodeId head = ab ? b : a;
            if (directed_reachable(g, head, tail)) return false;
            g.remove_undirected_edge(a, b);
            g.add_directed_edge(tail, head);
            changed = true;
        }
    }
    return true;
}

}  // namespace

EquivalenceClass enumerate_equivalence_class(const MixedGraph& g, long cap) {
    if (cap <= 0) throw ValidationError("class cap must be positive");
    EquivalenceClass cls = extensions_of(g, g, cap);
    if (cls.members.empty())
        throw ValidationError("graph admits no consistent DAG extension");
    return cls;
}

EquivalenceClass orient_and_restrict(const MixedGraph& g, NodeId x,
                                     const OrientationChoice& choice, long cap) {
    g.check_node(x);

    // The choice must cover exactly the undirected edges at x.
    std::vector<std::pair<NodeId, NodeId>> required;
    for (NodeId n : g.neighbors(x)) required.emplace_back(std::min(x, n), std::max(x, n));
    std::sort(required.begin(), required.end());

    std::vector<std::pair<NodeId, NodeId>> given;
    for (auto [tail, head] : choice.edges) {
        g.check_node(tail);
        g.check_node(head);
        if (!g.has_undirected(tail, head))
            throw ValidationError("choice names no undirected edge between '" +
                                  g.name(tail) + "' and '" + g.name(head) + "'");
        if (tail != x && head != x)
            throw ValidationError("choice edge " + g.name(tail) + " -> " + g.name(head) +
                                  " is not incident to '" + g.name(x) + "'");
        given.emplace_back(std::min(tail, head), std::max(tail, head));
    }
    std::sort(given.begin(), given.end());
    if (std::adjacent_find(given.begin(), given.end()) != given.end())
        throw ValidationError("choice orients the same edge twice");
    if (given != required)
        throw ValidationError("choice must cover every undirected edge at '" +
                              g.name(x) + "'");

    MixedGraph oriented = g;
    for (auto [tail, head] : choice.edges) {
        oriented.remove_undirected_edge(tail, head);
        if (directed_reachable(oriented, head, tail))
            throw OrientationInconsistencyError("orienting " + g.name(tail) + " -> " +
                                                g.name(head) +
                                                " creates a directed cycle");
        oriented.add_directed_edge(tail, head);
    }

    if (!propagation_closure(oriented))
        throw OrientationInconsistencyError(
            "orientation choice forces contradictory edge directions");

    EquivalenceClass cls = extensions_of(oriented, g, cap);
    if (cls.members.empty())
        throw OrientationInconsistencyError(
            "orientation choice admits no DAG in the equivalence class");
    return cls;
}

CpdagSelectionReport cavs_on_cpdag(const MixedGraph& g, NodeId x, NodeId y,
                                   const Dataset& d,
                                   const std::optional<OrientationChoice>& choice,
                                   MiUnit unit, const CpdagOptions& opts) {
    g.check_node(x);
    g.check_node(y);
    if (!g.neighbors(x).empty() && !choice.has_value())
        throw AmenabilityError(
            "undirected edges touch the intervention variable '" + g.name(x) +
            "'; the intervention effect is computable once every edge adjacent "
            "to it is directed — provide an orientation choice");

    EquivalenceClass cls = choice.has_value()
                               ? orient_and_restrict(g, x, *choice, opts.class_cap)
                               : enumerate_equivalence_class(g, opts.class_cap);

    CpdagSelectionReport out;
    out.member_used = cls.members.front();
    out.class_size = cls.members.size();
    BackdoorOptions bopts;
    bopts.max_paths = opts.max_paths;
    out.report = select_adjustment(out.member_used, x, y, d, unit, bopts);
    return out;
}

MixedGraph cpdag_of(const MixedGraph& dag) {
    if (!dag.is_dag())
        throw ValidationError("cpdag_of expects a fully directed acyclic graph");

    MixedGraph pattern(dag.names());
    for (auto [a, b] : dag.directed_edges()) pattern.add_undirected_edge(a, b);

    auto orient_if_needed = [&](NodeId tail, NodeId head) {
        if (pattern.has_undirected(tail, head)) {
            pattern.remove_undirected_edge(tail, head);
            pattern.add_directed_edge(tail, head);
        }
    };
    // v-structures keep their directions.
    for (NodeId v = 0; v < dag.node_count(); ++v) {
        const auto& ps = dag.parents(v);
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = i + 1; j < ps.size(); ++j)
                if (!dag.adjacent(ps[i], ps[j])) {
                    orient_if_needed(ps[i], v);
                    orient_if_needed(ps[j], v);
                }
    }
    if (!propagation_closure(pattern))
        throw ValidationError("orientation propagation failed on a DAG pattern");
    return pattern;
}

}  // namespace cavs
