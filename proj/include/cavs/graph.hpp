#ifndef CAVS_GRAPH_HPP
#define CAVS_GRAPH_HPP

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cavs {

/// Node handle: a dense non-negative index into a graph's node list.
using NodeId = int;

/// A graph with both directed and undirected edges over named nodes.
///
/// Invariants maintained by the mutators:
///  - no self-loops,
///  - a node pair carries at most one edge (directed or undirected),
///  - the directed subgraph is always acyclic.
///
/// A DAG is a MixedGraph with an empty undirected edge set; a partially
/// directed graph (e.g. a CPDAG) uses both sets. Values are cheap to copy
/// and all algorithms in this library treat them as immutable inputs.
class MixedGraph {
public:
    MixedGraph() = default;
    explicit MixedGraph(std::vector<std::string> names);

    NodeId add_node(const std::string& name);
    void add_directed_edge(NodeId tail, NodeId head);
    void add_undirected_edge(NodeId a, NodeId b);
    void remove_directed_edge(NodeId tail, NodeId head);
    void remove_undirected_edge(NodeId a, NodeId b);

    int node_count() const { return static_cast<int>(names_.size()); }
    const std::string& name(NodeId v) const;
    const std::vector<std::string>& names() const { return names_; }
    std::optional<NodeId> find_node(std::string_view name) const;
    /// Like find_node but throws ValidationError when absent.
    NodeId node(std::string_view name) const;

    bool has_directed(NodeId tail, NodeId head) const;
    bool has_undirected(NodeId a, NodeId b) const;
    bool adjacent(NodeId a, NodeId b) const;

    const std::vector<NodeId>& parents(NodeId v) const;
    const std::vector<NodeId>& children(NodeId v) const;
    /// Undirected neighbours only.
    const std::vector<NodeId>& neighbors(NodeId v) const;

    /// Edges in deterministic order (sorted by endpoint indices).
    std::vector<std::pair<NodeId, NodeId>> directed_edges() const;
    /// Unordered pairs reported as (min, max).
    std::vector<std::pair<NodeId, NodeId>> undirected_edges() const;
    std::size_t directed_edge_count() const;
    std::size_t undirected_edge_count() const;

    /// True when the undirected edge set is empty (the directed part is
    /// acyclic by construction).
    bool is_dag() const;

    /// Topological order of the directed subgraph (ties broken by index).
    std::vector<NodeId> topological_order() const;

    bool operator==(const MixedGraph& other) const;

    void check_node(NodeId v) const;

private:
    bool directed_reachable(NodeId from, NodeId to) const;

    std::vector<std::string> names_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<std::vector<NodeId>> parents_;
    std::vector<std::vector<NodeId>> children_;
    std::vector<std::vector<NodeId>> neighbors_;
};

enum class RelativeKind { parents, children, ancestors, descendants, adjacent };

/// Relative sets over directed edges only; `adjacent` additionally includes
/// undirected neighbours. Ancestors/descendants never contain v itself.
/// Results are sorted by node index.
std::vector<NodeId> relatives(const MixedGraph& g, NodeId v, RelativeKind kind);

std::vector<NodeId> ancestors(const MixedGraph& g, NodeId v);
std::vector<NodeId> descendants(const MixedGraph& g, NodeId v);

/// Copy of g with every edge incident to a node outside
/// {x, y} ∪ anc(x) ∪ anc(y) removed. The node set is unchanged.
MixedGraph prune_to_ancestors(const MixedGraph& g, NodeId x, NodeId y);

/// Copy of g with every directed edge whose tail is x deleted.
MixedGraph remove_outgoing(const MixedGraph& g, NodeId x);

/// A simple path between two nodes, ignoring edge direction, together with
/// the collider classification of each position. Endpoints are never
/// colliders; an interior node is a collider iff both incident path edges
/// point into it.
struct Path {
    std::vector<NodeId> nodes;
    std::vector<bool> is_collider;  // aligned with nodes; endpoints false
};

inline constexpr long kDefaultPathCap = 100000;

/// All simple paths between x and y irrespective of edge direction, in
/// lexicographic order of the node-index sequence. Throws
/// EnumerationLimitError when more than `cap` paths exist.
std::vector<Path> enumerate_paths(const MixedGraph& g, NodeId x, NodeId y,
                                  long cap = kDefaultPathCap);

/// Pearl's blocking test for one path. Descendants used in the collider rule
/// are taken from `g`, which must be the graph the path was enumerated in.
bool path_blocked(const Path& p, const std::vector<NodeId>& z, const MixedGraph& g);

/// True iff every path between x and y in g is blocked by z.
bool d_separated(const MixedGraph& g, NodeId x, NodeId y,
                 const std::vector<NodeId>& z, long path_cap = kDefaultPathCap);

}  // namespace cavs

#endif
