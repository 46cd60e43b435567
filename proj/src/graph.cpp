#include "cavs/graph.hpp"

#include <algorithm>
#include <functional>

#include "cavs/errors.hpp"

namespace cavs {

namespace {

bool sorted_contains(const std::vector<NodeId>& v, NodeId x) {
    return std::binary_search(v.begin(), v.end(), x);
}

void sorted_insert(std::vector<NodeId>& v, NodeId x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
}

void sorted_erase(std::vector<NodeId>& v, NodeId x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) v.erase(it);
}

}  // namespace

MixedGraph::MixedGraph(std::vector<std::string> names) {
    for (auto& n : names) add_node(n);
}

NodeId MixedGraph::add_node(const std::string& name) {
    if (name.empty()) throw ValidationError("node name must be non-empty");
    if (index_.count(name))
        throw ValidationError("duplicate node name '" + name + "'");
    NodeId id = static_cast<NodeId>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    parents_.emplace_back();
    children_.emplace_back();
    neighbors_.emplace_back();
    return id;
}

void MixedGraph::check_node(NodeId v) const {
    if (v < 0 || v >= node_count())
        throw ValidationError("unknown variable id " + std::to_string(v));
}

const std::string& MixedGraph::name(NodeId v) const {
    check_node(v);
    return names_[static_cast<std::size_t>(v)];
}

std::optional<NodeId> MixedGraph::find_node(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

NodeId MixedGraph::node(std::string_view name) const {
    auto id = find_node(name);
    if (!id) throw ValidationError("unknown variable '" + std::string(name) + "'");
    return *id;
}

bool MixedGraph::directed_reachable(NodeId from, NodeId to) const {
    if (from == to) return true;
    std::vector<bool> seen(static_cast<std::size_t>(node_count()), false);
    std::vector<NodeId> stack{from};
    seen[static_cast<std::size_t>(from)] = true;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId c : children_[static_cast<std::size_t>(v)]) {
            if (c == to) return true;
            if (!seen[static_cast<std::size_t>(c)]) {
                seen[static_cast<std::size_t>(c)] = true;
                stack.push_back(c);
            }
        }
    }
    return false;
}

void MixedGraph::add_directed_edge(NodeId tail, NodeId head) {
    check_node(tail);
    check_node(head);
    if (tail == head)
        throw ValidationError("self-loop on '" + name(tail) + "'");
    if (adjacent(tail, head))
        throw ValidationError("duplicate edge between '" + name(tail) + "' and '" +
                              name(head) + "'");
    if (directed_reachable(head, tail))
        throw ValidationError("edge " + name(tail) + " -> " + name(head) +
                              " would create a directed cycle");
    sorted_insert(children_[static_cast<std::size_t>(tail)], head);
    sorted_insert(parents_[static_cast<std::size_t>(head)], tail);
}

void MixedGraph::add_undirected_edge(NodeId a, NodeId b) {
    check_node(a);
    check_node(b);
    if (a == b) throw ValidationError("self-loop on '" + name(a) + "'");
    if (adjacent(a, b))
        throw ValidationError("duplicate edge between '" + name(a) + "' and '" +
                              name(b) + "'");
    sorted_insert(neighbors_[static_cast<std::size_t>(a)], b);
    sorted_insert(neighbors_[static_cast<std::size_t>(b)], a);
}

void MixedGraph::remove_directed_edge(NodeId tail, NodeId head) {
    check_node(tail);
    check_node(head);
    if (!has_directed(tail, head))
        throw ValidationError("no directed edge " + name(tail) + " -> " + name(head));
    sorted_erase(children_[static_cast<std::size_t>(tail)], head);
    sorted_erase(parents_[static_cast<std::size_t>(head)], tail);
}

void MixedGraph::remove_undirected_edge(NodeId a, NodeId b) {
    check_node(a);
    check_node(b);
    if (!has_undirected(a, b))
        throw ValidationError("no undirected edge " + name(a) + " -- " + name(b));
    sorted_erase(neighbors_[static_cast<std::size_t>(a)], b);
    sorted_erase(neighbors_[static_cast<std::size_t>(b)], a);
}

bool MixedGraph::has_directed(NodeId tail, NodeId head) const {
    check_node(tail);
    check_node(head);
    return sorted_contains(children_[static_cast<std::size_t>(tail)], head);
}

bool MixedGraph::has_undirected(NodeId a, NodeId b) const {
    check_node(a);
    check_node(b);
    return sorted_contains(neighbors_[static_cast<std::size_t>(a)], b);
}

bool MixedGraph::adjacent(NodeId a, NodeId b) const {
    return has_directed(a, b) || has_directed(b, a) || has_undirected(a, b);
}

const std::vector<NodeId>& MixedGraph::parents(NodeId v) const {
    check_node(v);
    return parents_[static_cast<std::size_t>(v)];
}

const std::vector<NodeId>& MixedGraph::children(NodeId v) const {
    check_node(v);
    return children_[static_cast<std::size_t>(v)];
}

const std::vector<NodeId>& MixedGraph::neighbors(NodeId v) const {
    check_node(v);
    return neighbors_[static_cast<std::size_t>(v)];
}

std::vector<std::pair<NodeId, NodeId>> MixedGraph::directed_edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId v = 0; v < node_count(); ++v)
        for (NodeId c : children_[static_cast<std::size_t>(v)]) out.emplace_back(v, c);
    return out;
}

std::vector<std::pair<NodeId, NodeId>> MixedGraph::undirected_edges() const {
    std::vector<std::pair<NodeId, NodeId>> out;
    for (NodeId v = 0; v < node_count(); ++v)
        for (NodeId u : neighbors_[static_cast<std::size_t>(v)])
            if (v < u) out.emplace_back(v, u);
    return out;
}

std::size_t MixedGraph::directed_edge_count() const {
    std::size_t n = 0;
    for (const auto& c : children_) n += c.size();
    return n;
}

std::size_t MixedGraph::undirected_edge_count() const {
    std::size_t n = 0;
    for (const auto& c : neighbors_) n += c.size();
    return n / 2;
}

bool MixedGraph::is_dag() const { return undirected_edge_count() == 0; }

std::vector<NodeId> MixedGraph::topological_order() const {
    std::vector<int> indegree(static_cast<std::size_t>(node_count()), 0);
    for (NodeId v = 0; v < node_count(); ++v)
        indegree[static_cast<std::size_t>(v)] =
            static_cast<int>(parents_[static_cast<std::size_t>(v)].size());
    std::vector<NodeId> ready;
    for (NodeId v = 0; v < node_count(); ++v)
        if (indegree[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
    std::vector<NodeId> order;
    order.reserve(static_cast<std::size_t>(node_count()));
    // ready is kept sorted; smallest index first for a deterministic order.
    while (!ready.empty()) {
        NodeId v = ready.front();
        ready.erase(ready.begin());
        order.push_back(v);
        for (NodeId c : children_[static_cast<std::size_t>(v)])
            if (--indegree[static_cast<std::size_t>(c)] == 0) sorted_insert(ready, c);
    }
    return order;
}

bool MixedGraph::operator==(const MixedGraph& other) const {
    return names_ == other.names_ && parents_ == other.parents_ &&
           neighbors_ == other.neighbors_;
}

namespace {

std::vector<NodeId> closure(const MixedGraph& g, NodeId v, bool up) {
    std::vector<bool> seen(static_cast<std::size_t>(g.node_count()), false);
    std::vector<NodeId> stack{v};
    std::vector<NodeId> out;
    while (!stack.empty()) {
        NodeId cur = stack.back();
        stack.pop_back();
        const auto& next = up ? g.parents(cur) : g.children(cur);
        for (NodeId n : next) {
            if (!seen[static_cast<std::size_t>(n)]) {
                seen[static_cast<std::size_t>(n)] = true;
                out.push_back(n);
                stack.push_back(n);
            }
        }
    }
    // v itself is excluded unless rediscovered through a cycle, which the
    // acyclicity invariant rules out.
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<NodeId> ancestors(const MixedGraph& g, NodeId v) {
    g.check_node(v);
    return closure(g, v, true);
}

std::vector<NodeId> descendants(const MixedGraph& g, NodeId v) {
    g.check_node(v);
    return closure(g, v, false);
}

std::vector<NodeId> relatives(const MixedGraph& g, NodeId v, RelativeKind kind) {
    g.check_node(v);
    switch (kind) {
        case RelativeKind::parents:
            return g.parents(v);
        case RelativeKind::children:
            return g.children(v);
        case RelativeKind::ancestors:
            return ancestors(g, v);
        case RelativeKind::descendants:
            return descendants(g, v);
        case RelativeKind::adjacent: {
            std::vector<NodeId> out = g.parents(v);
            for (NodeId c : g.children(v)) out.push_back(c);
            for (NodeId n : g.neighbors(v)) out.push_back(n);
            std::sort(out.begin(), out.end());
            return out;
        }
    }
    throw ValidationError("unknown relative kind");
}

MixedGraph prune_to_ancestors(const MixedGraph& g, NodeId x, NodeId y) {
    g.check_node(x);
    g.check_node(y);
    if (x == y) throw ValidationError("prune_to_ancestors requires x != y");
    std::vector<bool> keep(static_cast<std::size_t>(g.node_count()), false);
    keep[static_cast<std::size_t>(x)] = true;
    keep[static_cast<std::size_t>(y)] = true;
    for (NodeId a : ancestors(g, x)) keep[static_cast<std::size_t>(a)] = true;
    for (NodeId a : ancestors(g, y)) keep[static_cast<std::size_t>(a)] = true;

    MixedGraph out(g.names());
    for (auto [tail, head] : g.directed_edges())
        if (keep[static_cast<std::size_t>(tail)] && keep[static_cast<std::size_t>(head)])
            out.add_directed_edge(tail, head);
    for (auto [a, b] : g.undirected_edges())
        if (keep[static_cast<std::size_t>(a)] && keep[static_cast<std::size_t>(b)])
            out.add_undirected_edge(a, b);
    return out;
}

MixedGraph remove_outgoing(const MixedGraph& g, NodeId x) {
    g.check_node(x);
    MixedGraph out(g.names());
    for (auto [tail, head] : g.directed_edges())
        if (tail != x) out.add_directed_edge(tail, head);
    for (auto [a, b] : g.undirected_edges()) out.add_undirected_edge(a, b);
    return out;
}

namespace {

void require_dag(const MixedGraph& g, const char* op) {
    if (!g.is_dag())
        throw ValidationError(std::string(op) + " requires a fully directed graph");
}

}  // namespace

std::vector<Path> enumerate_paths(const MixedGraph& g, NodeId x, NodeId y, long cap) {
    g.check_node(x);
    g.check_node(y);
    if (x == y) throw ValidationError("path enumeration requires x != y");
    if (cap <= 0) throw ValidationError("path cap must be positive");
    require_dag(g, "enumerate_paths");

    std::vector<Path> paths;
    std::vector<NodeId> current{x};
    std::vector<bool> on_path(static_cast<std::size_t>(g.node_count()), false);
    on_path[static_cast<std::size_t>(x)] = true;

    // Skeleton adjacency in increasing index order gives lexicographic output.
    std::function<void(NodeId)> dfs = [&](NodeId v) {
        std::vector<NodeId> next = relatives(g, v, RelativeKind::adjacent);
        for (NodeId n : next) {
            if (n == y) {
                current.push_back(y);
                if (static_cast<long>(paths.size()) >= cap)
                    throw EnumerationLimitError(
                        "path enumeration exceeded the cap of " + std::to_string(cap) +
                        " paths between '" + g.name(x) + "' and '" + g.name(y) + "'");
                Path p;
                p.nodes = current;
                p.is_collider.assign(current.size(), false);
                for (std::size_t i = 1; i + 1 < current.size(); ++i) {
                    NodeId prev = current[i - 1], mid = current[i], nxt = current[i + 1];
                    p.is_collider[i] = g.has_directed(prev, mid) && g.has_directed(nxt, mid);
                }
                paths.push_back(std::move(p));
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

bool path_blocked(const Path& p, const std::vector<NodeId>& z, const MixedGraph& g) {
    if (p.nodes.size() < 2) throw ValidationError("path must have at least two nodes");
    for (NodeId zv : z) {
        g.check_node(zv);
        if (zv == p.nodes.front() || zv == p.nodes.back())
            throw ValidationError("conditioning set contains path endpoint '" +
                                  g.name(zv) + "'");
    }
    std::vector<bool> in_z(static_cast<std::size_t>(g.node_count()), false);
    for (NodeId zv : z) in_z[static_cast<std::size_t>(zv)] = true;

    for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
        NodeId v = p.nodes[i];
        if (!p.is_collider[i]) {
            if (in_z[static_cast<std::size_t>(v)]) return true;
        } else {
            if (in_z[static_cast<std::size_t>(v)]) continue;
            bool opened = false;
            for (NodeId d : descendants(g, v)) {
                if (in_z[static_cast<std::size_t>(d)]) {
                    opened = true;
                    break;
                }
            }
            if (!opened) return true;
        }
    }
    return false;
}

bool d_separated(const MixedGraph& g, NodeId x, NodeId y,
                 const std::vector<NodeId>& z, long path_cap) {
    g.check_node(x);
    g.check_node(y);
    require_dag(g, "d_separated");
    for (NodeId zv : z) {
        g.check_node(zv);
        if (zv == x || zv == y)
            throw ValidationError("conditioning set contains '" + g.name(zv) + "'");
    }
    for (const Path& p : enumerate_paths(g, x, y, path_cap))
        if (!path_blocked(p, z, g)) return false;
    return true;
}

}  // namespace cavs
