#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>

namespace oracle {

MixedGraph random_dag(int n, double edge_prob, cavs::Rng& rng) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("N" + std::to_string(i));
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(order[static_cast<std::size_t>(i)],
                  order[static_cast<std::size_t>(rng.next_below(i + 1))]);
    MixedGraph g(names);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.next_unit() < edge_prob)
                g.add_directed_edge(order[static_cast<std::size_t>(i)],
                                    order[static_cast<std::size_t>(j)]);
    return g;
}

std::vector<std::vector<NodeId>> dfs_paths(const MixedGraph& g, NodeId x, NodeId y) {
    std::vector<std::vector<NodeId>> paths;
    std::vector<NodeId> current{x};
    std::vector<bool> used(static_cast<std::size_t>(g.node_count()), false);
    used[static_cast<std::size_t>(x)] = true;
    std::function<void(NodeId)> walk = [&](NodeId v) {
        for (NodeId n = 0; n < g.node_count(); ++n) {
            if (!g.adjacent(v, n)) continue;
            if (n == y) {
                current.push_back(n);
                paths.push_back(current);
                current.pop_back();
            } else if (!used[static_cast<std::size_t>(n)]) {
                used[static_cast<std::size_t>(n)] = true;
                current.push_back(n);
                walk(n);
                current.pop_back();
                used[static_cast<std::size_t>(n)] = false;
            }
        }
    };
    walk(x);
    return paths;
}

namespace {

std::vector<bool> ancestral_set(const MixedGraph& g, const std::vector<NodeId>& seeds) {
    std::vector<bool> in(static_cast<std::size_t>(g.node_count()), false);
    std::vector<NodeId> stack = seeds;
    for (NodeId s : seeds) in[static_cast<std::size_t>(s)] = true;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId p : g.parents(v))
            if (!in[static_cast<std::size_t>(p)]) {
                in[static_cast<std::size_t>(p)] = true;
                stack.push_back(p);
            }
    }
    return in;
}

std::vector<bool> descendant_set(const MixedGraph& g, NodeId v) {
    std::vector<bool> in(static_cast<std::size_t>(g.node_count()), false);
    std::vector<NodeId> stack{v};
    while (!stack.empty()) {
        NodeId cur = stack.back();
        stack.pop_back();
        for (NodeId c : g.children(cur))
            if (!in[static_cast<std::size_t>(c)]) {
                in[static_cast<std::size_t>(c)] = true;
                stack.push_back(c);
            }
    }
    return in;
}

}  // namespace

bool moral_d_separated(const MixedGraph& g, NodeId x, NodeId y,
                       const std::vector<NodeId>& z) {
    std::vector<NodeId> seeds{x, y};
    seeds.insert(seeds.end(), z.begin(), z.end());
    std::vector<bool> keep = ancestral_set(g, seeds);
    const int n = g.node_count();

    // Moral graph over the ancestral set: skeleton plus married co-parents.
    std::vector<std::vector<bool>> adj(static_cast<std::size_t>(n),
                                       std::vector<bool>(static_cast<std::size_t>(n), false));
    auto connect = [&](NodeId a, NodeId b) {
        adj[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
        adj[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = true;
    };
    for (NodeId v = 0; v < n; ++v) {
        if (!keep[static_cast<std::size_t>(v)]) continue;
        for (NodeId p : g.parents(v)) {
            if (!keep[static_cast<std::size_t>(p)]) continue;
            connect(p, v);
            for (NodeId q : g.parents(v)) {
                if (q <= p || !keep[static_cast<std::size_t>(q)]) continue;
                connect(p, q);
            }
        }
    }

    std::vector<bool> blocked(static_cast<std::size_t>(n), false);
    for (NodeId zv : z) blocked[static_cast<std::size_t>(zv)] = true;

    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<NodeId> stack{x};
    seen[static_cast<std::size_t>(x)] = true;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        if (v == y) return false;
        for (NodeId w = 0; w < n; ++w) {
            if (!adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]) continue;
            if (seen[static_cast<std::size_t>(w)] || blocked[static_cast<std::size_t>(w)])
                continue;
            if (!keep[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = true;
            stack.push_back(w);
        }
    }
    return true;
}

bool backdoor_by_oracle(const MixedGraph& g, NodeId x, NodeId y,
                        const std::vector<NodeId>& z) {
    std::vector<bool> de_x = descendant_set(g, x);
    for (NodeId zv : z)
        if (de_x[static_cast<std::size_t>(zv)]) return false;
    MixedGraph cut(g.names());
    for (auto [tail, head] : g.directed_edges())
        if (tail != x) cut.add_directed_edge(tail, head);
    return moral_d_separated(cut, x, y, z);
}

std::vector<std::vector<NodeId>> minimal_backdoor_sets_by_oracle(const MixedGraph& g,
                                                                 NodeId x, NodeId y) {
    std::vector<bool> de_x = descendant_set(g, x);
    std::vector<NodeId> universe;
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (v != x && v != y && !de_x[static_cast<std::size_t>(v)]) universe.push_back(v);
    if (universe.size() > 24)
        throw std::runtime_error("oracle subset scan too large");

    std::vector<std::vector<NodeId>> valid;
    const std::uint32_t limit = 1u << universe.size();
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        std::vector<NodeId> z;
        for (std::size_t i = 0; i < universe.size(); ++i)
            if (mask & (1u << i)) z.push_back(universe[i]);
        if (backdoor_by_oracle(g, x, y, z)) valid.push_back(std::move(z));
    }

    std::sort(valid.begin(), valid.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<std::vector<NodeId>> minimal;
    for (const auto& v : valid) {
        bool has_subset = false;
        for (const auto& m : minimal)
            if (std::includes(v.begin(), v.end(), m.begin(), m.end())) {
                has_subset = true;
                break;
            }
        if (!has_subset) minimal.push_back(v);
    }
    return minimal;
}

AcContext build_ac_context(const MixedGraph& g, NodeId x, NodeId y) {
    AcContext ctx;
    ctx.g = &g;
    ctx.x = x;
    ctx.y = y;

    const int n = g.node_count();
    std::vector<bool> de_x = descendant_set(g, x);
    ctx.forbidden.assign(static_cast<std::size_t>(n), false);
    for (NodeId w = 0; w < n; ++w) {
        if (w == x || !de_x[static_cast<std::size_t>(w)]) continue;
        // w on a causal path x -> ... -> y  <=>  w in de(x) and y in de(w)+{w}.
        std::vector<bool> de_w = descendant_set(g, w);
        if (w != y && !de_w[static_cast<std::size_t>(y)]) continue;
        ctx.forbidden[static_cast<std::size_t>(w)] = true;
        for (NodeId d = 0; d < n; ++d)
            if (de_w[static_cast<std::size_t>(d)])
                ctx.forbidden[static_cast<std::size_t>(d)] = true;
    }

    for (const auto& path : dfs_paths(g, x, y)) {
        bool causal = true;
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
            if (!g.has_directed(path[i], path[i + 1])) {
                causal = false;
                break;
            }
        if (!causal) ctx.noncausal.push_back(path);
    }
    return ctx;
}

bool adjustment_criterion(const AcContext& ctx, const std::vector<NodeId>& z) {
    const MixedGraph& g = *ctx.g;
    std::vector<bool> in_z(static_cast<std::size_t>(g.node_count()), false);
    for (NodeId zv : z) {
        if (ctx.forbidden[static_cast<std::size_t>(zv)]) return false;
        in_z[static_cast<std::size_t>(zv)] = true;
    }
    for (const auto& path : ctx.noncausal) {
        bool blocked = false;
        for (std::size_t i = 1; i + 1 < path.size() && !blocked; ++i) {
            NodeId prev = path[i - 1], mid = path[i], next = path[i + 1];
            bool collider = g.has_directed(prev, mid) && g.has_directed(next, mid);
            if (!collider) {
                if (in_z[static_cast<std::size_t>(mid)]) blocked = true;
            } else if (!in_z[static_cast<std::size_t>(mid)]) {
                std::vector<bool> de_c = descendant_set(g, mid);
                bool opened = false;
                for (NodeId v = 0; v < g.node_count(); ++v)
                    if (de_c[static_cast<std::size_t>(v)] &&
                        in_z[static_cast<std::size_t>(v)]) {
                        opened = true;
                        break;
                    }
                if (!opened) blocked = true;
            }
        }
        if (!blocked) return false;
    }
    return true;
}

std::vector<std::vector<double>> do_effect_by_oracle(const cavs::Dataset& d, int x,
                                                     int y, const std::vector<int>& z) {
    std::vector<int> zc = z;
    std::sort(zc.begin(), zc.end());
    const std::int64_t n = d.row_count();
    const int xk = static_cast<int>(d.alphabet(x).size());
    const int yk = static_cast<int>(d.alphabet(y).size());

    // Enumerate every joint z state recursively.
    std::vector<std::vector<int>> states;
    std::vector<int> state(zc.size(), 0);
    std::function<void(std::size_t)> emit = [&](std::size_t pos) {
        if (pos == zc.size()) {
            states.push_back(state);
            return;
        }
        for (int c = 0; c < static_cast<int>(d.alphabet(zc[pos]).size()); ++c) {
            state[pos] = c;
            emit(pos + 1);
        }
    };
    emit(0);

    std::vector<std::vector<double>> per_x(static_cast<std::size_t>(xk),
                                           std::vector<double>(static_cast<std::size_t>(yk), 0.0));
    for (int xv = 0; xv < xk; ++xv) {
        for (const auto& s : states) {
            std::int64_t stratum = 0, matching = 0;
            std::vector<std::int64_t> y_in_stratum(static_cast<std::size_t>(yk), 0);
            std::vector<std::int64_t> y_marginal(static_cast<std::size_t>(yk), 0);
            std::int64_t x_marginal = 0;
            for (std::int64_t r = 0; r < n; ++r) {
                bool in_s = true;
                for (std::size_t i = 0; i < zc.size(); ++i)
                    if (d.value(r, zc[i]) != s[i]) {
                        in_s = false;
                        break;
                    }
                if (d.value(r, x) == xv) {
                    ++x_marginal;
                    ++y_marginal[static_cast<std::size_t>(d.value(r, y))];
                }
                if (!in_s) continue;
                ++stratum;
                if (d.value(r, x) == xv) {
                    ++matching;
                    ++y_in_stratum[static_cast<std::size_t>(d.value(r, y))];
                }
            }
            if (stratum == 0) continue;
            double weight = static_cast<double>(stratum) / static_cast<double>(n);
            for (int yv = 0; yv < yk; ++yv) {
                double cond;
                if (matching > 0)
                    cond = static_cast<double>(y_in_stratum[static_cast<std::size_t>(yv)]) /
                           static_cast<double>(matching);
                else
                    cond = static_cast<double>(y_marginal[static_cast<std::size_t>(yv)]) /
                           static_cast<double>(x_marginal);
                per_x[static_cast<std::size_t>(xv)][static_cast<std::size_t>(yv)] +=
                    weight * cond;
            }
        }
    }
    return per_x;
}

}  // namespace oracle
