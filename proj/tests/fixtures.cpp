#include "fixtures.hpp"

namespace fixtures {

using cavs::CptNetwork;
using cavs::Dataset;
using cavs::MixedGraph;

MixedGraph enumeration_demo_dag() {
    MixedGraph g({"X", "Y", "V2", "V3", "V4", "V5", "V6", "V7", "V8"});
    auto e = [&](const char* a, const char* b) {
        g.add_directed_edge(g.node(a), g.node(b));
    };
    e("V3", "X");
    e("V7", "X");
    e("V6", "V3");
    e("V6", "V8");
    e("V8", "V7");
    e("V8", "Y");
    e("X", "V2");
    e("V2", "Y");
    e("V3", "V4");
    e("V5", "V4");
    e("V5", "Y");
    return g;
}

MixedGraph confounded_triangle() {
    MixedGraph g({"X", "Z", "Y"});
    g.add_directed_edge(g.node("Z"), g.node("X"));
    g.add_directed_edge(g.node("Z"), g.node("Y"));
    g.add_directed_edge(g.node("X"), g.node("Y"));
    return g;
}

Dataset sparse_stratum_dataset() {
    Dataset d({"X", "Z", "Y"}, {{"0", "1"}, {"0", "1"}, {"0", "1"}});
    auto add = [&](int x, int z, int y, int times) {
        for (int i = 0; i < times; ++i) d.append_row({x, z, y});
    };
    add(0, 0, 0, 1);    // the lone (X=0, Z=0) sample
    add(1, 0, 1, 60);
    add(1, 0, 0, 40);
    add(0, 1, 1, 80);
    add(0, 1, 0, 20);
    add(1, 1, 1, 70);
    add(1, 1, 0, 30);
    return d;
}

MixedGraph orientation_demo_cpdag() {
    MixedGraph g({"X", "Y", "V", "Z1", "Z2"});
    g.add_undirected_edge(g.node("X"), g.node("Z1"));
    g.add_undirected_edge(g.node("Z1"), g.node("Z2"));
    g.add_directed_edge(g.node("X"), g.node("V"));
    g.add_directed_edge(g.node("Z2"), g.node("V"));
    g.add_directed_edge(g.node("V"), g.node("Y"));
    g.add_directed_edge(g.node("Z2"), g.node("Y"));
    return g;
}

std::vector<MixedGraph> orientation_demo_members() {
    std::vector<MixedGraph> members;
    const std::vector<std::vector<std::pair<const char*, const char*>>> orientations{
        {{"Z1", "X"}, {"Z1", "Z2"}},
        {{"Z1", "X"}, {"Z2", "Z1"}},
        {{"X", "Z1"}, {"Z1", "Z2"}},
    };
    for (const auto& pairs : orientations) {
        MixedGraph g({"X", "Y", "V", "Z1", "Z2"});
        g.add_directed_edge(g.node("X"), g.node("V"));
        g.add_directed_edge(g.node("Z2"), g.node("V"));
        g.add_directed_edge(g.node("V"), g.node("Y"));
        g.add_directed_edge(g.node("Z2"), g.node("Y"));
        for (auto [a, b] : pairs) g.add_directed_edge(g.node(a), g.node(b));
        members.push_back(std::move(g));
    }
    return members;
}

namespace {

// Binary CPT row pair for a single-parent flip channel.
std::vector<std::vector<double>> flip_rows(double flip) {
    return {{1.0 - flip, flip}, {flip, 1.0 - flip}};
}

}  // namespace

CptNetwork weak_parent_chain_net() {
    CptNetwork net;
    net.graph = MixedGraph({"X", "Y", "P1", "V1", "V2"});
    auto e = [&](const char* a, const char* b) {
        net.graph.add_directed_edge(net.graph.node(a), net.graph.node(b));
    };
    e("V2", "V1");
    e("V1", "P1");
    e("P1", "X");
    e("X", "Y");
    e("V2", "Y");
    net.alphabets.assign(5, {"0", "1"});
    net.cpts.resize(5);
    net.cpts[static_cast<std::size_t>(net.graph.node("V2"))] = {{0.5, 0.5}};
    net.cpts[static_cast<std::size_t>(net.graph.node("V1"))] = flip_rows(0.3);
    net.cpts[static_cast<std::size_t>(net.graph.node("P1"))] = flip_rows(0.3);
    net.cpts[static_cast<std::size_t>(net.graph.node("X"))] = flip_rows(0.02);
    // Y | (X, V2), X slow, V2 fast.
    net.cpts[static_cast<std::size_t>(net.graph.node("Y"))] = {
        {0.8, 0.2}, {0.6, 0.4}, {0.3, 0.7}, {0.1, 0.9}};
    net.validate();
    return net;
}

CptNetwork distance_ranked_net() {
    CptNetwork net;
    net.graph = MixedGraph({"X", "Y", "C1", "C2", "C3"});
    auto e = [&](const char* a, const char* b) {
        net.graph.add_directed_edge(net.graph.node(a), net.graph.node(b));
    };
    e("C3", "C2");
    e("C2", "C1");
    e("C1", "X");
    e("X", "Y");
    e("C3", "Y");
    net.alphabets.assign(5, {"0", "1"});
    net.cpts.resize(5);
    net.cpts[static_cast<std::size_t>(net.graph.node("C3"))] = {{0.5, 0.5}};
    net.cpts[static_cast<std::size_t>(net.graph.node("C2"))] = flip_rows(0.25);
    net.cpts[static_cast<std::size_t>(net.graph.node("C1"))] = flip_rows(0.25);
    net.cpts[static_cast<std::size_t>(net.graph.node("X"))] = flip_rows(0.25);
    net.cpts[static_cast<std::size_t>(net.graph.node("Y"))] = {
        {0.8, 0.2}, {0.6, 0.4}, {0.3, 0.7}, {0.1, 0.9}};
    net.validate();
    return net;
}

}  // namespace fixtures
