// cavs: adjustment-variable selection and interventional estimation on
// categorical data. Subcommands cover back-door enumeration, MI-based
// selection, effect estimation, CPDAG analysis, sampling, network
// generation, and the subsample benchmark.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cavs/backdoor.hpp"
#include "cavs/bench.hpp"
#include "cavs/cpdag.hpp"
#include "cavs/errors.hpp"
#include "cavs/intervention.hpp"
#include "cavs/io.hpp"
#include "cavs/select.hpp"

namespace {

using nlohmann::json;
using namespace cavs;

constexpr int kSchemaVersion = 1;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitLimit = 3;
constexpr int kExitParse = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << content;
}

long env_path_cap() {
    const char* raw = std::getenv("CAVS_MAX_PATHS");
    if (!raw || !*raw) return kDefaultPathCap;
    char* end = nullptr;
    long cap = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || cap <= 0)
        throw ValidationError("CAVS_MAX_PATHS must be a positive integer");
    return cap;
}

std::string set_names(const MixedGraph& g, const std::vector<NodeId>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += g.name(s[i]);
    }
    return out + "}";
}

json names_json(const MixedGraph& g, const std::vector<NodeId>& s) {
    json arr = json::array();
    for (NodeId v : s) arr.push_back(g.name(v));
    return arr;
}

std::vector<std::string> split_list(const std::string& raw) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : raw) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<NodeId> resolve_nodes(const MixedGraph& g,
                                  const std::vector<std::string>& names) {
    std::vector<NodeId> out;
    for (const std::string& n : names) out.push_back(g.node(n));
    std::sort(out.begin(), out.end());
    return out;
}

NetworkFile load_graph_file(const std::string& path) {
    return parse_network(read_file(path));
}

Dataset load_data_file(const std::string& path, const NetworkFile& net) {
    std::map<std::string, std::vector<std::string>> alphabets;
    for (NodeId v = 0; v < net.graph.node_count(); ++v)
        alphabets[net.graph.name(v)] = net.alphabets[static_cast<std::size_t>(v)];
    return read_csv_dataset(read_file(path), alphabets);
}

void require_dag(const NetworkFile& net) {
    if (!net.graph.is_dag())
        throw ValidationError(
            "the graph has undirected edges; use the 'cpdag' subcommands");
}

void maybe_emit_dot(const std::string& path, const MixedGraph& g) {
    if (!path.empty()) write_file(path, emit_dot(g));
}

// ---------------------------------------------------------------------------
// backdoor-sets

struct BackdoorArgs {
    std::string graph_path, x, y, dot_path;
    bool as_json = false;
};

int run_backdoor_sets(const BackdoorArgs& a) {
    NetworkFile net = load_graph_file(a.graph_path);
    require_dag(net);
    const MixedGraph& g = net.graph;
    maybe_emit_dot(a.dot_path, g);

    BackdoorOptions opts;
    opts.max_paths = env_path_cap();
    auto sets = enumerate_minimal_backdoor_sets(g, g.node(a.x), g.node(a.y), opts);

    if (a.as_json) {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["kind"] = "backdoor_sets";
        doc["x"] = a.x;
        doc["y"] = a.y;
        json arr = json::array();
        for (const auto& s : sets) {
            json item;
            item["members"] = names_json(g, s.members);
            item["size"] = s.members.size();
            arr.push_back(item);
        }
        doc["sets"] = arr;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "minimal back-door sets for (" << a.x << ", " << a.y << "):\n";
        for (const auto& s : sets) std::cout << "  " << set_names(g, s.members) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// select

struct SelectArgs {
    std::string graph_path, data_path, x, y, dot_path;
    bool as_json = false;
    bool bits = false;
};

json selection_json(const MixedGraph& g, const SelectionReport& rep) {
    json doc;
    json ranked = json::array();
    for (const auto& c : rep.ranked) {
        json item;
        item["members"] = names_json(g, c.members);
        item["size"] = c.members.size();
        item["mi"] = *c.mi_score;
        ranked.push_back(item);
    }
    doc["ranked"] = ranked;
    doc["chosen"] = names_json(g, rep.chosen.members);
    doc["ties_broken"] = rep.ties_broken;
    return doc;
}

void print_selection(const MixedGraph& g, const SelectionReport& rep, bool bits) {
    std::cout << "candidates (ascending mutual information, "
              << (bits ? "bits" : "nats") << "):\n";
    for (const auto& c : rep.ranked) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.6g", *c.mi_score);
        std::cout << "  " << set_names(g, c.members) << "  mi=" << buf << "\n";
    }
    std::cout << "chosen: " << set_names(g, rep.chosen.members) << "\n";
    if (rep.ties_broken) std::cout << "note: tie broken deterministically\n";
}

int run_select(const SelectArgs& a) {
    NetworkFile net = load_graph_file(a.graph_path);
    require_dag(net);
    const MixedGraph& g = net.graph;
    Dataset d = load_data_file(a.data_path, net);
    maybe_emit_dot(a.dot_path, g);

    BackdoorOptions opts;
    opts.max_paths = env_path_cap();
    MiUnit unit = a.bits ? MiUnit::bits : MiUnit::nats;
    SelectionReport rep = select_adjustment(g, g.node(a.x), g.node(a.y), d, unit, opts);

    if (a.as_json) {
        json doc = selection_json(g, rep);
        doc["schema_version"] = kSchemaVersion;
        doc["kind"] = "selection";
        doc["x"] = a.x;
        doc["y"] = a.y;
        doc["mi_unit"] = a.bits ? "bits" : "nats";
        std::cout << doc.dump(2) << "\n";
    } else {
        print_selection(g, rep, a.bits);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// effect

struct EffectArgs {
    std::string graph_path, data_path, x, y;
    std::string z_raw;
    bool z_given = false;
    bool auto_select = false;
    bool unsafe = false;
    bool strict_empty = false;
    double laplace = 0.0;
    bool as_json = false;
};

json intervention_json(const InterventionResult& r) {
    json doc;
    doc["x"] = r.x_name;
    doc["y"] = r.y_name;
    doc["x_alphabet"] = r.x_alphabet;
    doc["y_alphabet"] = r.y_alphabet;
    doc["adjustment"] = r.z_names;
    json per_x = json::object();
    for (std::size_t j = 0; j < r.per_x.size(); ++j)
        per_x[r.x_alphabet[j]] = r.per_x[j];
    doc["per_x"] = per_x;

    json strata = json::array();
    for (const auto& s : r.strata) {
        json item;
        json state = json::object();
        for (std::size_t i = 0; i < r.z_names.size(); ++i)
            state[r.z_names[i]] = s.z_state[i];
        item["z_state"] = state;
        item["count"] = s.count;
        item["weight"] = s.weight;
        item["count_per_x"] = s.count_per_x;
        strata.push_back(item);
    }
    json diag;
    diag["strata"] = strata;
    json fallbacks = json::array();
    for (const auto& f : r.fallbacks) {
        json item;
        item["x_category"] = r.x_alphabet[static_cast<std::size_t>(f.x_category)];
        item["stratum_index"] = f.stratum_index;
        fallbacks.push_back(item);
    }
    diag["fallbacks"] = fallbacks;
    json sparse = json::array();
    for (const auto& w : r.sparse) {
        json item;
        item["x_category"] = r.x_alphabet[static_cast<std::size_t>(w.x_category)];
        item["stratum_index"] = w.stratum_index;
        item["count"] = w.count;
        sparse.push_back(item);
    }
    diag["sparse_strata"] = sparse;
    doc["diagnostics"] = diag;
    return doc;
}

void print_intervention(const InterventionResult& r) {
    std::cout << "adjustment set: {";
    for (std::size_t i = 0; i < r.z_names.size(); ++i)
        std::cout << (i ? "," : "") << r.z_names[i];
    std::cout << "}\n";
    for (std::size_t j = 0; j < r.per_x.size(); ++j) {
        std::cout << "do(" << r.x_name << "=" << r.x_alphabet[j] << "):";
        for (std::size_t i = 0; i < r.per_x[j].size(); ++i) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.6f", r.per_x[j][i]);
            std::cout << "  P(" << r.y_name << "=" << r.y_alphabet[i] << ")=" << buf;
        }
        std::cout << "\n";
    }
    if (!r.strata.empty() && !r.z_names.empty()) {
        std::cout << "strata (count, weight, per-" << r.x_name << " counts):\n";
        for (const auto& s : r.strata) {
            std::cout << "  (";
            for (std::size_t i = 0; i < s.z_state.size(); ++i)
                std::cout << (i ? "," : "") << r.z_names[i] << "=" << s.z_state[i];
            char buf[40];
            std::snprintf(buf, sizeof(buf), "%.6f", s.weight);
            std::cout << ")  n=" << s.count << "  w=" << buf << "  [";
            for (std::size_t i = 0; i < s.count_per_x.size(); ++i)
                std::cout << (i ? " " : "") << s.count_per_x[i];
            std::cout << "]\n";
        }
    }
    for (const auto& w : r.sparse)
        std::cout << "warning: stratum " << w.stratum_index << " has only " << w.count
                  << " sample(s) for " << r.x_name << "="
                  << r.x_alphabet[static_cast<std::size_t>(w.x_category)] << "\n";
    for (const auto& f : r.fallbacks)
        std::cout << "fallback: no samples for " << r.x_name << "="
                  << r.x_alphabet[static_cast<std::size_t>(f.x_category)]
                  << " in stratum " << f.stratum_index
                  << "; used the z-marginal conditional\n";
}

int run_effect(const EffectArgs& a) {
    NetworkFile net = load_graph_file(a.graph_path);
    require_dag(net);
    const MixedGraph& g = net.graph;
    Dataset d = load_data_file(a.data_path, net);
    NodeId x = g.node(a.x), y = g.node(a.y);

    if (a.z_given == a.auto_select)
        throw ValidationError("provide exactly one of --z or --auto");

    BackdoorOptions bopts;
    bopts.max_paths = env_path_cap();

    std::vector<NodeId> z;
    if (a.auto_select) {
        z = select_adjustment(g, x, y, d, MiUnit::nats, bopts).chosen.members;
    } else {
        z = resolve_nodes(g, split_list(a.z_raw));
        if (!a.unsafe && !satisfies_backdoor(g, x, y, z, bopts)) {
            std::vector<NodeId> des = descendants(g, x);
            for (NodeId zv : z)
                if (std::binary_search(des.begin(), des.end(), zv))
                    throw ValidationError(
                        "adjustment set violates the back-door criterion: '" +
                        g.name(zv) + "' is a descendant of '" + a.x +
                        "' (condition (i)); pass --unsafe to override");
            throw ValidationError(
                "adjustment set violates the back-door criterion: it leaves '" + a.x +
                "' and '" + a.y +
                "' d-connected with edges out of the intervention removed "
                "(condition (ii)); pass --unsafe to override");
        }
    }

    InterventionOptions iopts;
    if (a.strict_empty) iopts.zero_support = InterventionOptions::ZeroSupport::error;
    iopts.laplace_alpha = a.laplace;

    std::vector<int> z_cols;
    for (NodeId v : z) z_cols.push_back(d.column(g.name(v)));
    InterventionResult r = do_effect(d, d.column(a.x), d.column(a.y), z_cols, iopts);

    if (a.as_json) {
        json doc = intervention_json(r);
        doc["schema_version"] = kSchemaVersion;
        doc["kind"] = "intervention";
        doc["auto_selected"] = a.auto_select;
        std::cout << doc.dump(2) << "\n";
    } else {
        print_intervention(r);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// cpdag

struct CpdagArgs {
    std::string graph_path, x, y, z_raw, orient_raw, data_path, dot_path;
    bool as_json = false;
};

OrientationChoice parse_choice(const MixedGraph& g, const std::string& raw) {
    OrientationChoice choice;
    for (const std::string& tok : split_list(raw)) {
        std::size_t pos = tok.find("->");
        if (pos == std::string::npos)
            throw ValidationError("orientation '" + tok + "' must look like A->B");
        NodeId tail = g.node(tok.substr(0, pos));
        NodeId head = g.node(tok.substr(pos + 2));
        choice.edges.emplace_back(tail, head);
    }
    return choice;
}

json member_json(const MixedGraph& g) {
    json edges = json::array();
    for (auto [a, b] : g.directed_edges())
        edges.push_back(g.name(a) + " -> " + g.name(b));
    return edges;
}

int run_cpdag_amenable(const CpdagArgs& a) {
    NetworkFile net = load_graph_file(a.graph_path);
    const MixedGraph& g = net.graph;
    auto path = find_non_amenable_path(g, g.node(a.x), g.node(a.y));
    if (a.as_json) {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["kind"] = "amenability";
        doc["x"] = a.x;
        doc["y"] = a.y;
        doc["amenable"] = !path.has_value();
        if (path)
            doc["offending_path"] = names_json(g, *path);
        else
            doc["offending_path"] = nullptr;
        std::cout << doc.dump(2) << "\n";
    } else if (path) {
        std::cout << "amenable: false\n";
        std::cout << "possibly directed path starting with an undirected edge:";
        for (NodeId v : *path) std::cout << " " << g.name(v);
        std::cout << "\n";
    } else {
        std::cout << "amenable: true\n";
    }
    return kExitOk;
}

int run_cpdag_gac(const CpdagArgs& a) {
    NetworkFile net = load_graph_file(a.graph_path);
    const MixedGraph& g = net.graph;
    CpdagOptions opts;
    opts.max_paths = env_path_cap();
    std::vector<NodeId> z = resolve_nodes(g, split_list(a.z_raw));
    bool ok = satisfies_gac(g, g.node(a.x), g.node(a.y), z, opts);
    if (a.as_json) {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["kind"] = "gac";
        doc["x"] = a.x;
        doc["y"] = a.y;
        doc["z"] = names_json(g, z);
        doc["satisfied"] = ok;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "generalized adjustment criterion: " << (ok ? "true" : "false")
                  << "\n";
    }
    return kExitOk;
}

int run_cpdag_orient(const CpdagArgs& a) {
    NetworkFile net = load_graph_file(a.graph_path);
    const MixedGraph& g = net.graph;
    NodeId x = g.node(a.x);
    EquivalenceClass cls = orient_and_restrict(g, x, parse_choice(g, a.orient_raw));
    maybe_emit_dot(a.dot_path, cls.members.front());
    if (a.as_json) {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["kind"] = "orientation";
        doc["x"] = a.x;
        doc["class_size"] = cls.members.size();
        doc["member"] = member_json(cls.members.front());
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "restricted class size: " << cls.members.size() << "\n";
        std::cout << "canonical member:\n";
        for (auto [t, h] : cls.members.front().directed_edges())
            std::cout << "  " << g.name(t) << " -> " << g.name(h) << "\n";
    }
    return kExitOk;
}

int run_cpdag_select(const CpdagArgs& a) {
    NetworkFile net = load_graph_file(a.graph_path);
    const MixedGraph& g = net.graph;
    Dataset d = load_data_file(a.data_path, net);
    std::optional<OrientationChoice> choice;
    if (!a.orient_raw.empty()) choice = parse_choice(g, a.orient_raw);
    CpdagOptions opts;
    opts.max_paths = env_path_cap();
    CpdagSelectionReport rep =
        cavs_on_cpdag(g, g.node(a.x), g.node(a.y), d, choice, MiUnit::nats, opts);
    if (a.as_json) {
        json doc = selection_json(g, rep.report);
        doc["schema_version"] = kSchemaVersion;
        doc["kind"] = "cpdag_selection";
        doc["x"] = a.x;
        doc["y"] = a.y;
        doc["class_size"] = rep.class_size;
        doc["member_used"] = member_json(rep.member_used);
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "class size: " << rep.class_size << "\n";
        std::cout << "member used:\n";
        for (auto [t, h] : rep.member_used.directed_edges())
            std::cout << "  " << g.name(t) << " -> " << g.name(h) << "\n";
        print_selection(g, rep.report, false);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sample / gen / bench

struct SampleArgs {
    std::string network_path, out_path;
    std::int64_t n = 0;
    std::uint64_t seed = 0;
    bool as_json = false;
};

int run_sample(const SampleArgs& a) {
    CptNetwork net = load_graph_file(a.network_path).cpt_network();
    Dataset d = forward_sample(net, a.n, a.seed);
    write_file(a.out_path, write_csv_dataset(d));
    if (a.as_json) {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["kind"] = "sample";
        doc["rows"] = d.row_count();
        doc["seed"] = a.seed;
        doc["written"] = a.out_path;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "wrote " << d.row_count() << " rows to " << a.out_path << "\n";
    }
    return kExitOk;
}

struct GenArgs {
    std::string out_path, dot_path;
    int nodes = 30, edges = 40, card = 4;
    std::uint64_t seed = 0;
    bool dirichlet = false;
    bool as_json = false;
};

int run_gen(const GenArgs& a) {
    CptPrior prior =
        a.dirichlet ? CptPrior::dirichlet_flat : CptPrior::normalized_uniform;
    CptNetwork net = random_network(a.nodes, a.edges, a.card, a.seed, prior);
    write_file(a.out_path, emit_network(net));
    maybe_emit_dot(a.dot_path, net.graph);
    if (a.as_json) {
        json doc;
        doc["schema_version"] = kSchemaVersion;
        doc["kind"] = "generate";
        doc["nodes"] = a.nodes;
        doc["edges"] = a.edges;
        doc["cardinality"] = a.card;
        doc["seed"] = a.seed;
        doc["written"] = a.out_path;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "wrote " << a.nodes << "-node network to " << a.out_path << "\n";
    }
    return kExitOk;
}

struct BenchArgs {
    std::string graph_path, x, y, out_prefix, methods_raw = "cavs,minimal_parents,parents";
    int nodes = 0, edges = 0, card = 0, graphs = 1, cpts = 1, k = 5;
    std::int64_t reference_n = 10000, subsample_n = 500;
    std::uint64_t seed = 0;
    bool dirichlet = false, mi_subsample = false, as_json = false;
};

int run_bench(const BenchArgs& a) {
    ExperimentConfig cfg;
    if (!a.graph_path.empty()) {
        cfg.network_file_text = read_file(a.graph_path);
    } else {
        if (a.nodes <= 0)
            throw ValidationError("provide --graph FILE or --nodes/--edges/--card");
        RandomNetworkParams p;
        p.nodes = a.nodes;
        p.edges = a.edges;
        p.cardinality = a.card;
        p.prior = a.dirichlet ? CptPrior::dirichlet_flat : CptPrior::normalized_uniform;
        cfg.random = p;
        cfg.n_graphs = a.graphs;
        cfg.n_cpt_draws = a.cpts;
    }
    cfg.x = a.x;
    cfg.y = a.y;
    cfg.reference_n = a.reference_n;
    cfg.subsample_n = a.subsample_n;
    cfg.k_subsamples = a.k;
    cfg.methods = split_list(a.methods_raw);
    cfg.seed = a.seed;
    cfg.mi_from_subsample = a.mi_subsample;

    ErrorReport report = run_experiment(cfg);
    if (!a.out_prefix.empty()) {
        write_file(a.out_prefix + ".csv", report_to_csv(report));
        write_file(a.out_prefix + ".json", report_to_json(report));
    }
    if (a.as_json) {
        std::cout << report_to_json(report);
    } else {
        std::cout << "trials: " << report.trials.size() << "\n";
        for (const auto& s : report.summaries) {
            char buf[160];
            std::snprintf(buf, sizeof(buf),
                          "%-16s n=%-4d mean=%.6f min=%.6f q25=%.6f median=%.6f "
                          "q75=%.6f max=%.6f",
                          s.method.c_str(), s.trials, s.mean, s.min, s.q25, s.median,
                          s.q75, s.max);
            std::cout << buf << "\n";
        }
        if (!a.out_prefix.empty())
            std::cout << "wrote " << a.out_prefix << ".csv and " << a.out_prefix
                      << ".json\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adjustment-variable selection for causal effect estimation "
                 "on categorical data"};
    app.require_subcommand(1);

    BackdoorArgs bd;
    auto* cmd_bd = app.add_subcommand("backdoor-sets",
                                      "enumerate minimal back-door sets on a DAG");
    cmd_bd->add_option("graph", bd.graph_path, "network/graph file")->required();
    cmd_bd->add_option("--x", bd.x, "intervention variable")->required();
    cmd_bd->add_option("--y", bd.y, "outcome variable")->required();
    cmd_bd->add_flag("--json", bd.as_json, "machine-readable output");
    cmd_bd->add_option("--emit-dot", bd.dot_path, "also dump the graph as DOT");

    SelectArgs sel;
    auto* cmd_sel = app.add_subcommand("select",
                                       "rank candidate sets by mutual information");
    cmd_sel->add_option("graph", sel.graph_path, "network/graph file")->required();
    cmd_sel->add_option("data", sel.data_path, "CSV dataset")->required();
    cmd_sel->add_option("--x", sel.x)->required();
    cmd_sel->add_option("--y", sel.y)->required();
    cmd_sel->add_flag("--json", sel.as_json);
    cmd_sel->add_flag("--bits", sel.bits, "report MI in bits instead of nats");
    cmd_sel->add_option("--emit-dot", sel.dot_path);

    EffectArgs eff;
    auto* cmd_eff = app.add_subcommand("effect", "estimate P(Y | do(X=x)) by "
                                                 "back-door adjustment");
    cmd_eff->add_option("graph", eff.graph_path)->required();
    cmd_eff->add_option("data", eff.data_path)->required();
    cmd_eff->add_option("--x", eff.x)->required();
    cmd_eff->add_option("--y", eff.y)->required();
    auto* zopt = cmd_eff->add_option("--z", eff.z_raw,
                                     "adjustment set (comma list, '' for empty)");
    zopt->expected(0, 1);
    cmd_eff->add_flag("--auto", eff.auto_select, "select the set with CAVS");
    cmd_eff->add_flag("--unsafe", eff.unsafe,
                      "skip the back-door validation of --z");
    cmd_eff->add_flag("--strict-empty", eff.strict_empty,
                      "fail on zero-support strata instead of falling back");
    cmd_eff->add_option("--laplace", eff.laplace, "additive smoothing strength");
    cmd_eff->add_flag("--json", eff.as_json);

    auto* cmd_cp = app.add_subcommand("cpdag", "partially directed graph analysis");
    cmd_cp->require_subcommand(1);
    CpdagArgs cp;
    auto* cp_am = cmd_cp->add_subcommand("amenable", "adjustment amenability check");
    cp_am->add_option("graph", cp.graph_path)->required();
    cp_am->add_option("--x", cp.x)->required();
    cp_am->add_option("--y", cp.y)->required();
    cp_am->add_flag("--json", cp.as_json);
    auto* cp_gac = cmd_cp->add_subcommand("gac",
                                          "generalized adjustment criterion check");
    cp_gac->add_option("graph", cp.graph_path)->required();
    cp_gac->add_option("--x", cp.x)->required();
    cp_gac->add_option("--y", cp.y)->required();
    cp_gac->add_option("--z", cp.z_raw, "candidate set (comma list, '' for empty)")
        ->expected(0, 1);
    cp_gac->add_flag("--json", cp.as_json);
    auto* cp_or = cmd_cp->add_subcommand("orient",
                                         "orient the undirected edges at x and "
                                         "restrict the equivalence class");
    cp_or->add_option("graph", cp.graph_path)->required();
    cp_or->add_option("--x", cp.x)->required();
    cp_or->add_option("--orient", cp.orient_raw, "comma list of A->B orientations")
        ->required();
    cp_or->add_flag("--json", cp.as_json);
    cp_or->add_option("--emit-dot", cp.dot_path, "dump the canonical member as DOT");
    auto* cp_sel = cmd_cp->add_subcommand("select",
                                          "adjustment-variable selection on a CPDAG");
    cp_sel->add_option("graph", cp.graph_path)->required();
    cp_sel->add_option("data", cp.data_path)->required();
    cp_sel->add_option("--x", cp.x)->required();
    cp_sel->add_option("--y", cp.y)->required();
    cp_sel->add_option("--orient", cp.orient_raw,
                       "orientations for the undirected edges at x");
    cp_sel->add_flag("--json", cp.as_json);

    SampleArgs smp;
    auto* cmd_smp = app.add_subcommand("sample", "forward-sample a CPT network");
    cmd_smp->add_option("network", smp.network_path)->required();
    cmd_smp->add_option("--n", smp.n, "number of records")->required();
    cmd_smp->add_option("--seed", smp.seed, "64-bit RNG seed")->required();
    cmd_smp->add_option("-o,--out", smp.out_path, "output CSV path")->required();
    cmd_smp->add_flag("--json", smp.as_json);

    GenArgs gen;
    auto* cmd_gen = app.add_subcommand("gen", "generate a random CPT network");
    cmd_gen->add_option("--nodes", gen.nodes)->required();
    cmd_gen->add_option("--edges", gen.edges)->required();
    cmd_gen->add_option("--card", gen.card, "categories per variable")->required();
    cmd_gen->add_option("--seed", gen.seed)->required();
    cmd_gen->add_option("-o,--out", gen.out_path, "output network path")->required();
    cmd_gen->add_flag("--dirichlet", gen.dirichlet,
                      "draw CPT rows from a flat Dirichlet instead of "
                      "normalized uniforms");
    cmd_gen->add_flag("--json", gen.as_json);
    cmd_gen->add_option("--emit-dot", gen.dot_path);

    BenchArgs bch;
    auto* cmd_bch = app.add_subcommand("bench", "subsample-error benchmark");
    cmd_bch->add_option("--graph", bch.graph_path, "CPT network file");
    cmd_bch->add_option("--x", bch.x);
    cmd_bch->add_option("--y", bch.y);
    cmd_bch->add_option("--nodes", bch.nodes);
    cmd_bch->add_option("--edges", bch.edges);
    cmd_bch->add_option("--card", bch.card);
    cmd_bch->add_option("--graphs", bch.graphs, "random graphs to draw");
    cmd_bch->add_option("--cpts", bch.cpts, "CPT draws per graph");
    cmd_bch->add_option("--reference-n", bch.reference_n);
    cmd_bch->add_option("--subsample-n", bch.subsample_n);
    cmd_bch->add_option("--k", bch.k, "subsamples per network");
    cmd_bch->add_option("--methods", bch.methods_raw);
    cmd_bch->add_option("--seed", bch.seed)->required();
    cmd_bch->add_option("-o,--out", bch.out_prefix, "write PREFIX.csv and PREFIX.json");
    cmd_bch->add_flag("--dirichlet", bch.dirichlet);
    cmd_bch->add_flag("--mi-subsample", bch.mi_subsample,
                      "score CAVS candidates on each subsample");
    cmd_bch->add_flag("--json", bch.as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (cmd_bd->parsed()) return run_backdoor_sets(bd);
        if (cmd_sel->parsed()) return run_select(sel);
        if (cmd_eff->parsed()) {
            eff.z_given = zopt->count() > 0;
            return run_effect(eff);
        }
        if (cmd_cp->parsed()) {
            if (cp_am->parsed()) return run_cpdag_amenable(cp);
            if (cp_gac->parsed()) return run_cpdag_gac(cp);
            if (cp_or->parsed()) return run_cpdag_orient(cp);
            if (cp_sel->parsed()) return run_cpdag_select(cp);
        }
        if (cmd_smp->parsed()) return run_sample(smp);
        if (cmd_gen->parsed()) return run_gen(gen);
        if (cmd_bch->parsed()) return run_bench(bch);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const LimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitLimit;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
