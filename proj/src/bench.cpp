#include "cavs/bench.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "cavs/backdoor.hpp"
#include "cavs/errors.hpp"
#include "cavs/random.hpp"
#include "cavs/select.hpp"

namespace cavs {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double cosine_one(const std::vector<double>& a, const std::vector<double>& b) {
    if (a == b) return 1.0;  // exact match short-circuits rounding noise
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0)
        throw ValidationError("cosine similarity undefined for a zero vector");
    double sim = dot / (std::sqrt(na) * std::sqrt(nb));
    return std::min(1.0, std::max(0.0, sim));
}

double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    double pos = q * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(pos);
    std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

double cosine_error(const InterventionResult& reference,
                    const InterventionResult& estimate) {
    if (reference.x_alphabet != estimate.x_alphabet ||
        reference.y_alphabet != estimate.y_alphabet)
        throw ValidationError("intervention results cover different alphabets");
    double total = 0.0;
    for (std::size_t j = 0; j < reference.per_x.size(); ++j)
        total += 1.0 - cosine_one(reference.per_x[j], estimate.per_x[j]);
    return total / static_cast<double>(reference.per_x.size());
}

std::vector<NodeId> baseline_minimal_parents(const MixedGraph& g, NodeId x, NodeId y) {
    g.check_node(x);
    g.check_node(y);
    if (!g.is_dag()) throw ValidationError("baseline requires a DAG");
    const std::vector<NodeId>& pa = g.parents(x);
    const int n = static_cast<int>(pa.size());

    std::vector<NodeId> pick;
    std::function<std::optional<std::vector<NodeId>>(int, int)> scan =
        [&](int start, int remaining) -> std::optional<std::vector<NodeId>> {
        if (remaining == 0) {
            if (satisfies_backdoor(g, x, y, pick)) return pick;
            return std::nullopt;
        }
        for (int i = start; i <= n - remaining; ++i) {
            pick.push_back(pa[static_cast<std::size_t>(i)]);
            auto found = scan(i + 1, remaining - 1);
            pick.pop_back();
            if (found) return found;
        }
        return std::nullopt;
    };
    for (int k = 0; k <= n; ++k)
        if (auto found = scan(0, k)) return *found;
    // pa(x) blocks every back-door path, so the loop cannot fall through.
    throw ValidationError("no subset of pa(" + g.name(x) +
                          ") satisfies the back-door criterion");
}

void ExperimentConfig::validate() const {
    if (network_file_text.has_value() == random.has_value())
        throw ValidationError("configure exactly one network source");
    if (random) {
        if (n_graphs < 1 || n_cpt_draws < 1)
            throw ValidationError("graph and CPT draw counts must be positive");
    } else if (n_graphs != 1 || n_cpt_draws != 1) {
        throw ValidationError("file-based experiments use a single network");
    }
    if (x.empty() != y.empty())
        throw ValidationError("set both x and y, or neither");
    if (network_file_text && x.empty())
        throw ValidationError("x and y are required with a network file");
    if (reference_n < 1) throw ValidationError("reference_n must be positive");
    if (subsample_n < 1 || subsample_n > reference_n)
        throw ValidationError("subsample_n must lie in [1, reference_n]");
    if (k_subsamples < 1) throw ValidationError("k_subsamples must be positive");
    if (methods.empty()) throw ValidationError("methods must be non-empty");
    for (const std::string& m : methods)
        if (m != "cavs" && m != "minimal_parents" && m != "parents")
            throw ValidationError("unknown method '" + m + "'");
}

namespace {

// Deterministic pick of an (x, y) pair worth benchmarking: prefer directed
// edges whose tail has parents and a non-empty minimal back-door set.
std::pair<NodeId, NodeId> auto_pair(const MixedGraph& g) {
    std::pair<NodeId, NodeId> best{-1, -1};
    int best_rank = -1;
    std::size_t best_parents = 0;
    for (auto [x, y] : g.directed_edges()) {
        std::size_t npa = g.parents(x).size();
        int rank = 0;
        if (npa > 0) {
            rank = 1;
            try {
                auto sets = enumerate_minimal_backdoor_sets(g, x, y);
                if (!sets.empty() && !sets.front().members.empty()) rank = 2;
            } catch (const Error&) {
                rank = 0;
            }
        }
        if (rank > best_rank || (rank == best_rank && npa > best_parents)) {
            best_rank = rank;
            best_parents = npa;
            best = {x, y};
        }
    }
    if (best.first < 0)
        throw ValidationError("graph has no directed edge to benchmark");
    return best;
}

std::vector<std::int64_t> subsample_indices(std::int64_t n, std::int64_t k,
                                            std::uint64_t seed) {
    // Partial Fisher-Yates over row indices, then sorted for order
    // independence downstream.
    std::vector<std::int64_t> idx(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    Rng rng(seed);
    for (std::int64_t i = 0; i < k; ++i) {
        std::int64_t j = i + rng.next_below(n - i);
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    idx.resize(static_cast<std::size_t>(k));
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::string set_to_names(const MixedGraph& g, const std::vector<NodeId>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += g.name(s[i]);
    }
    return out + "}";
}

}  // namespace

ErrorReport run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ErrorReport report;
    report.config = cfg;

    for (int gi = 0; gi < cfg.n_graphs; ++gi) {
        std::uint64_t graph_seed =
            cfg.random ? derive_seed(cfg.seed, {1, static_cast<std::uint64_t>(gi)}) : 0;
        for (int ci = 0; ci < cfg.n_cpt_draws; ++ci) {
            std::uint64_t cpt_seed =
                cfg.random ? derive_seed(cfg.seed, {2, static_cast<std::uint64_t>(gi),
                                                    static_cast<std::uint64_t>(ci)})
                           : 0;

            CptNetwork net;
            if (cfg.random) {
                // One structure per graph index; each CPT draw replaces the
                // tables under its own seed.
                net = random_network(cfg.random->nodes, cfg.random->edges,
                                     cfg.random->cardinality, graph_seed,
                                     cfg.random->prior);
                redraw_cpts(net, cfg.random->prior, cpt_seed);
            } else {
                net = parse_network(*cfg.network_file_text).cpt_network();
            }
            const MixedGraph& g = net.graph;

            NodeId x, y;
            if (!cfg.x.empty() && !cfg.y.empty()) {
                x = g.node(cfg.x);
                y = g.node(cfg.y);
            } else {
                std::tie(x, y) = auto_pair(g);
            }

            std::uint64_t ref_seed = derive_seed(
                cfg.seed, {4, static_cast<std::uint64_t>(gi), static_cast<std::uint64_t>(ci)});
            Dataset reference = forward_sample(net, cfg.reference_n, ref_seed);

            int x_col = reference.column(g.name(x));
            int y_col = reference.column(g.name(y));
            auto to_cols = [&](const std::vector<NodeId>& s) {
                std::vector<int> cols;
                cols.reserve(s.size());
                for (NodeId v : s) cols.push_back(reference.column(g.name(v)));
                return cols;
            };

            // Per-method adjustment sets on the reference data.
            struct MethodPlan {
                std::string name;
                bool ok = false;
                std::string error;
                std::vector<NodeId> set;
                InterventionResult reference_result;
            };
            std::vector<MethodPlan> plans;
            std::ostringstream prov;
            prov << "graph=" << gi << " cpt=" << ci << " x=" << g.name(x)
                 << " y=" << g.name(y);
            for (const std::string& m : cfg.methods) {
                MethodPlan plan;
                plan.name = m;
                try {
                    if (m == "cavs") {
                        if (!cfg.mi_from_subsample)
                            plan.set =
                                select_adjustment(g, x, y, reference).chosen.members;
                    } else if (m == "minimal_parents") {
                        plan.set = baseline_minimal_parents(g, x, y);
                    } else {
                        plan.set = g.parents(x);
                    }
                    if (!(m == "cavs" && cfg.mi_from_subsample)) {
                        plan.reference_result =
                            do_effect(reference, x_col, y_col, to_cols(plan.set));
                        prov << " " << m << "=" << set_to_names(g, plan.set);
                    }
                    plan.ok = true;
                } catch (const Error& e) {
                    plan.error = e.what();
                }
                plans.push_back(std::move(plan));
            }
            report.provenance.push_back(prov.str());

            for (int k = 0; k < cfg.k_subsamples; ++k) {
                std::uint64_t sub_seed = derive_seed(
                    cfg.seed, {5, static_cast<std::uint64_t>(gi),
                               static_cast<std::uint64_t>(ci), static_cast<std::uint64_t>(k)});
                Dataset sub = reference.select_rows(
                    subsample_indices(cfg.reference_n, cfg.subsample_n, sub_seed));
                for (MethodPlan& plan : plans) {
                    TrialRecord rec;
                    rec.method = plan.name;
                    rec.graph_seed = graph_seed;
                    rec.cpt_seed = cpt_seed;
                    rec.subsample_seed = sub_seed;
                    if (!plan.ok) {
                        rec.failed = true;
                        rec.failure = plan.error;
                        report.trials.push_back(std::move(rec));
                        continue;
                    }
                    try {
                        std::vector<NodeId> set = plan.set;
                        InterventionResult* ref_result = &plan.reference_result;
                        InterventionResult local_ref;
                        if (plan.name == "cavs" && cfg.mi_from_subsample) {
                            set = select_adjustment(g, x, y, sub).chosen.members;
                            local_ref = do_effect(reference, x_col, y_col, to_cols(set));
                            ref_result = &local_ref;
                        }
                        InterventionResult est =
                            do_effect(sub, x_col, y_col, to_cols(set));
                        rec.error = cosine_error(*ref_result, est);
                    } catch (const Error& e) {
                        rec.failed = true;
                        rec.failure = e.what();
                    }
                    report.trials.push_back(std::move(rec));
                }
            }
        }
    }

    // Summaries in the configured method order.
    for (const std::string& m : cfg.methods) {
        std::vector<double> errors;
        for (const TrialRecord& t : report.trials)
            if (t.method == m && !t.failed) errors.push_back(t.error);
        std::sort(errors.begin(), errors.end());
        MethodSummary s;
        s.method = m;
        s.trials = static_cast<int>(errors.size());
        if (!errors.empty()) {
            double sum = 0.0;
            for (double e : errors) sum += e;
            s.mean = sum / static_cast<double>(errors.size());
            s.min = errors.front();
            s.max = errors.back();
            s.q25 = quantile(errors, 0.25);
            s.median = quantile(errors, 0.5);
            s.q75 = quantile(errors, 0.75);
        }
        report.summaries.push_back(s);
    }
    return report;
}

std::string report_to_csv(const ErrorReport& report) {
    std::ostringstream out;
    out << "# schema_version=" << kBenchSchemaVersion << "\n";
    out << "method,graph_seed,cpt_seed,subsample_seed,error\n";
    for (const TrialRecord& t : report.trials) {
        out << t.method << ',' << t.graph_seed << ',' << t.cpt_seed << ','
            << t.subsample_seed << ',';
        if (t.failed)
            out << "NA";
        else
            out << format_double(t.error);
        out << '\n';
    }
    return out.str();
}

std::string report_to_json(const ErrorReport& report) {
    nlohmann::json j;
    j["schema_version"] = kBenchSchemaVersion;
    j["kind"] = "bench_report";

    nlohmann::json cfg;
    const ExperimentConfig& c = report.config;
    if (c.random) {
        cfg["source"] = "random";
        cfg["nodes"] = c.random->nodes;
        cfg["edges"] = c.random->edges;
        cfg["cardinality"] = c.random->cardinality;
        cfg["prior"] = c.random->prior == CptPrior::normalized_uniform
                           ? "normalized_uniform"
                           : "dirichlet_flat";
        cfg["n_graphs"] = c.n_graphs;
        cfg["n_cpt_draws"] = c.n_cpt_draws;
    } else {
        cfg["source"] = "file";
    }
    if (!c.x.empty()) cfg["x"] = c.x;
    if (!c.y.empty()) cfg["y"] = c.y;
    cfg["reference_n"] = c.reference_n;
    cfg["subsample_n"] = c.subsample_n;
    cfg["k_subsamples"] = c.k_subsamples;
    cfg["methods"] = c.methods;
    cfg["seed"] = c.seed;
    cfg["mi_from_subsample"] = c.mi_from_subsample;
    j["config"] = cfg;

    j["provenance"] = report.provenance;

    nlohmann::json trials = nlohmann::json::array();
    for (const TrialRecord& t : report.trials) {
        nlohmann::json row;
        row["method"] = t.method;
        row["graph_seed"] = t.graph_seed;
        row["cpt_seed"] = t.cpt_seed;
        row["subsample_seed"] = t.subsample_seed;
        if (t.failed)
            row["failure"] = t.failure;
        else
            row["error"] = t.error;
        trials.push_back(row);
    }
    j["trials"] = trials;

    nlohmann::json summaries = nlohmann::json::array();
    for (const MethodSummary& s : report.summaries) {
        nlohmann::json row;
        row["method"] = s.method;
        row["trials"] = s.trials;
        row["mean"] = s.mean;
        row["min"] = s.min;
        row["max"] = s.max;
        row["q25"] = s.q25;
        row["median"] = s.median;
        row["q75"] = s.q75;
        summaries.push_back(row);
    }
    j["summary"] = summaries;
    return j.dump(2) + "\n";
}

}  // namespace cavs
