#include "cavs/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "cavs/errors.hpp"
#include "cavs/random.hpp"

namespace cavs {

namespace {

constexpr double kRowSumTolerance = 1e-6;

bool valid_label(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            return out;
        }
        out.emplace_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

// Sorted parent list and the number of CPT rows it implies.
std::int64_t cpt_row_count(const MixedGraph& g,
                           const std::vector<std::vector<std::string>>& alphabets,
                           NodeId v) {
    std::int64_t rows = 1;
    for (NodeId p : g.parents(v))
        rows *= static_cast<std::int64_t>(alphabets[static_cast<std::size_t>(p)].size());
    return rows;
}

void draw_cpt_tables(CptNetwork& net, CptPrior prior, Rng& rng) {
    const int n_nodes = net.graph.node_count();
    net.cpts.assign(static_cast<std::size_t>(n_nodes), {});
    for (NodeId v = 0; v < n_nodes; ++v) {
        std::int64_t rows = cpt_row_count(net.graph, net.alphabets, v);
        int card = net.cardinality(v);
        auto& table = net.cpts[static_cast<std::size_t>(v)];
        table.assign(static_cast<std::size_t>(rows),
                     std::vector<double>(static_cast<std::size_t>(card), 0.0));
        for (auto& row : table) {
            double sum = 0.0;
            for (double& p : row) {
                double u = rng.next_unit();
                p = prior == CptPrior::normalized_uniform ? u : -std::log1p(-u);
                sum += p;
            }
            if (sum <= 0.0) {
                row.assign(row.size(), 1.0 / static_cast<double>(card));
            } else {
                for (double& p : row) p /= sum;
            }
        }
    }
}

}  // namespace

void CptNetwork::validate() const {
    if (!graph.is_dag())
        throw ValidationError("a CPT network requires a fully directed acyclic graph");
    if (alphabets.size() != static_cast<std::size_t>(graph.node_count()) ||
        cpts.size() != static_cast<std::size_t>(graph.node_count()))
        throw ValidationError("alphabet/CPT count does not match the node count");
    for (NodeId v = 0; v < graph.node_count(); ++v) {
        const auto& alphabet = alphabets[static_cast<std::size_t>(v)];
        if (alphabet.empty())
            throw ValidationError("variable '" + graph.name(v) + "' has an empty alphabet");
        const auto& table = cpts[static_cast<std::size_t>(v)];
        std::int64_t want = cpt_row_count(graph, alphabets, v);
        if (static_cast<std::int64_t>(table.size()) != want)
            throw ValidationError("CPT for '" + graph.name(v) + "' has " +
                                  std::to_string(table.size()) + " rows, expected " +
                                  std::to_string(want));
        for (std::size_t r = 0; r < table.size(); ++r) {
            if (table[r].size() != alphabet.size())
                throw ValidationError("CPT row " + std::to_string(r + 1) + " for '" +
                                      graph.name(v) + "' has the wrong width");
            double sum = 0.0;
            for (double p : table[r]) {
                if (p < 0.0 || p > 1.0)
                    throw ValidationError("CPT probability out of [0,1] for '" +
                                          graph.name(v) + "'");
                sum += p;
            }
            if (std::abs(sum - 1.0) > 1e-9)
                throw ValidationError("CPT row " + std::to_string(r + 1) + " for '" +
                                      graph.name(v) + "' sums to " + format_double(sum));
        }
    }
}

CptNetwork NetworkFile::cpt_network() const {
    if (!cpts)
        throw ValidationError("network file carries no CPTs");
    CptNetwork net{graph, alphabets, *cpts};
    net.validate();
    return net;
}

NetworkFile parse_network(std::string_view text) {
    enum class Section { none, variables, edges, cpts };
    Section section = Section::none;

    std::vector<std::string> names;
    std::vector<std::vector<std::string>> alphabets;
    std::optional<MixedGraph> graph;
    std::vector<std::pair<std::string, std::size_t>> edge_specs_lines;
    std::size_t undirected_edges = 0;

    // CPT assembly state.
    std::vector<std::vector<std::vector<double>>> cpts;
    std::vector<bool> have_cpt;
    bool any_cpt = false;
    int current_cpt_node = -1;
    std::int64_t rows_needed = 0;

    auto ensure_graph = [&]() {
        if (!graph) {
            if (names.empty()) throw ParseError("no variables declared");
            graph.emplace(names);
            cpts.assign(names.size(), {});
            have_cpt.assign(names.size(), false);
        }
    };

    std::vector<std::string> lines = split(text, '\n');
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const std::size_t lineno = li + 1;
        std::string line = lines[li];
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (current_cpt_node >= 0)
                throw ParseError("CPT block for '" + names[static_cast<std::size_t>(
                                     current_cpt_node)] + "' is incomplete", lineno);
            if (line == "[variables]") {
                if (section != Section::none)
                    throw ParseError("[variables] must be the first section", lineno);
                section = Section::variables;
            } else if (line == "[edges]") {
                if (section != Section::variables)
                    throw ParseError("[edges] must follow [variables]", lineno);
                ensure_graph();
                section = Section::edges;
            } else if (line == "[cpts]") {
                if (section != Section::variables && section != Section::edges)
                    throw ParseError("[cpts] must follow [variables] or [edges]", lineno);
                ensure_graph();
                section = Section::cpts;
                any_cpt = true;
            } else {
                throw ParseError("unknown section '" + line + "'", lineno);
            }
            continue;
        }

        switch (section) {
            case Section::none:
                throw ParseError("content before the [variables] section", lineno);
            case Section::variables: {
                std::size_t colon = line.find(':');
                if (colon == std::string::npos)
                    throw ParseError("expected 'name: state1,state2,...'", lineno);
                std::string name = trim(line.substr(0, colon));
                if (!valid_label(name))
                    throw ParseError("invalid variable name '" + name + "'", lineno);
                if (std::find(names.begin(), names.end(), name) != names.end())
                    throw ParseError("variable '" + name + "' declared twice", lineno);
                std::vector<std::string> states;
                for (const std::string& raw : split(line.substr(colon + 1), ',')) {
                    std::string s = trim(raw);
                    if (!valid_label(s))
                        throw ParseError("invalid state label '" + s + "' for '" +
                                             name + "'", lineno);
                    if (std::find(states.begin(), states.end(), s) != states.end())
                        throw ParseError("state '" + s + "' repeated for '" + name + "'",
                                         lineno);
                    states.push_back(s);
                }
                if (states.empty())
                    throw ParseError("variable '" + name + "' has no states", lineno);
                names.push_back(name);
                alphabets.push_back(std::move(states));
                break;
            }
            case Section::edges: {
                bool directed = line.find("->") != std::string::npos;
                bool undirected = line.find("--") != std::string::npos;
                if (directed == undirected)
                    throw ParseError("expected 'A -> B' or 'A -- B'", lineno);
                std::size_t pos = line.find(directed ? "->" : "--");
                std::string a = trim(line.substr(0, pos));
                std::string b = trim(line.substr(pos + 2));
                auto ia = graph->find_node(a);
                auto ib = graph->find_node(b);
                if (!ia) throw ParseError("unknown variable '" + a + "'", lineno);
                if (!ib) throw ParseError("unknown variable '" + b + "'", lineno);
                try {
                    if (directed)
                        graph->add_directed_edge(*ia, *ib);
                    else
                        graph->add_undirected_edge(*ia, *ib);
                } catch (const ValidationError& e) {
                    throw ParseError(e.what(), lineno);
                }
                if (undirected) ++undirected_edges;
                edge_specs_lines.emplace_back(line, lineno);
                break;
            }
            case Section::cpts: {
                if (current_cpt_node < 0) {
                    if (line.back() != ':')
                        throw ParseError("expected a 'name:' line opening a CPT block",
                                         lineno);
                    std::string name = trim(line.substr(0, line.size() - 1));
                    auto id = graph->find_node(name);
                    if (!id) throw ParseError("unknown variable '" + name + "'", lineno);
                    if (have_cpt[static_cast<std::size_t>(*id)])
                        throw ParseError("duplicate CPT block for '" + name + "'", lineno);
                    current_cpt_node = *id;
                    rows_needed = cpt_row_count(*graph, alphabets, *id);
                    continue;
                }
                if (line.back() == ':') {
                    auto node_ix = static_cast<std::size_t>(current_cpt_node);
                    throw ParseError("CPT block for '" + names[node_ix] +
                                         "' ended early: expected " +
                                         std::to_string(rows_needed) + " rows, got " +
                                         std::to_string(cpts[node_ix].size()),
                                     lineno);
                }
                std::istringstream cells(line);
                std::vector<double> row;
                std::string tok;
                while (cells >> tok) {
                    try {
                        std::size_t used = 0;
                        double v = std::stod(tok, &used);
                        if (used != tok.size()) throw std::invalid_argument(tok);
                        row.push_back(v);
                    } catch (const std::exception&) {
                        throw ParseError("bad probability literal '" + tok + "'", lineno);
                    }
                }
                auto node = static_cast<std::size_t>(current_cpt_node);
                if (row.size() != alphabets[node].size())
                    throw ParseError("CPT row for '" + names[node] + "' has " +
                                         std::to_string(row.size()) +
                                         " probabilities, expected " +
                                         std::to_string(alphabets[node].size()),
                                     lineno);
                double sum = 0.0;
                for (double p : row) {
                    if (p < 0.0)
                        throw ParseError("negative probability in CPT row for '" +
                                             names[node] + "'", lineno);
                    sum += p;
                }
                if (std::abs(sum - 1.0) > kRowSumTolerance)
                    throw ParseError("CPT row " +
                                         std::to_string(cpts[node].size() + 1) +
                                         " for '" + names[node] + "' sums to " +
                                         format_double(sum),
                                     lineno);
                // Exact renormalisation, skipped when already at 1 so that
                // re-parsing emitted files is value-stable.
                if (std::abs(sum - 1.0) > 1e-12)
                    for (double& p : row) p /= sum;
                cpts[node].push_back(std::move(row));
                if (static_cast<std::int64_t>(cpts[node].size()) == rows_needed) {
                    have_cpt[node] = true;
                    current_cpt_node = -1;
                }
                break;
            }
        }
    }

    if (current_cpt_node >= 0)
        throw ParseError("CPT block for '" +
                         names[static_cast<std::size_t>(current_cpt_node)] +
                         "' ended early: expected " + std::to_string(rows_needed) +
                         " rows, got " +
                         std::to_string(cpts[static_cast<std::size_t>(current_cpt_node)].size()));
    ensure_graph();

    NetworkFile file{*graph, alphabets, std::nullopt};
    if (any_cpt) {
        if (undirected_edges > 0)
            throw ParseError("CPTs are not allowed in a file with undirected edges");
        for (std::size_t v = 0; v < names.size(); ++v)
            if (!have_cpt[v])
                throw ParseError("missing CPT block for '" + names[v] + "'");
        file.cpts = std::move(cpts);
        file.cpt_network();  // full semantic validation
    }
    return file;
}

std::string emit_network(const NetworkFile& file) {
    std::ostringstream out;
    out << "[variables]\n";
    for (NodeId v = 0; v < file.graph.node_count(); ++v) {
        out << file.graph.name(v) << ": ";
        const auto& alphabet = file.alphabets[static_cast<std::size_t>(v)];
        for (std::size_t i = 0; i < alphabet.size(); ++i) {
            if (i) out << ',';
            out << alphabet[i];
        }
        out << '\n';
    }
    out << "\n[edges]\n";
    for (auto [a, b] : file.graph.directed_edges())
        out << file.graph.name(a) << " -> " << file.graph.name(b) << '\n';
    for (auto [a, b] : file.graph.undirected_edges())
        out << file.graph.name(a) << " -- " << file.graph.name(b) << '\n';
    if (file.cpts) {
        out << "\n[cpts]\n";
        for (NodeId v = 0; v < file.graph.node_count(); ++v) {
            out << file.graph.name(v) << ":\n";
            for (const auto& row : (*file.cpts)[static_cast<std::size_t>(v)]) {
                for (std::size_t i = 0; i < row.size(); ++i) {
                    if (i) out << ' ';
                    out << format_double(row[i]);
                }
                out << '\n';
            }
        }
    }
    return out.str();
}

std::string emit_network(const CptNetwork& net) {
    return emit_network(NetworkFile{net.graph, net.alphabets, net.cpts});
}

std::string emit_dot(const MixedGraph& g) {
    std::ostringstream out;
    out << "digraph {\n";
    for (NodeId v = 0; v < g.node_count(); ++v) out << "  " << g.name(v) << ";\n";
    for (auto [a, b] : g.directed_edges())
        out << "  " << g.name(a) << " -> " << g.name(b) << ";\n";
    for (auto [a, b] : g.undirected_edges())
        out << "  " << g.name(a) << " -> " << g.name(b) << " [dir=none];\n";
    out << "}\n";
    return out.str();
}

Dataset forward_sample(const CptNetwork& net, std::int64_t n, std::uint64_t seed) {
    net.validate();
    if (n <= 0) throw ValidationError("sample count must be positive");

    const MixedGraph& g = net.graph;
    std::vector<NodeId> order = g.topological_order();

    // Strides into each node's CPT rows: parents sorted by index, last fastest.
    std::vector<std::vector<std::int64_t>> strides(
        static_cast<std::size_t>(g.node_count()));
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const auto& ps = g.parents(v);
        std::vector<std::int64_t>& st = strides[static_cast<std::size_t>(v)];
        st.assign(ps.size(), 1);
        std::int64_t mul = 1;
        for (std::size_t i = ps.size(); i-- > 0;) {
            st[i] = mul;
            mul *= net.cardinality(ps[i]);
        }
    }

    Dataset out(g.names(), net.alphabets);
    Rng rng(seed);
    std::vector<int> record(static_cast<std::size_t>(g.node_count()), 0);
    for (std::int64_t r = 0; r < n; ++r) {
        for (NodeId v : order) {
            const auto& ps = g.parents(v);
            std::int64_t row = 0;
            for (std::size_t i = 0; i < ps.size(); ++i)
                row += strides[static_cast<std::size_t>(v)][i] *
                       record[static_cast<std::size_t>(ps[i])];
            record[static_cast<std::size_t>(v)] = rng.next_category(
                net.cpts[static_cast<std::size_t>(v)][static_cast<std::size_t>(row)]);
        }
        out.append_row(record);
    }
    return out;
}

CptNetwork random_network(int n_nodes, int n_edges, int cardinality,
                          std::uint64_t seed, CptPrior prior) {
    if (n_nodes < 1) throw ValidationError("need at least one node");
    if (cardinality < 2) throw ValidationError("cardinality must be at least 2");
    std::int64_t max_edges =
        static_cast<std::int64_t>(n_nodes) * (n_nodes - 1) / 2;
    if (n_edges < 0 || n_edges > max_edges)
        throw ValidationError("infeasible edge count " + std::to_string(n_edges) +
                              " for " + std::to_string(n_nodes) + " nodes");

    Rng rng(seed);

    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(n_nodes));
    for (int i = 1; i <= n_nodes; ++i) names.push_back("V" + std::to_string(i));

    // Random topological order over the nodes guarantees acyclicity.
    std::vector<int> order(static_cast<std::size_t>(n_nodes));
    for (int i = 0; i < n_nodes; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = n_nodes - 1; i > 0; --i)
        std::swap(order[static_cast<std::size_t>(i)],
                  order[static_cast<std::size_t>(rng.next_below(i + 1))]);

    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(max_edges));
    for (int i = 0; i < n_nodes; ++i)
        for (int j = i + 1; j < n_nodes; ++j)
            pairs.emplace_back(order[static_cast<std::size_t>(i)],
                               order[static_cast<std::size_t>(j)]);
    for (std::size_t i = pairs.size(); i-- > 1;)
        std::swap(pairs[i], pairs[static_cast<std::size_t>(rng.next_below(
                                static_cast<std::int64_t>(i) + 1))]);

    CptNetwork net;
    net.graph = MixedGraph(names);
    for (int e = 0; e < n_edges; ++e)
        net.graph.add_directed_edge(pairs[static_cast<std::size_t>(e)].first,
                                    pairs[static_cast<std::size_t>(e)].second);

    std::vector<std::string> labels;
    for (int c = 0; c < cardinality; ++c) labels.push_back(std::to_string(c));
    net.alphabets.assign(static_cast<std::size_t>(n_nodes), labels);

    draw_cpt_tables(net, prior, rng);
    net.validate();
    return net;
}

void redraw_cpts(CptNetwork& net, CptPrior prior, std::uint64_t seed) {
    Rng rng(seed);
    draw_cpt_tables(net, prior, rng);
    net.validate();
}

Dataset read_csv_dataset(
    std::string_view text,
    const std::optional<std::map<std::string, std::vector<std::string>>>& alphabets) {
    std::vector<std::string> lines = split(text, '\n');
    // Tolerate CRLF and a trailing newline.
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw ParseError("missing CSV header");

    std::vector<std::string> header;
    for (const std::string& raw : split(trim(lines[0]), ',')) {
        std::string name = trim(raw);
        if (!valid_label(name))
            throw ParseError("invalid variable name '" + name + "' in header", 1);
        if (std::find(header.begin(), header.end(), name) != header.end())
            throw ParseError("duplicate column '" + name + "'", 1);
        header.push_back(name);
    }

    const std::size_t ncol = header.size();
    std::vector<std::vector<std::string>> cells;
    cells.reserve(lines.size() - 1);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        std::string line = trim(lines[li]);
        if (line.empty())
            throw ParseError("blank row inside the table", li + 1);
        std::vector<std::string> row;
        for (const std::string& raw : split(line, ',')) {
            std::string cell = trim(raw);
            if (!valid_label(cell))
                throw ParseError("invalid label '" + cell + "'", li + 1);
            row.push_back(cell);
        }
        if (row.size() != ncol)
            throw ParseError("row has " + std::to_string(row.size()) +
                                 " cells, expected " + std::to_string(ncol),
                             li + 1);
        cells.push_back(std::move(row));
    }

    std::vector<std::vector<std::string>> col_alphabets(ncol);
    for (std::size_t c = 0; c < ncol; ++c) {
        if (alphabets && alphabets->count(header[c])) {
            col_alphabets[c] = alphabets->at(header[c]);
        } else {
            std::set<std::string> seen;
            for (const auto& row : cells) seen.insert(row[c]);
            if (seen.empty()) seen.insert("0");  // empty table: placeholder alphabet
            col_alphabets[c].assign(seen.begin(), seen.end());
        }
    }

    Dataset d(header, col_alphabets);
    std::vector<int> record(ncol, 0);
    for (std::size_t r = 0; r < cells.size(); ++r) {
        for (std::size_t c = 0; c < ncol; ++c) {
            const auto& alphabet = col_alphabets[c];
            auto it = std::find(alphabet.begin(), alphabet.end(), cells[r][c]);
            if (it == alphabet.end())
                throw ParseError("label '" + cells[r][c] + "' in row " +
                                     std::to_string(r + 1) + ", column '" + header[c] +
                                     "' is not in the variable's alphabet",
                                 r + 2);
            record[c] = static_cast<int>(it - alphabet.begin());
        }
        d.append_row(record);
    }
    return d;
}

std::string write_csv_dataset(const Dataset& d) {
    std::ostringstream out;
    for (int c = 0; c < d.var_count(); ++c) {
        if (c) out << ',';
        out << d.variable(c);
    }
    out << '\n';
    for (std::int64_t r = 0; r < d.row_count(); ++r) {
        for (int c = 0; c < d.var_count(); ++c) {
            if (c) out << ',';
            out << d.alphabet(c)[static_cast<std::size_t>(d.value(r, c))];
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace cavs
