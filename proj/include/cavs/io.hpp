#ifndef CAVS_IO_HPP
#define CAVS_IO_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cavs/dataset.hpp"
#include "cavs/graph.hpp"

namespace cavs {

/// A DAG with one conditional probability table per node. CPT rows are
/// indexed by the joint parent state in canonical order: parents sorted by
/// node index, the last parent cycling fastest. Every row sums to 1.
struct CptNetwork {
    MixedGraph graph;
    std::vector<std::vector<std::string>> alphabets;         // per node
    std::vector<std::vector<std::vector<double>>> cpts;      // [node][row][category]

    int cardinality(NodeId v) const {
        return static_cast<int>(alphabets[static_cast<std::size_t>(v)].size());
    }
    void validate() const;
};

/// In-memory form of a network file: always a graph with declared variable
/// alphabets, optionally with CPTs. Undirected edges are permitted only in
/// CPT-less structural files.
struct NetworkFile {
    MixedGraph graph;
    std::vector<std::vector<std::string>> alphabets;
    std::optional<std::vector<std::vector<std::vector<double>>>> cpts;

    bool has_cpts() const { return cpts.has_value(); }
    CptNetwork cpt_network() const;
};

/// Parses the section-based network format:
///
///   [variables]          one `name: state1,state2,...` line per variable
///   [edges]              `A -> B` directed, `A -- B` undirected
///   [cpts]               per node: a `name:` line, then one row of
///                        probabilities per joint parent state
///
/// `#` starts a comment; names and state labels match [A-Za-z0-9_]+.
/// Syntax and semantic violations raise ParseError with a line number.
NetworkFile parse_network(std::string_view text);

std::string emit_network(const NetworkFile& file);
std::string emit_network(const CptNetwork& net);

/// GraphViz-compatible structure dump.
std::string emit_dot(const MixedGraph& g);

/// n i.i.d. records drawn in topological order. Identical (net, n, seed)
/// inputs give bit-identical datasets.
Dataset forward_sample(const CptNetwork& net, std::int64_t n, std::uint64_t seed);

enum class CptPrior {
    normalized_uniform,  // independent U(0,1) entries, row-normalized
    dirichlet_flat       // Dirichlet(1,...,1) rows
};

/// Random DAG with `n_edges` edges sprinkled uniformly over a random node
/// order, every variable `cardinality`-ary, CPT rows drawn per `prior`.
/// Node names are V1..Vn, category labels 0..cardinality-1.
CptNetwork random_network(int n_nodes, int n_edges, int cardinality,
                          std::uint64_t seed,
                          CptPrior prior = CptPrior::normalized_uniform);

/// Redraws every CPT row of the network from the prior under a fresh seed;
/// the graph and alphabets stay as they are.
void redraw_cpts(CptNetwork& net, CptPrior prior, std::uint64_t seed);

/// CSV with a mandatory header of variable names; cells are category labels
/// restricted to [A-Za-z0-9_]+. Alphabets are inferred from the observed
/// values (sorted) unless supplied per variable name.
Dataset read_csv_dataset(
    std::string_view text,
    const std::optional<std::map<std::string, std::vector<std::string>>>& alphabets =
        std::nullopt);

std::string write_csv_dataset(const Dataset& d);

}  // namespace cavs

#endif
