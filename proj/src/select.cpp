#include "cavs/select.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "cavs/errors.hpp"

namespace cavs {

namespace {

std::vector<int> sorted_columns(const Dataset& d, const std::vector<int>& columns) {
    std::vector<int> cols = columns;
    std::sort(cols.begin(), cols.end());
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] < 0 || cols[i] >= d.var_count())
            throw ValidationError("unknown variable column " + std::to_string(cols[i]));
        if (i > 0 && cols[i] == cols[i - 1])
            throw ValidationError("duplicate variable '" + d.variable(cols[i]) + "'");
    }
    return cols;
}

// Mixed-radix strides with the last column fastest; also the total state
// count, guarded against overflow.
std::pair<std::vector<std::int64_t>, std::int64_t> state_strides(
    const Dataset& d, const std::vector<int>& cols) {
    std::vector<std::int64_t> strides(cols.size(), 1);
    std::int64_t total = 1;
    for (std::size_t i = cols.size(); i-- > 0;) {
        strides[i] = total;
        std::int64_t card = static_cast<std::int64_t>(d.alphabet(cols[i]).size());
        if (total > (static_cast<std::int64_t>(1) << 56) / card)
            throw ValidationError("joint state space too large");
        total *= card;
    }
    return {strides, total};
}

}  // namespace

std::vector<std::vector<int>> joint_states(const Dataset& d,
                                           const std::vector<int>& columns) {
    if (columns.empty()) throw ValidationError("joint_states requires a non-empty set");
    std::vector<int> cols = sorted_columns(d, columns);
    auto [strides, total] = state_strides(d, cols);
    (void)strides;
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(total));
    std::vector<int> state(cols.size(), 0);
    for (std::int64_t i = 0; i < total; ++i) {
        out.push_back(state);
        for (std::size_t j = cols.size(); j-- > 0;) {
            if (++state[j] < static_cast<int>(d.alphabet(cols[j]).size())) break;
            state[j] = 0;
        }
    }
    return out;
}

double mutual_information(const Dataset& d, int x, const std::vector<int>& s,
                          MiUnit unit) {
    if (x < 0 || x >= d.var_count())
        throw ValidationError("unknown variable column " + std::to_string(x));
    if (d.row_count() < 1) throw ValidationError("mutual information needs data rows");
    if (s.empty()) return 0.0;

    std::vector<int> cols = sorted_columns(d, s);
    if (std::binary_search(cols.begin(), cols.end(), x))
        throw ValidationError("intervention variable '" + d.variable(x) +
                              "' cannot appear in the candidate set");

    auto [strides, total] = state_strides(d, cols);
    (void)total;
    const std::int64_t n = d.row_count();
    const int x_card = static_cast<int>(d.alphabet(x).size());

    std::vector<std::int64_t> x_count(static_cast<std::size_t>(x_card), 0);
    std::unordered_map<std::int64_t, std::int64_t> s_count;
    std::unordered_map<std::int64_t, std::int64_t> xs_count;

    for (std::int64_t r = 0; r < n; ++r) {
        std::int64_t key = 0;
        for (std::size_t j = 0; j < cols.size(); ++j)
            key += strides[j] * d.value(r, cols[j]);
        int xv = d.value(r, x);
        ++x_count[static_cast<std::size_t>(xv)];
        ++s_count[key];
        ++xs_count[key * x_card + xv];
    }

    double mi = 0.0;
    for (const auto& [joint_key, cnt] : xs_count) {
        std::int64_t key = joint_key / x_card;
        int xv = static_cast<int>(joint_key % x_card);
        double p_xs = static_cast<double>(cnt) / static_cast<double>(n);
        double p_x = static_cast<double>(x_count[static_cast<std::size_t>(xv)]) /
                     static_cast<double>(n);
        double p_s = static_cast<double>(s_count.at(key)) / static_cast<double>(n);
        mi += p_xs * std::log(p_xs / (p_x * p_s));
    }
    if (unit == MiUnit::bits) mi /= std::log(2.0);
    // Plug-in MI is non-negative; clip the floating-point residue.
    return mi < 0.0 ? 0.0 : mi;
}

SelectionReport select_adjustment(const MixedGraph& g, NodeId x, NodeId y,
                                  const Dataset& d, MiUnit unit,
                                  const BackdoorOptions& opts) {
    g.check_node(x);
    g.check_node(y);
    if (!g.is_dag()) throw ValidationError("selection requires a DAG");
    if (d.row_count() < 1) throw ValidationError("selection needs data rows");

    // Map graph nodes to dataset columns by name.
    std::vector<int> col_of(static_cast<std::size_t>(g.node_count()), -1);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto col = d.find_column(g.name(v));
        if (!col)
            throw ValidationError("graph variable '" + g.name(v) +
                                  "' is missing from the dataset");
        col_of[static_cast<std::size_t>(v)] = *col;
    }

    std::vector<CandidateSet> ranked = enumerate_minimal_backdoor_sets(g, x, y, opts);
    for (CandidateSet& c : ranked) {
        std::vector<int> s_cols;
        s_cols.reserve(c.members.size());
        for (NodeId m : c.members) s_cols.push_back(col_of[static_cast<std::size_t>(m)]);
        c.mi_score = mutual_information(d, col_of[static_cast<std::size_t>(x)], s_cols, unit);
    }

    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const CandidateSet& a, const CandidateSet& b) {
                         if (*a.mi_score != *b.mi_score) return *a.mi_score < *b.mi_score;
                         if (a.members.size() != b.members.size())
                             return a.members.size() < b.members.size();
                         return a.members < b.members;
                     });

    SelectionReport report;
    report.ranked = std::move(ranked);
    report.chosen = report.ranked.front();
    report.ties_broken = report.ranked.size() > 1 &&
                         *report.ranked[0].mi_score == *report.ranked[1].mi_score;
    return report;
}

}  // namespace cavs
