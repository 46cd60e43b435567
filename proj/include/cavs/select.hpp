#ifndef CAVS_SELECT_HPP
#define CAVS_SELECT_HPP

#include <vector>

#include "cavs/backdoor.hpp"
#include "cavs/dataset.hpp"
#include "cavs/graph.hpp"

namespace cavs {

/// Every joint category combination of the given dataset columns, in
/// canonical order: columns sorted by index, last column cycling fastest.
/// Each state is a category-index vector aligned with the sorted columns.
std::vector<std::vector<int>> joint_states(const Dataset& d,
                                           const std::vector<int>& columns);

enum class MiUnit { nats, bits };

/// Plug-in mutual information between column x and the joint of columns s,
/// from empirical relative frequencies. Cells with zero joint count
/// contribute nothing; an empty s yields exactly 0.
double mutual_information(const Dataset& d, int x, const std::vector<int>& s,
                          MiUnit unit = MiUnit::nats);

/// Candidate sets ranked by mutual information with the intervention
/// variable, ascending; `chosen` is ranked.front(). `ties_broken` reports
/// that the minimum was shared and the (cardinality, lexicographic) rule
/// decided.
struct SelectionReport {
    std::vector<CandidateSet> ranked;
    CandidateSet chosen;
    bool ties_broken = false;
};

/// Full selection pipeline on a DAG: enumerate minimal back-door sets for
/// (x, y), score each by mutual information with x on d, pick the argmin.
/// Every graph variable must be present in d (matched by name).
SelectionReport select_adjustment(const MixedGraph& g, NodeId x, NodeId y,
                                  const Dataset& d, MiUnit unit = MiUnit::nats,
                                  const BackdoorOptions& opts = {});

}  // namespace cavs

#endif
