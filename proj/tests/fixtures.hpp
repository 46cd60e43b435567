#ifndef CAVS_TESTS_FIXTURES_HPP
#define CAVS_TESTS_FIXTURES_HPP

// Shared hand-built models exercised by several suites.

#include "cavs/dataset.hpp"
#include "cavs/graph.hpp"
#include "cavs/io.hpp"

namespace fixtures {

// Nine-node DAG (X, Y, V2..V8) whose minimal back-door sets for (X, Y) are
// {V8}, {V3,V7}, {V6,V7}. Pruning drops the edges into V4, the only
// non-ancestor of X or Y; X -> V2 is the only edge out of X.
cavs::MixedGraph enumeration_demo_dag();

// Three binary variables Z -> X, Z -> Y, X -> Y.
cavs::MixedGraph confounded_triangle();

// 301-row dataset over (X, Z, Y) with stratum counts
//   (X=0,Z=0): 1 row, none with Y=1     (X=0,Z=1): 100 rows, 80 with Y=1
//   (X=1,Z=0): 100 rows, 60 with Y=1    (X=1,Z=1): 100 rows, 70 with Y=1
// so Z=0 carries weight 101/301 and the (X=0,Z=0) cell is one sample.
cavs::Dataset sparse_stratum_dataset();

// Five-node CPDAG with undirected X -- Z1 -- Z2 and directed
// X -> V <- Z2, V -> Y, Z2 -> Y. Its equivalence class has exactly three
// members; (X, Y) is not adjustment amenable while (V, Y) is.
cavs::MixedGraph orientation_demo_cpdag();

// The three member DAGs of orientation_demo_cpdag(), as (tail, head) lists
// over the undirected part: {Z1->X, Z1->Z2}, {Z1->X, Z2->Z1},
// {X->Z1, Z1->Z2}.
std::vector<cavs::MixedGraph> orientation_demo_members();

// Chain V2 -> V1 -> P1 -> X with a near-deterministic last hop, V2 -> Y and
// X -> Y. All of {P1}, {V1}, {V2} close the back door; mutual information
// with X decays along the chain.
cavs::CptNetwork weak_parent_chain_net();

// Chain C3 -> C2 -> C1 -> X -> Y with C3 -> Y. Minimal back-door sets
// {C1}, {C2}, {C3}; the candidate farthest from X carries the least mutual
// information.
cavs::CptNetwork distance_ranked_net();

}  // namespace fixtures

#endif
