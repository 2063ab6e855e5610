#pragma once

#include <set>
#include <vector>

#include "npsim/comp_graph.hpp"
#include "npsim/feasible.hpp"

namespace npsim {

// Walks the graph from the first initial-node edge (canonical order),
// replaying the surface and always taking the first surface-consistent
// continuation.  Returns an empty walk when no initial edge exists.
Walk take_arbitrary_walk(const CompGraph& g, const std::set<NodeId>& initial_nodes);

// An edge into a node with in-degree > 1 and out-degree > 0.
bool is_merging_edge(const CompGraph& g, const Edge& e);

// First merging edge of the walk, or its final edge.  Edges leaving an
// initial node are never selected: pruning must not remove initial edges,
// or a surviving walk sharing that opening edge would be lost for good.
Edge first_merging_or_final_edge(const CompGraph& g, const Walk& w,
                                 const std::set<NodeId>& initial_nodes = {});

struct PruneState {
    CompGraph graph;             // current pruned graph
    CompGraph original;          // graph before the first prune of this search
    EdgeSet final_edges;         // targets of feasible walks
    std::set<NodeId> initial_nodes;
    std::vector<Walk> attempted;  // walks already tried and pruned
};

// Removes the first merging (or final) edge of the attempted walk, keeps
// truncated obsolete walks alive by temporarily re-adding one surface-legal
// continuation edge per dead end, recomputes the feasible graph, then
// strips the temporary continuation edges again.
void prune_walk(PruneState& state, const Walk& walk);

struct VerifyStats {
    long iterations = 0;   // edge removals in the outer loop
    long walks_taken = 0;  // attempted walks across all searches
};

// Returns the target edge if a surviving walk ends in it; otherwise the
// first edge of the last remaining walk that no attempted walk used; or an
// invalid edge when the graph ran dry.
Edge find_feasible_or_disjoint_edge(const CompGraph& g, const std::set<NodeId>& initial_nodes,
                                    const Edge& target, VerifyStats* stats = nullptr);

// Decides whether some computation walk from the initial nodes ends with
// `target`, by feasible-graph pruning.
bool verify_existence_of_walk(const CompGraph& g, const std::set<NodeId>& initial_nodes,
                              const Edge& target, VerifyStats* stats = nullptr);

}  // namespace npsim
