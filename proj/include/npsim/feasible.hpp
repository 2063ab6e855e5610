#pragma once

#include <set>

#include "npsim/comp_graph.hpp"

namespace npsim {

// True when a directed path runs from `from` to `to` (possibly length 0).
bool has_directed_path(const CompGraph& g, NodeId from, NodeId to);

// Transitive closure of ceiling adjacency starting from the final edges:
// candidates come from ceiling_adjacent_edges and are kept when they touch
// the current cover edge or some directed path leads from them to it.
EdgeSet compute_cover_edges(CompGraph& g, const EdgeSet& final_edges);

// e is step-pendant when it is ex-pendant, or has no precedent edge while
// its terminal sits above tier 0, or has no succedent edge and is not a
// cover edge.
bool is_step_pendant(CompGraph& g, const Edge& e, const EdgeSet& cover);

struct FeasibleStats {
    int sweeps = 0;
    size_t removed = 0;
};

// Strips everything that cannot belong to a surviving walk: alternating
// left-to-right / right-to-left sweeps rebuild the graph layer by layer
// (climb from floor edges with lateral support, then descend from cover and
// initial edges) until a full round removes nothing.
CompGraph compute_feasible_graph(const CompGraph& g, const std::set<NodeId>& initial_nodes,
                                 const EdgeSet& final_edges, FeasibleStats* stats = nullptr);

// Reference fixed point for testing: grow `seed` by edges step-adjacent to
// the removed set that are step-pendant in the remaining graph, skipping
// protected edges.  Returns the removed set.
EdgeSet maximal_step_extended_component(const CompGraph& g, const EdgeSet& seed,
                                        const EdgeSet& cover, const EdgeSet& protected_edges);

// Edges leaving a node of `initial_nodes`.
EdgeSet initial_edges_of(const CompGraph& g, const std::set<NodeId>& initial_nodes);

}  // namespace npsim
