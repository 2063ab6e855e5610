#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "npsim/comp_graph.hpp"
#include "npsim/sim.hpp"

namespace npsim {

struct ExpOptions {
    long step_cap = 0;
    // Keep exploring after the first accepting branch, so the footmarks
    // cover every certificate class.
    bool complete_sweep = false;
};

// One explored branch.  `assignment` maps certificate cells to the symbol
// chosen at their first visit; unvisited cells stay unassigned, so the
// branch stands for every certificate extending the assignment.
struct BranchRecord {
    std::map<int, SymId> assignment;
    RunStatus status = RunStatus::Halted;
    bool accepted = false;
    Walk walk;
};

struct ExpResult {
    bool accepted = false;
    bool any_capped = false;
    bool any_stuck = false;
    std::shared_ptr<NodeStore> store;
    std::shared_ptr<CompGraph> footmarks;
    // Initial nodes: one per starting-cell content (several only when the
    // starting cell itself is a certificate cell).
    std::vector<NodeId> initial_nodes;
    std::vector<Edge> final_edges;         // last edges of all halting branches
    std::vector<Edge> accept_final_edges;  // subset ending in the accept state
    std::vector<BranchRecord> branches;
    int instance_len = 0;
    int cert_len = 0;

    // Verdict of the unique branch consistent with the given certificate.
    const BranchRecord& branch_for(const std::vector<SymId>& cert) const;
};

// Depth-first sweep over all certificate contents: deterministic steps are
// replayed; at the first visit of an unassigned certificate cell the run
// forks over every tape symbol (alphabet order, blank last).  All walks are
// superimposed into one footmarks graph.
ExpResult simulate_all_certificates_exp(const MachineSpec& spec, std::string_view instance,
                                        int cert_len, const ExpOptions& opt);

struct FootmarksBounds {
    int width = 0;        // distinct cell indices
    int height = 0;       // tier levels (max tier + 1)
    int layer_size = 0;   // max vertices in one cell-index layer
    size_t size = 0;
    bool width_ok = false;     // width <= 2*cap + 1
    bool height_ok = false;    // height <= cap
    bool size_law_ok = false;  // size <= width * layer_size^2
};
FootmarksBounds footmarks_bounds(const CompGraph& g, long step_cap);

}  // namespace npsim
