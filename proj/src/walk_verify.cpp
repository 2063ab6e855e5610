#include "npsim/walk_verify.hpp"

#include <algorithm>

namespace npsim {

namespace {

// Wanted tier / previous-visit fields of a node, given the surface entry
// (the latest visited node) of its cell; first visits need tier 0.
bool surface_consistent(const NodeStore& store, NodeId cand,
                        const std::map<int, NodeData>& surface) {
    const NodeData& d = store.node(cand);
    auto it = surface.find(d.index);
    if (it == surface.end()) return d.tier == 0;
    const NodeData& prev = it->second;
    return d.tier == prev.tier + 1 && d.last_state == prev.state && d.last_symbol == prev.symbol;
}

}  // namespace

Walk take_arbitrary_walk(const CompGraph& g, const std::set<NodeId>& initial_nodes) {
    const NodeStore& store = g.store();
    EdgeLess less{&store};
    Walk w;
    Edge cur{kInvalidNode, kInvalidNode};
    for (NodeId v : initial_nodes)
        for (const Edge& e : g.outgoing(v))
            if (!cur.valid() || less(e, cur)) cur = e;
    if (!cur.valid()) return w;

    w.start = cur.from;
    std::map<int, NodeData> surface;
    while (true) {
        surface[store.node(cur.from).index] = store.node(cur.from);
        w.edges.push_back(cur);
        if (w.edges.size() > g.size())
            throw ContractError("walk exceeded the graph's edge count");
        Edge next{kInvalidNode, kInvalidNode};
        for (const Edge& e : g.outgoing(cur.to))
            if (surface_consistent(store, e.to, surface) && (!next.valid() || less(e, next)))
                next = e;
        if (!next.valid()) break;
        cur = next;
    }
    return w;
}

bool is_merging_edge(const CompGraph& g, const Edge& e) {
    return g.incoming(e.to).size() > 1 && !g.outgoing(e.to).empty();
}

Edge first_merging_or_final_edge(const CompGraph& g, const Walk& w,
                                 const std::set<NodeId>& initial_nodes) {
    if (w.edges.empty()) throw ContractError("empty walk has no removable edge");
    for (const Edge& e : w.edges)
        if (!initial_nodes.count(e.from) && is_merging_edge(g, e)) return e;
    return w.edges.back();
}

void prune_walk(PruneState& state, const Walk& walk) {
    Edge removable = first_merging_or_final_edge(state.graph, walk, state.initial_nodes);
    EdgeSet marks = state.final_edges;  // E_o: final edges plus temporary continuations
    CompGraph work = state.graph;

    // Re-attach one legal continuation to every walk truncated by earlier
    // prunes, so the feasible recomputation does not erase their bodies.
    const NodeStore& store = work.store();
    for (const Edge& f : state.original.edges()) {
        if (f == removable || marks.count(f) || work.has_edge(f)) continue;
        if (!work.contains_node(f.from)) continue;
        const NodeData& v = store.node(f.to);
        bool legal = v.tier == 0;
        if (!legal) {
            if (auto pc = store.find_case({v.index, v.tier - 1, v.last_state, v.last_symbol})) {
                for (NodeId z : store.case_members(*pc))
                    if (work.contains_node(z)) {
                        legal = true;
                        break;
                    }
            }
        }
        if (legal) {
            work.add_edge(f);
            marks.insert(f);
        }
    }

    work.remove_edge(removable);
    CompGraph next = compute_feasible_graph(work, state.initial_nodes, marks);
    for (const Edge& f : marks)
        if (!state.final_edges.count(f)) next.remove_edge(f);
    state.graph = std::move(next);
}

Edge find_feasible_or_disjoint_edge(const CompGraph& g, const std::set<NodeId>& initial_nodes,
                                    const Edge& target, VerifyStats* stats) {
    PruneState state{g, g, g.make_edge_set(), initial_nodes, {}};
    state.final_edges.insert(target);
    const Edge invalid{kInvalidNode, kInvalidNode};
    while (!state.graph.empty()) {
        Walk w = take_arbitrary_walk(state.graph, initial_nodes);
        if (stats) ++stats->walks_taken;
        if (w.edges.empty()) return invalid;
        // Walks are prefix-closed: traversing the target anywhere means some
        // walk ends with it.  (In verifier use the target head is a sink, so
        // this can only trigger at the walk's end.)
        if (std::find(w.edges.begin(), w.edges.end(), target) != w.edges.end()) return target;
        if (w.edges.size() == state.graph.size()) {
            // Only this walk remains; pick its first edge untouched by
            // earlier attempts (the final edge is never eligible).
            for (size_t i = 0; i + 1 < w.edges.size(); ++i) {
                const Edge& e = w.edges[i];
                bool used = false;
                for (const Walk& r : state.attempted)
                    if (std::find(r.edges.begin(), r.edges.end(), e) != r.edges.end()) {
                        used = true;
                        break;
                    }
                if (!used) return e;
            }
            return invalid;
        }
        state.attempted.push_back(w);
        prune_walk(state, w);
    }
    return invalid;
}

bool verify_existence_of_walk(const CompGraph& g, const std::set<NodeId>& initial_nodes,
                              const Edge& target, VerifyStats* stats) {
    if (!g.has_edge(target)) return false;
    CompGraph work = g;
    // A revisit terminal needs a reachable previous visit; bail out early
    // when no precedent edge survives in the graph.
    if (work.store().node(target.to).tier > 0 && get_precedents(work, target).empty()) return false;

    EdgeSet targets = work.make_edge_set();
    targets.insert(target);
    work = compute_feasible_graph(work, initial_nodes, targets);
    while (work.has_edge(target)) {
        Edge e = find_feasible_or_disjoint_edge(work, initial_nodes, target, stats);
        if (e == target) return true;
        if (!e.valid()) return false;
        work.remove_edge(e);
        if (stats) ++stats->iterations;
        work = compute_feasible_graph(work, initial_nodes, targets);
    }
    return false;
}

}  // namespace npsim
