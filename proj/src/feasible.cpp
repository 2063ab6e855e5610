#include "npsim/feasible.hpp"

#include <deque>

namespace npsim {

bool has_directed_path(const CompGraph& g, NodeId from, NodeId to) {
    if (from == to) return true;
    std::set<NodeId> seen{from};
    std::deque<NodeId> queue{from};
    while (!queue.empty()) {
        NodeId v = queue.front();
        queue.pop_front();
        for (const Edge& e : g.outgoing(v)) {
            if (e.to == to) return true;
            if (seen.insert(e.to).second) queue.push_back(e.to);
        }
    }
    return false;
}

EdgeSet compute_cover_edges(CompGraph& g, const EdgeSet& final_edges) {
    EdgeSet cover = g.make_edge_set();
    std::deque<Edge> queue;
    for (const Edge& e : final_edges)
        if (g.has_edge(e)) {
            cover.insert(e);
            queue.push_back(e);
        }
    while (!queue.empty()) {
        Edge e = queue.front();
        queue.pop_front();
        for (const Edge& f : ceiling_adjacent_edges(g, e)) {
            if (cover.count(f)) continue;
            if (edges_adjacent(g, f, e) || has_directed_path(g, f.to, e.from)) {
                cover.insert(f);
                queue.push_back(f);
            }
        }
    }
    return cover;
}

bool is_step_pendant(CompGraph& g, const Edge& e, const EdgeSet& cover) {
    if (is_ex_pendant(g, e)) return true;
    if (g.store().node(e.to).tier > 0 && get_precedents(g, e).empty()) return true;
    if (!cover.count(e) && get_succedents(g, e).empty()) return true;
    return false;
}

EdgeSet initial_edges_of(const CompGraph& g, const std::set<NodeId>& initial_nodes) {
    EdgeSet out = g.make_edge_set();
    for (NodeId v : initial_nodes)
        for (const Edge& e : g.outgoing(v)) out.insert(e);
    return out;
}

namespace {

// Lateral-support gate for one climb pass.  The trailing endpoint (the
// side the sweep came from) may excuse a missing neighbor when it folds.
bool sweep_gate(CompGraph& g, const Edge& f, const EdgeList& prev_layer, int dir,
                const EdgeSet& final_edges, const std::set<NodeId>& initial_nodes) {
    for (const Edge& e : prev_layer)
        if (edges_adjacent(g, f, e)) return true;
    int i = edge_index(g, f);
    NodeId trailing = endpoint_at(g, f, dir > 0 ? i : i + 1);
    if (is_folding_node(g, trailing)) return true;
    if (final_edges.count(f)) return true;
    if (initial_nodes.count(f.from)) return true;
    return false;
}

// Climb one cell layer: start from floor edges (and protected edges that
// have no precedent to climb from), follow succedents, keep edges passing
// the lateral gate.
EdgeSet step_up_edges(CompGraph& g, const EdgeList& layer, const EdgeList& prev_layer, int dir,
                      const EdgeSet& final_edges, const std::set<NodeId>& initial_nodes) {
    CompGraph layer_graph(g.store_ptr());
    for (const Edge& e : layer) layer_graph.add_edge(e);

    EdgeSet kept = g.make_edge_set();
    EdgeSet visited = g.make_edge_set();
    std::deque<Edge> queue;
    for (const Edge& e : layer) {
        bool is_floor = g.store().node(e.to).tier == 0;
        bool is_protected = final_edges.count(e) || initial_nodes.count(e.from);
        if (is_floor || (is_protected && get_precedents(layer_graph, e).empty()))
            if (visited.insert(e).second) queue.push_back(e);
    }
    while (!queue.empty()) {
        Edge e = queue.front();
        queue.pop_front();
        if (sweep_gate(g, e, prev_layer, dir, final_edges, initial_nodes)) kept.insert(e);
        for (const Edge& f : get_succedents(layer_graph, e))
            if (visited.insert(f).second) queue.push_back(f);
    }
    return kept;
}

// Descend within the climbed layer: only edges reachable from a cover or
// initial edge through precedent links survive.
EdgeSet step_down_edges(CompGraph& g, const EdgeSet& climbed, const EdgeSet& cover,
                        const std::set<NodeId>& initial_nodes) {
    CompGraph layer_graph(g.store_ptr());
    for (const Edge& e : climbed) layer_graph.add_edge(e);

    EdgeSet kept = g.make_edge_set();
    std::deque<Edge> queue;
    for (const Edge& e : climbed)
        if (cover.count(e) || initial_nodes.count(e.from)) queue.push_back(e);
    while (!queue.empty()) {
        Edge e = queue.front();
        queue.pop_front();
        if (!kept.insert(e).second) continue;
        for (const Edge& f : get_precedents(layer_graph, e))
            if (!kept.count(f)) queue.push_back(f);
    }
    return kept;
}

CompGraph sweep_edges(CompGraph& g, const EdgeSet& cover, const std::set<NodeId>& initial_nodes,
                      const EdgeSet& final_edges, int dir) {
    CompGraph out(g.store_ptr());
    if (g.empty()) return out;
    int lo = g.min_index();
    int hi = g.max_index();
    int i = dir > 0 ? lo : hi;
    for (; i >= lo && i <= hi; i += dir) {
        EdgeList prev_layer = out.edges_with_index(i - dir);
        EdgeList layer = g.edges_with_index(i);
        EdgeSet climbed = step_up_edges(g, layer, prev_layer, dir, final_edges, initial_nodes);
        for (const Edge& e : step_down_edges(g, climbed, cover, initial_nodes)) out.add_edge(e);
    }
    return out;
}

}  // namespace

CompGraph compute_feasible_graph(const CompGraph& g, const std::set<NodeId>& initial_nodes,
                                 const EdgeSet& final_edges, FeasibleStats* stats) {
    CompGraph cur = g;
    size_t initial_size = g.size();
    // Without a surviving target there is nothing to be feasible for.
    bool any_final = false;
    for (const Edge& e : final_edges)
        if (cur.has_edge(e)) any_final = true;
    if (!any_final) {
        for (const Edge& e : EdgeList(cur.edges().begin(), cur.edges().end())) cur.remove_edge(e);
        if (stats) {
            stats->sweeps = 0;
            stats->removed = initial_size;
        }
        return cur;
    }
    EdgeSet cover = compute_cover_edges(cur, final_edges);
    int sweeps = 0;
    while (!cur.empty()) {
        size_t before = cur.size();
        cur = sweep_edges(cur, cover, initial_nodes, final_edges, +1);
        ++sweeps;
        if (!cur.empty()) {
            cur = sweep_edges(cur, cover, initial_nodes, final_edges, -1);
            ++sweeps;
        }
        if (cur.size() == before) break;
    }
    if (stats) {
        stats->sweeps = sweeps;
        stats->removed = initial_size - cur.size();
    }
    return cur;
}

EdgeSet maximal_step_extended_component(const CompGraph& g, const EdgeSet& seed,
                                        const EdgeSet& cover, const EdgeSet& protected_edges) {
    CompGraph original = g;  // step adjacency is judged in the intact graph
    CompGraph residual = g;
    EdgeSet removed = g.make_edge_set();
    for (const Edge& e : seed)
        if (residual.remove_edge(e)) removed.insert(e);

    auto step_adjacent_to_removed = [&](const Edge& e) {
        for (const Edge& f : removed)
            if (edges_adjacent(original, e, f)) return true;
        for (const Edge& f : get_precedents(original, e))
            if (removed.count(f)) return true;
        for (const Edge& f : get_succedents(original, e))
            if (removed.count(f)) return true;
        return false;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        EdgeList snapshot(residual.edges().begin(), residual.edges().end());
        for (const Edge& e : snapshot) {
            if (protected_edges.count(e)) continue;
            if (step_adjacent_to_removed(e) && is_step_pendant(residual, e, cover)) {
                residual.remove_edge(e);
                removed.insert(e);
                changed = true;
            }
        }
    }
    return removed;
}

}  // namespace npsim
