#pragma once

// Shared test helpers: an independent array-tape simulator, definitional
// brute-force oracles for the graph relations, an exhaustive walk-existence
// oracle, and a seeded corpus of footmark graphs and random subgraphs.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "npsim/comp_graph.hpp"
#include "npsim/exp_sim.hpp"
#include "npsim/feasible.hpp"
#include "npsim/harness.hpp"
#include "npsim/machine.hpp"
#include "npsim/sim.hpp"

namespace npsim::testing {

// --- Independent reference simulator ---------------------------------------

struct NaiveRun {
    RunStatus status = RunStatus::Halted;
    StateId final_state = kNone;
    bool accepted = false;
    long steps = 0;
    // One entry per executed step: (cell, state, symbol read).
    std::vector<std::tuple<int, StateId, SymId>> visits;
};

// Plain map-tape simulator with none of the graph bookkeeping.
inline NaiveRun naive_simulate(const MachineSpec& spec, const std::vector<SymId>& input,
                               long step_cap) {
    NaiveRun r;
    std::map<int, SymId> tape;
    for (size_t i = 0; i < input.size(); ++i) tape[static_cast<int>(i)] = input[i];
    int head = 0;
    StateId q = spec.initial;
    while (!spec.is_final(q)) {
        if (r.steps >= step_cap) {
            r.status = RunStatus::StepCapExceeded;
            return r;
        }
        auto it = tape.find(head);
        SymId s = it == tape.end() ? spec.blank_sym() : it->second;
        const Rule* rule = spec.rule(q, s);
        if (!rule) {
            r.status = RunStatus::Stuck;
            return r;
        }
        r.visits.emplace_back(head, q, s);
        tape[head] = rule->write;
        head += rule->dir;
        q = rule->next;
        ++r.steps;
    }
    r.final_state = q;
    r.accepted = q == spec.accept;
    return r;
}

inline NaiveRun naive_simulate(const MachineSpec& spec, std::string_view input, long step_cap) {
    return naive_simulate(spec, spec.to_symbols(input), step_cap);
}

// --- Definitional relation oracles ------------------------------------------

// Is z in the transition case of the previous visit of u's cell?
inline bool oracle_in_prec_case(const NodeStore& st, NodeId z, NodeId u) {
    const NodeData& du = st.node(u);
    const NodeData& dz = st.node(z);
    return du.tier > 0 && dz.index == du.index && dz.tier == du.tier - 1 &&
           dz.state == du.last_state && dz.symbol == du.last_symbol;
}

// Precedents of (u,v) by a full scan over the edge set: edges (v',u') with
// v' in the precedent case of v, u' at index(u), and u' = u, or u' in the
// precedent case of u, or tier(u) > tier(u') + 1.
inline EdgeList oracle_precedents(const CompGraph& g, const Edge& e) {
    const NodeStore& st = g.store();
    const NodeData& u = st.node(e.from);
    EdgeList out;
    for (const Edge& f : g.edges()) {
        if (st.node(f.to).index != u.index) continue;
        if (!oracle_in_prec_case(st, f.from, e.to)) continue;
        if (f.to == e.from || oracle_in_prec_case(st, f.to, e.from) ||
            u.tier > st.node(f.to).tier + 1)
            out.push_back(f);
    }
    return out;
}

// Succedents as the exact converse of the precedent relation.
inline EdgeList oracle_succedents(const CompGraph& g, const Edge& e) {
    EdgeList out;
    for (const Edge& f : g.edges()) {
        EdgeList prec = oracle_precedents(g, f);
        if (std::find(prec.begin(), prec.end(), e) != prec.end()) out.push_back(f);
    }
    return out;
}

// Ceiling adjacency, clause by clause: direct support one cell behind the
// starting endpoint, plus recursive precedent chains (same cell pair) that
// pass through folding chain-side endpoints and contribute the incoming
// edges of their non-folding nodes, excluding same-pair parallels.
inline void oracle_ceiling_collect(CompGraph& g, const Edge& e0, const Edge& c, NodeId y,
                                   std::set<std::pair<NodeId, NodeId>>& found) {
    for (const Edge& f : g.incoming(y))
        if (!(f == e0) && edge_index(g, f) != edge_index(g, c)) found.insert({f.from, f.to});
}

inline void oracle_ceiling_chain(CompGraph& g, const Edge& e0, const Edge& c, int i,
                                 std::set<std::pair<int, std::pair<NodeId, NodeId>>>& seen,
                                 std::set<std::pair<NodeId, NodeId>>& found) {
    if (!seen.insert({i, {c.from, c.to}}).second) return;
    for (NodeId y : {c.from, c.to})
        if (!is_folding_node(g, y)) oracle_ceiling_collect(g, e0, c, y, found);
    if (is_folding_node(g, endpoint_at(g, c, i))) {
        for (const Edge& prev : oracle_precedents(g, c))
            oracle_ceiling_chain(g, e0, prev, i, seen, found);
    } else if (!(c == e0)) {
        found.insert({c.from, c.to});  // the chain grounds on this edge
    }
}

inline EdgeList oracle_ceiling(CompGraph& g, const Edge& e0) {
    std::set<std::pair<int, std::pair<NodeId, NodeId>>> seen;
    std::set<std::pair<NodeId, NodeId>> found;
    const NodeStore& st = g.store();
    oracle_ceiling_collect(g, e0, e0, e0.from, found);
    if (is_folding_node(g, e0.from))
        for (const Edge& prev : oracle_precedents(g, e0))
            oracle_ceiling_chain(g, e0, prev, st.node(e0.from).index, seen, found);
    if (is_ex_pendant(g, e0)) {
        if (is_folding_node(g, e0.to)) {
            for (const Edge& prev : oracle_precedents(g, e0))
                oracle_ceiling_chain(g, e0, prev, st.node(e0.to).index, seen, found);
        } else {
            oracle_ceiling_collect(g, e0, e0, e0.to, found);
        }
    }
    EdgeList out;
    for (const auto& [a, b] : found) out.push_back({a, b});
    std::sort(out.begin(), out.end(), EdgeLess{&g.store()});
    return out;
}

// Cover edges as the raw chain closure: everything reachable from a final
// edge through backward ceiling-adjacency steps that keep contact (shared
// endpoint or a directed path into the supported edge).
inline EdgeSet oracle_cover(CompGraph& g, const EdgeSet& final_edges) {
    EdgeSet cover = g.make_edge_set();
    std::vector<Edge> stack;
    for (const Edge& e : final_edges)
        if (g.has_edge(e)) {
            cover.insert(e);
            stack.push_back(e);
        }
    while (!stack.empty()) {
        Edge e = stack.back();
        stack.pop_back();
        for (const Edge& f : oracle_ceiling(g, e)) {
            if (cover.count(f)) continue;
            if (edges_adjacent(g, f, e) || has_directed_path(g, f.to, e.from)) {
                cover.insert(f);
                stack.push_back(f);
            }
        }
    }
    return cover;
}

// --- Exhaustive walk-existence oracle ----------------------------------------

struct OracleBudgetExceeded {};

// Every computation walk is a surface-consistent path: a node may be entered
// only at tier 0 on a fresh cell, or one tier above the latest visit of its
// cell with matching previous-visit fields.
inline bool oracle_surface_ok(const NodeStore& st, NodeId cand,
                              const std::map<int, NodeData>& surface) {
    const NodeData& d = st.node(cand);
    auto it = surface.find(d.index);
    if (it == surface.end()) return d.tier == 0;
    return d.tier == it->second.tier + 1 && d.last_state == it->second.state &&
           d.last_symbol == it->second.symbol;
}

inline bool oracle_walk_dfs(const CompGraph& g, NodeId u, std::map<int, NodeData>& surface,
                            const Edge& target, long& budget) {
    if (--budget < 0) throw OracleBudgetExceeded{};
    for (const Edge& e : g.outgoing(u)) {
        if (!oracle_surface_ok(g.store(), e.to, surface)) continue;
        if (e == target) return true;
        const NodeData& d = g.store().node(e.to);
        auto it = surface.find(d.index);
        std::optional<NodeData> saved;
        if (it != surface.end()) saved = it->second;
        surface[d.index] = d;
        bool hit = oracle_walk_dfs(g, e.to, surface, target, budget);
        if (saved)
            surface[d.index] = *saved;
        else
            surface.erase(d.index);
        if (hit) return true;
    }
    return false;
}

// True iff some surface-consistent walk from an initial node traverses the
// target edge.  Throws OracleBudgetExceeded on pathological blowup.
inline bool oracle_walk_exists(const CompGraph& g, const std::set<NodeId>& initial_nodes,
                               const Edge& target, long budget = 4'000'000) {
    if (!g.has_edge(target)) return false;
    for (NodeId v : initial_nodes) {
        if (!g.contains_node(v)) continue;
        std::map<int, NodeData> surface;
        surface[g.store().node(v).index] = g.store().node(v);
        if (oracle_walk_dfs(g, v, surface, target, budget)) return true;
    }
    return false;
}

// Enumerates complete walks (maximal or ending in a final edge as required
// by the caller) that end with an edge of `finals`; each reported walk is
// the edge sequence from an initial node up to and including that edge.
inline void oracle_collect_walks_dfs(const CompGraph& g, NodeId u,
                                     std::map<int, NodeData>& surface, std::vector<Edge>& path,
                                     const EdgeSet& finals, std::vector<std::vector<Edge>>& out,
                                     long& budget) {
    if (--budget < 0) throw OracleBudgetExceeded{};
    for (const Edge& e : g.outgoing(u)) {
        if (!oracle_surface_ok(g.store(), e.to, surface)) continue;
        path.push_back(e);
        if (finals.count(e)) out.push_back(path);
        const NodeData& d = g.store().node(e.to);
        auto it = surface.find(d.index);
        std::optional<NodeData> saved;
        if (it != surface.end()) saved = it->second;
        surface[d.index] = d;
        oracle_collect_walks_dfs(g, e.to, surface, path, finals, out, budget);
        if (saved)
            surface[d.index] = *saved;
        else
            surface.erase(d.index);
        path.pop_back();
    }
}

inline std::vector<std::vector<Edge>> oracle_walks_ending_in(
    const CompGraph& g, const std::set<NodeId>& initial_nodes, const EdgeSet& finals,
    long budget = 4'000'000) {
    std::vector<std::vector<Edge>> out;
    for (NodeId v : initial_nodes) {
        if (!g.contains_node(v)) continue;
        std::map<int, NodeData> surface;
        surface[g.store().node(v).index] = g.store().node(v);
        std::vector<Edge> path;
        oracle_collect_walks_dfs(g, v, surface, path, finals, out, budget);
    }
    return out;
}

// --- Reference feasible construction ------------------------------------------

// Global fixed point: repeatedly delete any unprotected step-pendant edge
// (cover judged against the intact input), order-independent by exhaustion.
inline CompGraph oracle_feasible(const CompGraph& g, const std::set<NodeId>& initial_nodes,
                                 const EdgeSet& final_edges) {
    CompGraph cur = g;
    CompGraph full = g;
    bool any_final = false;
    for (const Edge& e : final_edges)
        if (cur.has_edge(e)) any_final = true;
    if (!any_final) {
        for (const Edge& e : EdgeList(cur.edges().begin(), cur.edges().end())) cur.remove_edge(e);
        return cur;
    }
    EdgeSet cover = compute_cover_edges(full, final_edges);
    EdgeSet prot = initial_edges_of(g, initial_nodes);
    for (const Edge& e : final_edges)
        if (g.has_edge(e)) prot.insert(e);
    bool changed = true;
    while (changed) {
        changed = false;
        EdgeList snapshot(cur.edges().begin(), cur.edges().end());
        for (const Edge& e : snapshot) {
            if (prot.count(e)) continue;
            if (is_step_pendant(cur, e, cover)) {
                cur.remove_edge(e);
                changed = true;
            }
        }
    }
    return cur;
}

// --- Seeded corpus -------------------------------------------------------------

struct FootmarkCase {
    std::uint64_t seed = 0;
    std::shared_ptr<MachineSpec> spec;  // keeps the store's spec pointer alive
    std::shared_ptr<NodeStore> store;
    CompGraph graph;
    std::set<NodeId> initial_nodes;
    EdgeSet final_edges;
};

// Complete-sweep footmark graph of a seeded random machine, or nullopt when
// the run produced no edges or exceeds max_edges.
inline std::optional<FootmarkCase> make_footmark_case(std::uint64_t seed,
                                                      const MachineBounds& bounds,
                                                      size_t max_edges) {
    DiffCase c = generate_case(seed, bounds);
    auto spec = std::make_shared<MachineSpec>(parse_machine_spec(c.machine_text));
    ExpOptions opt;
    opt.step_cap = c.step_cap;
    opt.complete_sweep = true;
    ExpResult r = simulate_all_certificates_exp(*spec, c.instance, c.cert_len, opt);
    if (r.footmarks->empty() || r.footmarks->size() > max_edges) return std::nullopt;
    FootmarkCase fc{seed, spec, r.store, *r.footmarks, {}, r.footmarks->make_edge_set()};
    fc.initial_nodes.insert(r.initial_nodes.begin(), r.initial_nodes.end());
    for (const Edge& e : r.final_edges) fc.final_edges.insert(e);
    return fc;
}

// Random subgraph of a footmark case: drop roughly the requested fraction of
// edges; final edges are restricted to survivors.
inline FootmarkCase thin_case(const FootmarkCase& base, std::uint64_t salt, double drop) {
    FootmarkCase out{base.seed, base.spec, base.store, CompGraph(base.store), base.initial_nodes,
                     base.graph.make_edge_set()};
    std::mt19937_64 rng(base.seed * 0x9e3779b97f4a7c15ULL + salt);
    std::bernoulli_distribution keep(1.0 - drop);
    for (const Edge& e : base.graph.edges())
        if (keep(rng)) out.graph.add_edge(e);
    for (const Edge& e : base.final_edges)
        if (out.graph.has_edge(e)) out.final_edges.insert(e);
    return out;
}

// Corpus of complete footmark graphs plus thinned variants, at least `want`
// entries, scanning seeds from seed0 upward.
inline std::vector<FootmarkCase> make_corpus(std::uint64_t seed0, size_t want,
                                             const MachineBounds& bounds, size_t max_edges,
                                             int variants_per_graph = 2) {
    std::vector<FootmarkCase> out;
    std::uint64_t seed = seed0;
    while (out.size() < want && seed < seed0 + 50 * want) {
        if (auto base = make_footmark_case(seed, bounds, max_edges)) {
            out.push_back(*base);
            for (int k = 1; k <= variants_per_graph && out.size() < want; ++k) {
                FootmarkCase t = thin_case(*base, static_cast<std::uint64_t>(k), 0.3);
                if (!t.graph.empty()) out.push_back(std::move(t));
            }
        }
        ++seed;
    }
    return out;
}

}  // namespace npsim::testing
