#include "npsim/poly_sim.hpp"

#include <algorithm>

namespace npsim {

const char* to_string(PolyVerdict v) {
    switch (v) {
        case PolyVerdict::Accepted: return "accepted";
        case PolyVerdict::Rejected: return "rejected";
        case PolyVerdict::Capped: return "capped";
    }
    return "?";
}

namespace {

bool within_caps(const NpGraphParams& p, const NodeData& d) {
    if (d.tier > p.step_cap) return false;
    long lo = -(p.step_cap + 1);
    long hi = static_cast<long>(p.cert_hi()) + p.step_cap + 1;
    return d.index >= lo && d.index <= hi;
}

}  // namespace

EdgeList get_next_edges(CompGraph& h, const NpGraphParams& p, NodeId v) {
    NodeStore& store = h.store();
    const MachineSpec& spec = *p.spec;
    EdgeList out;
    const NodeData& d = store.node(v);
    if (spec.is_final(d.state)) return out;
    const Rule* rule = spec.rule(d.state, d.symbol);
    if (!rule) return out;
    int i = d.index + rule->dir;
    StateId q = rule->next;

    // First-visit candidates: the cell's fixed content, or every tape
    // symbol inside the certificate window.
    if (i >= 0 && i < p.cert_lo()) {
        out.push_back({v, store.intern({i, 0, q, p.instance[static_cast<size_t>(i)], kNone, kNone})});
    } else if (i >= p.cert_lo() && i < p.cert_hi()) {
        int n = spec.num_symbols();
        if (p.fault_drop_last_branch) --n;
        for (SymId s = 0; s < n; ++s)
            out.push_back({v, store.intern({i, 0, q, s, kNone, kNone})});
    } else {
        out.push_back({v, store.intern({i, 0, q, spec.blank_sym(), kNone, kNone})});
    }

    // Revisit candidates: any transition case could have been the previous
    // visit, at any tier up to one above the cell's current maximum in h.
    int max_tier = -1;
    for (NodeId w : h.nodes()) {
        const NodeData& nd = store.node(w);
        if (nd.index == i) max_tier = std::max(max_tier, nd.tier);
    }
    for (StateId lq = 0; lq < spec.num_states(); ++lq) {
        if (spec.is_final(lq)) continue;
        for (SymId ls = 0; ls < spec.num_symbols(); ++ls) {
            const Rule* prev = spec.rule(lq, ls);
            if (!prev) continue;
            for (int t = 1; t <= max_tier + 1; ++t)
                out.push_back({v, store.intern({i, t, q, prev->write, lq, ls})});
        }
    }
    return out;
}

PolyVerdict is_accepted_on_footmarks(CompGraph& h, const NpGraphParams& p,
                                     const std::set<NodeId>& initial_nodes, PolyStats& stats,
                                     long verify_budget) {
    NodeStore& store = h.store();
    const MachineSpec& spec = *p.spec;

    // Seed edges may already reach the accept state.
    for (const Edge& e : h.edges())
        if (store.node(e.to).state == spec.accept) return PolyVerdict::Accepted;

    EdgeSet queue = h.make_edge_set();
    auto collect_boundary = [&]() {
        for (NodeId u : h.nodes()) {
            const NodeData& d = store.node(u);
            if (spec.is_final(d.state)) continue;
            for (const Edge& e : get_next_edges(h, p, u)) {
                const NodeData& t = store.node(e.to);
                if (h.contains_node(e.to)) continue;  // boundary: target outside V(H)
                if (t.state == spec.reject) continue;
                if (h.has_edge(e)) continue;
                if (!within_caps(p, t)) {
                    stats.capped = true;
                    if (stats.cap_reason.empty()) stats.cap_reason = "candidate outside tier/index caps";
                    continue;
                }
                queue.insert(e);
            }
        }
    };
    collect_boundary();

    while (true) {
        ++stats.rounds;
        EdgeSet verified = h.make_edge_set();
        bool accepted = false;
        for (const Edge& e : EdgeList(queue.begin(), queue.end())) {
            if (h.has_edge(e) || h.contains_node(e.to)) continue;
            if (verify_budget > 0 && stats.verify_calls >= verify_budget) {
                stats.capped = true;
                if (stats.cap_reason.empty()) stats.cap_reason = "verify-call budget exhausted";
                stats.h_edges = h.size();
                return PolyVerdict::Capped;
            }
            ++stats.verify_calls;
            CompGraph trial = h;
            trial.add_edge(e);
            if (verify_existence_of_walk(trial, initial_nodes, e)) {
                h.add_edge(e);
                verified.insert(e);
                if (store.node(e.to).state == spec.accept) {
                    accepted = true;
                    break;
                }
            }
        }
        stats.h_edges = h.size();
        if (accepted) return PolyVerdict::Accepted;
        if (verified.empty())
            return stats.capped ? PolyVerdict::Capped : PolyVerdict::Rejected;
        collect_boundary();
        for (const Edge& e : verified) queue.erase(e);
        for (const Edge& e : h.edges()) queue.erase(e);
    }
}

PolyResult simulate_all_certificates_poly(const MachineSpec& spec, std::string_view instance,
                                          int cert_len, const PolyOptions& opt) {
    PolyResult res;
    res.store = std::make_shared<NodeStore>(&spec);
    res.h = std::make_shared<CompGraph>(res.store);
    NpGraphParams p;
    p.spec = &spec;
    p.instance = spec.to_symbols(instance);
    p.cert_len = cert_len;
    p.step_cap = opt.step_cap;
    p.fault_drop_last_branch = opt.fault_drop_last_branch;

    if (spec.initial == spec.accept) {
        res.verdict = PolyVerdict::Accepted;
        return res;
    }
    if (spec.initial == spec.reject) {
        res.verdict = PolyVerdict::Rejected;
        return res;
    }

    // Starting-cell contents: fixed instance symbol, every tape symbol when
    // the certificate window covers cell 0, blank otherwise.
    std::vector<SymId> starts;
    if (!p.instance.empty())
        starts.push_back(p.instance[0]);
    else if (p.cert_lo() <= 0 && 0 < p.cert_hi()) {
        int n = spec.num_symbols();
        if (p.fault_drop_last_branch) --n;
        for (SymId s = 0; s < n; ++s) starts.push_back(s);
    } else {
        starts.push_back(spec.blank_sym());
    }

    NodeStore& store = *res.store;
    CompGraph& h = *res.h;
    bool seeded_accept = false;
    for (SymId s : starts) {
        NodeId v0 = store.intern({0, 0, spec.initial, s, kNone, kNone});
        res.initial_nodes.insert(v0);
        for (const Edge& e : get_next_edges(h, p, v0)) {
            const NodeData& t = store.node(e.to);
            if (t.tier != 0) continue;  // one step from the start: first visits only
            if (t.state == spec.reject) continue;
            if (t.state == spec.accept) seeded_accept = true;
            h.add_edge(e);
        }
    }
    if (seeded_accept) {
        res.verdict = PolyVerdict::Accepted;
        res.stats.h_edges = h.size();
        return res;
    }
    if (h.empty()) {
        // Every first move rejects or the machine is stuck at the start.
        res.verdict = PolyVerdict::Rejected;
        return res;
    }
    res.verdict = is_accepted_on_footmarks(h, p, res.initial_nodes, res.stats, opt.verify_budget);
    return res;
}

}  // namespace npsim
