#include "npsim/exp_sim.hpp"

#include <algorithm>

namespace npsim {

namespace {

struct BranchState {
    long pos = 0;
    NodeId v = kInvalidNode;
    long steps = 0;
    Surface surface;
    std::map<long, SymId> tape;
    Walk walk;
    std::map<int, SymId> assignment;
};

}  // namespace

const BranchRecord& ExpResult::branch_for(const std::vector<SymId>& cert) const {
    for (const BranchRecord& b : branches) {
        bool match = true;
        for (const auto& [cell, sym] : b.assignment) {
            size_t off = static_cast<size_t>(cell - instance_len);
            if (off >= cert.size() || cert[off] != sym) {
                match = false;
                break;
            }
        }
        if (match) return b;
    }
    throw ContractError("no explored branch covers this certificate");
}

ExpResult simulate_all_certificates_exp(const MachineSpec& spec, std::string_view instance,
                                        int cert_len, const ExpOptions& opt) {
    ExpResult res;
    res.store = std::make_shared<NodeStore>(&spec);
    res.footmarks = std::make_shared<CompGraph>(res.store);
    res.instance_len = static_cast<int>(instance.size());
    res.cert_len = cert_len;
    NodeStore& store = *res.store;
    CompGraph& g = *res.footmarks;
    SymId blank = spec.blank_sym();
    std::vector<SymId> base = spec.to_symbols(instance);
    const int cert_lo = res.instance_len;
    const int cert_hi = res.instance_len + cert_len;

    auto read = [&](const BranchState& st, long i) {
        auto it = st.tape.find(i);
        if (it != st.tape.end()) return it->second;
        if (i >= 0 && i < static_cast<long>(base.size())) return base[static_cast<size_t>(i)];
        return blank;
    };
    auto is_cert_cell = [&](long i) { return i >= cert_lo && i < cert_hi; };

    std::vector<BranchState> stack;

    // The starting cell may itself be a certificate cell (empty instance).
    if (is_cert_cell(0)) {
        for (SymId s = spec.num_symbols() - 1; s >= 0; --s) {
            BranchState st;
            st.tape[0] = s;
            st.assignment[0] = s;
            st.v = store.intern({0, 0, spec.initial, s, kNone, kNone});
            st.surface[0] = store.case_of(st.v);
            st.walk.start = st.v;
            res.initial_nodes.push_back(st.v);
            stack.push_back(std::move(st));
        }
        std::reverse(res.initial_nodes.begin(), res.initial_nodes.end());
    } else {
        BranchState st;
        st.v = store.intern({0, 0, spec.initial, read(st, 0), kNone, kNone});
        st.surface[0] = store.case_of(st.v);
        st.walk.start = st.v;
        res.initial_nodes.push_back(st.v);
        stack.push_back(std::move(st));
    }

    auto finish = [&](BranchState&& st, RunStatus status, bool accepted) {
        BranchRecord rec;
        rec.assignment = std::move(st.assignment);
        rec.status = status;
        rec.accepted = accepted;
        rec.walk = std::move(st.walk);
        if (status == RunStatus::Halted && !rec.walk.edges.empty()) {
            const Edge& fin = rec.walk.edges.back();
            if (std::find(res.final_edges.begin(), res.final_edges.end(), fin) ==
                res.final_edges.end())
                res.final_edges.push_back(fin);
            if (accepted && std::find(res.accept_final_edges.begin(), res.accept_final_edges.end(),
                                      fin) == res.accept_final_edges.end())
                res.accept_final_edges.push_back(fin);
        }
        if (status == RunStatus::StepCapExceeded) res.any_capped = true;
        if (status == RunStatus::Stuck) res.any_stuck = true;
        if (accepted) res.accepted = true;
        res.branches.push_back(std::move(rec));
    };

    while (!stack.empty()) {
        BranchState st = std::move(stack.back());
        stack.pop_back();
        while (true) {
            const NodeData d = store.node(st.v);
            if (spec.is_final(d.state)) {
                bool acc = d.state == spec.accept;
                finish(std::move(st), RunStatus::Halted, acc);
                break;
            }
            if (st.steps >= opt.step_cap) {
                finish(std::move(st), RunStatus::StepCapExceeded, false);
                break;
            }
            const Rule* rule = spec.rule(d.state, d.symbol);
            if (!rule) {
                finish(std::move(st), RunStatus::Stuck, false);
                break;
            }
            st.tape[st.pos] = rule->write;
            long next = st.pos + rule->dir;
            auto surf_it = st.surface.find(static_cast<int>(next));
            if (surf_it == st.surface.end() && is_cert_cell(next) &&
                !st.tape.count(next)) {
                // First visit of an open certificate cell: fork over Gamma.
                // Pushed in reverse so alphabet order is explored first.
                for (SymId s = spec.num_symbols() - 1; s >= 0; --s) {
                    BranchState fork = st;
                    fork.tape[next] = s;
                    fork.assignment[static_cast<int>(next)] = s;
                    NodeId w = store.intern(
                        {static_cast<int>(next), 0, rule->next, s, kNone, kNone});
                    g.add_edge(fork.v, w);
                    fork.walk.edges.push_back({fork.v, w});
                    fork.surface[static_cast<int>(next)] = store.case_of(w);
                    fork.v = w;
                    fork.pos = next;
                    ++fork.steps;
                    stack.push_back(std::move(fork));
                }
                break;
            }
            NodeData nd;
            nd.index = static_cast<int>(next);
            nd.state = rule->next;
            nd.symbol = read(st, next);
            if (surf_it != st.surface.end()) {
                const CaseKey& prev = store.case_key(surf_it->second);
                nd.tier = prev.tier + 1;
                nd.last_state = prev.state;
                nd.last_symbol = prev.symbol;
            } else {
                nd.tier = 0;
            }
            NodeId w = store.intern(nd);
            g.add_edge(st.v, w);
            st.walk.edges.push_back({st.v, w});
            st.surface[nd.index] = store.case_of(w);
            st.v = w;
            st.pos = next;
            ++st.steps;
        }
        if (res.accepted && !opt.complete_sweep) break;
    }
    return res;
}

FootmarksBounds footmarks_bounds(const CompGraph& g, long step_cap) {
    FootmarksBounds b;
    if (!g.empty()) {
        b.width = g.width();
        b.height = g.height();
        b.size = g.size();
        std::map<int, int> per_index;
        for (NodeId v : g.nodes()) ++per_index[g.store().node(v).index];
        for (const auto& [idx, n] : per_index) b.layer_size = std::max(b.layer_size, n);
    }
    b.width_ok = b.width <= 2 * step_cap + 1;
    b.height_ok = b.height <= step_cap;
    // The edge-count law counts vertices per cell-index layer, not tiers:
    // adjacent layers of at most L vertices each admit at most L^2 edges.
    b.size_law_ok = b.size <= static_cast<size_t>(b.width) * static_cast<size_t>(b.layer_size) *
                                  static_cast<size_t>(b.layer_size);
    return b;
}

}  // namespace npsim
