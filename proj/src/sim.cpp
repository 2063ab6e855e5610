#include "npsim/sim.hpp"

#include <map>

namespace npsim {

const char* to_string(RunStatus s) {
    switch (s) {
        case RunStatus::Halted: return "halted";
        case RunStatus::StepCapExceeded: return "step-cap-exceeded";
        case RunStatus::Stuck: return "stuck";
    }
    return "?";
}

RunResult simulate_dtm(const MachineSpec& spec, const std::vector<SymId>& input, long step_cap,
                       CompGraph& g) {
    NodeStore& store = g.store();
    std::map<long, SymId> tape;
    for (size_t i = 0; i < input.size(); ++i) tape[static_cast<long>(i)] = input[i];
    SymId blank = spec.blank_sym();
    auto read = [&](long i) {
        auto it = tape.find(i);
        return it == tape.end() ? blank : it->second;
    };

    RunResult res;
    Surface surface;
    long pos = 0;
    NodeId v = store.intern({0, 0, spec.initial, read(0), kNone, kNone});
    res.walk.start = v;
    surface[0] = store.case_of(v);

    while (true) {
        const NodeData& d = store.node(v);
        if (spec.is_final(d.state)) {
            res.status = RunStatus::Halted;
            res.final_state = d.state;
            res.accepted = d.state == spec.accept;
            return res;
        }
        if (res.steps >= step_cap) {
            res.status = RunStatus::StepCapExceeded;
            return res;
        }
        const Rule* rule = spec.rule(d.state, d.symbol);
        if (!rule) {
            res.status = RunStatus::Stuck;
            return res;
        }
        tape[pos] = rule->write;
        long next = pos + rule->dir;
        NodeData nd;
        nd.index = static_cast<int>(next);
        nd.state = rule->next;
        nd.symbol = read(next);
        if (auto it = surface.find(nd.index); it != surface.end()) {
            const CaseKey& prev = store.case_key(it->second);
            nd.tier = prev.tier + 1;
            nd.last_state = prev.state;
            nd.last_symbol = prev.symbol;
        } else {
            nd.tier = 0;
        }
        NodeId w = store.intern(nd);
        g.add_edge(v, w);
        res.walk.edges.push_back({v, w});
        surface[nd.index] = store.case_of(w);
        v = w;
        pos = next;
        ++res.steps;
    }
}

OwnedRun simulate_dtm(const MachineSpec& spec, std::string_view input, long step_cap) {
    OwnedRun run;
    run.store = std::make_shared<NodeStore>(&spec);
    CompGraph g(run.store);
    run.result = simulate_dtm(spec, spec.to_symbols(input), step_cap, g);
    return run;
}

std::vector<std::vector<SymId>> all_certificates(const MachineSpec& spec, int cert_len) {
    std::vector<std::vector<SymId>> out;
    int n = spec.num_symbols();
    std::vector<SymId> cur(static_cast<size_t>(cert_len), 0);
    if (cert_len == 0) {
        out.push_back({});
        return out;
    }
    while (true) {
        out.push_back(cur);
        int pos = cert_len - 1;
        while (pos >= 0 && cur[static_cast<size_t>(pos)] == n - 1) {
            cur[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++cur[static_cast<size_t>(pos)];
    }
    return out;
}

std::string certificate_to_string(const MachineSpec& spec, const std::vector<SymId>& cert) {
    std::string out;
    for (SymId s : cert) out += spec.sym_name(s);
    return out;
}

DirectEnumResult enumerate_certificates_direct(const MachineSpec& spec, std::string_view instance,
                                               int cert_len, long step_cap) {
    DirectEnumResult res;
    std::vector<SymId> base = spec.to_symbols(instance);
    for (const auto& cert : all_certificates(spec, cert_len)) {
        std::vector<SymId> tape = base;
        tape.insert(tape.end(), cert.begin(), cert.end());
        CompGraph g(std::make_shared<NodeStore>(&spec));
        RunResult r = simulate_dtm(spec, tape, step_cap, g);
        ++res.total;
        res.statuses.push_back(r.status);
        res.verdicts.push_back(r.halted() && r.accepted);
        if (r.status == RunStatus::StepCapExceeded) ++res.capped;
        if (r.status == RunStatus::Stuck) ++res.stuck;
        if (r.halted() && r.accepted) {
            res.any_accepted = true;
            res.accepting.push_back(certificate_to_string(spec, cert));
        }
    }
    return res;
}

}  // namespace npsim
