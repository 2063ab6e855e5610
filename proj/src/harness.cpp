#include "npsim/harness.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "json.hpp"

#include "npsim/exp_sim.hpp"
#include "npsim/poly_sim.hpp"
#include "npsim/sim.hpp"

namespace npsim {

const char* to_string(EngineStatus s) {
    switch (s) {
        case EngineStatus::Yes: return "yes";
        case EngineStatus::No: return "no";
        case EngineStatus::Capped: return "capped";
        case EngineStatus::Error: return "error";
    }
    return "?";
}

MachineSpec generate_random_machine(std::uint64_t seed, const MachineBounds& bounds) {
    std::mt19937_64 rng(seed);
    auto pick = [&](int lo, int hi) {  // inclusive
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    int n_work = pick(1, bounds.max_states);
    int n_sym = pick(1, bounds.max_symbols);

    MachineSpec m;
    for (int i = 0; i < n_work; ++i) m.states.push_back("q" + std::to_string(i));
    m.states.push_back("qa");
    m.states.push_back("qr");
    m.initial = 0;
    m.accept = n_work;
    m.reject = n_work + 1;
    for (int i = 0; i < n_sym; ++i) m.tape_alphabet += static_cast<char>('a' + i);
    m.blank = '_';
    m.tape_alphabet += m.blank;

    // Total on the working states so runs never get stuck.
    for (StateId q = 0; q < n_work; ++q)
        for (SymId s = 0; s < m.num_symbols(); ++s) {
            Rule r;
            r.write = static_cast<SymId>(rng() % static_cast<std::uint64_t>(m.num_symbols()));
            r.dir = (rng() & 1) ? 1 : -1;
            r.next = static_cast<StateId>(rng() % static_cast<std::uint64_t>(m.num_states()));
            m.delta.emplace(std::make_pair(q, s), r);
        }
    m.validate();
    return m;
}

DiffCase generate_case(std::uint64_t seed, const MachineBounds& bounds) {
    MachineSpec m = generate_random_machine(seed, bounds);
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    DiffCase c;
    c.seed = seed;
    c.machine_text = write_machine_spec(m);
    int inst_len = static_cast<int>(rng() % static_cast<std::uint64_t>(bounds.max_instance_len + 1));
    int n_input = m.num_symbols() - 1;  // blank excluded
    for (int i = 0; i < inst_len && n_input > 0; ++i)
        c.instance += m.sym_name(static_cast<SymId>(rng() % static_cast<std::uint64_t>(n_input)));
    c.cert_len = static_cast<int>(rng() % static_cast<std::uint64_t>(bounds.max_cert_len + 1));
    c.step_cap = bounds.step_cap;
    return c;
}

namespace {

long case_verify_budget = 3000;

EngineRun run_direct(const MachineSpec& m, const DiffCase& c) {
    EngineRun r;
    try {
        DirectEnumResult d = enumerate_certificates_direct(m, c.instance, c.cert_len, c.step_cap);
        if (d.any_accepted)
            r.status = EngineStatus::Yes;
        else if (d.capped > 0)
            r.status = EngineStatus::Capped;
        else
            r.status = EngineStatus::No;
    } catch (const std::exception& e) {
        r.status = EngineStatus::Error;
        r.detail = e.what();
    }
    return r;
}

EngineRun run_exp(const MachineSpec& m, const DiffCase& c) {
    EngineRun r;
    try {
        ExpResult e = simulate_all_certificates_exp(m, c.instance, c.cert_len,
                                                    {.step_cap = c.step_cap});
        if (e.accepted)
            r.status = EngineStatus::Yes;
        else if (e.any_capped)
            r.status = EngineStatus::Capped;
        else
            r.status = EngineStatus::No;
    } catch (const std::exception& ex) {
        r.status = EngineStatus::Error;
        r.detail = ex.what();
    }
    return r;
}

EngineRun run_poly(const MachineSpec& m, const DiffCase& c, bool fault_injection) {
    EngineRun r;
    try {
        PolyOptions opt;
        opt.step_cap = c.step_cap;
        opt.verify_budget = case_verify_budget;
        opt.fault_drop_last_branch = fault_injection;
        PolyResult p = simulate_all_certificates_poly(m, c.instance, c.cert_len, opt);
        switch (p.verdict) {
            case PolyVerdict::Accepted: r.status = EngineStatus::Yes; break;
            case PolyVerdict::Rejected: r.status = EngineStatus::No; break;
            case PolyVerdict::Capped:
                r.status = EngineStatus::Capped;
                r.detail = p.stats.cap_reason;
                break;
        }
    } catch (const std::exception& ex) {
        r.status = EngineStatus::Error;
        r.detail = ex.what();
    }
    return r;
}

bool statuses_disagree(const CaseReport& rep) {
    if (rep.direct.status == EngineStatus::Error || rep.exp.status == EngineStatus::Error ||
        rep.poly.status == EngineStatus::Error)
        return true;
    std::vector<EngineStatus> definite;
    for (EngineStatus s : {rep.direct.status, rep.exp.status, rep.poly.status})
        if (s == EngineStatus::Yes || s == EngineStatus::No) definite.push_back(s);
    for (size_t i = 1; i < definite.size(); ++i)
        if (definite[i] != definite[0]) return true;
    return false;
}

}  // namespace

CaseReport run_differential(const DiffCase& c, bool minimize, bool fault_injection) {
    CaseReport rep;
    rep.input = c;
    MachineSpec m;
    try {
        m = parse_machine_spec(c.machine_text);
    } catch (const std::exception& e) {
        rep.direct.status = rep.exp.status = rep.poly.status = EngineStatus::Error;
        rep.direct.detail = e.what();
        rep.disagreement = true;
        return rep;
    }
    rep.direct = run_direct(m, c);
    rep.exp = run_exp(m, c);
    rep.poly = run_poly(m, c, fault_injection);
    rep.disagreement = statuses_disagree(rep);
    if (rep.disagreement && minimize) rep.minimized = minimize_counterexample(c, fault_injection);
    return rep;
}

namespace {

MachineSpec rebuild_without_state(const MachineSpec& m, StateId victim) {
    MachineSpec out;
    std::vector<StateId> remap(static_cast<size_t>(m.num_states()), kNone);
    for (StateId q = 0; q < m.num_states(); ++q) {
        if (q == victim) continue;
        remap[static_cast<size_t>(q)] = static_cast<StateId>(out.states.size());
        out.states.push_back(m.states[static_cast<size_t>(q)]);
    }
    auto map = [&](StateId q) {
        StateId r = remap[static_cast<size_t>(q)];
        return r == kNone ? remap[static_cast<size_t>(m.reject)] : r;
    };
    out.initial = map(m.initial);
    out.accept = map(m.accept);
    out.reject = map(m.reject);
    out.tape_alphabet = m.tape_alphabet;
    out.blank = m.blank;
    for (const auto& [key, rule] : m.delta) {
        if (key.first == victim) continue;
        Rule r = rule;
        r.next = map(r.next);
        out.delta.emplace(std::make_pair(map(key.first), key.second), r);
    }
    return out;
}

MachineSpec rebuild_without_symbol(const MachineSpec& m, SymId victim) {
    MachineSpec out;
    out.states = m.states;
    out.initial = m.initial;
    out.accept = m.accept;
    out.reject = m.reject;
    out.blank = m.blank;
    std::vector<SymId> remap(static_cast<size_t>(m.num_symbols()), kNone);
    for (SymId s = 0; s < m.num_symbols(); ++s) {
        if (s == victim) continue;
        remap[static_cast<size_t>(s)] = static_cast<SymId>(out.tape_alphabet.size());
        out.tape_alphabet += m.sym_name(s);
    }
    SymId blank_new = remap[static_cast<size_t>(m.blank_sym())];
    for (const auto& [key, rule] : m.delta) {
        if (key.second == victim) continue;
        Rule r = rule;
        if (r.write == victim) r.write = m.blank_sym();
        r.write = remap[static_cast<size_t>(r.write)];
        if (r.write == kNone) r.write = blank_new;
        out.delta.emplace(std::make_pair(key.first, remap[static_cast<size_t>(key.second)]), r);
    }
    return out;
}

}  // namespace

DiffCase minimize_counterexample(const DiffCase& input, bool fault_injection) {
    auto still_fails = [&](const DiffCase& cand) {
        try {
            // A candidate that no longer parses is a broken shrink, not a
            // preserved disagreement.
            parse_machine_spec(cand.machine_text);
            return run_differential(cand, false, fault_injection).disagreement;
        } catch (...) {
            return false;
        }
    };

    DiffCase cur = input;
    bool progress = true;
    while (progress) {
        progress = false;

        if (cur.cert_len > 0) {
            DiffCase cand = cur;
            --cand.cert_len;
            if (still_fails(cand)) {
                cur = cand;
                progress = true;
                continue;
            }
        }
        for (size_t i = 0; i < cur.instance.size(); ++i) {
            DiffCase cand = cur;
            cand.instance.erase(i, 1);
            if (still_fails(cand)) {
                cur = cand;
                progress = true;
                break;
            }
        }
        if (progress) continue;

        MachineSpec m = parse_machine_spec(cur.machine_text);
        for (StateId q = 0; q < m.num_states(); ++q) {
            if (q == m.initial || m.is_final(q)) continue;
            MachineSpec cand = rebuild_without_state(m, q);
            DiffCase c2 = cur;
            c2.machine_text = write_machine_spec(cand);
            if (still_fails(c2)) {
                cur = c2;
                progress = true;
                break;
            }
        }
        if (progress) continue;

        for (SymId s = 0; s < m.num_symbols(); ++s) {
            if (s == m.blank_sym()) continue;
            if (cur.instance.find(m.sym_name(s)) != std::string::npos) continue;
            MachineSpec cand = rebuild_without_symbol(m, s);
            DiffCase c2 = cur;
            c2.machine_text = write_machine_spec(cand);
            if (still_fails(c2)) {
                cur = c2;
                progress = true;
                break;
            }
        }
        if (progress) continue;

        for (const auto& [key, rule] : m.delta) {
            MachineSpec cand = m;
            cand.delta.erase(key);
            DiffCase c2 = cur;
            c2.machine_text = write_machine_spec(cand);
            if (still_fails(c2)) {
                cur = c2;
                progress = true;
                break;
            }
        }
    }
    return cur;
}

DiffSummary run_differential_range(std::uint64_t seed_lo, std::uint64_t seed_hi,
                                   const MachineBounds& bounds, bool fault_injection) {
    DiffSummary sum;
    case_verify_budget = bounds.verify_budget;
    for (std::uint64_t seed = seed_lo; seed <= seed_hi; ++seed) {
        DiffCase c = generate_case(seed, bounds);
        CaseReport rep = run_differential(c, true, fault_injection);
        ++sum.total;
        if (rep.disagreement) {
            ++sum.disagreed;
            sum.disagreements.push_back(std::move(rep));
        } else if (rep.direct.status == EngineStatus::Capped ||
                   rep.exp.status == EngineStatus::Capped ||
                   rep.poly.status == EngineStatus::Capped) {
            ++sum.capped;
        } else {
            ++sum.agreed;
        }
    }
    return sum;
}

std::string report_to_json(const DiffSummary& s) {
    nlohmann::json j;
    j["total"] = s.total;
    j["agreed"] = s.agreed;
    j["disagreed"] = s.disagreed;
    j["capped"] = s.capped;
    j["disagreements"] = nlohmann::json::array();
    for (const CaseReport& rep : s.disagreements) {
        nlohmann::json d;
        d["seed"] = rep.input.seed;
        d["machine"] = rep.input.machine_text;
        d["instance"] = rep.input.instance;
        d["cert_len"] = rep.input.cert_len;
        d["step_cap"] = rep.input.step_cap;
        d["direct"] = to_string(rep.direct.status);
        d["exp"] = to_string(rep.exp.status);
        d["poly"] = to_string(rep.poly.status);
        if (!rep.poly.detail.empty()) d["poly_detail"] = rep.poly.detail;
        if (rep.minimized) {
            nlohmann::json mj;
            mj["machine"] = rep.minimized->machine_text;
            mj["instance"] = rep.minimized->instance;
            mj["cert_len"] = rep.minimized->cert_len;
            mj["step_cap"] = rep.minimized->step_cap;
            d["minimized"] = mj;
        }
        j["disagreements"].push_back(std::move(d));
    }
    return j.dump(2);
}

}  // namespace npsim
